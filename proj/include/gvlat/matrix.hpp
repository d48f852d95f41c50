#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gvlat/rational.hpp"

namespace gvlat {

// Dense rational matrix, row major. Sized for lattice ranks, not for scale.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols) {
        Mat m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const {
        Vec r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    std::vector<Vec> row_list() const {
        std::vector<Vec> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& other) const {
        Mat out(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j)
                    out(i, j) += a * other(k, j);
            }
        return out;
    }

    Vec apply(const Vec& v) const {
        Vec out(rows_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    bool operator==(const Mat& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

namespace detail {

// Row echelon with partial (first nonzero) pivoting; returns pivot columns.
inline std::vector<std::size_t> echelonize(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && m(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
        Rat inv = Rat(1) / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(Mat m) { return detail::echelonize(m).size(); }

inline Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) fail("NotSquare", "inverse of non-square matrix");
    std::size_t n = m.rows();
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = detail::echelonize(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        fail("SingularMatrix", "matrix is not invertible");
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

inline Rat determinant(Mat m) {
    if (m.rows() != m.cols()) fail("NotSquare", "determinant of non-square matrix");
    std::size_t n = m.rows();
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m(sel, c) == 0) ++sel;
        if (sel == n) return Rat(0);
        if (sel != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        Rat inv = Rat(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

// Basis of { x : m x = 0 } over the rationals.
inline std::vector<Vec> nullspace(Mat m) {
    auto pivots = detail::echelonize(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        Vec v(m.cols(), Rat(0));
        v[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, c);
        basis.push_back(v);
    }
    return basis;
}

// One solution of m x = b, or nullopt if inconsistent. Free variables are 0.
inline std::optional<Vec> solve(const Mat& m, const Vec& b) {
    Mat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto pivots = detail::echelonize(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vec x(m.cols(), Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

// Coordinates of v in the row basis of m (v = coords^T m); nullopt if v is
// outside the row span or the rows are dependent.
inline std::optional<Vec> coordinates_in_rows(const Mat& basis_rows, const Vec& v) {
    return solve(basis_rows.transpose(), v);
}

}  // namespace gvlat
