#pragma once

#include <cstddef>
#include <vector>

#include "gvlat/rational.hpp"

namespace gvlat {

// Integer matrix as nested vectors of mpz.
using IMat = std::vector<std::vector<Int>>;

inline IMat imat_identity(std::size_t n) {
    IMat m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IMat imat_mul(const IMat& a, const IMat& b) {
    std::size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
    IMat out(r, std::vector<Int>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

struct SmithForm {
    IMat u;                        // rows x rows, unimodular
    IMat v;                        // cols x cols, unimodular
    std::vector<Int> divisors;     // d1 | d2 | ..., nonneg, length min(rows, cols)
    std::size_t rank = 0;          // number of nonzero divisors
};

// U A V = diag(divisors). Pivot choice is deterministic (smallest nonzero
// |entry|, ties by row-major position) so repeated runs give identical
// transforms.
inline SmithForm smith_normal_form(IMat a) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    SmithForm out;
    out.u = imat_identity(rows);
    out.v = imat_identity(cols);

    auto row_op = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t j = 0; j < cols; ++j) a[dst][j] -= f * a[src][j];
        for (std::size_t j = 0; j < rows; ++j) out.u[dst][j] -= f * out.u[src][j];
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t i = 0; i < rows; ++i) a[i][dst] -= f * a[i][src];
        for (std::size_t i = 0; i < cols; ++i) out.v[i][dst] -= f * out.v[i][src];
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(out.u[i], out.u[j]);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        for (std::size_t r = 0; r < cols; ++r) std::swap(out.v[r][i], out.v[r][j]);
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = -a[i][j];
        for (std::size_t j = 0; j < rows; ++j) out.u[i][j] = -out.u[i][j];
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pick pivot
        bool found = false;
        std::size_t pi = t, pj = t;
        Int best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                Int mag = abs(a[i][j]);
                if (!found || mag < best) {
                    found = true;
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        if (pi != t) row_swap(pi, t);
        if (pj != t) col_swap(pj, t);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Int f = floor_div(a[i][t], a[t][t]);
                row_op(i, t, f);
                if (a[i][t] != 0) {  // remainder smaller than pivot: swap up
                    row_swap(i, t);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Int f = floor_div(a[t][j], a[t][t]);
                col_op(j, t, f);
                if (a[t][j] != 0) {
                    col_swap(j, t);
                    dirty = true;
                }
            }
        }
        if (a[t][t] < 0) row_negate(t);
        ++t;
    }

    // enforce the divisibility chain d1 | d2 | ...
    std::size_t m = std::min(rows, cols);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            if (a[i][i] == 0 || a[i + 1][i + 1] == 0) continue;
            if (a[i + 1][i + 1] % a[i][i] == 0) continue;
            // fold entry i+1 into column i, then re-reduce the 2x2 block
            col_op(i, i + 1, Int(-1));
            bool dirty = true;
            while (dirty) {
                dirty = false;
                if (a[i + 1][i] != 0) {
                    Int f = floor_div(a[i + 1][i], a[i][i]);
                    row_op(i + 1, i, f);
                    if (a[i + 1][i] != 0) {
                        row_swap(i + 1, i);
                        dirty = true;
                    }
                }
                if (a[i][i + 1] != 0) {
                    Int f = floor_div(a[i][i + 1], a[i][i]);
                    col_op(i + 1, i, f);
                    if (a[i][i + 1] != 0) {
                        col_swap(i + 1, i);
                        dirty = true;
                    }
                }
            }
            if (a[i][i] < 0) row_negate(i);
            if (a[i + 1][i + 1] < 0) row_negate(i + 1);
            changed = true;
        }
    }

    out.divisors.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.divisors[i] = a[i][i];
        if (out.divisors[i] != 0) ++out.rank;
    }
    return out;
}

// Z-basis of { x in Z^cols : a x = 0 }, as columns-of-V construction. The
// result is automatically saturated.
inline std::vector<std::vector<Int>> integer_kernel(const IMat& a, std::size_t cols) {
    std::vector<std::vector<Int>> basis;
    if (a.empty()) {
        for (std::size_t i = 0; i < cols; ++i) {
            std::vector<Int> e(cols, 0);
            e[i] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    SmithForm s = smith_normal_form(a);
    for (std::size_t j = s.rank; j < cols; ++j) {
        std::vector<Int> v(cols);
        for (std::size_t i = 0; i < cols; ++i) v[i] = s.v[i][j];
        basis.push_back(v);
    }
    return basis;
}

// Clears denominators of a rational matrix to an integer matrix (scaling each
// row is wrong here; the kernel needs a global scaling per matrix).
inline IMat clear_denominators(const Mat& m) {
    Int lcm = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Int den = m(i, j).get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
    IMat out(m.rows(), std::vector<Int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat scaled = m(i, j) * Rat(lcm);
            out[i][j] = scaled.get_num();  // den is 1 after scaling
        }
    return out;
}

}  // namespace gvlat
