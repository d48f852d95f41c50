#pragma once

#include <map>
#include <sstream>
#include <vector>

#include "gvlat/rational.hpp"

namespace gvlat {

// Truncated series in q with exponents offset + k, k integer. Terms with
// exponent below `truncation` are complete; nothing is known at or above it.
// Characters of distinct cosets live on genuinely different exponent
// lattices, so addition refuses to mix non-integer offset differences.
class QSeries {
public:
    QSeries() : offset_(0), truncation_(0) {}
    QSeries(const Rat& offset, const Rat& truncation) : offset_(offset), truncation_(truncation) {}

    static QSeries one(const Rat& truncation) {
        QSeries s(Rat(0), truncation);
        if (truncation > 0) s.coeffs_[0] = 1;
        return s;
    }

    const Rat& offset() const { return offset_; }
    const Rat& truncation() const { return truncation_; }
    const std::map<long, Rat>& coeffs() const { return coeffs_; }

    Rat exponent_of(long step) const { return offset_ + Rat(step); }

    void set(long step, const Rat& c) {
        if (exponent_of(step) >= truncation_) return;  // beyond what we track
        if (c == 0)
            coeffs_.erase(step);
        else
            coeffs_[step] = c;
    }

    void add(long step, const Rat& c) {
        if (c == 0 || exponent_of(step) >= truncation_) return;
        auto it = coeffs_.find(step);
        if (it == coeffs_.end()) {
            coeffs_[step] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    Rat coefficient_at(const Rat& exponent) const {
        Rat k = exponent - offset_;
        if (!is_integer(k)) return Rat(0);
        auto it = coeffs_.find(to_long(k));
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    // Smallest exponent that carries a term, or the truncation bound when the
    // known range is empty.
    Rat min_exponent() const {
        if (coeffs_.empty()) return truncation_;
        return exponent_of(coeffs_.begin()->first);
    }

    QSeries operator+(const QSeries& other) const {
        Rat diff = other.offset_ - offset_;
        if (!is_integer(diff))
            fail("MixedOffset", "q-series offsets differ by non-integer " + to_string(diff));
        Rat new_offset = offset_ <= other.offset_ ? offset_ : other.offset_;
        QSeries out(new_offset, std::min(truncation_, other.truncation_));
        long shift_a = to_long(offset_ - new_offset);
        long shift_b = to_long(other.offset_ - new_offset);
        for (const auto& [k, c] : coeffs_) out.add(k + shift_a, c);
        for (const auto& [k, c] : other.coeffs_) out.add(k + shift_b, c);
        return out;
    }

    QSeries operator-(const QSeries& other) const { return *this + (other * Rat(-1)); }

    QSeries operator*(const Rat& c) const {
        QSeries out(offset_, truncation_);
        if (c != 0)
            for (const auto& [k, v] : coeffs_) out.coeffs_[k] = v * c;
        return out;
    }

    // Cauchy product. Unknown terms of one factor pollute everything at or
    // above truncation + other.min_exponent, hence the Minkowski bound.
    QSeries operator*(const QSeries& other) const {
        Rat trunc = std::min(truncation_ + other.min_exponent(), other.truncation_ + min_exponent());
        QSeries out(offset_ + other.offset_, trunc);
        for (const auto& [ka, ca] : coeffs_)
            for (const auto& [kb, cb] : other.coeffs_) out.add(ka + kb, ca * cb);
        return out;
    }

    // Multiply by q^e.
    QSeries shifted(const Rat& e) const {
        QSeries out(offset_ + e, truncation_ + e);
        out.coeffs_ = coeffs_;
        return out;
    }

    bool operator==(const QSeries& other) const {
        return offset_ == other.offset_ && truncation_ == other.truncation_ &&
               coeffs_ == other.coeffs_;
    }

    // Numeric evaluation at q = exp(-2 pi t), t > 0, for modular checks.
    double evaluate(double q) const {
        double sum = 0;
        for (const auto& [k, c] : coeffs_)
            sum += to_double(c) * std::pow(q, to_double(exponent_of(k)));
        return sum;
    }

    std::string str() const {
        if (coeffs_.empty()) return "O(q^" + to_string(truncation_) + ")";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : coeffs_) {
            Rat e = exponent_of(k);
            if (!first) os << (c > 0 ? " + " : " - ");
            if (first && c < 0) os << "-";
            Rat ac = abs(c);
            if (ac != 1 || e == 0) os << to_string(ac);
            if (e != 0) {
                if (ac != 1) os << "*";
                os << "q^" << to_string(e);
            }
            first = false;
        }
        os << " + O(q^" << to_string(truncation_) << ")";
        return os.str();
    }

private:
    Rat offset_;
    Rat truncation_;
    std::map<long, Rat> coeffs_;
};

inline QSeries operator*(const Rat& c, const QSeries& s) { return s * c; }

// Counts of d with n colours of unrestricted parts, i.e. coefficients of
// prod_k (1-q^k)^{-n}, for all d <= dmax.
inline std::vector<Int> colored_partition_counts(long colors, long dmax) {
    std::vector<Int> dp(static_cast<std::size_t>(dmax) + 1, 0);
    dp[0] = 1;
    for (long colour = 0; colour < colors; ++colour)
        for (long part = 1; part <= dmax; ++part)
            for (long d = part; d <= dmax; ++d) dp[d] += dp[d - part];
    return dp;
}

// Largest integer strictly below the rational bound.
inline long last_step_below(const Rat& bound) {
    Int f = rat_floor(bound);
    if (Rat(f) == bound) f -= 1;
    return to_long(f);
}

// q^{-n/24} * sum_d p_n(d) q^d truncated at `order` (an absolute exponent).
inline QSeries eta_inverse_series(long n, const Rat& order) {
    if (n < 0) fail("BadArgument", "eta power must be non-negative");
    if (n == 0) return QSeries::one(order);
    Rat offset = ratio(-n, 24);
    if (order <= offset) fail("TruncationTooLow", "order must exceed " + to_string(offset));
    QSeries out(offset, order);
    long dmax = last_step_below(order - offset);
    auto counts = colored_partition_counts(n, dmax);
    for (long d = 0; d <= dmax; ++d) out.set(d, Rat(counts[d]));
    return out;
}

// q^{n/24} * prod_k (1-q^k)^n, the eta power itself.
inline QSeries eta_power_series(long n, const Rat& order) {
    if (n < 0) fail("BadArgument", "eta power must be non-negative");
    if (n == 0) return QSeries::one(order);
    Rat offset = ratio(n, 24);
    if (order <= offset) fail("TruncationTooLow", "order must exceed " + to_string(offset));
    long dmax = last_step_below(order - offset);
    // expand prod (1-q^k) once, then raise to the n-th power
    std::vector<Rat> base(static_cast<std::size_t>(dmax) + 1, Rat(0));
    base[0] = 1;
    for (long k = 1; k <= dmax; ++k)
        for (long d = dmax; d >= k; --d)
            if (base[d - k] != 0) base[d] -= base[d - k];
    std::vector<Rat> acc(static_cast<std::size_t>(dmax) + 1, Rat(0));
    acc[0] = 1;
    for (long rep = 0; rep < n; ++rep) {
        std::vector<Rat> next(static_cast<std::size_t>(dmax) + 1, Rat(0));
        for (long i = 0; i <= dmax; ++i) {
            if (acc[i] == 0) continue;
            for (long j = 0; i + j <= dmax; ++j)
                if (base[j] != 0) next[i + j] += acc[i] * base[j];
        }
        acc = std::move(next);
    }
    QSeries out(offset, order);
    for (long d = 0; d <= dmax; ++d) out.set(d, acc[d]);
    return out;
}

}  // namespace gvlat
