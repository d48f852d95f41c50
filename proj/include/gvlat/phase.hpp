#pragma once

#include <complex>
#include <map>
#include <numbers>

#include "gvlat/rational.hpp"

namespace gvlat {

// A root of unity e^{i pi r} with rational r stored reduced into [0, 2).
// Every structure scalar of the graded categories lives here, so equality
// checks stay exact.
class Phase {
public:
    Phase() : exponent_(0) {}
    explicit Phase(const Rat& exponent) : exponent_(rat_mod(exponent, Rat(2))) {}

    static Phase one() { return Phase(); }
    static Phase minus_one() { return Phase(Rat(1)); }

    const Rat& exponent() const { return exponent_; }

    Phase operator*(const Phase& other) const { return Phase(exponent_ + other.exponent_); }
    Phase inverse() const { return Phase(-exponent_); }
    Phase operator/(const Phase& other) const { return *this * other.inverse(); }

    Phase pow(long k) const { return Phase(exponent_ * Rat(k)); }

    bool operator==(const Phase& other) const { return exponent_ == other.exponent_; }
    bool operator!=(const Phase& other) const { return !(*this == other); }
    bool operator<(const Phase& other) const { return exponent_ < other.exponent_; }

    std::complex<double> to_complex() const {
        double t = std::numbers::pi * to_double(exponent_);
        return {std::cos(t), std::sin(t)};
    }

    bool is_one() const { return exponent_ == 0; }

private:
    Rat exponent_;
};

// Signs show up everywhere as (-1)^<a,b> with integer pairings.
inline Phase sign_phase(const Rat& integer_exponent) {
    if (!is_integer(integer_exponent))
        fail("NotAnInteger", "sign exponent " + to_string(integer_exponent) + " is not integral");
    return Phase(integer_exponent);
}

// Finite rational-linear combination of phases, Sum_r c_r e^{i pi r}.
// Fock vector entries mix cocycle signs with branch phases, which is why a
// plain rational coefficient type is not enough.
class Scalar {
public:
    Scalar() = default;
    Scalar(const Rat& c) {  // implicit: rationals embed at exponent 0
        if (c != 0) terms_[Rat(0)] = c;
    }
    Scalar(const Phase& p) { terms_[p.exponent()] = 1; }
    Scalar(const Phase& p, const Rat& c) {
        if (c != 0) terms_[p.exponent()] = c;
    }

    static Scalar zero() { return Scalar(); }

    const std::map<Rat, Rat>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Scalar& operator+=(const Scalar& other) {
        for (const auto& [r, c] : other.terms_) add_term(r, c);
        return *this;
    }
    Scalar operator+(const Scalar& other) const {
        Scalar out = *this;
        out += other;
        return out;
    }
    Scalar operator-() const {
        Scalar out;
        for (const auto& [r, c] : terms_) out.terms_[r] = -c;
        return out;
    }
    Scalar operator-(const Scalar& other) const { return *this + (-other); }

    Scalar operator*(const Scalar& other) const {
        Scalar out;
        for (const auto& [r, c] : terms_)
            for (const auto& [s, d] : other.terms_) out.add_term(rat_mod(r + s, Rat(2)), c * d);
        return out;
    }
    Scalar& operator*=(const Scalar& other) { return *this = *this * other; }

    Scalar operator*(const Rat& c) const {
        Scalar out;
        if (c == 0) return out;
        for (const auto& [r, v] : terms_) out.terms_[r] = v * c;
        return out;
    }

    // Presentation with exponents folded into [0, 1) via e^{i pi (r+1)} = -e^{i pi r}.
    Scalar normalized() const {
        Scalar out;
        for (const auto& [r, c] : terms_) {
            if (r >= 1)
                out.add_term(r - 1, -c);
            else
                out.add_term(r, c);
        }
        return out;
    }

    // Exact when the symbolic merge settles it; otherwise a numeric magnitude
    // certificate decides, and an ambiguous certificate is an error rather
    // than a guess.
    bool is_zero() const {
        Scalar n = normalized();
        if (n.terms_.empty()) return true;
        double mag = std::abs(n.to_complex());
        if (mag < 1e-12)
            fail("InconclusiveCancellation",
                 "scalar is numerically ~0 but does not cancel symbolically");
        return false;
    }

    bool operator==(const Scalar& other) const { return (*this - other).is_zero(); }
    bool operator!=(const Scalar& other) const { return !(*this == other); }

    std::complex<double> to_complex() const {
        std::complex<double> z(0, 0);
        for (const auto& [r, c] : terms_) z += to_double(c) * Phase(r).to_complex();
        return z;
    }

    // Value of a scalar that is purely rational (exponent 0 after folding).
    Rat as_rational() const {
        Scalar n = normalized();
        if (n.terms_.empty()) return Rat(0);
        if (n.terms_.size() == 1 && n.terms_.begin()->first == 0) return n.terms_.begin()->second;
        fail("NotRational", "scalar carries non-trivial phases");
    }

    // Round-trip to Phase for scalars that are a single phase term.
    Phase as_phase() const {
        Scalar n = normalized();
        if (n.terms_.size() != 1) fail("NotAPhase", "scalar is not a single phase");
        const auto& [r, c] = *n.terms_.begin();
        if (c == 1) return Phase(r);
        if (c == -1) return Phase(r + 1);
        fail("NotAPhase", "scalar has coefficient " + to_string(c));
    }

private:
    void add_term(const Rat& r, const Rat& c) {
        auto it = terms_.find(r);
        if (it == terms_.end()) {
            if (c != 0) terms_[r] = c;
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    std::map<Rat, Rat> terms_;
};

inline Scalar operator*(const Rat& c, const Scalar& s) { return s * c; }

}  // namespace gvlat
