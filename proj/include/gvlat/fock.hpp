#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "gvlat/gvcat.hpp"
#include "gvlat/qseries.hpp"

namespace gvlat {

// PBW monomial: product of creation modes applied to a highest-weight vector.
// Modes are (coordinate direction, m) meaning alpha^(i)_{-m}, kept sorted.
struct FockMonomial {
    std::vector<std::pair<int, long>> modes;

    FockMonomial() = default;
    explicit FockMonomial(std::vector<std::pair<int, long>> m) : modes(std::move(m)) {
        std::sort(modes.begin(), modes.end());
    }

    long level() const {
        long l = 0;
        for (const auto& [dir, m] : modes) l += m;
        return l;
    }

    FockMonomial with_mode(int dir, long m) const {
        FockMonomial out = *this;
        out.modes.emplace_back(dir, m);
        std::sort(out.modes.begin(), out.modes.end());
        return out;
    }

    FockMonomial without_index(std::size_t idx) const {
        FockMonomial out = *this;
        out.modes.erase(out.modes.begin() + static_cast<long>(idx));
        return out;
    }

    bool operator<(const FockMonomial& other) const { return modes < other.modes; }
    bool operator==(const FockMonomial& other) const { return modes == other.modes; }
};

// Finite combination of PBW monomials over a single Heisenberg weight, with
// coefficients in the phase-span field.
class FockVector {
public:
    FockVector() = default;
    explicit FockVector(Vec weight) : weight_(std::move(weight)) {}

    static FockVector highest_weight(Vec weight) {
        FockVector v(std::move(weight));
        v.terms_[FockMonomial{}] = Scalar(Rat(1));
        return v;
    }

    const Vec& weight() const { return weight_; }
    const std::map<FockMonomial, Scalar>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    long max_level() const {
        long l = 0;
        for (const auto& [m, c] : terms_) l = std::max(l, m.level());
        return l;
    }

    void add_term(const FockMonomial& m, const Scalar& c) {
        if (c.empty()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
            return;
        }
        it->second += c;
        if (it->second.empty()) terms_.erase(it);
    }

    FockVector& operator+=(const FockVector& other) {
        if (terms_.empty() && !other.terms_.empty() && weight_.empty()) weight_ = other.weight_;
        for (const auto& [m, c] : other.terms_) add_term(m, c);
        return *this;
    }
    FockVector operator+(const FockVector& other) const {
        FockVector out = *this;
        out += other;
        return out;
    }
    FockVector operator-(const FockVector& other) const { return *this + (other * Rat(-1)); }

    FockVector operator*(const Scalar& c) const {
        FockVector out(weight_);
        for (const auto& [m, v] : terms_) out.add_term(m, v * c);
        return out;
    }
    FockVector operator*(const Rat& c) const { return *this * Scalar(c); }
    FockVector operator*(const Phase& c) const { return *this * Scalar(c); }

    // drop all terms above the level cap
    FockVector truncated(long max_level) const {
        FockVector out(weight_);
        for (const auto& [m, c] : terms_)
            if (m.level() <= max_level) out.add_term(m, c);
        return out;
    }

    FockVector level_component(long level) const {
        FockVector out(weight_);
        for (const auto& [m, c] : terms_)
            if (m.level() == level) out.add_term(m, c);
        return out;
    }

    Scalar coefficient(const FockMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }

    bool is_zero() const {
        for (const auto& [m, c] : terms_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool equals(const FockVector& other) const {
        if (!terms_.empty() && !other.terms_.empty() && !(weight_ == other.weight_)) return false;
        return (*this - other).is_zero();
    }

private:
    Vec weight_;
    std::map<FockMonomial, Scalar> terms_;
};

// --- Heisenberg modes --------------------------------------------------------

namespace detail_fock {
inline Vec axis(const DataPtr& data, int i) {
    Vec e = zero_vec(data->dim());
    e[static_cast<std::size_t>(i)] = 1;
    return e;
}
}  // namespace detail_fock

// alpha_m for an ambient direction vector, in PBW normal order:
//   m < 0 inserts a creation mode, m = 0 reads the weight pairing,
//   m > 0 contracts against matching creation modes via [a_n, b_m] = n <a,b> d_{n,-m}.
inline FockVector heisenberg_act(const DataPtr& data, const Vec& direction, long mode,
                                 const FockVector& v,
                                 std::optional<long> max_level = std::nullopt) {
    FockVector out(v.weight());
    if (mode < 0) {
        // decompose the direction over the coordinate creation modes
        for (const auto& [mono, coeff] : v.terms())
            for (std::size_t i = 0; i < data->dim(); ++i) {
                if (direction[i] == 0) continue;
                out.add_term(mono.with_mode(static_cast<int>(i), -mode), coeff * direction[i]);
            }
    } else if (mode == 0) {
        out = v * data->pairing(direction, v.weight());
    } else {
        Vec gdir = (data->space.gram).apply(direction);  // <direction, e_j> = gdir[j]
        for (const auto& [mono, coeff] : v.terms())
            for (std::size_t idx = 0; idx < mono.modes.size(); ++idx) {
                auto [dir, m] = mono.modes[idx];
                if (m != mode) continue;
                Rat bracket = Rat(mode) * gdir[static_cast<std::size_t>(dir)];
                if (bracket != 0) out.add_term(mono.without_index(idx), coeff * bracket);
            }
    }
    if (max_level && out.max_level() > *max_level)
        fail("LevelOverflow", "mode action exceeds the configured level bound");
    return out;
}

// --- Virasoro ---------------------------------------------------------------

inline Rat central_charge(const DataPtr& data, const Vec& conformal_shift) {
    return Rat(static_cast<long>(data->dim())) -
           Rat(12) * data->pairing(conformal_shift, conformal_shift);
}

inline Rat conformal_weight(const DataPtr& data, const Vec& conformal_shift, const Vec& weight) {
    Vec shifted = vec_sub(weight, vec_scale(Rat(2), conformal_shift));
    return data->pairing(weight, shifted) / 2;
}

// L_m for the conformal vector with background shift gamma:
//   L_m = 1/2 sum_{k in Z} sum_i :a^i_k a^{i*}_{m-k}: - (m+1) gamma_m
// with {a^i} the coordinate basis and {a^{i*}} its metric dual.
inline FockVector virasoro_mode(const DataPtr& data, const Vec& conformal_shift, long m,
                                const FockVector& v,
                                std::optional<long> max_level = std::nullopt) {
    const std::size_t n = data->dim();
    Mat ginv = inverse(data->space.gram);
    FockVector out(v.weight());
    long lmax = v.max_level();
    long bound = lmax + std::abs(m) + 1;
    for (long k = -bound; k <= bound; ++k) {
        long l = m - k;
        // normal order: the larger mode annihilates first, the smaller one
        // creates afterwards
        long first = std::max(k, l), second = std::min(k, l);
        if (first > lmax) continue;  // annihilator misses every stored mode
        for (std::size_t i = 0; i < n; ++i) {
            Vec a = detail_fock::axis(data, static_cast<int>(i));
            Vec astar = ginv.row(i);
            const Vec& first_dir = (first == k) ? a : astar;
            const Vec& second_dir = (first == k) ? astar : a;
            FockVector tmp = heisenberg_act(data, first_dir, first, v);
            if (tmp.empty()) continue;
            tmp = heisenberg_act(data, second_dir, second, tmp);
            out += tmp * ratio(1, 2);
        }
    }
    if (m != 0 || !vec_is_zero(conformal_shift)) {
        FockVector shift_term = heisenberg_act(data, conformal_shift, m, v);
        out += shift_term * Rat(-(m + 1));
    }
    if (max_level && out.max_level() > *max_level)
        fail("LevelOverflow", "Virasoro action exceeds the configured level bound");
    return out;
}

// --- graded dimensions --------------------------------------------------------

inline std::vector<FockMonomial> basis_monomials(std::size_t directions, long level) {
    std::vector<FockMonomial> out;
    std::function<void(long, long, FockMonomial&)> rec = [&](long remaining, long max_part,
                                                             FockMonomial& acc) {
        if (remaining == 0) {
            FockMonomial copy = acc;
            std::sort(copy.modes.begin(), copy.modes.end());
            out.push_back(copy);
            return;
        }
        for (long part = std::min(max_part, remaining); part >= 1; --part)
            for (std::size_t d = 0; d < directions; ++d) {
                // avoid duplicates: once the part size drops, any direction is
                // fine; within equal part sizes enforce non-increasing direction
                if (!acc.modes.empty() && acc.modes.back().second == part &&
                    static_cast<std::size_t>(acc.modes.back().first) < d)
                    continue;
                acc.modes.emplace_back(static_cast<int>(d), part);
                rec(remaining - part, part, acc);
                acc.modes.pop_back();
            }
    };
    FockMonomial acc;
    rec(level, level, acc);
    return out;
}

inline long graded_dimension(const DataPtr& data, long level) {
    auto counts = colored_partition_counts(static_cast<long>(data->dim()), level);
    return to_long(counts[static_cast<std::size_t>(level)]);
}

// --- untwisted vertex operators ----------------------------------------------

namespace detail_fock {

// E^+(mu, z) = exp(-sum_n mu_n z^{-n}/n) expanded by the derivative
// recursion b A_b = -sum_{n<=b} mu_n A_{b-n}; components 0..bmax, degree -b.
inline std::vector<FockVector> e_plus_components(const DataPtr& data, const Vec& mu,
                                                 const FockVector& v, long bmax) {
    std::vector<FockVector> comp{v};
    for (long b = 1; b <= bmax; ++b) {
        FockVector acc(v.weight());
        for (long n = 1; n <= b; ++n)
            if (!comp[static_cast<std::size_t>(b - n)].empty())
                acc += heisenberg_act(data, mu, n, comp[static_cast<std::size_t>(b - n)]);
        comp.push_back(acc * ratio(-1, b));
    }
    return comp;
}

inline FockVector e_plus_component(const DataPtr& data, const Vec& mu, long b,
                                   const FockVector& v) {
    return e_plus_components(data, mu, v, b)[static_cast<std::size_t>(b)];
}

// E^-(mu, z) = exp(+sum_n mu_{-n} z^n / n), recursion a R_a = sum mu_{-n} R_{a-n}.
// Creation only raises levels, so truncating every component at the cap is
// exact for the capped output.
inline std::vector<FockVector> e_minus_components(const DataPtr& data, const Vec& mu,
                                                  const FockVector& v, long amax, long cap) {
    std::vector<FockVector> comp{v.truncated(cap)};
    for (long a = 1; a <= amax; ++a) {
        FockVector acc(v.weight());
        for (long n = 1; n <= a; ++n)
            if (!comp[static_cast<std::size_t>(a - n)].empty())
                acc += heisenberg_act(data, mu, -n, comp[static_cast<std::size_t>(a - n)]);
        comp.push_back((acc * ratio(1, a)).truncated(cap));
    }
    return comp;
}

// field coefficient of z^{-m-n} in d^{n-1} a(z) / (n-1)!
inline Rat field_coeff(long n, long m) {
    // (-1)^{n-1} binom(m+n-1, n-1)
    Rat binom(1);
    for (long j = 1; j <= n - 1; ++j) binom *= ratio(m + n - j, j);
    return ((n - 1) % 2 ? Rat(-1) : Rat(1)) * binom;
}

// Y(p, z) for a PBW insertion monomial, fully expanded in normal order:
// Y(alpha_{-n} u, z) = : (d^{n-1} alpha(z)/(n-1)!) Y(u, z) :  recursively,
// with the creation half applied after and the annihilation half before.
// Degrees are implicit: every summand changes the level by (degree + wt(p)).
inline FockVector apply_field_monomial(const DataPtr& data,
                                       const std::vector<std::pair<int, long>>& modes,
                                       std::size_t idx, const FockVector& state, long max_level) {
    if (state.empty()) return state;
    if (idx == modes.size()) return state;
    auto [dir, n] = modes[idx];
    Vec direction = axis(data, dir);

    FockVector out(state.weight());
    // creation half acts after the rest of the field monomial
    FockVector inner = apply_field_monomial(data, modes, idx + 1, state, max_level);
    for (long m = -1; m >= -(max_level); --m) {
        if (inner.empty()) break;
        FockVector created = heisenberg_act(data, direction, m, inner).truncated(max_level);
        if (!created.empty()) out += created * field_coeff(n, m);
    }
    // annihilation half (zero mode included) acts before
    long state_max = state.max_level();
    for (long m = 0; m <= state_max; ++m) {
        FockVector lowered = heisenberg_act(data, direction, m, state);
        if (lowered.empty()) continue;
        FockVector rest = apply_field_monomial(data, modes, idx + 1, lowered, max_level);
        if (!rest.empty()) out += rest * field_coeff(n, m);
    }
    return out;
}

}  // namespace detail_fock

// I(p|mu>, z) q|nu> with exponents <mu,nu> + t: the t component changes the
// level by t + wt(p) relative to the input. Returns the map t -> coefficient,
// complete for all output levels <= max_level, shift operator included.
inline std::map<long, FockVector> untwisted_apply(const DataPtr& data, const FockVector& insertion,
                                                  const FockVector& input, long max_level) {
    if (input.max_level() > max_level)
        fail("LevelOverflow", "input vector already exceeds the requested level bound");
    std::map<long, FockVector> out;
    const Vec& mu = insertion.weight();
    Vec out_weight = vec_add(mu, input.weight());

    for (const auto& [p_mono, p_coeff] : insertion.terms()) {
        long p_wt = p_mono.level();
        // group the input by level so the degree bookkeeping stays exact
        for (long lin = 0; lin <= input.max_level(); ++lin) {
            FockVector group = input.level_component(lin);
            if (group.empty()) continue;
            // E^+ then Y(p) then E^-
            FockVector after_plus(group.weight());
            for (auto& piece : detail_fock::e_plus_components(data, mu, group, lin))
                after_plus += piece;
            FockVector after_y = detail_fock::apply_field_monomial(data, p_mono.modes, 0,
                                                                   after_plus, max_level);
            FockVector after_minus(group.weight());
            for (auto& piece :
                 detail_fock::e_minus_components(data, mu, after_y, max_level, max_level))
                after_minus += piece;
            // distribute by output level; shift the weight by mu
            for (const auto& [mono, coeff] : after_minus.terms()) {
                long t = mono.level() - lin - p_wt;
                auto it = out.find(t);
                if (it == out.end()) it = out.emplace(t, FockVector(out_weight)).first;
                it->second.add_term(mono, coeff * p_coeff);
            }
        }
    }
    return out;
}

// one Fock-summand block of the universal intertwiner: the cocycle prefactor
// (-1)^{<s(a), alpha2>} eps(alpha1, alpha2) eps(alpha1 + alpha2, k(a,b))
// times the untwisted operator at weights s(a)+alpha1, s(b)+alpha2
struct IntertwinerBlock {
    Phase prefactor;
    Rat base_exponent;  // pairing of the two weights; exponents are base + t
    Vec out_weight;
    std::map<long, FockVector> terms;
};

inline Phase intertwiner_prefactor(const GVCategory& cat, const Coset& a, const Coset& b,
                                   const Vec& alpha1, const Vec& alpha2) {
    const auto& data = cat.data;
    if (!data->in_lattice(alpha1) || !data->in_lattice(alpha2))
        fail("BadArgument", "summand shifts must be lattice vectors");
    Phase sign = sign_phase(data->pairing(a.rep(), alpha2));
    Vec k = data->k_cocycle(a.rep(), b.rep());
    return sign * cat.epsilon.eval(alpha1, alpha2) *
           cat.epsilon.eval(vec_add(alpha1, alpha2), k);
}

inline IntertwinerBlock lattice_intertwiner_apply(const GVCategory& cat, const Coset& a,
                                                  const Coset& b, const Vec& alpha1,
                                                  const Vec& alpha2, const FockVector& insertion,
                                                  const FockVector& input, long max_level) {
    detail::check_parent(cat, a);
    detail::check_parent(cat, b);
    const auto& data = cat.data;
    Vec w1 = vec_add(a.rep(), alpha1), w2 = vec_add(b.rep(), alpha2);
    if (!(insertion.weight() == w1) || !(input.weight() == w2))
        fail("BadArgument", "insertion/input weights do not match the requested summands");
    IntertwinerBlock block;
    block.prefactor = intertwiner_prefactor(cat, a, b, alpha1, alpha2);
    block.base_exponent = data->pairing(w1, w2);
    block.out_weight = vec_add(w1, w2);
    auto raw = untwisted_apply(data, insertion, input, max_level);
    for (auto& [t, vec] : raw) block.terms[t] = vec * block.prefactor;
    return block;
}

// Coefficient of the final highest-weight vector in Y(insertion, z) input,
// per homogeneous component at degree -(input level + insertion level).
// Only the field zero modes and full E^+ contractions reach the top:
//   <hw| E^+(mu) |mono>  =  prod over modes (i, m) of  -<mu, e_i>,
// the n-dependence cancelling against the matching count, so this costs
// one pass over the stored monomials.
inline std::map<long, Scalar> intertwiner_hw_coefficients(const GVCategory& cat, const Coset& a,
                                                          const Coset& b, const Vec& alpha1,
                                                          const Vec& alpha2,
                                                          const FockVector& insertion,
                                                          const FockVector& input) {
    const auto& data = cat.data;
    Vec w1 = vec_add(a.rep(), alpha1), w2 = vec_add(b.rep(), alpha2);
    if (!(insertion.weight() == w1) || !(input.weight() == w2))
        fail("BadArgument", "insertion/input weights do not match the requested summands");
    Phase pref = intertwiner_prefactor(cat, a, b, alpha1, alpha2);
    Vec gw1 = data->space.gram.apply(w1);
    Vec gw2 = data->space.gram.apply(w2);

    std::map<long, Scalar> out;
    for (const auto& [p_mono, p_coeff] : insertion.terms()) {
        // zero-mode product of the insertion fields against the input weight
        Rat zmode(1);
        for (const auto& [dir, nmode] : p_mono.modes)
            zmode *= detail_fock::field_coeff(nmode, 0) * gw2[static_cast<std::size_t>(dir)];
        if (zmode == 0) continue;
        for (const auto& [in_mono, in_coeff] : input.terms()) {
            Rat contraction(1);
            for (const auto& [dir, m] : in_mono.modes)
                contraction *= -gw1[static_cast<std::size_t>(dir)];
            if (contraction == 0) continue;
            long t = -(in_mono.level() + p_mono.level());
            Scalar value = in_coeff * p_coeff * Scalar(pref) * (zmode * contraction);
            auto it = out.find(t);
            if (it == out.end())
                out[t] = value;
            else
                it->second += value;
        }
    }
    return out;
}

// --- skew symmetry ------------------------------------------------------------

struct SkewReport {
    bool pass = false;
    Phase extracted;
    Phase expected;
    std::string detail;
};

// Verifies e^{z L_{-1}} Y_{b,a}(v, e^{i pi} z) u = Omega(a,b) Y_{a,b}(u, z) v
// coefficient by coefficient up to the level bound, on the (alpha1, alpha2)
// Fock summands, with the branch substitution tracked exactly on exponents.
inline SkewReport check_skew_symmetry(const GVCategory& cat, const Coset& a, const Coset& b,
                                      long max_level, const Vec& alpha1, const Vec& alpha2) {
    const auto& data = cat.data;
    Vec w1 = vec_add(a.rep(), alpha1), w2 = vec_add(b.rep(), alpha2);
    FockVector u = FockVector::highest_weight(w1);
    FockVector v = FockVector::highest_weight(w2);

    IntertwinerBlock rhs = lattice_intertwiner_apply(cat, a, b, alpha1, alpha2, u, v, max_level);
    IntertwinerBlock lhs_raw =
        lattice_intertwiner_apply(cat, b, a, alpha2, alpha1, v, u, max_level);

    // substitute z -> e^{i pi} z: the coefficient at exponent r picks up e^{i pi r}
    std::map<long, FockVector> branched;
    for (const auto& [t, vec] : lhs_raw.terms)
        branched[t] = vec * Phase(lhs_raw.base_exponent + Rat(t));

    // then apply e^{z L_{-1}}
    std::map<long, FockVector> lhs;
    for (const auto& [t, vec] : branched) {
        FockVector power = vec;
        Rat factorial(1);
        for (long k = 0; t + k <= max_level; ++k) {
            if (k > 0) {
                power = virasoro_mode(data, data->ff_rep, -1, power);
                factorial *= Rat(k);
            }
            if (power.empty()) break;
            auto it = lhs.find(t + k);
            if (it == lhs.end()) it = lhs.emplace(t + k, FockVector(lhs_raw.out_weight)).first;
            it->second += power * (Rat(1) / factorial);
        }
    }

    SkewReport report;
    report.expected = braiding(cat, a, b);

    // extract the scalar from the leading coefficients
    FockMonomial hw;
    auto it_rhs = rhs.terms.find(0);
    auto it_lhs = lhs.find(0);
    if (it_rhs == rhs.terms.end() || it_lhs == lhs.end()) {
        report.detail = "missing leading terms";
        return report;
    }
    Scalar lead_rhs = it_rhs->second.coefficient(hw);
    Scalar lead_lhs = it_lhs->second.coefficient(hw);
    if (lead_rhs.empty() || lead_lhs.empty()) {
        report.detail = "vanishing leading coefficients";
        return report;
    }
    report.extracted = lead_lhs.as_phase() / lead_rhs.as_phase();

    bool ok = report.extracted == report.expected;
    for (long t = 0; t <= max_level && ok; ++t) {
        FockVector right(rhs.out_weight);
        auto ir = rhs.terms.find(t);
        if (ir != rhs.terms.end()) right = ir->second * report.expected;
        FockVector left(lhs_raw.out_weight);
        auto il = lhs.find(t);
        if (il != lhs.end()) left = il->second;
        if (!left.equals(right)) {
            ok = false;
            report.detail = "mismatch at exponent offset " + std::to_string(t);
        }
    }
    report.pass = ok;
    return report;
}

inline SkewReport check_skew_symmetry(const GVCategory& cat, const Coset& a, const Coset& b,
                                      long max_level) {
    Vec zero = zero_vec(cat.data->dim());
    return check_skew_symmetry(cat, a, b, max_level, zero, zero);
}

// --- numeric associativity ------------------------------------------------------

struct AssocReport {
    bool pass = false;
    std::complex<double> ratio;
    std::complex<double> expected;
    std::vector<std::complex<double>> partial_ratios;  // by intermediate level
    double deviation = 0;
};

namespace detail_fock {

inline bool positive_definite_lattice(const DataPtr& data) {
    if (!data->full_rank_nondegenerate()) return false;
    Mat gram = (data->basis * data->space.gram) * data->basis.transpose();
    for (std::size_t k = 1; k <= gram.rows(); ++k) {
        Mat minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = gram(i, j);
        if (determinant(minor) <= 0) return false;
    }
    return true;
}

inline double real_power(const Rat& base, const Rat& exponent) {
    return std::pow(to_double(base), to_double(exponent));
}

}  // namespace detail_fock

namespace detail_fock {

// memoized highest-weight inner blocks, keyed by the label pair
struct InnerCache {
    long max_level = 0;
    std::map<std::pair<Coset, Coset>, IntertwinerBlock> blocks;

    const IntertwinerBlock& get(const GVCategory& cat, const Coset& x, const Coset& y) {
        auto key = std::make_pair(x, y);
        auto it = blocks.find(key);
        if (it != blocks.end()) return it->second;
        FockVector u = FockVector::highest_weight(x.rep());
        FockVector v = FockVector::highest_weight(y.rep());
        Vec zero = zero_vec(cat.data->dim());
        auto [ins, ok] = blocks.emplace(
            key, lattice_intertwiner_apply(cat, x, y, zero, zero, u, v, max_level));
        return ins->second;
    }
};

}  // namespace detail_fock

// Compares Y(u, x1) Y(v, x2) w against Y(Y(u, x1-x2) v, x2) w on highest-weight
// insertions, both truncated at the same intermediate level, by evaluating the
// coefficient of the final highest-weight vector numerically. The exact ratio
// of the two convergent sums is the associator.
inline AssocReport check_associativity_numeric(const GVCategory& cat, const Coset& a,
                                               const Coset& b, const Coset& c, const Rat& x1,
                                               const Rat& x2, long max_level, double tol,
                                               detail_fock::InnerCache* cache = nullptr) {
    const auto& data = cat.data;
    if (!(x1 > x2 && x2 > x1 - x2 && x1 - x2 > 0))
        fail("BadArgument", "sample points must satisfy x1 > x2 > x1-x2 > 0");
    if (!detail_fock::positive_definite_lattice(data))
        fail("BadArgument", "numeric associativity needs positive-definite full-rank data");

    detail_fock::InnerCache local;
    if (!cache) {
        local.max_level = max_level;
        cache = &local;
    } else if (cache->max_level != max_level) {
        fail("BadArgument", "inner cache was built for a different level");
    }

    Vec sa = a.rep(), sb = b.rep(), sc = c.rep();
    FockVector u = FockVector::highest_weight(sa);
    FockVector v = FockVector::highest_weight(sb);
    FockVector w = FockVector::highest_weight(sc);
    FockMonomial hw;
    Vec zero = zero_vec(data->dim());

    // product side: inner pair (b, c) at x2, outer (a, b+c) at x1
    Coset bc = fuse(cat, b, c);
    Vec alpha_bc = vec_sub(vec_add(sb, sc), bc.rep());
    Rat outer_p_base = data->pairing(sa, vec_add(sb, sc));
    const IntertwinerBlock& inner_p = cache->get(cat, b, c);
    std::vector<std::complex<double>> prod_contrib(static_cast<std::size_t>(max_level) + 1, 0.0);
    for (const auto& [t2, vec2] : inner_p.terms) {
        if (t2 < 0 || vec2.empty()) continue;
        auto tops = intertwiner_hw_coefficients(cat, a, bc, zero, alpha_bc, u, vec2);
        auto it = tops.find(-t2);
        if (it == tops.end()) continue;
        double powers = detail_fock::real_power(x2, inner_p.base_exponent + Rat(t2)) *
                        detail_fock::real_power(x1, outer_p_base - Rat(t2));
        prod_contrib[static_cast<std::size_t>(t2)] = it->second.to_complex() * powers;
    }

    // iterate side: inner pair (a, b) at x1-x2, outer (a+b, c) at x2
    Coset ab = fuse(cat, a, b);
    Vec alpha_ab = vec_sub(vec_add(sa, sb), ab.rep());
    Rat outer_i_base = data->pairing(vec_add(sa, sb), sc);
    const IntertwinerBlock& inner_i = cache->get(cat, a, b);
    std::vector<std::complex<double>> iter_contrib(static_cast<std::size_t>(max_level) + 1, 0.0);
    for (const auto& [t1, vec1] : inner_i.terms) {
        if (t1 < 0 || vec1.empty()) continue;
        auto tops = intertwiner_hw_coefficients(cat, ab, c, alpha_ab, zero, vec1, w);
        auto it = tops.find(-t1);
        if (it == tops.end()) continue;
        double powers = detail_fock::real_power(x1 - x2, inner_i.base_exponent + Rat(t1)) *
                        detail_fock::real_power(x2, outer_i_base - Rat(t1));
        iter_contrib[static_cast<std::size_t>(t1)] = it->second.to_complex() * powers;
    }

    AssocReport report;
    report.expected = associator(cat, a, b, c).to_complex();
    std::complex<double> sp = 0, si = 0;
    for (long l = 0; l <= max_level; ++l) {
        sp += prod_contrib[static_cast<std::size_t>(l)];
        si += iter_contrib[static_cast<std::size_t>(l)];
        if (std::abs(sp) > 0) report.partial_ratios.push_back(si / sp);
    }
    if (report.partial_ratios.empty())
        fail("ConvergenceNotReached", "no usable partial sums were produced");
    report.ratio = report.partial_ratios.back();
    report.deviation = std::abs(report.ratio - report.expected);
    report.pass = report.deviation < tol;
    if (!report.pass) {
        std::string last2;
        std::size_t np = report.partial_ratios.size();
        for (std::size_t i = np >= 2 ? np - 2 : 0; i < np; ++i)
            last2 += " (" + std::to_string(report.partial_ratios[i].real()) + "," +
                     std::to_string(report.partial_ratios[i].imag()) + ")";
        fail("ConvergenceNotReached",
             "deviation " + std::to_string(report.deviation) + " at level " +
                 std::to_string(max_level) + "; last partial ratios:" + last2);
    }
    return report;
}

// full triple sweep sharing the memoized inner blocks
inline std::vector<AssocReport> sweep_associativity(const GVCategory& cat,
                                                    const std::vector<Coset>& labels,
                                                    const Rat& x1, const Rat& x2, long max_level,
                                                    double tol) {
    detail_fock::InnerCache cache;
    cache.max_level = max_level;
    std::vector<AssocReport> out;
    for (const auto& a : labels)
        for (const auto& b : labels)
            for (const auto& c : labels)
                out.push_back(check_associativity_numeric(cat, a, b, c, x1, x2, max_level, tol,
                                                          &cache));
    return out;
}

// --- contragredient -------------------------------------------------------------

// Reads the zero-mode shift of the opposed field map of alpha_{-1}|0>. The
// L_1 image of alpha_{-1}|0> supplies the correction term, so this is an
// independent route to the dual label 2 xi - rho.
inline Coset contragredient_weight(const DataPtr& data, const Coset& rho) {
    const std::size_t n = data->dim();
    FockVector vacuum = FockVector::highest_weight(zero_vec(n));
    Vec correction(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        FockVector state = heisenberg_act(data, detail_fock::axis(data, static_cast<int>(i)), -1,
                                          vacuum);
        FockVector l1 = virasoro_mode(data, data->ff_rep, 1, state);
        correction[i] = l1.coefficient(FockMonomial{}).as_rational();
    }
    // opposed zero mode: -alpha_0 - c  =>  G w' = -G rho - c
    Vec rhs = vec_scale(Rat(-1), data->space.gram.apply(rho.rep()));
    rhs = vec_sub(rhs, correction);
    Vec wprime = inverse(data->space.gram).apply(rhs);
    Coset out = data->coset_of(wprime);
    Coset expected = data->coset_of(vec_sub(vec_scale(Rat(2), data->ff_rep), rho.rep()));
    if (!(out == expected))
        fail("InternalError", "opposed field map disagrees with the duality label");
    return out;
}

}  // namespace gvlat
