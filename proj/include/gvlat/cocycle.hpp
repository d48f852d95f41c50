#pragma once

#include <array>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "gvlat/lattice.hpp"
#include "gvlat/phase.hpp"

namespace gvlat {

// Sign-valued normalised 2-cocycle on the lattice with commutator
// (-1)^<a,b>, stored on an ordered basis and extended bimultiplicatively.
class TwoCocycle {
public:
    TwoCocycle() = default;

    static TwoCocycle from_basis(const DataPtr& data, const std::vector<Vec>& ordered_basis) {
        TwoCocycle eps = from_table(data, ordered_basis, {});
        eps.bits_.assign(ordered_basis.size(), std::vector<int>(ordered_basis.size(), 0));
        for (std::size_t i = 0; i < ordered_basis.size(); ++i)
            for (std::size_t j = i + 1; j < ordered_basis.size(); ++j) {
                Rat p = data->pairing(ordered_basis[i], ordered_basis[j]);
                eps.bits_[i][j] = to_long(rat_mod(p, Rat(2))) ? 1 : 0;
            }
        return eps;
    }

    // Arbitrary sign table on basis pairs; used to exercise the verifier on
    // tables that are not cocycles.
    static TwoCocycle from_table(const DataPtr& data, const std::vector<Vec>& ordered_basis,
                                 const std::vector<std::vector<int>>& bits) {
        if (ordered_basis.size() != data->rank())
            fail("NotABasis", "wrong number of basis vectors");
        TwoCocycle eps;
        eps.data_ = data;
        eps.basis_rows_ = Mat::from_rows(ordered_basis, data->dim());
        for (const auto& b : ordered_basis)
            if (!data->in_lattice(b)) fail("NotABasis", "vector outside the lattice");
        if (data->rank() > 0) {
            // unimodular coordinate matrix <=> the rows generate the lattice
            Mat coords(data->rank(), data->rank());
            for (std::size_t i = 0; i < data->rank(); ++i) {
                auto c = coordinates_in_rows(data->basis, ordered_basis[i]);
                for (std::size_t j = 0; j < data->rank(); ++j) coords(i, j) = (*c)[j];
            }
            Rat det = determinant(coords);
            if (det != 1 && det != -1) fail("NotABasis", "vectors do not generate the lattice");
        }
        if (!bits.empty() && bits.size() != data->rank())
            fail("BadShape", "sign table has wrong shape");
        eps.bits_ = bits.empty() ? std::vector<std::vector<int>>(
                                       data->rank(), std::vector<int>(data->rank(), 0))
                                 : bits;
        return eps;
    }

    const DataPtr& data() const { return data_; }
    const Mat& basis_rows() const { return basis_rows_; }
    const std::vector<std::vector<int>>& table_bits() const { return bits_; }

    // epsilon(a, b) as a sign for lattice vectors a, b.
    Phase eval(const Vec& a, const Vec& b) const {
        auto ca = coords(a), cb = coords(b);
        Int e = 0;
        for (std::size_t i = 0; i < ca.size(); ++i) {
            if (ca[i] == 0) continue;
            for (std::size_t j = 0; j < cb.size(); ++j)
                if (bits_[i][j] && cb[j] != 0) e += ca[i] * cb[j];
        }
        return Phase(rat_mod(Rat(e), Rat(2)));
    }

private:
    std::vector<Int> coords(const Vec& v) const {
        if (data_->rank() == 0) {
            if (!vec_is_zero(v)) fail("NotInLattice", "vector outside the empty lattice");
            return {};
        }
        auto c = coordinates_in_rows(basis_rows_, v);
        if (!c) fail("NotInLattice", "vector outside the lattice span");
        std::vector<Int> out;
        for (const auto& x : *c) {
            if (!is_integer(x)) fail("NotInLattice", "vector has non-integer coordinates");
            out.push_back(x.get_num());
        }
        return out;
    }

    DataPtr data_;
    Mat basis_rows_;
    std::vector<std::vector<int>> bits_;
};

inline TwoCocycle epsilon_from_basis(const DataPtr& data) {
    return TwoCocycle::from_basis(data, data->basis.row_list());
}

struct CocycleReport {
    bool normalization = true;
    bool cocycle_identity = true;
    bool commutator = true;
    std::vector<Vec> witness;  // offending vectors, if any check failed

    bool pass() const { return normalization && cocycle_identity && commutator; }
};

// Checks the defining sign-cocycle conditions on the basis triples plus a
// batch of random lattice triples.
inline CocycleReport verify_two_cocycle(const TwoCocycle& eps, unsigned random_samples = 100,
                                        unsigned long seed = 1) {
    const auto& data = eps.data();
    CocycleReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coeff(-4, 4);

    std::vector<Vec> pool = eps.basis_rows().row_list();
    for (unsigned i = 0; i < random_samples; ++i) {
        Vec v = zero_vec(data->dim());
        for (std::size_t j = 0; j < data->rank(); ++j)
            v = vec_add(v, vec_scale(Rat(coeff(rng)), eps.basis_rows().row(j)));
        pool.push_back(v);
    }
    Vec zero = zero_vec(data->dim());

    for (const auto& a : pool) {
        if (!(eps.eval(a, zero).is_one() && eps.eval(zero, a).is_one())) {
            report.normalization = false;
            report.witness = {a};
            return report;
        }
    }
    auto check_pair = [&](const Vec& a, const Vec& b) {
        Phase lhs = eps.eval(a, b) / eps.eval(b, a);
        Phase rhs = sign_phase(data->pairing(a, b));
        return lhs == rhs;
    };
    auto check_triple = [&](const Vec& a, const Vec& b, const Vec& c) {
        Phase p = eps.eval(b, c) / eps.eval(vec_add(a, b), c) * eps.eval(a, vec_add(b, c)) /
                  eps.eval(a, b);
        return p.is_one();
    };
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < pool.size() && report.commutator; ++j)
            if (!check_pair(pool[i], pool[j])) {
                report.commutator = false;
                report.witness = {pool[i], pool[j]};
            }
    if (!report.commutator) return report;

    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::size_t r = data->rank();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k)
                if (!check_triple(pool[i], pool[j], pool[k])) {
                    report.cocycle_identity = false;
                    report.witness = {pool[i], pool[j], pool[k]};
                    return report;
                }
    for (unsigned t = 0; t < random_samples; ++t) {
        const Vec &a = pool[pick(rng)], &b = pool[pick(rng)], &c = pool[pick(rng)];
        if (!check_triple(a, b, c)) {
            report.cocycle_identity = false;
            report.witness = {a, b, c};
            return report;
        }
    }
    return report;
}

// --- abelian 3-cocycle scalars -------------------------------------------
//
// Omega(a,b) = e^{i pi <s(a), s(b)>}
// F(a,b,c)   = (-1)^{<s(a), k(b,c)>} eps(k(a,b), k(a+b,c)) / eps(k(b,c), k(a,b+c))
//
// These are shared between the graded category and the sigma solver.

inline Phase braiding_phase(const DataPtr& data, const Vec& rep_a, const Vec& rep_b) {
    return Phase(data->pairing(rep_a, rep_b));
}

inline Phase associator_phase(const DataPtr& data, const TwoCocycle& eps, const Vec& rep_a,
                              const Vec& rep_b, const Vec& rep_c) {
    Vec k_bc = data->k_cocycle(rep_b, rep_c);
    Vec k_ab = data->k_cocycle(rep_a, rep_b);
    Vec k_ab_c = data->k_cocycle(data->section(vec_add(rep_a, rep_b)), rep_c);
    Vec k_a_bc = data->k_cocycle(rep_a, data->section(vec_add(rep_b, rep_c)));
    Phase sign = sign_phase(data->pairing(rep_a, k_bc));
    return sign * eps.eval(k_ab, k_ab_c) / eps.eval(k_bc, k_a_bc);
}

// --- sigma trivialisation for nested lattices -----------------------------

struct SigmaCochain {
    DataPtr base;                             // the finer data set
    std::vector<Coset> group;                 // quotient labels, canonical reps in the coarser lattice
    std::vector<std::vector<Phase>> values;   // sigma(g_i, g_j)
    std::vector<std::vector<std::size_t>> add;  // index table of g_i + g_j

    std::size_t index_of(const Coset& c) const {
        for (std::size_t i = 0; i < group.size(); ++i)
            if (group[i] == c) return i;
        fail("BadArgument", "coset is not an element of the quotient group");
    }
};

namespace detail {

struct SigmaProblem {
    std::vector<Coset> group;
    std::vector<std::vector<std::size_t>> add;
    std::vector<std::vector<Phase>> omega;  // Omega on the subgroup
    std::vector<std::vector<std::vector<Phase>>> f3;  // F on the subgroup
};

inline SigmaProblem sigma_problem(const DataPtr& data1, const TwoCocycle& eps1,
                                  const DataPtr& data2) {
    if (data1->dim() != data2->dim() || !(data1->space.gram == data2->space.gram))
        fail("ParentMismatch", "the two data sets live in different bilinear spaces");
    for (std::size_t i = 0; i < data1->rank(); ++i)
        if (!data2->in_lattice(data1->basis.row(i)))
            fail("NotASublattice", "first lattice is not contained in the second");
    if (!data2->in_lattice(vec_sub(data1->ff_rep, data2->ff_rep)))
        fail("FFMismatch", "Feigin-Fuchs cosets are not nested");

    QuotientBasis qb = quotient_adapted_basis(data1->basis, data2->basis);
    SigmaProblem p;
    for (const auto& rep : quotient_representatives(qb, data1->dim()))
        p.group.push_back(data1->coset_of(rep));
    std::size_t g = p.group.size();
    p.add.assign(g, std::vector<std::size_t>(g));
    std::map<Coset, std::size_t> lookup;
    for (std::size_t i = 0; i < g; ++i) lookup[p.group[i]] = i;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            Coset sum = data1->coset_of(vec_add(p.group[i].rep(), p.group[j].rep()));
            auto it = lookup.find(sum);
            if (it == lookup.end()) fail("InternalError", "quotient group is not closed");
            p.add[i][j] = it->second;
        }
    p.omega.assign(g, std::vector<Phase>(g));
    p.f3.assign(g, std::vector<std::vector<Phase>>(g, std::vector<Phase>(g)));
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            p.omega[i][j] = braiding_phase(data1, p.group[i].rep(), p.group[j].rep());
            for (std::size_t k = 0; k < g; ++k)
                p.f3[i][j][k] = associator_phase(data1, eps1, p.group[i].rep(), p.group[j].rep(),
                                                 p.group[k].rep());
        }
    return p;
}

inline Phase coboundary(const SigmaProblem& p, const std::vector<std::vector<Phase>>& sigma,
                        std::size_t i, std::size_t j, std::size_t k) {
    return sigma[j][k] / sigma[p.add[i][j]][k] * sigma[i][p.add[j][k]] / sigma[i][j];
}

}  // namespace detail

// Solve the trivialisation conditions
//   sigma(l, 0) = sigma(0, l) = 1
//   sigma(a, b) / sigma(b, a) = Omega(a, b)
//   d(sigma)(a, b, c) = F(a, b, c)
// starting from the seed sigma0(a, b) = eps2(s1(a), s1(b)). The seed handles
// normalisation and the commutator exactly; the remaining coboundary defect
// is a linear problem over Q/2Z in the exponents, solved through a Smith
// decomposition of the symmetrised coboundary operator.
inline SigmaCochain solve_sigma(const DataPtr& data1, const TwoCocycle& eps1,
                                const DataPtr& data2, const TwoCocycle& eps2) {
    detail::SigmaProblem p = detail::sigma_problem(data1, eps1, data2);
    const std::size_t g = p.group.size();
    std::size_t zero_idx = g;
    for (std::size_t i = 0; i < g; ++i)
        if (vec_is_zero(p.group[i].rep())) zero_idx = i;
    if (zero_idx == g) fail("InternalError", "quotient group has no zero element");

    std::vector<std::vector<Phase>> sigma(g, std::vector<Phase>(g));
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            sigma[i][j] = eps2.eval(p.group[i].rep(), p.group[j].rep());

    // commutator and normalisation must already hold for the seed
    for (std::size_t i = 0; i < g; ++i) {
        if (!sigma[i][zero_idx].is_one() || !sigma[zero_idx][i].is_one())
            fail("InternalError", "seed cochain is not normalised");
        for (std::size_t j = 0; j < g; ++j)
            if (sigma[i][j] / sigma[j][i] != p.omega[i][j])
                fail("Unsolvable", "seed cochain violates the commutator condition");
    }

    // residual coboundary defect
    bool clean = true;
    std::vector<Rat> defect;  // exponent of F / d(sigma0) per triple
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            for (std::size_t k = 0; k < g; ++k) {
                Phase d = p.f3[i][j][k] / detail::coboundary(p, sigma, i, j, k);
                if (!d.is_one()) clean = false;
                triples.push_back({i, j, k});
                defect.push_back(d.exponent());
            }

    if (!clean) {
        // unknowns: symmetric unordered pairs of nonzero elements
        std::vector<std::pair<std::size_t, std::size_t>> unknowns;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> unknown_index;
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = i; j < g; ++j) {
                if (i == zero_idx || j == zero_idx) continue;
                unknown_index[{i, j}] = unknowns.size();
                unknowns.emplace_back(i, j);
            }
        auto var = [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
            if (i == zero_idx || j == zero_idx) return std::nullopt;
            auto key = i <= j ? std::make_pair(i, j) : std::make_pair(j, i);
            return unknown_index.at(key);
        };
        IMat a(triples.size(), std::vector<Int>(unknowns.size(), 0));
        for (std::size_t row = 0; row < triples.size(); ++row) {
            auto [i, j, k] = triples[row];
            if (auto v = var(j, k)) a[row][*v] += 1;
            if (auto v = var(p.add[i][j], k)) a[row][*v] -= 1;
            if (auto v = var(i, p.add[j][k])) a[row][*v] += 1;
            if (auto v = var(i, j)) a[row][*v] -= 1;
        }
        SmithForm s = smith_normal_form(a);
        // with y = V^{-1} x the system decouples to d_i y_i = (U e)_i over
        // Q/2Z: rows with a nonzero divisor are always solvable (Q/2Z is
        // divisible), rows without one are pure constraints
        std::vector<Rat> ue(triples.size(), Rat(0));
        for (std::size_t i = 0; i < triples.size(); ++i)
            for (std::size_t j = 0; j < triples.size(); ++j)
                if (s.u[i][j] != 0) ue[i] += Rat(s.u[i][j]) * defect[j];
        std::size_t diag = std::min(triples.size(), unknowns.size());
        std::vector<Rat> y(unknowns.size(), Rat(0));
        for (std::size_t i = 0; i < triples.size(); ++i) {
            if (i < diag && s.divisors[i] != 0) {
                y[i] = ue[i] / Rat(s.divisors[i]);
            } else if (rat_mod(ue[i], Rat(2)) != 0) {
                fail("Unsolvable",
                     "coboundary defect is outside the image of the symmetric coboundary "
                     "operator (constraint row " +
                         std::to_string(i) + " has residue " + to_string(rat_mod(ue[i], Rat(2))) +
                         ")");
            }
        }
        std::vector<Rat> x(unknowns.size(), Rat(0));
        for (std::size_t i = 0; i < unknowns.size(); ++i)
            for (std::size_t j = 0; j < unknowns.size(); ++j)
                if (s.v[i][j] != 0) x[i] += Rat(s.v[i][j]) * y[j];
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            auto [i, j] = unknowns[u];
            Phase c{x[u]};
            sigma[i][j] = sigma[i][j] * c;
            if (i != j) sigma[j][i] = sigma[j][i] * c;
        }
    }

    // exhaustive final check of all three condition families
    for (std::size_t i = 0; i < g; ++i) {
        if (!sigma[i][zero_idx].is_one() || !sigma[zero_idx][i].is_one())
            fail("Unsolvable", "solved cochain lost normalisation");
        for (std::size_t j = 0; j < g; ++j)
            if (sigma[i][j] / sigma[j][i] != p.omega[i][j])
                fail("Unsolvable", "solved cochain violates the commutator");
    }
    for (std::size_t t = 0; t < triples.size(); ++t) {
        auto [i, j, k] = triples[t];
        if (detail::coboundary(p, sigma, i, j, k) != p.f3[i][j][k])
            fail("Unsolvable", "solved cochain violates the coboundary condition at triple " +
                                   std::to_string(i) + "," + std::to_string(j) + "," +
                                   std::to_string(k));
    }

    SigmaCochain out;
    out.base = data1;
    out.group = p.group;
    out.values = sigma;
    out.add = p.add;
    return out;
}

// Exhaustive +-1 search over all sign tables; only viable for tiny quotients.
// Used as the independent oracle for the linear-algebra solver.
inline std::optional<SigmaCochain> brute_force_sigma(const DataPtr& data1, const TwoCocycle& eps1,
                                                     const DataPtr& data2) {
    detail::SigmaProblem p = detail::sigma_problem(data1, eps1, data2);
    const std::size_t g = p.group.size();
    if (g > 4) fail("BadArgument", "brute-force sigma search is limited to quotients of order <= 4");
    std::size_t zero_idx = 0;
    for (std::size_t i = 0; i < g; ++i)
        if (vec_is_zero(p.group[i].rep())) zero_idx = i;

    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
            if (i != zero_idx && j != zero_idx) slots.emplace_back(i, j);

    for (unsigned long mask = 0; mask < (1ul << slots.size()); ++mask) {
        std::vector<std::vector<Phase>> sigma(g, std::vector<Phase>(g, Phase::one()));
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (mask & (1ul << s)) sigma[slots[s].first][slots[s].second] = Phase::minus_one();
        bool ok = true;
        for (std::size_t i = 0; i < g && ok; ++i)
            for (std::size_t j = 0; j < g && ok; ++j)
                ok = sigma[i][j] / sigma[j][i] == p.omega[i][j];
        for (std::size_t i = 0; i < g && ok; ++i)
            for (std::size_t j = 0; j < g && ok; ++j)
                for (std::size_t k = 0; k < g && ok; ++k)
                    ok = detail::coboundary(p, sigma, i, j, k) == p.f3[i][j][k];
        if (ok) {
            SigmaCochain out;
            out.base = data1;
            out.group = p.group;
            out.values = sigma;
            out.add = p.add;
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace gvlat
