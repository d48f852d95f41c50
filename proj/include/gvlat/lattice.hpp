#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "gvlat/matrix.hpp"
#include "gvlat/snf.hpp"

namespace gvlat {

struct BilinearSpace {
    std::size_t dim = 0;
    Mat gram;  // dim x dim, symmetric, non-degenerate
};

inline Rat pair(const BilinearSpace& space, const Vec& u, const Vec& v) {
    Rat out(0);
    for (std::size_t i = 0; i < space.dim; ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < space.dim; ++j)
            if (space.gram(i, j) != 0 && v[j] != 0) out += u[i] * space.gram(i, j) * v[j];
    }
    return out;
}

// The four-part splitting of the dual: dual = V + span(N) + F + D with V, F
// isotropy and D carrying the finite discriminant part. d_basis is the
// quotient-adapted basis: the lattice meets span(D) exactly in the span of
// d_invariants[i] * d_basis[i].
struct DualDecomposition {
    std::vector<Vec> perp_basis;        // Q-basis of the radical annihilator of the lattice
    std::vector<Vec> gamma_basis;       // Z-basis of the free complement, contains the complement basis
    std::vector<Vec> null_basis;        // Z-basis of N, the null sublattice
    std::vector<Vec> complement_basis;  // Z-basis of a direct complement of N in the lattice
    std::vector<Vec> v_basis;
    std::vector<Vec> f_basis;
    std::vector<Vec> d_basis;
    std::vector<Int> d_invariants;
};

class LatticeData;
using DataPtr = std::shared_ptr<const LatticeData>;

// Element of dual/lattice in canonical-representative form. Carries its
// parent so category operations can reject mixed-parent arguments.
class Coset {
public:
    Coset() = default;
    Coset(DataPtr parent, Vec canonical_rep)
        : parent_(std::move(parent)), rep_(std::move(canonical_rep)) {}

    const Vec& rep() const { return rep_; }
    const DataPtr& parent() const { return parent_; }

    bool operator==(const Coset& other) const {
        return parent_.get() == other.parent_.get() && rep_ == other.rep_;
    }
    bool operator!=(const Coset& other) const { return !(*this == other); }
    bool operator<(const Coset& other) const {
        if (parent_.get() != other.parent_.get()) return parent_.get() < other.parent_.get();
        return std::lexicographical_compare(rep_.begin(), rep_.end(), other.rep_.begin(),
                                            other.rep_.end());
    }

private:
    DataPtr parent_;
    Vec rep_;
};

// Validated lattice data: bilinear space, even lattice, Feigin-Fuchs vector,
// with the dual decomposition and section bookkeeping computed eagerly.
// Immutable after construction.
class LatticeData : public std::enable_shared_from_this<LatticeData> {
public:
    BilinearSpace space;
    Mat basis;    // r x n lattice basis rows, r may be 0
    Vec ff_rep;   // chosen representative of the Feigin-Fuchs coset
    DualDecomposition dec;

    std::size_t dim() const { return space.dim; }
    std::size_t rank() const { return basis.rows(); }
    std::size_t null_rank() const { return dec.null_basis.size(); }

    bool full_rank_nondegenerate() const {
        return dec.v_basis.empty() && dec.null_basis.empty();
    }

    Rat pairing(const Vec& u, const Vec& v) const { return pair(space, u, v); }

    // Pairings of x against the lattice basis; x is dual iff all are integers.
    Vec dual_pairings(const Vec& x) const { return psi_.apply(x); }

    bool in_dual(const Vec& x) const {
        for (const auto& p : dual_pairings(x))
            if (!is_integer(p)) return false;
        return true;
    }

    // Coordinates of v in the lattice basis, if v lies in the lattice.
    std::optional<std::vector<Int>> lattice_coordinates(const Vec& v) const {
        if (rank() == 0) {
            if (vec_is_zero(v)) return std::vector<Int>{};
            return std::nullopt;
        }
        auto coords = coordinates_in_rows(basis, v);
        if (!coords) return std::nullopt;
        std::vector<Int> out;
        out.reserve(coords->size());
        for (const auto& c : *coords) {
            if (!is_integer(c)) return std::nullopt;
            out.push_back(c.get_num());
        }
        return out;
    }

    bool in_lattice(const Vec& v) const { return lattice_coordinates(v).has_value(); }

    // Canonical section: reduce the span(N) coordinates into [0,1) and the
    // adapted D coordinates into the non-negative invariant-factor residues;
    // V and F coordinates pass through.
    Vec section(const Vec& x) const {
        if (!in_dual(x)) fail("NotInDual", "vector does not pair integrally with the lattice");
        Vec coords = coord_solver_.apply(x);
        std::size_t pos = dec.v_basis.size();
        for (std::size_t i = 0; i < dec.null_basis.size(); ++i, ++pos)
            coords[pos] = rat_mod(coords[pos], Rat(1));
        pos += dec.f_basis.size();
        for (std::size_t i = 0; i < dec.d_basis.size(); ++i, ++pos) {
            if (!is_integer(coords[pos]))
                fail("InternalError", "dual vector with non-integer discriminant coordinate");
            coords[pos] = rat_mod(coords[pos], Rat(dec.d_invariants[i]));
        }
        Vec out = zero_vec(dim());
        for (std::size_t i = 0; i < coord_rows_.size(); ++i)
            if (coords[i] != 0) out = vec_add(out, vec_scale(coords[i], coord_rows_[i]));
        return out;
    }

    Coset coset_of(const Vec& x) const {
        return Coset(shared_from_this(), section(x));
    }

    Coset ff_coset() const { return coset_of(ff_rep); }

    // k(a, b) = s(a+b) - s(a) - s(b), a lattice vector.
    Vec k_cocycle(const Vec& rep_a, const Vec& rep_b) const {
        return vec_sub(section(vec_add(rep_a, rep_b)), vec_add(rep_a, rep_b));
    }

    friend DataPtr validate(const BilinearSpace& space, const std::vector<Vec>& basis_rows,
                            const Vec& ff_rep);

private:
    Mat psi_;           // r x n: row i gives <b_i, ->
    Mat coord_solver_;  // inverse transpose of the combined [V; N; F; D'] rows
    std::vector<Vec> coord_rows_;

    void build_decomposition();
};

namespace detail {

inline std::vector<Vec> combination_rows(const std::vector<Vec>& coeff_rows,
                                         const std::vector<Vec>& basis_rows, std::size_t dim) {
    std::vector<Vec> out;
    for (const auto& coeffs : coeff_rows) {
        Vec v = zero_vec(dim);
        for (std::size_t i = 0; i < basis_rows.size(); ++i)
            if (coeffs[i] != 0) v = vec_add(v, vec_scale(coeffs[i], basis_rows[i]));
        out.push_back(v);
    }
    return out;
}

inline std::vector<Vec> int_rows_to_vec(const std::vector<std::vector<Int>>& rows) {
    std::vector<Vec> out;
    for (const auto& r : rows) {
        Vec v;
        v.reserve(r.size());
        for (const auto& z : r) v.emplace_back(z);
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

inline void LatticeData::build_decomposition() {
    const std::size_t n = dim(), r = rank();
    psi_ = basis * space.gram;  // r x n
    Mat gram_lat = psi_ * basis.transpose();

    // N: integer kernel of the restricted pairing, and a complement inside
    // the lattice, both read off one Smith decomposition.
    IMat gram_int(r, std::vector<Int>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) gram_int[i][j] = gram_lat(i, j).get_num();
    std::vector<Vec> null_coords, comp_coords;
    if (r > 0) {
        SmithForm s = smith_normal_form(gram_int);
        for (std::size_t j = 0; j < r; ++j) {
            Vec col(r);
            for (std::size_t i = 0; i < r; ++i) col[i] = Rat(s.v[i][j]);
            (j < s.rank ? comp_coords : null_coords).push_back(col);
        }
    }
    dec.null_basis = detail::combination_rows(null_coords, basis.row_list(), n);
    dec.complement_basis = detail::combination_rows(comp_coords, basis.row_list(), n);

    // perp: rational kernel of psi
    dec.perp_basis = nullspace(psi_);

    // Gamma: free complement of perp in the dual, chosen to contain the
    // complement sublattice. For i <= d the generators are complement
    // vectors divided by the invariant factors of their pairing image; the
    // rest are particular solutions.
    const std::size_t d = dec.complement_basis.size();
    std::vector<Vec> gamma;
    if (r > 0) {
        std::vector<Vec> target_rows(r);  // rows v_i of a Z^r basis adapted to psi(complement)
        std::vector<Vec> direct(r);       // gamma_i for i < d, from complement vectors
        if (d > 0) {
            IMat p(d, std::vector<Int>(r));
            for (std::size_t i = 0; i < d; ++i) {
                Vec pr = psi_.apply(dec.complement_basis[i]);
                for (std::size_t j = 0; j < r; ++j) {
                    if (!is_integer(pr[j]))
                        fail("InternalError", "complement vector pairs non-integrally");
                    p[i][j] = pr[j].get_num();
                }
            }
            SmithForm s = smith_normal_form(p);
            // rows of V^{-1} form the adapted basis of Z^r
            Mat vmat(r, r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) vmat(i, j) = Rat(s.v[i][j]);
            Mat vinv = inverse(vmat);
            for (std::size_t i = 0; i < r; ++i) target_rows[i] = vinv.row(i);
            for (std::size_t i = 0; i < d; ++i) {
                Vec x = zero_vec(n);
                for (std::size_t k = 0; k < d; ++k)
                    if (s.u[i][k] != 0) x = vec_add(x, vec_scale(Rat(s.u[i][k]), dec.complement_basis[k]));
                direct[i] = vec_scale(ratio(Int(1), s.divisors[i]), x);
            }
        } else {
            for (std::size_t i = 0; i < r; ++i) {
                Vec e = zero_vec(r);
                e[i] = 1;
                target_rows[i] = e;
            }
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (i < d) {
                gamma.push_back(direct[i]);
                continue;
            }
            auto sol = solve(psi_, target_rows[i]);
            if (!sol) fail("InternalError", "pairing map is not surjective onto Z^r");
            gamma.push_back(*sol);
        }
    }
    dec.gamma_basis = gamma;

    // D = Gamma intersect span(complement)
    std::vector<Vec> d_raw;
    if (d > 0) {
        Mat comp_rows = Mat::from_rows(dec.complement_basis, n);
        auto comp_perp = nullspace(comp_rows);  // Euclidean complement of the row span
        Mat cond(comp_perp.size(), r);
        for (std::size_t i = 0; i < comp_perp.size(); ++i)
            for (std::size_t j = 0; j < r; ++j) {
                Rat dot(0);
                for (std::size_t t = 0; t < n; ++t) dot += gamma[j][t] * comp_perp[i][t];
                cond(i, j) = dot;
            }
        auto kernel = integer_kernel(clear_denominators(cond), r);
        d_raw = detail::combination_rows(detail::int_rows_to_vec(kernel), gamma, n);
    }

    // F = annihilator of D inside Gamma
    {
        Mat cond(d_raw.size(), r);
        for (std::size_t i = 0; i < d_raw.size(); ++i)
            for (std::size_t j = 0; j < r; ++j) cond(i, j) = pairing(d_raw[i], gamma[j]);
        std::vector<std::vector<Int>> kernel;
        if (r > 0) kernel = integer_kernel(clear_denominators(cond), r);
        dec.f_basis = detail::combination_rows(detail::int_rows_to_vec(kernel), gamma, n);
    }

    // V = annihilator of F inside perp
    {
        Mat cond(dec.f_basis.size(), dec.perp_basis.size());
        for (std::size_t i = 0; i < dec.f_basis.size(); ++i)
            for (std::size_t j = 0; j < dec.perp_basis.size(); ++j)
                cond(i, j) = pairing(dec.f_basis[i], dec.perp_basis[j]);
        std::vector<Vec> coeffs =
            dec.f_basis.empty() ? Mat::identity(dec.perp_basis.size()).row_list() : nullspace(cond);
        dec.v_basis = detail::combination_rows(coeffs, dec.perp_basis, n);
    }

    if (dec.f_basis.size() != dec.null_basis.size())
        fail("InternalError", "rank F != rank N in dual decomposition");

    // Adapt the D basis to the quotient by the lattice: complement = A * D,
    // Smith gives the invariant factors.
    dec.d_invariants.clear();
    if (!d_raw.empty()) {
        Mat d_rows = Mat::from_rows(d_raw, n);
        IMat a(d, std::vector<Int>(d));
        for (std::size_t i = 0; i < d; ++i) {
            auto coords = coordinates_in_rows(d_rows, dec.complement_basis[i]);
            if (!coords) fail("InternalError", "complement does not lie in span D");
            for (std::size_t j = 0; j < d; ++j) {
                if (!is_integer((*coords)[j]))
                    fail("InternalError", "complement has non-integer D coordinates");
                a[i][j] = (*coords)[j].get_num();
            }
        }
        SmithForm s = smith_normal_form(a);
        Mat vmat(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) vmat(i, j) = Rat(s.v[i][j]);
        Mat vinv = inverse(vmat);
        dec.d_basis = (vinv * d_rows).row_list();
        dec.d_invariants = s.divisors;
        for (const auto& di : dec.d_invariants)
            if (di <= 0) fail("InternalError", "non-positive invariant factor");
    } else {
        dec.d_basis.clear();
    }

    // Combined coordinate system [V; N; F; D'] for the section.
    coord_rows_.clear();
    for (const auto& v : dec.v_basis) coord_rows_.push_back(v);
    for (const auto& v : dec.null_basis) coord_rows_.push_back(v);
    for (const auto& v : dec.f_basis) coord_rows_.push_back(v);
    for (const auto& v : dec.d_basis) coord_rows_.push_back(v);
    if (coord_rows_.size() != n)
        fail("InternalError", "dual decomposition does not span the ambient space");
    coord_solver_ = inverse(Mat::from_rows(coord_rows_, n).transpose());

    // The orthogonality and isotropy statements behind the decomposition are
    // cheap to confirm on the stored bases, so do it once here.
    auto block_pair_zero = [&](const std::vector<Vec>& a, const std::vector<Vec>& b) {
        for (const auto& x : a)
            for (const auto& y : b)
                if (pairing(x, y) != 0) return false;
        return true;
    };
    std::vector<Vec> nf = dec.null_basis;
    nf.insert(nf.end(), dec.f_basis.begin(), dec.f_basis.end());
    if (!block_pair_zero(dec.v_basis, nf) || !block_pair_zero(dec.v_basis, dec.d_basis) ||
        !block_pair_zero(nf, dec.d_basis))
        fail("InternalError", "decomposition blocks are not mutually orthogonal");
    if (!block_pair_zero(dec.null_basis, dec.null_basis) ||
        !block_pair_zero(dec.f_basis, dec.f_basis))
        fail("InternalError", "pairing does not vanish on N or on F");
    auto block_nondegenerate = [&](const std::vector<Vec>& rows) {
        if (rows.empty()) return true;
        Mat g(rows.size(), rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows.size(); ++j) g(i, j) = pairing(rows[i], rows[j]);
        return determinant(g) != 0;
    };
    if (!block_nondegenerate(dec.v_basis) || !block_nondegenerate(nf) ||
        !block_nondegenerate(dec.d_basis))
        fail("InternalError", "pairing degenerate on a decomposition block");
}

inline DataPtr validate(const BilinearSpace& space, const std::vector<Vec>& basis_rows,
                        const Vec& ff_rep) {
    if (space.dim == 0 || space.gram.rows() != space.dim || space.gram.cols() != space.dim)
        fail("BadShape", "gram matrix must be dim x dim with dim >= 1");
    for (std::size_t i = 0; i < space.dim; ++i)
        for (std::size_t j = i + 1; j < space.dim; ++j)
            if (space.gram(i, j) != space.gram(j, i))
                fail("NonSymmetricGram", "gram matrix is not symmetric");
    if (determinant(space.gram) == 0) fail("DegenerateForm", "gram matrix is singular");

    for (const auto& row : basis_rows)
        if (row.size() != space.dim) fail("BadShape", "basis vector of wrong dimension");
    if (basis_rows.size() > space.dim) fail("DependentBasis", "more basis vectors than dim");
    if (ff_rep.size() != space.dim) fail("BadShape", "ff vector of wrong dimension");

    auto data = std::make_shared<LatticeData>();
    data->space = space;
    data->basis = Mat::from_rows(basis_rows, space.dim);
    data->ff_rep = ff_rep;

    if (rank(data->basis) != basis_rows.size())
        fail("DependentBasis", "lattice basis rows are linearly dependent");

    for (std::size_t i = 0; i < basis_rows.size(); ++i)
        for (std::size_t j = 0; j < basis_rows.size(); ++j) {
            Rat p = pair(space, basis_rows[i], basis_rows[j]);
            if (!is_integer(p))
                fail("OddLattice", "basis pairing <b" + std::to_string(i) + ",b" +
                                       std::to_string(j) + "> = " + to_string(p) +
                                       " is not integral");
            if (i == j && !is_integer(p / 2))
                fail("OddLattice",
                     "basis norm <b" + std::to_string(i) + ",b" + std::to_string(i) + "> = " +
                         to_string(p) + " is odd");
        }

    data->build_decomposition();

    if (!data->in_dual(ff_rep))
        fail("FFNotInDual", "Feigin-Fuchs vector does not pair integrally with the lattice");
    return data;
}

// Simple-object labels of the full-rank theory, in deterministic order.
inline std::vector<Coset> discriminant_enumerate(const DataPtr& data) {
    if (!data->full_rank_nondegenerate())
        fail("InfiniteDiscriminant",
             "discriminant group is infinite (lattice has null or perp directions)");
    const auto& db = data->dec.d_basis;
    const auto& inv = data->dec.d_invariants;
    std::vector<Coset> out;
    std::vector<Int> tuple(db.size(), 0);
    while (true) {
        Vec rep = zero_vec(data->dim());
        for (std::size_t i = 0; i < db.size(); ++i)
            if (tuple[i] != 0) rep = vec_add(rep, vec_scale(Rat(tuple[i]), db[i]));
        out.push_back(data->coset_of(rep));
        std::size_t pos = db.size();
        while (pos > 0) {
            --pos;
            tuple[pos] += 1;
            if (tuple[pos] < inv[pos]) break;
            tuple[pos] = 0;
            if (pos == 0) return out;
        }
        if (db.empty()) return out;  // rank 0: only the zero coset
    }
}

inline Int discriminant_order(const DataPtr& data) {
    Int n = 1;
    for (const auto& d : data->dec.d_invariants) n *= d;
    return n;
}

// Adapted basis for the quotient of two nested lattices: returns generators
// g_i of the super lattice and invariants e_i with sub = span{e_i g_i}.
struct QuotientBasis {
    std::vector<Vec> generators;
    std::vector<Int> invariants;
    Int order = 1;
};

inline QuotientBasis quotient_adapted_basis(const Mat& sub_rows, const Mat& super_rows) {
    if (sub_rows.rows() != super_rows.rows())
        fail("InfiniteQuotient", "sublattice has smaller rank, quotient is infinite");
    std::size_t r = super_rows.rows();
    QuotientBasis out;
    if (r == 0) return out;
    IMat a(r, std::vector<Int>(r));
    for (std::size_t i = 0; i < r; ++i) {
        auto coords = coordinates_in_rows(super_rows, sub_rows.row(i));
        if (!coords) fail("NotASublattice", "sub basis vector outside the super lattice span");
        for (std::size_t j = 0; j < r; ++j) {
            if (!is_integer((*coords)[j]))
                fail("NotASublattice", "sub basis vector has non-integer coordinates");
            a[i][j] = (*coords)[j].get_num();
        }
    }
    SmithForm s = smith_normal_form(a);
    if (s.rank != r) fail("InfiniteQuotient", "sublattice does not have full rank");
    Mat vmat(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) vmat(i, j) = Rat(s.v[i][j]);
    Mat adapted = inverse(vmat) * super_rows;
    out.generators = adapted.row_list();
    out.invariants = s.divisors;
    for (const auto& d : s.divisors) out.order *= d;
    return out;
}

inline std::vector<Vec> quotient_representatives(const QuotientBasis& qb, std::size_t dim) {
    std::vector<Vec> reps;
    std::vector<Int> tuple(qb.generators.size(), 0);
    while (true) {
        Vec rep = zero_vec(dim);
        for (std::size_t i = 0; i < qb.generators.size(); ++i)
            if (tuple[i] != 0) rep = vec_add(rep, vec_scale(Rat(tuple[i]), qb.generators[i]));
        reps.push_back(rep);
        std::size_t pos = qb.generators.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            tuple[pos] += 1;
            if (tuple[pos] < qb.invariants[pos]) {
                done = false;
                break;
            }
            tuple[pos] = 0;
        }
        if (done) return reps;
    }
}

}  // namespace gvlat
