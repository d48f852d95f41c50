#pragma once

// Shared construction helpers for the test lattices.

#include <random>
#include <vector>

#include "gvlat/lattice.hpp"

namespace fixtures {

using namespace gvlat;

inline Mat gram_from(const std::vector<std::vector<long>>& rows) {
    Mat g(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) g(i, j) = Rat(rows[i][j]);
    return g;
}

inline Vec qvec(const std::vector<Rat>& entries) { return entries; }

// rank 1, gram [[2]]; discriminant group of order 2
inline DataPtr a1(const Rat& ff = Rat(0)) {
    BilinearSpace sp{1, gram_from({{2}})};
    return validate(sp, {Vec{Rat(1)}}, Vec{ff});
}

// rank 2 hexagonal lattice, |disc| = 3
inline DataPtr a2(const Vec& ff = Vec{Rat(0), Rat(0)}) {
    BilinearSpace sp{2, gram_from({{2, -1}, {-1, 2}})};
    return validate(sp, {Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}}, ff);
}

// rank 2 rectangular lattice with |disc| = 8
inline DataPtr d8(const Vec& ff = Vec{Rat(0), Rat(0)}) {
    BilinearSpace sp{2, gram_from({{2, 0}, {0, 4}})};
    return validate(sp, {Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}}, ff);
}

// dim 2 hyperbolic pairing with a half-rank null lattice
inline DataPtr halfrank(const Vec& ff = Vec{Rat(1), Rat(0)}) {
    BilinearSpace sp{2, gram_from({{0, 1}, {1, 0}})};
    return validate(sp, {Vec{Rat(0), Rat(1)}}, ff);
}

// no lattice at all; the dual is the whole space
inline DataPtr empty2(const Vec& ff = Vec{Rat(0), Rat(0)}) {
    BilinearSpace sp{2, gram_from({{2, 0}, {0, 2}})};
    return validate(sp, {}, ff);
}

// dim 3 example with null, F and D parts all present
inline DataPtr mixed3(const Vec& ff = Vec{Rat(0), Rat(0), Rat(0)}) {
    BilinearSpace sp{3, gram_from({{0, 1, 0}, {1, 0, 0}, {0, 0, 2}})};
    return validate(sp, {Vec{Rat(0), Rat(1), Rat(0)}, Vec{Rat(0), Rat(0), Rat(1)}}, ff);
}

inline Rat random_rat(std::mt19937_64& rng, long num_bound = 30, long den_bound = 10) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound);
    std::uniform_int_distribution<long> den(1, den_bound);
    return ratio(num(rng), den(rng));
}

inline long random_int(std::mt19937_64& rng, long bound = 8) {
    std::uniform_int_distribution<long> d(-bound, bound);
    return d(rng);
}

// random element of the dual: integer combination of the free part plus
// rational combination of the perp part
inline Vec random_dual(const DataPtr& data, std::mt19937_64& rng) {
    Vec x = zero_vec(data->dim());
    for (const auto& g : data->dec.gamma_basis)
        x = vec_add(x, vec_scale(Rat(random_int(rng)), g));
    for (const auto& p : data->dec.perp_basis)
        x = vec_add(x, vec_scale(random_rat(rng), p));
    return x;
}

// random lattice vector
inline Vec random_lattice_vector(const DataPtr& data, std::mt19937_64& rng) {
    Vec x = zero_vec(data->dim());
    for (std::size_t i = 0; i < data->rank(); ++i)
        x = vec_add(x, vec_scale(Rat(random_int(rng)), data->basis.row(i)));
    return x;
}

}  // namespace fixtures
