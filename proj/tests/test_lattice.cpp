#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"
#include "gvlat/lattice.hpp"

using namespace gvlat;
using namespace fixtures;

namespace {

std::string error_name(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.name();
    }
    return "";
}

}  // namespace

TEST_CASE("validate accepts the reference lattices") {
    auto a = a1();
    CHECK(discriminant_order(a) == 2);

    auto h = halfrank();
    CHECK(h->null_rank() == 1);

    auto m = mixed3();
    CHECK(m->rank() == 2);
}

TEST_CASE("validate rejects malformed data with named errors") {
    BilinearSpace odd{1, gram_from({{1}})};
    CHECK(error_name([&] { validate(odd, {Vec{Rat(1)}}, Vec{Rat(0)}); }) == "OddLattice");

    BilinearSpace asym{2, gram_from({{2, 1}, {0, 2}})};
    CHECK(error_name([&] { validate(asym, {}, Vec{Rat(0), Rat(0)}); }) == "NonSymmetricGram");

    BilinearSpace degen{2, gram_from({{1, 1}, {1, 1}})};
    CHECK(error_name([&] { validate(degen, {}, Vec{Rat(0), Rat(0)}); }) == "DegenerateForm");

    BilinearSpace ok{2, gram_from({{2, 0}, {0, 2}})};
    CHECK(error_name([&] {
              validate(ok, {Vec{Rat(1), Rat(0)}, Vec{Rat(2), Rat(0)}}, Vec{Rat(0), Rat(0)});
          }) == "DependentBasis");

    CHECK(error_name([&] {
              validate(ok, {Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}}, Vec{ratio(1, 3), Rat(0)});
          }) == "FFNotInDual");
}

TEST_CASE("dual decomposition of the reference lattices") {
    SECTION("full rank: everything sits in D") {
        auto a = a1();
        CHECK(a->dec.v_basis.empty());
        CHECK(a->dec.null_basis.empty());
        CHECK(a->dec.f_basis.empty());
        REQUIRE(a->dec.d_basis.size() == 1);
        CHECK(a->dec.d_basis[0] == Vec{ratio(1, 2)});
        CHECK(a->dec.d_invariants == std::vector<Int>{2});
    }
    SECTION("half rank: N = lattice, F complements it, V = D = 0") {
        auto h = halfrank();
        CHECK(h->dec.v_basis.empty());
        CHECK(h->dec.d_basis.empty());
        REQUIRE(h->dec.null_basis.size() == 1);
        CHECK(h->dec.null_basis[0] == Vec{Rat(0), Rat(1)});
        REQUIRE(h->dec.perp_basis.size() == 1);
        CHECK(vec_is_zero(Vec{h->dec.perp_basis[0][0]}));  // perp is the x1 = 0 line
        REQUIRE(h->dec.f_basis.size() == 1);
        // F is spanned by +-(1,0): it lies in Gamma, not in the lattice
        CHECK(h->dec.f_basis[0][1] == 0);
        CHECK((h->dec.f_basis[0][0] == 1 || h->dec.f_basis[0][0] == -1));
    }
    SECTION("empty lattice: V is the whole space") {
        auto e = empty2();
        CHECK(e->dec.v_basis.size() == 2);
        CHECK(e->dec.null_basis.empty());
        CHECK(e->dec.f_basis.empty());
        CHECK(e->dec.d_basis.empty());
        CHECK(e->dec.gamma_basis.empty());
    }
    SECTION("mixed example has all three nontrivial parts") {
        auto m = mixed3();
        CHECK(m->dec.null_basis.size() == 1);
        CHECK(m->dec.f_basis.size() == 1);
        CHECK(m->dec.d_basis.size() == 1);
        CHECK(m->dec.v_basis.empty());  // dim 3 = 0 + 1 + 1 + 1
        CHECK(m->dec.d_invariants == std::vector<Int>{2});
    }
}

TEST_CASE("decomposition blocks satisfy the splitting identities") {
    for (const auto& data : {a2(), halfrank(), mixed3(), d8()}) {
        // every stored generator pairs integrally with the lattice
        for (const auto& g : data->dec.gamma_basis) CHECK(data->in_dual(g));
        for (const auto& p : data->dec.perp_basis) CHECK(data->in_dual(p));
        for (const auto& f : data->dec.f_basis) CHECK(data->in_dual(f));

        // the complement really complements N inside the lattice
        CHECK(data->dec.complement_basis.size() + data->dec.null_basis.size() == data->rank());
        for (const auto& c : data->dec.complement_basis) CHECK(data->in_lattice(c));
        for (const auto& nv : data->dec.null_basis) CHECK(data->in_lattice(nv));

        // rank F = rank N
        CHECK(data->dec.f_basis.size() == data->dec.null_basis.size());
    }
}

TEST_CASE("random dual vectors have integral F and D coordinates") {
    std::mt19937_64 rng(23);
    for (const auto& data : {a2(), halfrank(), mixed3()}) {
        Mat rows(0, 0);
        std::vector<Vec> all;
        for (const auto& v : data->dec.v_basis) all.push_back(v);
        for (const auto& v : data->dec.null_basis) all.push_back(v);
        for (const auto& v : data->dec.f_basis) all.push_back(v);
        for (const auto& v : data->dec.d_basis) all.push_back(v);
        Mat combined = Mat::from_rows(all, data->dim());
        for (int trial = 0; trial < 50; ++trial) {
            Vec x = random_dual(data, rng);
            auto coords = coordinates_in_rows(combined, x);
            REQUIRE(coords.has_value());
            std::size_t pos = data->dec.v_basis.size() + data->dec.null_basis.size();
            for (std::size_t i = 0; i < data->dec.f_basis.size(); ++i)
                CHECK(is_integer((*coords)[pos + i]));
            pos += data->dec.f_basis.size();
            for (std::size_t i = 0; i < data->dec.d_basis.size(); ++i)
                CHECK(is_integer((*coords)[pos + i]));
        }
    }
}

TEST_CASE("discriminant enumeration") {
    auto a = a1();
    auto labels = discriminant_enumerate(a);
    REQUIRE(labels.size() == 2);
    CHECK(labels[0].rep() == Vec{Rat(0)});
    CHECK(labels[1].rep() == Vec{ratio(1, 2)});

    auto b = a2();
    auto labels2 = discriminant_enumerate(b);
    REQUIRE(labels2.size() == 3);
    std::set<Coset> expect{b->coset_of(Vec{Rat(0), Rat(0)}),
                           b->coset_of(Vec{ratio(2, 3), ratio(1, 3)}),
                           b->coset_of(Vec{ratio(4, 3), ratio(2, 3)})};
    CHECK(std::set<Coset>(labels2.begin(), labels2.end()) == expect);

    CHECK(error_name([&] { discriminant_enumerate(halfrank()); }) == "InfiniteDiscriminant");
    CHECK(error_name([&] { discriminant_enumerate(empty2()); }) == "InfiniteDiscriminant");
}

TEST_CASE("discriminant order equals |det gram| for full rank lattices") {
    CHECK(discriminant_order(a1()) == 2);
    CHECK(discriminant_order(a2()) == 3);
    CHECK(discriminant_order(d8()) == 8);
}

TEST_CASE("canonical section") {
    auto a = a1();
    CHECK(a->section(Vec{ratio(3, 2)}) == Vec{ratio(1, 2)});
    CHECK(a->section(Vec{Rat(1)}) == Vec{Rat(0)});  // s(lattice) = 0

    auto h = halfrank();
    CHECK(h->section(Vec{Rat(2), ratio(7, 3)}) == Vec{Rat(2), ratio(1, 3)});
    CHECK(h->section(Vec{Rat(0), Rat(5)}) == Vec{Rat(0), Rat(0)});

    CHECK_THROWS_AS(a->section(Vec{ratio(1, 3)}), Error);
}

TEST_CASE("section is idempotent and constant on cosets") {
    std::mt19937_64 rng(37);
    for (const auto& data : {a2(), halfrank(), mixed3(), d8()}) {
        for (int trial = 0; trial < 100; ++trial) {
            Vec x = random_dual(data, rng);
            Vec s = data->section(x);
            CHECK(data->section(s) == s);
            Vec lam = random_lattice_vector(data, rng);
            CHECK(data->section(vec_add(x, lam)) == s);
            CHECK(data->in_lattice(vec_sub(x, s)));  // s(x) represents the same coset
        }
        // lattice basis vectors map to zero
        for (std::size_t i = 0; i < data->rank(); ++i)
            CHECK(vec_is_zero(data->section(data->basis.row(i))));
    }
}

TEST_CASE("k cocycle") {
    auto a = a1();
    CHECK(a->k_cocycle(Vec{ratio(1, 2)}, Vec{ratio(1, 2)}) == Vec{Rat(-1)});

    auto h = halfrank();
    CHECK(h->k_cocycle(Vec{Rat(0), ratio(3, 4)}, Vec{Rat(0), ratio(3, 4)}) ==
          Vec{Rat(0), Rat(-1)});

    std::mt19937_64 rng(41);
    for (const auto& data : {a2(), halfrank(), d8()}) {
        std::vector<Vec> reps;
        if (data->full_rank_nondegenerate()) {
            for (const auto& c : discriminant_enumerate(data)) reps.push_back(c.rep());
        } else {
            for (int i = 0; i < 100; ++i) reps.push_back(data->section(random_dual(data, rng)));
        }
        Vec zero = zero_vec(data->dim());
        for (const auto& x : reps) {
            CHECK(vec_is_zero(data->k_cocycle(zero, x)));
            CHECK(vec_is_zero(data->k_cocycle(x, zero)));
            for (const auto& y : reps) {
                Vec k = data->k_cocycle(x, y);
                CHECK(data->in_lattice(k));  // the defect of the section is a lattice vector
                CHECK(k == data->k_cocycle(y, x));
            }
        }
    }
}

TEST_CASE("pairings") {
    auto a = a1();
    CHECK(a->pairing(Vec{ratio(1, 2)}, Vec{ratio(1, 2)}) == ratio(1, 2));

    auto h = halfrank();
    CHECK(h->pairing(Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}) == 1);
    CHECK(h->pairing(zero_vec(2), Vec{Rat(5), ratio(1, 7)}) == 0);
}
