#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "gvlat/cocycle.hpp"

using namespace gvlat;
using namespace fixtures;

namespace {

// same gram and ff, lattice rescaled by an integer factor
DataPtr rescaled(const DataPtr& data, long factor) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < data->rank(); ++i)
        rows.push_back(vec_scale(Rat(factor), data->basis.row(i)));
    return validate(data->space, rows, data->ff_rep);
}

DataPtr hyperbolic2() {
    BilinearSpace sp{2, gram_from({{0, 1}, {1, 0}})};
    return validate(sp, {Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}}, Vec{Rat(0), Rat(0)});
}

}  // namespace

TEST_CASE("epsilon from an ordered basis") {
    SECTION("rank 1 lattices carry the trivial cocycle") {
        auto eps = epsilon_from_basis(a1());
        CHECK(eps.eval(Vec{Rat(1)}, Vec{Rat(1)}).is_one());
        CHECK(eps.eval(Vec{Rat(3)}, Vec{Rat(-2)}).is_one());
    }
    SECTION("half rank lattice carries the trivial cocycle") {
        auto h = halfrank();
        auto eps = epsilon_from_basis(h);
        CHECK(eps.eval(Vec{Rat(0), Rat(4)}, Vec{Rat(0), Rat(-3)}).is_one());
    }
    SECTION("hyperbolic rank 2 lattice") {
        auto hy = hyperbolic2();
        auto eps = epsilon_from_basis(hy);
        Vec e1{Rat(1), Rat(0)}, e2{Rat(0), Rat(1)};
        CHECK(eps.eval(e1, e2) == Phase::minus_one());
        CHECK(eps.eval(e2, e1) == Phase::one());
        // commutator is (-1)^{<e1,e2>} = -1
        CHECK(eps.eval(e1, e2) / eps.eval(e2, e1) == sign_phase(hy->pairing(e1, e2)));
    }
    SECTION("non-basis input is rejected") {
        auto a = a2();
        CHECK_THROWS_AS(TwoCocycle::from_basis(a, {Vec{Rat(2), Rat(0)}, Vec{Rat(0), Rat(1)}}),
                        Error);
        CHECK_THROWS_AS(TwoCocycle::from_basis(a, {Vec{ratio(1, 2), Rat(0)}, Vec{Rat(0), Rat(1)}}),
                        Error);
    }
}

TEST_CASE("two-cocycle verification") {
    SECTION("constructed cocycles pass") {
        for (const auto& data : {a1(), a2(), d8(), halfrank(), hyperbolic2(), mixed3()}) {
            auto report = verify_two_cocycle(epsilon_from_basis(data));
            CHECK(report.pass());
        }
    }
    SECTION("a symmetric table on the hyperbolic lattice fails the commutator") {
        auto hy = hyperbolic2();
        auto bad = TwoCocycle::from_table(hy, hy->basis.row_list(), {{0, 0}, {0, 0}});
        auto report = verify_two_cocycle(bad);
        CHECK_FALSE(report.pass());
        CHECK_FALSE(report.commutator);
        REQUIRE(report.witness.size() == 2);
        CHECK_FALSE(sign_phase(hy->pairing(report.witness[0], report.witness[1])).is_one());
    }
    SECTION("empty lattice passes vacuously") {
        auto report = verify_two_cocycle(epsilon_from_basis(empty2()));
        CHECK(report.pass());
    }
}

TEST_CASE("epsilon is bimultiplicative") {
    std::mt19937_64 rng(5);
    auto data = a2();
    auto eps = epsilon_from_basis(data);
    for (int t = 0; t < 100; ++t) {
        Vec a = random_lattice_vector(data, rng);
        Vec b = random_lattice_vector(data, rng);
        Vec c = random_lattice_vector(data, rng);
        CHECK(eps.eval(vec_add(a, b), c) == eps.eval(a, c) * eps.eval(b, c));
        CHECK(eps.eval(a, vec_add(b, c)) == eps.eval(a, b) * eps.eval(a, c));
    }
}

TEST_CASE("sigma solver on index-2 rescaling of A1") {
    auto coarse = a1();
    auto fine = rescaled(coarse, 2);  // basis {2}: the sublattice
    auto eps_fine = epsilon_from_basis(fine);
    auto eps_coarse = epsilon_from_basis(coarse);

    auto sigma = solve_sigma(fine, eps_fine, coarse, eps_coarse);
    REQUIRE(sigma.group.size() == 2);

    // the solver already verified the conditions exhaustively; confirm the
    // normalisation explicitly here
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(sigma.values[0][i].is_one());
        CHECK(sigma.values[i][0].is_one());
    }

    // brute-force oracle finds a valid table too
    auto brute = brute_force_sigma(fine, eps_fine, coarse);
    REQUIRE(brute.has_value());
}

TEST_CASE("sigma solver on index-9 rescaling of A2") {
    auto coarse = a2();
    auto fine = rescaled(coarse, 3);
    auto sigma =
        solve_sigma(fine, epsilon_from_basis(fine), coarse, epsilon_from_basis(coarse));
    CHECK(sigma.group.size() == 9);
    // solve_sigma throws if any of the 9^3 coboundary conditions fail, so
    // reaching this line is the assertion; spot-check symmetry bookkeeping
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            CHECK((sigma.values[i][j] / sigma.values[j][i]) ==
                  braiding_phase(fine, sigma.group[i].rep(), sigma.group[j].rep()));
}

TEST_CASE("sigma solver on index-4 rescaling of the d8 lattice") {
    auto coarse = d8();
    auto fine = rescaled(coarse, 2);
    auto sigma =
        solve_sigma(fine, epsilon_from_basis(fine), coarse, epsilon_from_basis(coarse));
    CHECK(sigma.group.size() == 4);
    auto brute = brute_force_sigma(fine, epsilon_from_basis(fine), coarse);
    CHECK(brute.has_value());
}

TEST_CASE("sigma solver error paths") {
    auto a = a1();
    auto b = a2();
    CHECK_THROWS_AS(solve_sigma(a, epsilon_from_basis(a), b, epsilon_from_basis(b)), Error);

    BilinearSpace sp{2, gram_from({{2, 0}, {0, 2}})};
    auto big = validate(sp, {Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}}, zero_vec(2));
    auto half = validate(sp, {Vec{Rat(1), Rat(0)}}, zero_vec(2));
    auto doubled = validate(sp, {Vec{Rat(2), Rat(0)}, Vec{Rat(0), Rat(2)}}, zero_vec(2));
    try {
        solve_sigma(half, epsilon_from_basis(half), big, epsilon_from_basis(big));
        FAIL("expected InfiniteQuotient");
    } catch (const Error& e) {
        CHECK(e.name() == "InfiniteQuotient");
    }
    try {
        solve_sigma(big, epsilon_from_basis(big), doubled, epsilon_from_basis(doubled));
        FAIL("expected NotASublattice");
    } catch (const Error& e) {
        CHECK(e.name() == "NotASublattice");
    }

    // nested lattices with non-nested ff cosets
    auto fine_ff = validate(sp, {Vec{Rat(2), Rat(0)}, Vec{Rat(0), Rat(2)}},
                            Vec{ratio(1, 2), Rat(0)});
    try {
        solve_sigma(fine_ff, epsilon_from_basis(fine_ff), big, epsilon_from_basis(big));
        FAIL("expected FFMismatch");
    } catch (const Error& e) {
        CHECK(e.name() == "FFMismatch");
    }
}
