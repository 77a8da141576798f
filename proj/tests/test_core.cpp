#include <doctest.h>

#include <numeric>
#include <random>

#include "siruv/patch_params.hpp"
#include "siruv/residence_matrix.hpp"
#include "siruv/state.hpp"
#include "test_util.hpp"

using namespace siruv;

namespace {

const std::vector<std::vector<double>> coupled_rows = {
    {0.2, 0.7, 0.1}, {0.5, 0.1, 0.4}, {0.3, 0.6, 0.1}};

} // namespace

TEST_CASE("patch params validation") {
    PatchParams p = testutil::reference_params();
    CHECK_NOTHROW(p.validate());

    SUBCASE("negative rate") {
        p.gamma = -0.1;
        CHECK_THROWS_AS(p.validate(), InvalidParams);
    }
    SUBCASE("non-finite rate") {
        p.theta = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(p.validate(), InvalidParams);
    }
    SUBCASE("zero host population") {
        p.host_pop = 0.0;
        CHECK_THROWS_AS(p.validate(), InvalidParams);
    }
    SUBCASE("negative vector population") {
        p.vector_pop = -5.0;
        CHECK_THROWS_AS(p.validate(), InvalidParams);
    }
}

TEST_CASE("residence matrix validation") {
    SUBCASE("coupled three-patch matrix is row-stochastic") {
        const ResidenceMatrix P = validate_residence_matrix(coupled_rows, 1e-12);
        CHECK(P.size() == 3);
        // entries stored untouched
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(P(i, j) == coupled_rows[i][j]);
    }
    SUBCASE("identity is row-stochastic") {
        CHECK_NOTHROW(validate_residence_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 1e-12));
        const ResidenceMatrix I3 = ResidenceMatrix::identity(3);
        CHECK(I3(0, 0) == 1.0);
        CHECK(I3(0, 1) == 0.0);
    }
    SUBCASE("row sum violation") {
        try {
            validate_residence_matrix({{0.5, 0.6}, {0.5, 0.5}});
            FAIL("expected RowSumViolation");
        } catch (const RowSumViolation& e) {
            CHECK(e.row == 0);
            CHECK(e.sum == doctest::Approx(1.1));
        }
    }
    SUBCASE("non-square input") {
        CHECK_THROWS_AS(validate_residence_matrix({{1.0, 0.0}}), NonSquareMatrix);
        CHECK_THROWS_AS(validate_residence_matrix({{1.0, 0.0}, {1.0}}), NonSquareMatrix);
        CHECK_THROWS_AS(validate_residence_matrix({}), NonSquareMatrix);
    }
    SUBCASE("entries outside [0,1]") {
        try {
            validate_residence_matrix({{1.2, -0.2}, {0.5, 0.5}});
            FAIL("expected EntryOutOfRange");
        } catch (const EntryOutOfRange& e) {
            CHECK(e.row == 0);
            CHECK(e.col == 0);
            CHECK(e.entry == 1.2);
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(validate_residence_matrix({{nan, 1.0}, {0.5, 0.5}}), EntryOutOfRange);
    }
    SUBCASE("validation is idempotent") {
        std::mt19937 rng(7);
        for (int rep = 0; rep < 20; ++rep) {
            const auto rows = testutil::random_stochastic_rows(rng, 1 + rep % 4);
            const ResidenceMatrix once = validate_residence_matrix(rows);
            const ResidenceMatrix twice = validate_residence_matrix(once.rows());
            CHECK(once == twice);
        }
    }
}

TEST_CASE("effective population") {
    const ResidenceMatrix P = validate_residence_matrix(coupled_rows);
    const std::vector<double> N = {20000.0, 20000.0, 20000.0};

    SUBCASE("coupled matrix, equal populations: exact column totals") {
        CHECK(effective_population(P, N, 0) == 20000.0);
        CHECK(effective_population(P, N, 1) == 28000.0);
        CHECK(effective_population(P, N, 2) == 12000.0);
    }
    SUBCASE("identity matrix returns each patch's own population") {
        const ResidenceMatrix I3 = ResidenceMatrix::identity(3);
        const std::vector<double> pops = {123.0, 45.0, 6789.0};
        for (std::size_t j = 0; j < 3; ++j) CHECK(effective_population(I3, pops, j) == pops[j]);
    }
    SUBCASE("patch nobody visits") {
        const ResidenceMatrix P2 = validate_residence_matrix({{1.0, 0.0}, {1.0, 0.0}});
        const std::vector<double> pops = {100.0, 300.0};
        CHECK(effective_population(P2, pops, 0) == 400.0);
        try {
            effective_population(P2, pops, 1);
            FAIL("expected ZeroEffectivePopulation");
        } catch (const ZeroEffectivePopulation& e) {
            CHECK(e.patch == 1);
        }
    }
    SUBCASE("bad inputs") {
        CHECK_THROWS_AS(effective_population(P, std::vector<double>{1.0, 2.0}, 0),
                        DimensionMismatch);
        CHECK_THROWS_AS(effective_population(P, N, 3), DimensionMismatch);
        CHECK_THROWS_AS(effective_population(P, std::vector<double>{1.0, -2.0, 3.0}, 0),
                        InvalidParams);
    }
}

TEST_CASE("effective population properties") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(1.0, 1e5);

    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 2 + rep % 3;
        const ResidenceMatrix P =
            validate_residence_matrix(testutil::random_stochastic_rows(rng, n));
        std::vector<double> N1(n), N2(n);
        for (std::size_t k = 0; k < n; ++k) {
            N1[k] = u(rng);
            N2[k] = u(rng);
        }

        // linearity in host populations
        const double a = 0.25, b = 3.5;
        std::vector<double> mix(n);
        for (std::size_t k = 0; k < n; ++k) mix[k] = a * N1[k] + b * N2[k];
        for (std::size_t j = 0; j < n; ++j) {
            const double lhs = effective_population(P, mix, j);
            const double rhs =
                a * effective_population(P, N1, j) + b * effective_population(P, N2, j);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }

        // permuting patches permutes results
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::vector<double>> prows(n, std::vector<double>(n));
        std::vector<double> pN(n);
        for (std::size_t i = 0; i < n; ++i) {
            pN[perm[i]] = N1[i];
            for (std::size_t j = 0; j < n; ++j) prows[perm[i]][perm[j]] = P(i, j);
        }
        const ResidenceMatrix Pp = validate_residence_matrix(prows);
        for (std::size_t j = 0; j < n; ++j)
            CHECK(effective_population(Pp, pN, perm[j]) ==
                  doctest::Approx(effective_population(P, N1, j)).epsilon(1e-12));

        // total population is conserved across columns
        const std::vector<double> eff = effective_populations(P, N1);
        double eff_total = 0.0, pop_total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            eff_total += eff[k];
            pop_total += N1[k];
        }
        CHECK(eff_total == doctest::Approx(pop_total).epsilon(1e-9));
    }
}

TEST_CASE("patch state validation") {
    CHECK_NOTHROW(PatchState{}.validate());
    CHECK_NOTHROW(PatchState{0.99, 0.01, 0.0, 1.0, 0.0}.validate());

    CHECK_THROWS_AS((PatchState{0.9, 0.2, 0.0, 1.0, 0.0}.validate()), InvalidState);
    CHECK_THROWS_AS((PatchState{1.0, 0.0, 0.0, 0.5, 0.4}.validate()), InvalidState);
    CHECK_THROWS_AS((PatchState{-0.1, 1.1, 0.0, 1.0, 0.0}.validate()), InvalidState);
    CHECK_THROWS_AS((PatchState{1.5, -0.5, 0.0, 1.0, 0.0}.validate()), InvalidState);
}

TEST_CASE("system state layout") {
    SystemState s(2);
    CHECK(s.patches() == 2);
    s.set_patch(1, PatchState{0.9, 0.05, 0.05, 0.8, 0.2});

    // canonical flattening: patch-major, compartments S,I,R,U,V
    CHECK(s[5] == 0.9);
    CHECK(s[6] == 0.05);
    CHECK(s[7] == 0.05);
    CHECK(s[8] == 0.8);
    CHECK(s[9] == 0.2);
    CHECK(s.patch(1) == PatchState{0.9, 0.05, 0.05, 0.8, 0.2});

    CHECK_THROWS_AS(s.patch(2), DimensionMismatch);
    CHECK_THROWS_AS(SystemState::from_flat({1.0, 2.0, 3.0}), DimensionMismatch);

    const SystemState f = SystemState::from_flat({1, 0, 0, 1, 0, 0.9, 0.05, 0.05, 0.8, 0.2});
    CHECK(f == SystemState{PatchState{}, PatchState{0.9, 0.05, 0.05, 0.8, 0.2}});
}
