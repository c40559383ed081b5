#include <doctest.h>

#include <cmath>
#include <random>

#include "qchern/chern.hpp"
#include "qchern/tomography.hpp"
#include "support/fixtures.hpp"

using namespace qchern;
using qchern::testing::coherent_experiment;
using qchern::testing::ellipse;

TEST_CASE("prepare_initial populations") {
    const auto m = ellipse(0.3);
    SUBCASE("f = 1 is the pure ground state at the north pole") {
        const auto rho = prepare_initial(m, {1.0});
        CHECK(rho.trace == doctest::Approx(1.0));
        CHECK(rho.r.z == doctest::Approx(-1.0));
        CHECK(rho.r.norm() == doctest::Approx(1.0));
    }
    SUBCASE("f = 0.988 shrinks the Bloch vector to 0.976") {
        const auto rho = prepare_initial(m, {0.988});
        CHECK(rho.r.z == doctest::Approx(-0.976));
        CHECK(std::abs(rho.r.x) < 1e-15);
        CHECK(std::abs(rho.r.y) < 1e-15);
    }
    SUBCASE("f close to 1/2 is nearly maximally mixed") {
        const auto rho = prepare_initial(m, {0.5 + 1e-9});
        CHECK(rho.r.norm() < 1e-8);
    }
}

TEST_CASE("PreparationModel rejects f outside (1/2, 1]") {
    CHECK_THROWS_AS(PreparationModel{0.5}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(PreparationModel{1.0001}.validate(), std::invalid_argument);
    CHECK_NOTHROW(PreparationModel{1.0}.validate());
    CHECK(PreparationModel{0.988}.contrast() == doctest::Approx(0.976));
}

TEST_CASE("bloch_expectations examples") {
    const PureState up{{cplx{1, 0}, cplx{0, 0}}};
    CHECK(bloch_expectations(up).z == 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    const PureState plus_y{{cplx{s, 0}, cplx{0, s}}};
    const auto b = bloch_expectations(plus_y);
    CHECK(b.y == doctest::Approx(1.0));
    CHECK(std::abs(b.x) < 1e-15);
    const QubitState mixed = DensityMatrix::maximally_mixed();
    CHECK(bloch_expectations(mixed).norm() == 0.0);
    const QubitState pure = plus_y;
    CHECK(bloch_expectations(pure).y == doctest::Approx(1.0));
}

TEST_CASE("generalized_force") {
    const auto m = ellipse();
    CHECK(generalized_force(m, 0.0, 0.3) == 0.0);
    CHECK(std::abs(generalized_force(m, kPi, 0.3)) < 1e-9 * m.omega1);
    CHECK(generalized_force(m, kPi / 2, 0.15) == doctest::Approx(-0.075 * m.omega1));
}

TEST_CASE("sample_shots examples") {
    SUBCASE("certain outcome has no spread") {
        const auto e = sample_shots(1.0, {1000, 3});
        CHECK(e.estimate == 1.0);
        CHECK(e.std_error == 0.0);
        CHECK(sample_shots(-1.0, {1000, 3}).estimate == -1.0);
    }
    SUBCASE("zero expectation, 1e4 shots") {
        const auto e = sample_shots(0.0, {10000, 5});
        CHECK(std::abs(e.estimate) < 0.05);
        CHECK(e.std_error == doctest::Approx(0.01).epsilon(0.01));
    }
    SUBCASE("deterministic for a seed") {
        const auto a = sample_shots(0.3, {777, 42});
        const auto b = sample_shots(0.3, {777, 42});
        CHECK(a.estimate == b.estimate);
        CHECK(a.std_error == b.std_error);
        CHECK(sample_shots(0.3, {777, 43}).estimate != a.estimate);
    }
    SUBCASE("invalid inputs") {
        CHECK_THROWS_AS(sample_shots(0.0, {0, 1}), std::invalid_argument);
        CHECK_THROWS_AS(sample_shots(1.5, {10, 1}), std::invalid_argument);
    }
}

TEST_CASE("sample_shots is unbiased with the stated spread") {
    const double truth = 0.37;
    const long n = 2000;
    const int seeds = 1000;
    double sum = 0.0, sum2 = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const double x = sample_shots(truth, {n, derive_seed(99, static_cast<std::uint64_t>(s))}).estimate;
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / seeds;
    const double var = sum2 / seeds - mean * mean;
    const double sigma = std::sqrt((1.0 - truth * truth) / n);
    CHECK(std::abs(mean - truth) < 4.0 * sigma / std::sqrt(seeds));
    CHECK(std::sqrt(var) == doctest::Approx(sigma).epsilon(0.1));
}

TEST_CASE("seed derivation") {
    CHECK(mix64(0) == 0);
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    const auto sb = sample_bloch({0.1, 0.2, 0.3}, 500, 17);
    CHECK(sb.x.estimate == sample_shots(0.1, {500, derive_seed(17, 0)}).estimate);
    CHECK(sb.z.estimate == sample_shots(0.3, {500, derive_seed(17, 2)}).estimate);
}

TEST_CASE("imperfect preparation scales C1 by 2f - 1") {
    // Coherent evolution is linear in the Bloch vector, so the response scales exactly.
    auto e = coherent_experiment(0.0, 1.0);
    const double c_pure = chern_integrate(run_curvature_experiment(e)).c1_raw;
    for (double f : {0.9, 0.988, 0.75, 0.5 + 1e-6}) {
        e.prep.ground_fidelity = f;
        const auto r = chern_integrate(run_curvature_experiment(e));
        CHECK(r.c1_raw == doctest::Approx((2 * f - 1) * c_pure).epsilon(1e-9).scale(1e-9));
        if (f > 0.6) CHECK(r.c1_corrected == doctest::Approx(c_pure).epsilon(1e-9));
    }
}
