#include <doctest.h>

#include <cmath>
#include <random>

#include "qchern/qubit_model.hpp"
#include "qchern/units.hpp"

using namespace qchern;
using qchern::units::mhz_to_angular;

namespace {

ManifoldParams lab_ellipse(double delta2_mhz = 0.0) {
    return {mhz_to_angular(30.0), mhz_to_angular(10.0), mhz_to_angular(delta2_mhz), 0.0};
}

}  // namespace

TEST_CASE("manifold_point on the lab ellipse") {
    const auto m = lab_ellipse();
    auto p = manifold_point(m, 0.0);
    CHECK(p.delta == doctest::Approx(mhz_to_angular(30.0)));
    CHECK(p.omega == 0.0);

    p = manifold_point(m, kPi / 2);
    CHECK(std::abs(p.delta) < 1e-6 * m.delta1);
    CHECK(p.omega == doctest::Approx(mhz_to_angular(10.0)));

    // delta2 = 1.5 delta1: south pole detuning is delta2 - delta1
    p = manifold_point(lab_ellipse(45.0), kPi);
    CHECK(p.delta == doctest::Approx(mhz_to_angular(15.0)));
    CHECK(p.omega == 0.0);
}

TEST_CASE("manifold_point rejects theta outside [0, pi]") {
    const auto m = lab_ellipse();
    CHECK_THROWS_AS(manifold_point(m, -1e-9), std::out_of_range);
    CHECK_THROWS_AS(manifold_point(m, kPi + 1e-9), std::out_of_range);
}

TEST_CASE("ManifoldParams validation") {
    CHECK_THROWS_AS((ManifoldParams{0.0, 1.0, 0.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ManifoldParams{1.0, -1.0, 0.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ManifoldParams{1.0, 1.0, 0.0, kTwoPi}.validate()), std::invalid_argument);
    CHECK_NOTHROW((ManifoldParams{1.0, 1.0, -5.0, 0.0}.validate()));
    CHECK(lab_ellipse().with_phi(-kPi / 2).phi == doctest::Approx(1.5 * kPi));
}

TEST_CASE("hamiltonian_at coefficients and spectrum") {
    const auto m = lab_ellipse();
    SUBCASE("equator, phi = 0: only sx survives") {
        const auto h = hamiltonian_at(m, kPi / 2);
        CHECK(h.hx == doctest::Approx(m.omega1));
        CHECK(h.hy == 0.0);
        CHECK(std::abs(h.hz) < 1e-6 * m.delta1);
        const auto ev = h.eigenvalues();
        CHECK(ev[1] == doctest::Approx(kPi * 1e7));
        CHECK(ev[0] == doctest::Approx(-kPi * 1e7));
    }
    SUBCASE("north pole: only sz") {
        const auto h = hamiltonian_at(m, 0.0);
        CHECK(h.hx == 0.0);
        CHECK(h.hy == 0.0);
        CHECK(h.hz == doctest::Approx(m.delta1));
    }
    SUBCASE("phi = pi/2 routes the drive to sy") {
        const auto h = hamiltonian_at(m.with_phi(kPi / 2), kPi / 3);
        CHECK(std::abs(h.hx) < 1e-9 * m.omega1);
        CHECK(h.hy == doctest::Approx(m.omega1 * std::sin(kPi / 3)));
    }
}

TEST_CASE("dense matrix reconstruction is exact and Hermitian") {
    const Hamiltonian2 h{0.3, -1.7, 2.25};
    const auto H = h.matrix();
    CHECK(H[0][1] == std::conj(H[1][0]));
    CHECK(H[0][0].imag() == 0.0);
    // Tr(H sx) = hx, Tr(H sy) = hy, Tr(H sz) = hz for H = 1/2 h.sigma
    CHECK((H[0][1] + H[1][0]).real() == h.hx);
    CHECK((cplx{0, 1} * (H[0][1] - H[1][0])).real() == h.hy);
    CHECK((H[0][0] - H[1][1]).real() == h.hz);
}

TEST_CASE("Bloch field norm and its zero set") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const ManifoldParams m{1.0 + std::abs(u(rng)), 0.5 + std::abs(u(rng)), u(rng), 0.0};
        for (double theta = 0.0; theta <= kPi; theta += 0.05) {
            const auto h = hamiltonian_at(m, theta);
            const double expect = std::hypot(m.omega1 * std::sin(theta), m.delta1 * std::cos(theta) + m.delta2);
            CHECK(h.norm() == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    // On-manifold degeneracy exactly at |delta2| = delta1
    const ManifoldParams touching{2.0, 1.0, 2.0, 0.0};
    CHECK(hamiltonian_at(touching, kPi).norm() == 0.0);
    CHECK_THROWS_AS(ground_state(touching, kPi), DegeneracyError);
    CHECK_NOTHROW(ground_state(touching, kPi / 2));
}

TEST_CASE("max_field_norm matches a dense scan") {
    for (const ManifoldParams& m : {lab_ellipse(), lab_ellipse(45.0), lab_ellipse(-10.0),
                                    ManifoldParams{1.0, 3.0, 0.4, 0.0}, ManifoldParams{1.0, 3.0, -2.5, 0.0}}) {
        double scan = 0.0;
        for (int k = 0; k <= 20000; ++k) scan = std::max(scan, hamiltonian_at(m, kPi * k / 20000.0).norm());
        CHECK(max_field_norm(m) >= scan * (1.0 - 1e-12));
        CHECK(max_field_norm(m) == doctest::Approx(scan).epsilon(1e-6));
    }
}

TEST_CASE("ground_state examples") {
    SUBCASE("H = 1/2 Delta sz with Delta > 0 -> sz = -1") {
        const auto psi = ground_state(Hamiltonian2{0, 0, 2.0}, 1e-12);
        const auto b = psi.bloch();
        CHECK(b.z == doctest::Approx(-1.0));
        CHECK(std::abs(b.x) < 1e-15);
        CHECK(std::abs(b.y) < 1e-15);
    }
    SUBCASE("H = 1/2 Omega sx -> Bloch (-1, 0, 0)") {
        const auto b = ground_state(Hamiltonian2{3.0, 0, 0}, 1e-12).bloch();
        CHECK(b.x == doctest::Approx(-1.0));
        CHECK(std::abs(b.y) < 1e-15);
        CHECK(std::abs(b.z) < 1e-15);
    }
    SUBCASE("lab ellipse at the equator") {
        const auto b = ground_state(lab_ellipse(), kPi / 2).bloch();
        CHECK(b.x == doctest::Approx(-1.0));
        CHECK(std::abs(b.y) < 1e-12);
        CHECK(std::abs(b.z) < 1e-6);
    }
    SUBCASE("degenerate field rejected") {
        CHECK_THROWS_AS(ground_state(Hamiltonian2{1e-9, 0, 0}, 1e-6), DegeneracyError);
    }
}

TEST_CASE("ground_state is the lower eigenvector with the gauge fixed") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 500; ++trial) {
        const Hamiltonian2 h{g(rng), g(rng), g(rng)};
        const PureState psi = ground_state(h, 1e-12);
        CHECK(psi.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(psi.amp[0].imag() == 0.0);
        CHECK(psi.amp[0].real() >= 0.0);
        // H psi = E0 psi
        const auto H = h.matrix();
        const double e0 = h.eigenvalues()[0];
        for (int r = 0; r < 2; ++r) {
            const cplx hp = H[r][0] * psi.amp[0] + H[r][1] * psi.amp[1];
            CHECK(std::abs(hp - e0 * psi.amp[static_cast<std::size_t>(r)]) < 1e-12 * (1.0 + h.norm()));
        }
        // -h gives the orthogonal state
        const PureState flipped = ground_state(-h, 1e-12);
        CHECK(std::abs(psi.overlap(flipped)) < 1e-12);
    }
}

TEST_CASE("hamiltonian_at is 2 pi periodic in phi") {
    const auto m = lab_ellipse(7.0);
    for (double phi = 0.0; phi < kTwoPi; phi += 0.37) {
        const auto a = hamiltonian_at(m.with_phi(phi), 1.1);
        const auto b = hamiltonian_at(m.with_phi(phi + kTwoPi), 1.1);
        CHECK(a.hx == doctest::Approx(b.hx));
        CHECK(a.hy == doctest::Approx(b.hy));
        CHECK(a.hz == b.hz);
    }
}

TEST_CASE("DensityMatrix Bloch form") {
    const auto rho = DensityMatrix::from_pure(ground_state(Hamiltonian2{1.0, 2.0, -0.5}, 1e-12));
    CHECK(rho.trace == doctest::Approx(1.0));
    CHECK(rho.r.norm() == doctest::Approx(1.0));
    CHECK(rho.min_eigenvalue() == doctest::Approx(0.0).epsilon(1e-14));
    const auto M = rho.matrix();
    CHECK((M[0][0] + M[1][1]).real() == doctest::Approx(1.0));
    CHECK(M[0][1] == std::conj(M[1][0]));
    CHECK(DensityMatrix::maximally_mixed().eigenvalues()[0] == 0.5);
}
