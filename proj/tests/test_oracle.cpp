#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "spinbath/constants.hpp"
#include "spinbath/oracle.hpp"
#include "test_util.hpp"

using namespace spinbath;
using namespace spinbath::oracle;

TEST_CASE("matrix exponential starts from the identity and stays unitary") {
    const ModelParams params{0.4, 1.1, 0.07};
    const auto [a0, b0] = amplitudes_by_matrix_exponential(params, 5, 0.0);
    CHECK(a0 == std::complex<double>{1.0, 0.0});
    CHECK(b0 == std::complex<double>{0.0, 0.0});

    testutil::Rng rng;
    for (int i = 0; i < 200; ++i) {
        const ModelParams p{rng.uniform(-3.0, 3.0), rng.uniform(0.0, 3.0),
                            rng.uniform(0.0, 0.5)};
        const auto u = sector_evolution_matrix(p, rng.integer(-150, 150),
                                               rng.uniform(0.0, 50.0));
        // U U^dag = 1.
        const std::complex<double> e00 =
            u[0] * std::conj(u[0]) + u[1] * std::conj(u[1]);
        const std::complex<double> e01 =
            u[0] * std::conj(u[2]) + u[1] * std::conj(u[3]);
        const std::complex<double> e11 =
            u[2] * std::conj(u[2]) + u[3] * std::conj(u[3]);
        CHECK(std::abs(e00 - 1.0) <= 1e-13);
        CHECK(std::abs(e01) <= 1e-13);
        CHECK(std::abs(e11 - 1.0) <= 1e-13);
    }
}

TEST_CASE("series exponentiation reproduces the low-order derivatives") {
    const auto coeffs = lambda_by_series_exponentiation(1.0, 4);
    CHECK(coeffs[1] / coeffs[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(coeffs[2] / coeffs[0] == doctest::Approx(2.125).epsilon(1e-14));
    CHECK(coeffs[0] == doctest::Approx(std::exp(-2.0 * zeta4)).epsilon(1e-14));

    CHECK_THROWS_AS(lambda_by_series_exponentiation(0.0, 4),
                    std::domain_error);
    CHECK_THROWS_AS(lambda_by_series_exponentiation(1.0, 2000),
                    std::invalid_argument);
}

TEST_CASE("quadrature reproduces the closed-form partition exponent") {
    for (double omega : {0.1, 1.0, 10.0}) {
        const double expected = 2.0 * pi * pi * pi * pi / 45.0 * omega;
        CHECK(std::abs(quadrature_partition(omega) - expected) <=
              1e-8 * expected);
    }
    // Linear in omega.
    const double one = quadrature_partition(1.0);
    CHECK(std::abs(quadrature_partition(2.0) - 2.0 * one) <= 1e-10 * one);
    CHECK(quadrature_partition(1e-12) <= 1e-10);
}

TEST_CASE("zero bath modes reduce to the closed driven qubit") {
    const DiscreteBath empty{{}, 1, 1.0};
    const ModelParams params{0.0, 1.0, 0.2};
    const QubitState up = state_from_label("up", 0.0, 1.0);
    for (double t : {0.0, 0.7, 2.9, 11.0}) {
        const auto r = discrete_mode_reference(empty, params, up, t);
        CHECK(std::abs(r.sz_direct - 0.5 * std::cos(t)) <= 1e-13);
        CHECK(std::abs(r.sz_direct - r.sz_sector) <= 1e-13);
    }
}

TEST_CASE("frozen bath at T -> 0 matches the empty bath") {
    const ModelParams params{0.3, 1.0, 0.15};
    const QubitState state =
        QubitState::pure({0.8, 0.0}, {0.0, 0.6});
    const DiscreteBath cold{{1.0, 2.0}, 2, 1e-6};
    const DiscreteBath empty{{}, 1, 1.0};
    for (double t : {0.5, 3.1}) {
        const auto a = discrete_mode_reference(cold, params, state, t);
        const auto b = discrete_mode_reference(empty, params, state, t);
        CHECK(std::abs(a.sz_direct - b.sz_direct) <= 1e-12);
        CHECK(std::abs(a.rho_direct.rho12 - b.rho_direct.rho12) <= 1e-12);
    }
}

TEST_CASE("direct enumeration equals the sector assembly, pure and mixed") {
    const DiscreteBath bath{{0.9, 1.7}, 2, 1.1};
    const ModelParams params{0.25, 1.0, 0.3};
    const QubitState pure =
        QubitState::pure({0.6, 0.48}, {0.4, -0.4995998398718721});
    const QubitState mixed = QubitState::mixed_diagonal(0.7, 0.3);
    for (int i = 0; i < 25; ++i) {
        const double t = 15.0 * static_cast<double>(i) / 24.0;
        for (const QubitState* state : {&pure, &mixed}) {
            const auto r = discrete_mode_reference(bath, params, *state, t);
            CHECK(std::abs(r.sz_direct - r.sz_sector) <= 1e-10);
            CHECK(std::abs(r.rho_direct.rho11 - r.rho_sector.rho11) <= 1e-10);
            CHECK(std::abs(r.rho_direct.rho22 - r.rho_sector.rho22) <= 1e-10);
            CHECK(std::abs(r.rho_direct.rho12 - r.rho_sector.rho12) <= 1e-10);
        }
    }
}

TEST_CASE("discrete oracle rejects oversized configuration spaces") {
    const DiscreteBath huge{{1, 1, 1, 1, 1, 1, 1, 1}, 9, 1.0};
    const ModelParams params{0.0, 1.0, 0.1};
    const QubitState up = state_from_label("up", 0.0, 1.0);
    CHECK_THROWS_AS(discrete_mode_reference(huge, params, up, 1.0),
                    std::invalid_argument);
    const DiscreteBath bad_freq{{-1.0}, 2, 1.0};
    CHECK_THROWS_AS(discrete_mode_reference(bad_freq, params, up, 1.0),
                    std::invalid_argument);
    const DiscreteBath bad_temp{{1.0}, 2, 0.0};
    CHECK_THROWS_AS(discrete_mode_reference(bad_temp, params, up, 1.0),
                    std::invalid_argument);
}
