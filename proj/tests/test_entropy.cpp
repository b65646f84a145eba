#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "spinbath/constants.hpp"
#include "spinbath/entropy.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/run.hpp"
#include "test_util.hpp"

using namespace spinbath;

namespace {

// Density matrix with known spectrum: p on a random pure state, 1-p on its
// orthogonal complement.
DensityMatrix2 known_spectrum(testutil::Rng& rng, double p) {
    const QubitState psi = rng.pure_state();
    const std::complex<double> d = psi.delta, g = psi.gamma;
    // Orthogonal state: (-conj(g), conj(d)).
    DensityMatrix2 rho;
    rho.rho11 = p * std::norm(d) + (1.0 - p) * std::norm(g);
    rho.rho22 = p * std::norm(g) + (1.0 - p) * std::norm(d);
    rho.rho12 = p * d * std::conj(g) - (1.0 - p) * std::conj(g) * d;
    return rho;
}

} // namespace

TEST_CASE("eigenvalues of pure and maximally mixed states") {
    const DensityMatrix2 pure{1.0, 0.0, {0.0, 0.0}};
    const auto [p1, p2] = density_eigenvalues(pure);
    CHECK(p1 == doctest::Approx(1.0));
    CHECK(p2 == doctest::Approx(0.0));
    CHECK(von_neumann(pure) == doctest::Approx(0.0));

    const DensityMatrix2 mixed{0.5, 0.5, {0.0, 0.0}};
    const auto [q1, q2] = density_eigenvalues(mixed);
    CHECK(q1 == doctest::Approx(0.5));
    CHECK(q2 == doctest::Approx(0.5));
    CHECK(von_neumann(mixed) == doctest::Approx(ln2).epsilon(1e-14));
}

TEST_CASE("eigenvalues match states constructed with a known spectrum") {
    testutil::Rng rng;
    for (int i = 0; i < 300; ++i) {
        const double p = rng.uniform(0.0, 1.0);
        const DensityMatrix2 rho = known_spectrum(rng, p);
        const auto [p1, p2] = density_eigenvalues(rho);
        CHECK(std::abs(p1 - std::max(p, 1.0 - p)) <= 1e-12);
        CHECK(std::abs(p2 - std::min(p, 1.0 - p)) <= 1e-12);
        const double entropy = von_neumann(rho);
        CHECK(entropy >= 0.0);
        CHECK(entropy <= ln2 + 1e-9);
    }
}

TEST_CASE("roundoff-scale negatives clamp, real negatives throw") {
    const DensityMatrix2 slightly{1.0 + 1e-13, -1e-13, {0.0, 0.0}};
    const auto [p1, p2] = density_eigenvalues(slightly);
    CHECK(p1 <= 1.0);
    CHECK(p2 == 0.0);
    CHECK(von_neumann(slightly) >= 0.0);

    const DensityMatrix2 invalid{1.1, -0.1, {0.0, 0.0}};
    CHECK_THROWS_AS(density_eigenvalues(invalid), numerical_error);
    const DensityMatrix2 overcoherent{0.5, 0.5, {0.51, 0.0}};
    CHECK_THROWS_AS(density_eigenvalues(overcoherent), numerical_error);
}

TEST_CASE("entropy is invariant under the eigenbasis rotation") {
    testutil::Rng rng;
    for (int i = 0; i < 200; ++i) {
        const DensityMatrix2 rho = known_spectrum(rng, rng.uniform(0.0, 1.0));
        const EigenbasisU u =
            eigenbasis(rng.uniform(-2.0, 2.0), rng.uniform(0.1, 2.0));
        // rho' = U rho U^T with the real orthogonal U.
        const std::complex<double> r12 = rho.rho12;
        const std::complex<double> r21 = std::conj(r12);
        DensityMatrix2 rotated;
        rotated.rho11 = std::real(u.u11 * (rho.rho11 * u.u11 + r12 * u.u12) +
                                  u.u12 * (r21 * u.u11 + rho.rho22 * u.u12));
        rotated.rho22 = std::real(u.u21 * (rho.rho11 * u.u21 + r12 * u.u22) +
                                  u.u22 * (r21 * u.u21 + rho.rho22 * u.u22));
        rotated.rho12 = u.u11 * (rho.rho11 * u.u21 + r12 * u.u22) +
                        u.u12 * (r21 * u.u21 + rho.rho22 * u.u22);
        CHECK(std::abs(von_neumann(rotated) - von_neumann(rho)) <= 1e-10);
    }
}

TEST_CASE("entropy series starts pure and matches fill_entropy") {
    const ModelParams params{1.0, 1.0, 0.02};
    const QubitState state = state_from_label("phi1", 1.0, 1.0);
    const LambdaTable table = build_lambda_table(2.0, 1e-10);
    const auto grid = run::make_time_grid({0.0, 30.0, 121});

    const auto points = entropy_series(params, state, table, grid);
    REQUIRE(points.size() == grid.size());
    CHECK(points[0].entropy <= 1e-7);
    for (const auto& p : points) {
        CHECK(p.entropy >= 0.0);
        CHECK(p.entropy <= ln2 + 1e-9);
        CHECK(std::abs(p.p1 + p.p2 - 1.0) <= 1e-9);
        CHECK(p.p1 >= p.p2);
    }

    TimeSeries series = evolve_series(params, state, table, grid);
    fill_entropy(series);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(series.entropy[i] == doctest::Approx(points[i].entropy));
    }
}

TEST_CASE("time-averaged entropy grows with bath strength and coupling") {
    const auto grid = run::make_time_grid({0.0, 150.0, 301});
    const auto averaged = [&](double omega, double j0, double eps) {
        const ModelParams params{eps, 1.0, j0};
        const QubitState state = state_from_label("phi1", eps, 1.0);
        const LambdaTable table = build_lambda_table(omega, 1e-10);
        const auto pts = entropy_series(params, state, table, grid);
        double acc = 0.0;
        for (const auto& p : pts) acc += p.entropy;
        return acc / static_cast<double>(pts.size());
    };
    const double base = averaged(20.0, 0.01, 1.0);
    CHECK(averaged(40.0, 0.01, 1.0) >= base);
    CHECK(averaged(20.0, 0.02, 1.0) >= base);
}

TEST_CASE("pointer scan on a decoupled qubit gives a flat landscape") {
    const ModelParams params{0.5, 1.0, 0.0};
    const LambdaTable table = build_lambda_table(2.0, 1e-10);
    const BlochGrid grid{6, 6};
    const auto times = run::make_time_grid({0.0, 10.0, 21});
    const PointerScanResult scan = pointer_scan(params, table, grid, times);

    double lo = 1e30, hi = -1e30;
    for (const auto& p : scan.landscape) {
        CHECK(p.score <= 1e-8); // closed system stays pure
        lo = std::min(lo, p.score);
        hi = std::max(hi, p.score);
    }
    CHECK(hi - lo <= 1e-12);
    CHECK(scan.entropy_score == lo);

    // Flat landscapes still resolve deterministically.
    const PointerScanResult again = pointer_scan(params, table, grid, times);
    CHECK(again.theta == scan.theta);
    CHECK(again.phi == scan.phi);
}

TEST_CASE("pointer scan prefers the drive eigenstates on resonance") {
    const ModelParams params{0.0, 1.0, 0.01};
    const LambdaTable table = build_lambda_table(2.0, 1e-10);
    const BlochGrid grid{16, 16};
    const auto times = run::make_time_grid({0.0, 200.0, 201});
    const PointerScanResult scan = pointer_scan(params, table, grid, times, 2);
    CHECK(std::abs(scan.theta - 0.5 * pi) <= pi / 16.0 + 1e-12);
    const double dphi0 = std::min(scan.phi, 2.0 * pi - scan.phi);
    const double dphi_pi = std::abs(scan.phi - pi);
    CHECK(std::min(dphi0, dphi_pi) <= 2.0 * pi / 16.0 + 1e-12);
}

TEST_CASE("pointer scan validates its grids") {
    const ModelParams params{0.0, 1.0, 0.01};
    const LambdaTable table = build_lambda_table(2.0, 1e-10);
    CHECK_THROWS_AS(
        pointer_scan(params, table, BlochGrid{0, 8}, std::vector<double>{0.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        pointer_scan(params, table, BlochGrid{8, 8}, std::vector<double>{}),
        std::invalid_argument);
}
