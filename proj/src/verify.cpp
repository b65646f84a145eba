// verify.cpp

#include "spinbath/verify.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "spinbath/constants.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/model.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/partition.hpp"

namespace spinbath::verify {

namespace {

constexpr std::uint64_t sweep_seed = 0x5b1eaf2d9c0ffee5ULL;

struct Sweep {
    std::mt19937_64 rng{sweep_seed};

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    int integer(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }
    ModelParams params() {
        // g = 0 every eighth draw to exercise the undriven limiting forms.
        const double g = integer(0, 7) == 0 ? 0.0 : uniform(0.05, 3.0);
        return ModelParams{uniform(-3.0, 3.0), g, uniform(0.0, 0.5)};
    }
    QubitState state() {
        if (integer(0, 3) == 0) {
            const double p = uniform(0.0, 1.0);
            return QubitState::mixed_diagonal(p, 1.0 - p);
        }
        const double theta = uniform(0.0, pi);
        const double phi = uniform(0.0, 2.0 * pi);
        return QubitState::pure({std::cos(0.5 * theta), 0.0},
                                std::polar(std::sin(0.5 * theta), phi));
    }
};

void add(Report& report, std::string name, double deviation, double tol) {
    report.checks.push_back(
        {std::move(name), deviation, tol, deviation <= tol});
}

void check_amplitudes(Report& report) {
    Sweep sweep;
    double unit_dev = 0.0;
    double imag_dev = 0.0;
    double oracle_dev = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const ModelParams params = sweep.params();
        const int d = sweep.integer(-200, 200);
        const double t = sweep.uniform(0.0, 100.0);
        const SectorAmplitude amp = sector_amplitudes(params, d, t);
        unit_dev = std::max(
            unit_dev, std::abs(std::norm(amp.a) + std::norm(amp.b) - 1.0));
        imag_dev = std::max(imag_dev, std::abs(std::real(amp.b)));
        if (i < 500) {
            const auto [a_ref, b_ref] =
                oracle::amplitudes_by_matrix_exponential(params, d, t);
            oracle_dev = std::max(oracle_dev, std::abs(amp.a - a_ref));
            oracle_dev = std::max(oracle_dev, std::abs(amp.b - b_ref));
        }
    }
    add(report, "sector-unitarity", unit_dev, 1e-12);
    add(report, "sector-b-imaginary", imag_dev, 1e-14);
    add(report, "amplitude-vs-matrix-exponential", oracle_dev, 1e-12);
}

void check_trace(Report& report) {
    Sweep sweep;
    const LambdaTable table = build_lambda_table(2.0, 1e-12);
    const DifferenceWeights weights = difference_weights(table);
    double trace_dev = 0.0;
    double diag_dev = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ModelParams params = sweep.params();
        const QubitState state = sweep.state();
        const double t = sweep.uniform(0.0, 60.0);
        const DensityMatrix2 rho = reduced_density(params, state, weights, t);
        trace_dev = std::max(trace_dev, std::abs(rho.trace() - 1.0));
        const double sz = spin_inversion(params, state, weights, t);
        diag_dev = std::max(diag_dev,
                            std::abs(0.5 * (rho.rho11 - rho.rho22) - sz));
    }
    add(report, "density-trace", trace_dev, 1e-10);
    add(report, "density-diagonal-vs-inversion", diag_dev, 1e-12);
}

void check_lambda(Report& report, double omega, const char* name) {
    const std::vector<double> recursion = lambda_recursion(omega, 50);
    const std::vector<double> series =
        oracle::lambda_by_series_exponentiation(omega, 50);
    double rel = 0.0;
    for (std::size_t p = 0; p < recursion.size(); ++p) {
        rel = std::max(rel,
                       std::abs(recursion[p] - series[p]) / series[p]);
    }
    add(report, name, rel, 1e-10);

    const LambdaTable table = build_lambda_table(omega, 1e-10);
    const double mass_dev = std::abs(table.cumulative_mass - 1.0);
    add(report, std::string(name) + "-mass", mass_dev, 1e-10);
}

void check_eigenbasis(Report& report) {
    Sweep sweep;
    double dev = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double eps = sweep.uniform(-5.0, 5.0);
        const double g = sweep.uniform(0.01, 5.0);
        const EigenbasisU u = eigenbasis(eps, g);
        dev = std::max(dev, std::abs(u.u11 * u.u11 + u.u12 * u.u12 - 1.0));
        dev = std::max(dev, std::abs(u.u21 * u.u21 + u.u22 * u.u22 - 1.0));
        dev = std::max(dev, std::abs(u.u11 * u.u21 + u.u12 * u.u22));
    }
    add(report, "eigenbasis-orthonormality", dev, 1e-12);
}

void check_quadrature(Report& report) {
    double rel = 0.0;
    for (double omega : {0.1, 1.0, 10.0}) {
        const double closed = partition_function(omega).log_z;
        const double quad = oracle::quadrature_partition(omega);
        rel = std::max(rel, std::abs(quad - closed) / closed);
    }
    add(report, "quadrature-partition", rel, 1e-8);
}

void check_discrete_mode(Report& report) {
    const oracle::DiscreteBath bath{{1.0, 1.4, 2.2}, 3, 1.0};
    const ModelParams params{0.3, 1.0, 0.2};
    const double inv = 1.0 / std::sqrt(1.0 + 0.34);
    const QubitState state =
        QubitState::pure({inv, 0.0}, {0.3 * inv, -0.5 * inv});
    double dev = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double t = 20.0 * static_cast<double>(i) / 49.0;
        const auto r = oracle::discrete_mode_reference(bath, params, state, t);
        dev = std::max(dev, std::abs(r.sz_direct - r.sz_sector));
        dev = std::max(dev, std::abs(r.rho_direct.rho11 - r.rho_sector.rho11));
        dev = std::max(dev, std::abs(r.rho_direct.rho22 - r.rho_sector.rho22));
        dev = std::max(dev,
                       std::abs(r.rho_direct.rho12 - r.rho_sector.rho12));
    }
    add(report, "discrete-mode-sector-decomposition", dev, 1e-10);
}

void check_long_time_average(Report& report) {
    const ModelParams params{0.0, 1.0, 0.05};
    const QubitState state = state_from_label("up", params.epsilon, params.g);
    const LambdaTable table = build_lambda_table(2.0, 1e-10);
    const DifferenceWeights weights = difference_weights(table);
    const int n = 20001;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = 500.0 * static_cast<double>(i) / (n - 1);
        const double v = spin_inversion(params, state, weights, t);
        acc += (i == 0 || i == n - 1) ? 0.5 * v : v;
    }
    const double mean = acc / (n - 1);
    const double closed = long_time_average_sz(params, state, weights);
    add(report, "long-time-average", std::abs(mean - closed), 1e-3);
}

} // namespace

Report run(Level level) {
    Report report;
    report.seed = sweep_seed;
    check_amplitudes(report);
    check_trace(report);
    check_lambda(report, 0.5, "lambda-recursion-vs-series-omega0.5");
    check_lambda(report, 2.0, "lambda-recursion-vs-series-omega2");
    check_eigenbasis(report);
    if (level == Level::full) {
        check_lambda(report, 30.0, "lambda-recursion-vs-series-omega30");
        check_quadrature(report);
        check_discrete_mode(report);
        check_long_time_average(report);
    }
    return report;
}

} // namespace spinbath::verify
