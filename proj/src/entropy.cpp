// entropy.cpp

#include "spinbath/entropy.hpp"

#include <cmath>
#include <stdexcept>

#include "detail/parallel.hpp"
#include "spinbath/constants.hpp"
#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

double clamp01(double p) { return std::min(std::max(p, 0.0), 1.0); }

double entropy_term(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

} // namespace

std::pair<double, double> density_eigenvalues(const DensityMatrix2& rho) {
    const double tr = rho.trace();
    const double diff = rho.rho11 - rho.rho22;
    const double disc =
        std::sqrt(diff * diff + 4.0 * std::norm(rho.rho12));
    double p1 = 0.5 * (tr + disc);
    double p2 = 0.5 * (tr - disc);
    if (p2 < -1e-9 || p1 > 1.0 + 1e-9) {
        throw numerical_error(
            "density_eigenvalues: eigenvalue outside [0,1] beyond roundoff");
    }
    return {clamp01(p1), clamp01(p2)};
}

double von_neumann(const DensityMatrix2& rho) {
    const auto [p1, p2] = density_eigenvalues(rho);
    return entropy_term(p1) + entropy_term(p2);
}

std::vector<EntropyPoint> entropy_series(const ModelParams& params,
                                         const QubitState& state,
                                         const LambdaTable& table,
                                         std::span<const double> time_grid,
                                         int threads) {
    const TimeSeries series =
        evolve_series(params, state, table, time_grid, threads);
    std::vector<EntropyPoint> points(series.times.size());
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const auto [p1, p2] = density_eigenvalues(series.rho[i]);
        points[i] = {series.times[i], p1, p2,
                     entropy_term(p1) + entropy_term(p2)};
    }
    return points;
}

void fill_entropy(TimeSeries& series) {
    series.entropy.resize(series.rho.size());
    for (std::size_t i = 0; i < series.rho.size(); ++i) {
        series.entropy[i] = von_neumann(series.rho[i]);
    }
}

double BlochGrid::theta(int i) const {
    return pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n_theta);
}

double BlochGrid::phi(int j) const {
    return 2.0 * pi * static_cast<double>(j) / static_cast<double>(n_phi);
}

QubitState BlochGrid::state_at(int i, int j) const {
    const double th = theta(i);
    const double ph = phi(j);
    const std::complex<double> delta{std::cos(0.5 * th), 0.0};
    const std::complex<double> gamma =
        std::polar(std::sin(0.5 * th), ph);
    return QubitState::pure(delta, gamma);
}

PointerScanResult pointer_scan(const ModelParams& params,
                               const LambdaTable& table, const BlochGrid& grid,
                               std::span<const double> time_grid,
                               int threads) {
    if (grid.n_theta <= 0 || grid.n_phi <= 0) {
        throw std::invalid_argument("pointer_scan: empty Bloch grid");
    }
    if (time_grid.empty()) {
        throw std::invalid_argument("pointer_scan: empty time grid");
    }
    validate(params);
    const DifferenceWeights weights = difference_weights(table);

    // The per-time sector sums are state-independent; compute them once and
    // sweep the 4096-odd grid states over cached values.
    std::vector<SectorSums> sums(time_grid.size());
    detail::parallel_for(time_grid.size(), threads, [&](std::size_t i) {
        sums[i] = sector_sums(params, weights, time_grid[i]);
    });

    const std::size_t n_states =
        static_cast<std::size_t>(grid.n_theta) *
        static_cast<std::size_t>(grid.n_phi);
    PointerScanResult result;
    result.landscape.resize(n_states);

    detail::parallel_for(n_states, threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / grid.n_phi;
        const int j = static_cast<int>(idx) % grid.n_phi;
        const QubitState state = grid.state_at(i, j);
        double acc = 0.0;
        for (const SectorSums& s : sums) {
            acc += von_neumann(assemble_density(state, s));
        }
        result.landscape[idx] = {grid.theta(i), grid.phi(j),
                                 acc / static_cast<double>(sums.size())};
    });

    std::size_t best = 0;
    for (std::size_t idx = 1; idx < n_states; ++idx) {
        if (result.landscape[idx].score < result.landscape[best].score) {
            best = idx;
        }
    }
    const int bi = static_cast<int>(best) / grid.n_phi;
    const int bj = static_cast<int>(best) % grid.n_phi;
    result.theta = grid.theta(bi);
    result.phi = grid.phi(bj);
    result.best_state = grid.state_at(bi, bj);
    result.entropy_score = result.landscape[best].score;
    return result;
}

} // namespace spinbath
