// dynamics.cpp

#include "spinbath/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "detail/parallel.hpp"

namespace spinbath {

namespace {

// sin(x)/x; the quotient itself is accurate to rounding for every x > 0,
// only the exact zero needs filling in.
double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

void check_time_grid(std::span<const double> grid) {
    if (grid.empty()) {
        throw std::invalid_argument("time grid must be nonempty");
    }
    if (grid.front() < 0.0) {
        throw std::invalid_argument("time grid values must be >= 0");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("time grid must be strictly increasing");
        }
    }
}

} // namespace

double sector_kappa(double chi, double g) {
    if (chi == 0.0) return g;
    return std::max(std::sqrt(chi * chi + g * g), g);
}

SectorAmplitude sector_amplitudes(const ModelParams& params, int d, double t) {
    if (t < 0.0) {
        throw std::domain_error("sector_amplitudes: t must be >= 0");
    }
    SectorAmplitude amp;
    amp.d = d;
    amp.chi = params.j0 * static_cast<double>(d) - params.epsilon;
    amp.kappa = sector_kappa(amp.chi, params.g);
    const double half = 0.5 * t;
    const double phase = amp.kappa * half;
    const double s = sinc(phase) * half; // = sin(kappa t/2)/kappa, finite at 0
    amp.a = {std::cos(phase), amp.chi * s};
    amp.b = {0.0, -params.g * s};
    return amp;
}

SectorSums sector_sums(const ModelParams& params,
                       const DifferenceWeights& weights, double t) {
    if (t < 0.0) {
        throw std::domain_error("sector_sums: t must be >= 0");
    }
    // Flat real-arithmetic loop: this is the hot path of every time series
    // and of the pointer scan, with a = c + i*ai and b = i*bi.
    const double half = 0.5 * t;
    double aa = 0.0, bb = 0.0, s2r = 0.0, s2i = 0.0, s4r = 0.0, s4i = 0.0;
    const double* w = weights.weights.data();
    const int count = 2 * weights.d_max + 1;
    for (int idx = 0; idx < count; ++idx) {
        const double chi =
            params.j0 * static_cast<double>(idx - weights.d_max) -
            params.epsilon;
        const double phase = sector_kappa(chi, params.g) * half;
        const double c = std::cos(phase);
        const double snc = sinc(phase) * half;
        const double ai = chi * snc;
        const double bi = -params.g * snc;
        const double wd = w[idx];
        aa += wd * (c * c + ai * ai);
        bb += wd * (bi * bi);
        s2r += wd * (ai * bi);        // Re a*conj(b)
        s2i += wd * (-c * bi);        // Im a*conj(b)
        s4r += wd * (c * c - ai * ai); // Re a^2
        s4i += wd * (2.0 * c * ai);    // Im a^2
    }
    SectorSums sums;
    sums.aa = aa;
    sums.bb = bb;
    sums.ab_conj = {s2r, s2i};
    sums.a_sq = {s4r, s4i};
    return sums;
}

DensityMatrix2 assemble_density(const QubitState& state,
                                const SectorSums& sums) {
    DensityMatrix2 rho;
    if (state.is_pure()) {
        const double dd = std::norm(state.delta);
        const double gg = std::norm(state.gamma);
        const std::complex<double> cross = state.cross_term();
        const double mix = 2.0 * std::real(cross * sums.ab_conj);
        rho.rho11 = dd * sums.aa + gg * sums.bb + mix;
        rho.rho22 = dd * sums.bb + gg * sums.aa - mix;
        rho.rho12 = (dd - gg) * sums.ab_conj + cross * sums.a_sq +
                    std::conj(cross) * sums.bb;
    } else {
        rho.rho11 = state.p_up * sums.aa + state.p_down * sums.bb;
        rho.rho22 = state.p_up * sums.bb + state.p_down * sums.aa;
        rho.rho12 = (state.p_up - state.p_down) * sums.ab_conj;
    }
    return rho;
}

double spin_inversion(const ModelParams& params, const QubitState& state,
                      const DifferenceWeights& weights, double t) {
    const SectorSums sums = sector_sums(params, weights, t);
    double value = state.population_difference() * (sums.aa - sums.bb);
    if (state.is_pure()) {
        value += 4.0 * std::real(state.cross_term() * sums.ab_conj);
    }
    return 0.5 * value;
}

DensityMatrix2 reduced_density(const ModelParams& params,
                               const QubitState& state,
                               const DifferenceWeights& weights, double t) {
    return assemble_density(state, sector_sums(params, weights, t));
}

double long_time_average_sz(const ModelParams& params, const QubitState& state,
                            const DifferenceWeights& weights) {
    const double popdiff = state.population_difference();
    double value = 0.0;
    for (int d = -weights.d_max; d <= weights.d_max; ++d) {
        const double chi = params.j0 * static_cast<double>(d) - params.epsilon;
        const double kappa2 = chi * chi + params.g * params.g;
        const double ratio = kappa2 == 0.0 ? 1.0 : chi * chi / kappa2;
        value += weights.at(d) * ratio;
    }
    return 0.5 * popdiff * value;
}

TimeSeries evolve_series(const ModelParams& params, const QubitState& state,
                         const LambdaTable& table,
                         std::span<const double> time_grid, int threads) {
    validate(params);
    check_time_grid(time_grid);
    const DifferenceWeights weights = difference_weights(table);

    TimeSeries series;
    series.times.assign(time_grid.begin(), time_grid.end());
    series.sz.resize(time_grid.size());
    series.rho.resize(time_grid.size());

    detail::parallel_for(time_grid.size(), threads, [&](std::size_t i) {
        const SectorSums sums = sector_sums(params, weights, time_grid[i]);
        series.rho[i] = assemble_density(state, sums);
        double value =
            state.population_difference() * (sums.aa - sums.bb);
        if (state.is_pure()) {
            value += 4.0 * std::real(state.cross_term() * sums.ab_conj);
        }
        series.sz[i] = 0.5 * value;
    });
    return series;
}

} // namespace spinbath
