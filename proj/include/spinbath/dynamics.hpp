// dynamics.hpp — closed-form sector evolution and the assembled observables:
// spin inversion <Sz(t)> and the 2x2 reduced density matrix.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "spinbath/model.hpp"
#include "spinbath/partition.hpp"

namespace spinbath {

// Joint eigenspaces of the two branch number operators evolve as independent
// 2x2 rotations.  For occupation difference d the effective detuning is
// chi = j0*d - epsilon and the sector Rabi frequency kappa = sqrt(chi^2+g^2).
//   a = cos(kappa t/2) + i (chi/kappa) sin(kappa t/2)
//   b = -i (g/kappa) sin(kappa t/2)
// both written in sinc form so the kappa -> 0 corner (g = 0, chi = 0) stays
// finite.  |a|^2 + |b|^2 = 1 and b is purely imaginary for all inputs.
struct SectorAmplitude {
    int d{0};
    double chi{0.0};
    double kappa{0.0};
    std::complex<double> a{1.0, 0.0};
    std::complex<double> b{0.0, 0.0};
};

// chi = 0 gives kappa = g exactly (the spectrum cutoff); elsewhere the value
// is clamped so roundoff never lands below g.
double sector_kappa(double chi, double g);

SectorAmplitude sector_amplitudes(const ModelParams& params, int d, double t);

struct DensityMatrix2 {
    double rho11{1.0};
    double rho22{0.0};
    std::complex<double> rho12{0.0, 0.0};

    std::complex<double> rho21() const { return std::conj(rho12); }
    double trace() const { return rho11 + rho22; }
};

// State-independent weighted sums over the occupation difference at a fixed
// time.  Every observable is linear in these four accumulators, so sweeps
// over many initial states reuse one pass over d.
struct SectorSums {
    double aa{0.0};                          // sum_d w(d) |a|^2
    double bb{0.0};                          // sum_d w(d) |b|^2
    std::complex<double> ab_conj{0.0, 0.0};  // sum_d w(d) a*conj(b)
    std::complex<double> a_sq{0.0, 0.0};     // sum_d w(d) a^2
};

SectorSums sector_sums(const ModelParams& params,
                       const DifferenceWeights& weights, double t);

DensityMatrix2 assemble_density(const QubitState& state, const SectorSums& sums);

double spin_inversion(const ModelParams& params, const QubitState& state,
                      const DifferenceWeights& weights, double t);

DensityMatrix2 reduced_density(const ModelParams& params,
                               const QubitState& state,
                               const DifferenceWeights& weights, double t);

// Stationary value the oscillations decay toward:
//   sum_d w(d) * popdiff * chi^2(d) / (2 kappa^2(d))
// (the cross term time-averages away; sectors with kappa = 0 contribute the
// limiting ratio 1).
double long_time_average_sz(const ModelParams& params, const QubitState& state,
                            const DifferenceWeights& weights);

struct TimeSeries {
    std::vector<double> times;        // g*t values, strictly increasing
    std::vector<double> sz;
    std::vector<DensityMatrix2> rho;
    std::vector<double> entropy;      // filled by the entropy layer
};

// Pointwise evaluation over an explicit grid; the difference weights are
// built once from the table.  Time points are independent, so `threads` > 1
// splits the grid without changing any output bit.
TimeSeries evolve_series(const ModelParams& params, const QubitState& state,
                         const LambdaTable& table,
                         std::span<const double> time_grid, int threads = 1);

} // namespace spinbath
