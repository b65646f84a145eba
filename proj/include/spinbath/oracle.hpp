// oracle.hpp — independent verification paths for every closed form used by
// the production modules.  Each oracle shares only the model definition with
// the code it checks, never the formula.

#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "spinbath/dynamics.hpp"
#include "spinbath/model.hpp"

namespace spinbath::oracle {

// exp(-i H t) for the 2x2 sector generator H = [[-chi/2, g/2],[g/2, chi/2]],
// chi = j0*d - epsilon, via scaling-and-squaring with a Taylor kernel.
// Entries in row-major order.
std::array<std::complex<double>, 4>
sector_evolution_matrix(const ModelParams& params, int d, double t);

// First column of the matrix above applied to |1> = (1,0): the sector
// amplitudes (a, b) computed without the trigonometric closed form.
std::pair<std::complex<double>, std::complex<double>>
amplitudes_by_matrix_exponential(const ModelParams& params, int d, double t);

// Taylor coefficients of exp(2*omega*sum_n lambda^n/n^4) through degree
// p_max, by summing truncated powers H^k/k!, then rescaled by
// exp(-2*omega*zeta4).  A genuinely different algorithm from the recursion;
// exact at k = p_max because H has no constant term.  p_max <= 1000; series
// power is capped at k = 500 and throws oracle_failure if that cap truncates.
std::vector<double> lambda_by_series_exponentiation(double omega, int p_max);

// log Z by adaptive quadrature of -2*omega * int_0^inf x^2 ln(1-e^-x) dx,
// with both endpoints handled by series.  Never uses the zeta closed form.
double quadrature_partition(double omega);

// A desk-scale bath: a handful of explicit mode frequencies shared by the
// two magnon branches, a per-mode occupation cutoff, and a temperature.
struct DiscreteBath {
    std::vector<double> mode_freqs;
    int n_max{1};
    double temperature{1.0};
};

struct DiscreteModeResult {
    double sz_direct{0.0};
    DensityMatrix2 rho_direct;
    double sz_sector{0.0};
    DensityMatrix2 rho_sector;
};

// Exact reference on the discrete bath, both ways:
//  - direct: enumerate every occupation configuration of both branches,
//    evolve the qubit with the matrix exponential, Boltzmann-average;
//  - sector: conditional partition weights by brute-force counting, then the
//    production per-difference assembly.
// The two must agree to roundoff; their comparison validates the sector
// decomposition end to end.  Configuration count is capped at 1e7.
DiscreteModeResult discrete_mode_reference(const DiscreteBath& bath,
                                           const ModelParams& params,
                                           const QubitState& state, double t);

} // namespace spinbath::oracle
