// entropy.hpp — von Neumann entropy of the reduced state and the
// entropy-minimizing pointer-state scan over the Bloch sphere.

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "spinbath/dynamics.hpp"

namespace spinbath {

// Eigenvalues of a 2x2 density matrix, sorted descending and clamped to
// [0,1].  Values below -1e-9 indicate an upstream assembly bug and throw
// numerical_error; small negative roundoff in [-1e-9, 0) is clamped to 0.
std::pair<double, double> density_eigenvalues(const DensityMatrix2& rho);

// -sum_k p_k ln p_k in nats, with the convention 0 ln 0 = 0.
double von_neumann(const DensityMatrix2& rho);

struct EntropyPoint {
    double time{0.0};
    double p1{1.0};
    double p2{0.0};
    double entropy{0.0};
};

std::vector<EntropyPoint> entropy_series(const ModelParams& params,
                                         const QubitState& state,
                                         const LambdaTable& table,
                                         std::span<const double> time_grid,
                                         int threads = 1);

// Computes series.entropy pointwise from series.rho.
void fill_entropy(TimeSeries& series);

// Cell-centered polar grid, offset from the poles so no two grid states
// coincide: theta_i = pi(i+1/2)/n_theta, phi_j = 2*pi*j/n_phi, and the pure
// state delta = cos(theta/2), gamma = e^{i phi} sin(theta/2).
struct BlochGrid {
    int n_theta{64};
    int n_phi{64};

    double theta(int i) const;
    double phi(int j) const;
    QubitState state_at(int i, int j) const;
};

struct LandscapePoint {
    double theta{0.0};
    double phi{0.0};
    double score{0.0};
};

struct PointerScanResult {
    double theta{0.0};
    double phi{0.0};
    QubitState best_state;
    double entropy_score{0.0};
    std::vector<LandscapePoint> landscape; // row-major, theta outer
};

// Scores every grid state by its entropy averaged over the time grid and
// returns the minimizer (first grid point wins ties, row-major order).
// Throws std::invalid_argument on an empty grid.
PointerScanResult pointer_scan(const ModelParams& params,
                               const LambdaTable& table, const BlochGrid& grid,
                               std::span<const double> time_grid,
                               int threads = 1);

} // namespace spinbath
