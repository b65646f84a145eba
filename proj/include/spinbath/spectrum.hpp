// spectrum.hpp — weighted distribution of the sector Rabi frequencies that
// make up the spin-inversion time series.

#pragma once

#include <span>
#include <vector>

#include "spinbath/dynamics.hpp"

namespace spinbath {

// One spectral line: the sector frequency kappa, its total probability
// weight, and the occupation differences d that land on it.  Distinct d can
// share a line only through the exact integer degeneracy d + d' = 2*eps/j0.
struct SpectrumLine {
    double kappa{0.0};
    double weight{0.0};
    std::vector<int> contributors;
};

// Lines sorted by kappa ascending.  Contributor sets partition the weight
// range, so line weights sum to the total difference-weight mass.  j0 = 0
// collapses everything onto the single line kappa = sqrt(eps^2 + g^2).
std::vector<SpectrumLine> frequency_spectrum(const ModelParams& params,
                                             const DifferenceWeights& weights);

struct SpectrumSummary {
    double kappa_min{0.0};
    double kappa_mode{0.0};      // kappa of the max-weight line
    double total_weight{0.0};
    double effective_width{0.0}; // sqrt of the weight-variance of kappa
};

// Throws std::domain_error on an empty line set.
SpectrumSummary spectrum_summary(std::span<const SpectrumLine> lines);

} // namespace spinbath
