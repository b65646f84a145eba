// spectrum.cpp

#include "spinbath/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinbath {

std::vector<SpectrumLine> frequency_spectrum(const ModelParams& params,
                                             const DifferenceWeights& weights) {
    validate(params);
    std::vector<SpectrumLine> lines;

    if (params.j0 == 0.0) {
        // Every difference shares one frequency.
        SpectrumLine line;
        line.kappa = sector_kappa(-params.epsilon, params.g);
        line.weight = weights.total;
        line.contributors.reserve(2 * weights.d_max + 1);
        for (int d = -weights.d_max; d <= weights.d_max; ++d) {
            line.contributors.push_back(d);
        }
        lines.push_back(std::move(line));
        return lines;
    }

    // Two differences d, d' share |chi| exactly when d + d' = 2*eps/j0.
    // The degeneracy is integer arithmetic, so it is only honored when that
    // ratio sits within 1e-9 of an integer.
    const double pair_sum_real = 2.0 * params.epsilon / params.j0;
    const double rounded = std::round(pair_sum_real);
    const bool merging = std::abs(pair_sum_real - rounded) < 1e-9 &&
                         std::abs(rounded) < 9.0e15;
    const long long pair_sum = merging ? static_cast<long long>(rounded) : 0;

    for (int d = -weights.d_max; d <= weights.d_max; ++d) {
        SpectrumLine line;
        line.contributors.push_back(d);
        line.weight = weights.at(d);
        if (merging) {
            const long long partner = pair_sum - d;
            const bool partner_in_range =
                partner >= -weights.d_max && partner <= weights.d_max;
            if (partner_in_range && partner < d) continue; // already emitted
            if (partner_in_range && partner != d) {
                line.contributors.push_back(static_cast<int>(partner));
                line.weight += weights.at(static_cast<int>(partner));
            }
        }
        const double chi = params.j0 * static_cast<double>(d) - params.epsilon;
        line.kappa = sector_kappa(chi, params.g);
        lines.push_back(std::move(line));
    }

    std::sort(lines.begin(), lines.end(),
              [](const SpectrumLine& a, const SpectrumLine& b) {
                  if (a.kappa != b.kappa) return a.kappa < b.kappa;
                  return a.contributors.front() < b.contributors.front();
              });
    return lines;
}

SpectrumSummary spectrum_summary(std::span<const SpectrumLine> lines) {
    if (lines.empty()) {
        throw std::domain_error("spectrum_summary: no lines");
    }
    SpectrumSummary summary;
    summary.kappa_min = lines.front().kappa;
    double best_weight = -1.0;
    double mean_acc = 0.0;
    for (const SpectrumLine& line : lines) {
        summary.kappa_min = std::min(summary.kappa_min, line.kappa);
        summary.total_weight += line.weight;
        mean_acc += line.weight * line.kappa;
        if (line.weight > best_weight) {
            best_weight = line.weight;
            summary.kappa_mode = line.kappa;
        }
    }
    const double mean = mean_acc / summary.total_weight;
    double var_acc = 0.0;
    for (const SpectrumLine& line : lines) {
        const double dev = line.kappa - mean;
        var_acc += line.weight * dev * dev;
    }
    summary.effective_width =
        std::sqrt(std::max(var_acc / summary.total_weight, 0.0));
    return summary;
}

} // namespace spinbath
