// partition.hpp — conditional partition weights of one magnon branch and the
// occupation-difference weights every observable reduces to.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spinbath {

// Largest bath factor the normalized table can represent: the leading entry
// exp(-2*omega*zeta4) leaves the normal double range just past 325.  Above
// the cap the builder fails loudly instead of denormalizing.
inline constexpr double omega_cap = 325.0;

// Hard cap on table length when chasing an unattainable tolerance.
inline constexpr std::size_t lambda_entry_cap = 1'000'000;

// Normalized conditional-partition weights of a single branch.  entries[P] is
// the probability that the branch carries total occupation P; entries sum to
// cumulative_mass in [1 - tol, 1].
struct LambdaTable {
    double omega{0.0};
    double tol{0.0};
    std::vector<double> entries;
    double cumulative_mass{0.0};

    int p_max() const { return static_cast<int>(entries.size()) - 1; }
};

// Runs the coefficient recursion until the cumulative mass reaches 1 - tol.
// The recursion is the derivative chain of the generating function
// exp(2*omega*sum_n lambda^n/n^4), rescaled entry-by-entry so every value
// stays inside [0,1] instead of growing factorially.
//
// Throws std::domain_error (omega <= 0), std::range_error (omega > cap),
// std::invalid_argument (tol outside (0,1)), truncation_error (entry cap).
LambdaTable build_lambda_table(double omega, double tol = 1e-10);

// Same recursion run to a fixed number of entries, regardless of mass.  Used
// where a comparison window extends past the adaptive stopping point.
std::vector<double> lambda_recursion(double omega, int p_max);

// Probability weights of the branch-occupation difference d = P2 - P1,
// symmetric by construction: weights[d + d_max] = sum_P entries[P+|d|]*entries[P].
struct DifferenceWeights {
    int d_max{0};
    std::vector<double> weights; // index d + d_max, d in [-d_max, d_max]
    double total{0.0};           // sum of stored weights
    double tol{0.0};

    double at(int d) const {
        if (d < -d_max || d > d_max) return 0.0;
        return weights[static_cast<std::size_t>(d + d_max)];
    }
};

// d_max is chosen so the discarded tail is below tol^2, which keeps the
// stored total within 2*tol of unity even after the table's own mass defect.
DifferenceWeights difference_weights(const LambdaTable& table);

// Full-bath partition function, exp(2*omega*pi^4/45).  The value overflows
// doubles near omega ~ 164, so the closed-form exponent is always reported
// and the direct value only when representable.
struct PartitionValue {
    double log_z{0.0};
    bool z_representable{false};
    double z{0.0};
};
PartitionValue partition_function(double omega);

// Mean total occupation of one branch, 2*zeta3*omega.  Seeds the table size
// guess p0 = ceil(2*zeta3*omega + 10*sqrt(omega) + 20).
double mean_occupation(double omega);

} // namespace spinbath
