// partition.cpp

#include "spinbath/partition.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinbath/constants.hpp"
#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

// Compensated accumulator; the mass bounds certified by the builder are
// tighter than what naive summation of ~1e3 entries can guarantee.
struct KahanSum {
    double sum{0.0};
    double carry{0.0};

    void add(double value) {
        const double y = value - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Appends entries [current..target) of the rescaled recursion
//   lam[P] = (2*omega/P) * sum_{i<P} lam[i] / (P-i)^3
// to `lam`, extending the inverse-cube cache alongside.  Shared by the
// adaptive builder and the fixed-length variant so the two can never drift.
void extend_lambda(std::vector<double>& lam, std::vector<double>& inv_cube,
                   double omega, std::size_t target, KahanSum* mass) {
    while (inv_cube.size() <= target) {
        const double k = static_cast<double>(inv_cube.size());
        inv_cube.push_back(1.0 / (k * k * k));
    }
    for (std::size_t p = lam.size(); p < target; ++p) {
        KahanSum s;
        for (std::size_t i = 0; i < p; ++i) {
            s.add(lam[i] * inv_cube[p - i]);
        }
        const double value = 2.0 * omega / static_cast<double>(p) * s.sum;
        lam.push_back(value);
        if (mass) mass->add(value);
    }
}

void check_omega(double omega) {
    if (!(omega > 0.0)) {
        throw std::domain_error("lambda table: omega must be > 0");
    }
    if (omega > omega_cap) {
        throw std::range_error(
            "lambda table: omega exceeds the representable cap of 325");
    }
}

} // namespace

LambdaTable build_lambda_table(double omega, double tol) {
    check_omega(omega);
    if (!(tol > 0.0) || !(tol < 1.0)) {
        throw std::invalid_argument("lambda table: tol must lie in (0, 1)");
    }

    LambdaTable table;
    table.omega = omega;
    table.tol = tol;

    std::vector<double>& lam = table.entries;
    std::vector<double> inv_cube{0.0}; // index 0 unused
    lam.push_back(std::exp(-2.0 * omega * zeta4));

    KahanSum mass;
    mass.add(lam[0]);

    const double target_mass = 1.0 - tol;
    std::size_t guess = static_cast<std::size_t>(
        std::ceil(mean_occupation(omega) + 10.0 * std::sqrt(omega) + 20.0));
    lam.reserve(guess + 1);

    while (mass.sum < target_mass) {
        if (lam.size() >= lambda_entry_cap) {
            throw truncation_error(
                "lambda table: tolerance unattainable within 1e6 entries");
        }
        extend_lambda(lam, inv_cube, omega, lam.size() + 1, &mass);
    }

    table.cumulative_mass = mass.sum;
    return table;
}

std::vector<double> lambda_recursion(double omega, int p_max) {
    check_omega(omega);
    if (p_max < 0 || static_cast<std::size_t>(p_max) >= lambda_entry_cap) {
        throw std::invalid_argument("lambda_recursion: bad entry count");
    }
    std::vector<double> lam{std::exp(-2.0 * omega * zeta4)};
    std::vector<double> inv_cube{0.0};
    extend_lambda(lam, inv_cube, omega, static_cast<std::size_t>(p_max) + 1,
                  nullptr);
    return lam;
}

DifferenceWeights difference_weights(const LambdaTable& table) {
    if (table.entries.empty()) {
        throw std::invalid_argument("difference_weights: empty table");
    }
    const std::vector<double>& lam = table.entries;
    const std::size_t n = lam.size();
    const double total_all = table.cumulative_mass * table.cumulative_mass;
    // The kept tail must stay below tol^2: the table's own mass defect
    // already costs up to 2*tol of the unit total, and the stored sum still
    // has to clear 1 - 2*tol.
    const double keep_below = table.tol * table.tol;

    std::vector<double> one_sided;
    one_sided.reserve(n);
    KahanSum kept;
    for (std::size_t d = 0; d < n; ++d) {
        KahanSum s;
        for (std::size_t p = 0; p + d < n; ++p) {
            s.add(lam[p + d] * lam[p]);
        }
        one_sided.push_back(s.sum);
        kept.add(d == 0 ? s.sum : 2.0 * s.sum);
        if (total_all - kept.sum < keep_below) break;
    }

    DifferenceWeights weights;
    weights.d_max = static_cast<int>(one_sided.size()) - 1;
    weights.tol = table.tol;
    weights.total = kept.sum;
    weights.weights.resize(2 * one_sided.size() - 1);
    for (int d = -weights.d_max; d <= weights.d_max; ++d) {
        weights.weights[static_cast<std::size_t>(d + weights.d_max)] =
            one_sided[static_cast<std::size_t>(std::abs(d))];
    }
    return weights;
}

PartitionValue partition_function(double omega) {
    if (!(omega > 0.0)) {
        throw std::domain_error("partition_function: omega must be > 0");
    }
    PartitionValue value;
    value.log_z = 4.0 * omega * zeta4; // = 2*omega*pi^4/45
    static const double log_max = std::log(std::numeric_limits<double>::max());
    value.z_representable = value.log_z < log_max;
    value.z = value.z_representable
                  ? std::exp(value.log_z)
                  : std::numeric_limits<double>::infinity();
    return value;
}

double mean_occupation(double omega) {
    if (omega < 0.0) {
        throw std::domain_error("mean_occupation: omega must be >= 0");
    }
    return 2.0 * zeta3 * omega;
}

} // namespace spinbath
