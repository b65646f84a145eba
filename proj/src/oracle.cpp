// oracle.cpp

#include "spinbath/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinbath/constants.hpp"
#include "spinbath/errors.hpp"

namespace spinbath::oracle {

namespace {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>; // row-major 2x2

// The kernel runs in extended precision: every squaring roughly doubles the
// accumulated roundoff, and large t*kappa needs ~14 squarings.
using cl = std::complex<long double>;
using Mat2l = std::array<cl, 4>;

Mat2l multiply(const Mat2l& x, const Mat2l& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

long double max_abs(const Mat2l& m) {
    long double v = 0.0L;
    for (const cl& e : m) v = std::max(v, std::abs(e));
    return v;
}

// exp(K) by scaling-and-squaring with a Taylor kernel; K is any 2x2.
Mat2 exp_matrix(const Mat2l& k) {
    int squarings = 0;
    long double scale = max_abs(k);
    while (scale > 0.25L) {
        scale *= 0.5L;
        ++squarings;
    }
    const long double factor = std::ldexp(1.0L, -squarings);
    Mat2l scaled{k[0] * factor, k[1] * factor, k[2] * factor, k[3] * factor};

    Mat2l result{1.0L, 0.0L, 0.0L, 1.0L};
    Mat2l term{1.0L, 0.0L, 0.0L, 1.0L};
    for (int order = 1; order <= 48; ++order) {
        term = multiply(term, scaled);
        const long double inv = 1.0L / static_cast<long double>(order);
        for (cl& e : term) e *= inv;
        for (std::size_t i = 0; i < 4; ++i) result[i] += term[i];
        if (max_abs(term) < 1e-24L) break;
    }
    for (int s = 0; s < squarings; ++s) result = multiply(result, result);
    Mat2 out;
    for (std::size_t i = 0; i < 4; ++i) {
        out[i] = {static_cast<double>(result[i].real()),
                  static_cast<double>(result[i].imag())};
    }
    return out;
}

struct BranchConfig {
    int total;
    double energy;
};

// All occupation tuples of one branch with each mode capped at n_max,
// odometer order.
std::vector<BranchConfig> enumerate_branch(const DiscreteBath& bath) {
    std::vector<BranchConfig> configs;
    std::vector<int> digits(bath.mode_freqs.size(), 0);
    while (true) {
        int total = 0;
        double energy = 0.0;
        for (std::size_t m = 0; m < digits.size(); ++m) {
            total += digits[m];
            energy += bath.mode_freqs[m] * digits[m];
        }
        configs.push_back({total, energy});
        std::size_t pos = 0;
        while (pos < digits.size() && digits[pos] == bath.n_max) {
            digits[pos] = 0;
            ++pos;
        }
        if (pos == digits.size()) break;
        ++digits[pos];
    }
    return configs;
}

} // namespace

std::array<cd, 4> sector_evolution_matrix(const ModelParams& params, int d,
                                          double t) {
    if (t < 0.0) {
        throw std::domain_error("sector_evolution_matrix: t must be >= 0");
    }
    const double chi = params.j0 * static_cast<double>(d) - params.epsilon;
    const cl mit{0.0L, static_cast<long double>(-t)}; // -i t
    const Mat2l generator{mit * (-0.5L * chi), mit * (0.5L * params.g),
                          mit * (0.5L * params.g), mit * (0.5L * chi)};
    return exp_matrix(generator);
}

std::pair<cd, cd> amplitudes_by_matrix_exponential(const ModelParams& params,
                                                   int d, double t) {
    const Mat2 u = sector_evolution_matrix(params, d, t);
    return {u[0], u[2]};
}

std::vector<double> lambda_by_series_exponentiation(double omega, int p_max) {
    if (!(omega > 0.0) || omega > omega_cap) {
        throw std::domain_error(
            "lambda_by_series_exponentiation: omega out of range");
    }
    if (p_max < 0 || p_max > 1000) {
        throw std::invalid_argument(
            "lambda_by_series_exponentiation: p_max must lie in [0, 1000]");
    }
    const std::size_t n = static_cast<std::size_t>(p_max) + 1;

    std::vector<double> h(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        h[k] = 2.0 * omega / (kk * kk * kk * kk);
    }

    // exp(H) = sum_k H^k / k!; H has no constant term, so degree <= p_max is
    // complete once k reaches p_max.
    std::vector<double> coeffs(n, 0.0);
    coeffs[0] = 1.0;
    std::vector<double> power(n, 0.0);
    power[0] = 1.0;

    const int k_cap = std::min(p_max, 500);
    std::vector<double> next(n, 0.0);
    for (int k = 1; k <= k_cap; ++k) {
        std::fill(next.begin(), next.end(), 0.0);
        const double inv_k = 1.0 / static_cast<double>(k);
        for (std::size_t j = 1; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t i = 1; i <= j; ++i) {
                acc += h[i] * power[j - i];
            }
            next[j] = acc * inv_k;
        }
        power.swap(next);
        for (std::size_t j = 0; j < n; ++j) coeffs[j] += power[j];
    }
    if (p_max > 500) {
        double residual = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            residual = std::max(residual, power[j] / std::max(coeffs[j], 1e-300));
        }
        if (residual > 1e-16) {
            throw oracle_failure(
                "lambda_by_series_exponentiation: series power cap reached "
                "before convergence");
        }
    }

    const double norm = std::exp(-2.0 * omega * zeta4);
    for (double& c : coeffs) c *= norm;
    return coeffs;
}

namespace {

double z_integrand(double x) {
    return x * x * std::log1p(-std::exp(-x));
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = z_integrand(lm);
    const double frm = z_integrand(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// int_0^a x^2 ln(1-e^-x) dx via the exponential series; the integrand's
// x^2 ln x endpoint is integrable but hostile to fixed-order rules.
double head_by_series(double a) {
    double acc = 0.0;
    for (int m = 1; m <= 200000; ++m) {
        const double dm = static_cast<double>(m);
        const double ma = dm * a;
        const double piece =
            (2.0 - std::exp(-ma) * (ma * ma + 2.0 * ma + 2.0)) / (dm * dm * dm);
        const double term = -piece / dm;
        acc += term;
        if (std::abs(term) < 1e-17 * std::abs(acc)) return acc;
    }
    throw oracle_failure("quadrature_partition: endpoint series stalled");
}

// int_X^inf via ln(1-e^-x) = -sum_m e^{-mx}/m; at X = 35 two terms suffice.
double tail_by_series(double x) {
    double acc = 0.0;
    for (int m = 1; m <= 8; ++m) {
        const double dm = static_cast<double>(m);
        const double integral =
            std::exp(-dm * x) *
            (x * x / dm + 2.0 * x / (dm * dm) + 2.0 / (dm * dm * dm));
        acc -= integral / dm;
    }
    return acc;
}

} // namespace

double quadrature_partition(double omega) {
    if (!(omega > 0.0)) {
        throw std::domain_error("quadrature_partition: omega must be > 0");
    }
    const double a = 0.5;
    const double b = 35.0;
    const double fa = z_integrand(a);
    const double fb = z_integrand(b);
    const double fm = z_integrand(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double middle =
        adaptive_simpson(a, b, fa, fm, fb, whole, 1e-13, 48);
    const double integral = head_by_series(a) + middle + tail_by_series(b);
    return -2.0 * omega * integral;
}

DiscreteModeResult discrete_mode_reference(const DiscreteBath& bath,
                                           const ModelParams& params,
                                           const QubitState& state, double t) {
    validate(params);
    for (double w : bath.mode_freqs) {
        if (!(w > 0.0)) {
            throw std::invalid_argument(
                "discrete_mode_reference: mode frequencies must be > 0");
        }
    }
    if (bath.n_max < 1 && !bath.mode_freqs.empty()) {
        throw std::invalid_argument("discrete_mode_reference: n_max >= 1");
    }
    if (!(bath.temperature > 0.0)) {
        throw std::invalid_argument(
            "discrete_mode_reference: temperature must be > 0");
    }
    const double per_branch =
        std::pow(static_cast<double>(bath.n_max) + 1.0,
                 static_cast<double>(bath.mode_freqs.size()));
    if (per_branch * per_branch > 1e7) {
        throw std::invalid_argument(
            "discrete_mode_reference: configuration count exceeds 1e7");
    }

    const std::vector<BranchConfig> configs = enumerate_branch(bath);
    const double inv_t = 1.0 / bath.temperature;

    // Direct route: flat Boltzmann average over joint configurations, each
    // evolved with the matrix exponential.  No grouping by sector.
    cd rho[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double z_direct = 0.0;
    for (const BranchConfig& alpha : configs) {
        for (const BranchConfig& beta : configs) {
            const double weight =
                std::exp(-(alpha.energy + beta.energy) * inv_t);
            const int d = beta.total - alpha.total;
            const Mat2 u = sector_evolution_matrix(params, d, t);
            if (state.is_pure()) {
                const cd up = u[0] * state.delta + u[1] * state.gamma;
                const cd down = u[2] * state.delta + u[3] * state.gamma;
                rho[0][0] += weight * up * std::conj(up);
                rho[0][1] += weight * up * std::conj(down);
                rho[1][0] += weight * down * std::conj(up);
                rho[1][1] += weight * down * std::conj(down);
            } else {
                rho[0][0] += weight * (state.p_up * u[0] * std::conj(u[0]) +
                                       state.p_down * u[1] * std::conj(u[1]));
                rho[0][1] += weight * (state.p_up * u[0] * std::conj(u[2]) +
                                       state.p_down * u[1] * std::conj(u[3]));
                rho[1][0] += weight * (state.p_up * u[2] * std::conj(u[0]) +
                                       state.p_down * u[3] * std::conj(u[1]));
                rho[1][1] += weight * (state.p_up * u[2] * std::conj(u[2]) +
                                       state.p_down * u[3] * std::conj(u[3]));
            }
            z_direct += weight;
        }
    }

    DiscreteModeResult result;
    result.rho_direct.rho11 = std::real(rho[0][0]) / z_direct;
    result.rho_direct.rho22 = std::real(rho[1][1]) / z_direct;
    result.rho_direct.rho12 = rho[0][1] / z_direct;
    result.sz_direct =
        0.5 * (result.rho_direct.rho11 - result.rho_direct.rho22);

    // Sector route: conditional partition weights by counting, then the
    // production per-difference assembly over all (P1, P2) pairs.
    const int p_top = bath.n_max * static_cast<int>(bath.mode_freqs.size());
    std::vector<double> lambda(static_cast<std::size_t>(p_top) + 1, 0.0);
    for (const BranchConfig& c : configs) {
        lambda[static_cast<std::size_t>(c.total)] +=
            std::exp(-c.energy * inv_t);
    }

    SectorSums sums;
    double z_sector = 0.0;
    for (int p1 = 0; p1 <= p_top; ++p1) {
        for (int p2 = 0; p2 <= p_top; ++p2) {
            const double weight =
                lambda[static_cast<std::size_t>(p1)] *
                lambda[static_cast<std::size_t>(p2)];
            const SectorAmplitude amp =
                sector_amplitudes(params, p2 - p1, t);
            sums.aa += weight * std::norm(amp.a);
            sums.bb += weight * std::norm(amp.b);
            sums.ab_conj += weight * amp.a * std::conj(amp.b);
            sums.a_sq += weight * amp.a * amp.a;
            z_sector += weight;
        }
    }
    const double inv_z = 1.0 / z_sector;
    sums.aa *= inv_z;
    sums.bb *= inv_z;
    sums.ab_conj *= inv_z;
    sums.a_sq *= inv_z;

    result.rho_sector = assemble_density(state, sums);
    double value = state.population_difference() * (sums.aa - sums.bb);
    if (state.is_pure()) {
        value += 4.0 * std::real(state.cross_term() * sums.ab_conj);
    }
    result.sz_sector = 0.5 * value;
    return result;
}

} // namespace spinbath::oracle
