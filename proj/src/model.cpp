// model.cpp

#include "spinbath/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spinbath/constants.hpp"

namespace spinbath {

void validate(const ModelParams& params) {
    if (!std::isfinite(params.epsilon) || !std::isfinite(params.g) ||
        !std::isfinite(params.j0)) {
        throw std::domain_error("ModelParams: parameters must be finite");
    }
    if (params.g < 0.0) {
        throw std::domain_error("ModelParams: drive strength g must be >= 0");
    }
}

double derive_omega(double n_atoms, double temperature, double coordination,
                    double exchange) {
    if (!(n_atoms > 0.0) || !(temperature > 0.0) || !(coordination > 0.0) ||
        !(exchange > 0.0)) {
        throw std::domain_error("derive_omega: all inputs must be > 0");
    }
    const double t3 = temperature * temperature * temperature;
    const double j3 = exchange * exchange * exchange;
    return n_atoms * t3 /
           (4.0 * std::sqrt(2.0) * pi * pi * std::pow(coordination, 1.5) * j3);
}

BathSpec BathSpec::direct(double omega) {
    if (!(omega > 0.0)) {
        throw std::domain_error("BathSpec: omega must be > 0");
    }
    BathSpec spec;
    spec.omega_ = omega;
    return spec;
}

BathSpec BathSpec::microscopic(const MicroscopicBath& micro) {
    BathSpec spec;
    spec.omega_ = derive_omega(micro.n_atoms, micro.temperature,
                               micro.coordination, micro.exchange);
    spec.micro_ = micro;
    return spec;
}

QubitState QubitState::pure(std::complex<double> delta,
                            std::complex<double> gamma) {
    const double norm2 = std::norm(delta) + std::norm(gamma);
    if (std::abs(norm2 - 1.0) > 1e-6) {
        throw std::invalid_argument(
            "QubitState: amplitudes must satisfy |delta|^2 + |gamma|^2 = 1");
    }
    const double inv = 1.0 / std::sqrt(norm2);
    QubitState state;
    state.kind = Kind::pure;
    state.delta = delta * inv;
    state.gamma = gamma * inv;
    state.p_up = std::norm(state.delta);
    state.p_down = std::norm(state.gamma);
    return state;
}

QubitState QubitState::mixed_diagonal(double p_up, double p_down) {
    if (p_up < -1e-12 || p_down < -1e-12 ||
        std::abs(p_up + p_down - 1.0) > 1e-6) {
        throw std::invalid_argument(
            "QubitState: mixture requires p_up + p_down = 1, both >= 0");
    }
    QubitState state;
    state.kind = Kind::mixed_diagonal;
    const double sum = p_up + p_down;
    state.p_up = std::max(p_up, 0.0) / sum;
    state.p_down = std::max(p_down, 0.0) / sum;
    state.delta = {0.0, 0.0};
    state.gamma = {0.0, 0.0};
    return state;
}

double QubitState::population_difference() const {
    if (kind == Kind::pure) return std::norm(delta) - std::norm(gamma);
    return p_up - p_down;
}

std::complex<double> QubitState::cross_term() const {
    if (kind == Kind::pure) return delta * std::conj(gamma);
    return {0.0, 0.0};
}

EigenbasisU eigenbasis(double epsilon, double g) {
    if (g < 0.0) throw std::domain_error("eigenbasis: g must be >= 0");
    if (g == 0.0 && epsilon == 0.0) {
        throw std::domain_error(
            "eigenbasis: epsilon = g = 0 leaves the basis undefined");
    }
    const double r = std::hypot(epsilon, g);
    // r -/+ epsilon suffers cancellation for large |epsilon|; rewrite the
    // small one through (r-eps)(r+eps) = g^2.
    double r_plus, r_minus;
    if (epsilon >= 0.0) {
        r_plus = r + epsilon;
        r_minus = g * g / r_plus;
    } else {
        r_minus = r - epsilon;
        r_plus = g * g / r_minus;
    }
    const double c = std::sqrt(r_plus / (2.0 * r));
    const double s = std::sqrt(r_minus / (2.0 * r));
    return EigenbasisU{c, s, s, -c};
}

QubitState state_from_label(std::string_view label, double epsilon, double g) {
    if (label == "up") return QubitState::pure({1.0, 0.0}, {0.0, 0.0});
    if (label == "down") return QubitState::pure({0.0, 0.0}, {1.0, 0.0});
    if (label == "phi1" || label == "phi2" || label == "phi-super") {
        const EigenbasisU u = eigenbasis(epsilon, g);
        if (label == "phi1") return QubitState::pure({u.u11, 0.0}, {u.u12, 0.0});
        if (label == "phi2") return QubitState::pure({u.u21, 0.0}, {u.u22, 0.0});
        const double inv = 1.0 / std::sqrt(2.0);
        return QubitState::pure({(u.u11 + u.u21) * inv, 0.0},
                                {(u.u12 + u.u22) * inv, 0.0});
    }
    throw std::invalid_argument("unknown state label: " + std::string(label));
}

} // namespace spinbath
