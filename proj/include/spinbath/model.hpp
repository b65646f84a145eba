// model.hpp — domain parameters, initial qubit states, and the
// self-Hamiltonian eigenbasis of a driven spin coupled to a magnon bath.

#pragma once

#include <complex>
#include <optional>
#include <string_view>

namespace spinbath {

// Detuning, drive strength and scaled qubit-bath coupling, all in one energy
// unit.  The CLI reports epsilon and j0 as multiples of g and times as the
// dimensionless product g*t; the library itself is unit-agnostic.
struct ModelParams {
    double epsilon{0.0}; // drive detuning from the qubit splitting
    double g{1.0};       // drive strength, >= 0
    double j0{0.0};      // scaled coupling J0'/sqrt(N)
};

// Throws std::domain_error if g < 0 or any field is non-finite.
void validate(const ModelParams& params);

// Dimensionless bath-strength factor N*T^3 / (4*sqrt(2)*pi^2*M^(3/2)*J^3).
// All inputs must be > 0.
double derive_omega(double n_atoms, double temperature, double coordination,
                    double exchange);

// Bath strength, given either directly as the dimensionless factor or via the
// microscopic tuple it derives from.
struct MicroscopicBath {
    double n_atoms;      // atoms per sublattice
    double temperature;  // energy units
    double coordination; // nearest neighbors per atom
    double exchange;     // energy units
};

class BathSpec {
public:
    static BathSpec direct(double omega);
    static BathSpec microscopic(const MicroscopicBath& micro);

    double omega() const { return omega_; }
    const std::optional<MicroscopicBath>& source() const { return micro_; }

private:
    BathSpec() = default;
    double omega_{1.0};
    std::optional<MicroscopicBath> micro_;
};

// Initial qubit state: either a pure amplitude pair over {|1>,|0>} or a
// diagonal mixture.  The mixed form is kept separate so the dynamics layer
// can drop cross terms structurally rather than by testing amplitudes.
struct QubitState {
    enum class Kind { pure, mixed_diagonal };

    Kind kind{Kind::pure};
    std::complex<double> delta{1.0, 0.0}; // amplitude on |1>
    std::complex<double> gamma{0.0, 0.0}; // amplitude on |0>
    double p_up{1.0};
    double p_down{0.0};

    // Factories renormalize inputs that are within 1e-6 of normalized and
    // reject anything further off as a usage error.
    static QubitState pure(std::complex<double> delta,
                           std::complex<double> gamma);
    static QubitState mixed_diagonal(double p_up, double p_down);

    bool is_pure() const { return kind == Kind::pure; }

    // |delta|^2 - |gamma|^2 for pure states, p_up - p_down for mixtures.
    double population_difference() const;

    // delta * conj(gamma); zero for mixtures (their cross terms are absent).
    std::complex<double> cross_term() const;
};

// Rows are the self-Hamiltonian eigenstates expressed in the {|1>,|0>} basis:
//   |phi1> = u11|1> + u12|0>   (eigenvalue +sqrt(eps^2+g^2)/2)
//   |phi2> = u21|1> + u22|0>   (eigenvalue -sqrt(eps^2+g^2)/2)
// Entries are real, with the sign convention that u22 carries the minus.
struct EigenbasisU {
    double u11, u12, u21, u22;
};

// Eigenbasis of eps*Sz + g*Sx.  Requires g > 0 or eps != 0; throws
// std::domain_error on the fully degenerate case eps = g = 0.
EigenbasisU eigenbasis(double epsilon, double g);

// Named initial states: "up", "down", "phi1", "phi2", "phi-super"
// (the equal superposition of phi1 and phi2).  Unknown labels throw
// std::invalid_argument.
QubitState state_from_label(std::string_view label, double epsilon, double g);

} // namespace spinbath
