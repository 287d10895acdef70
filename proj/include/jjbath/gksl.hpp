// gksl.hpp — From the bath spectral density to master-equation coefficients
// (decay rate, Lamb shift), Markovianity diagnostics, and the dissipative
// evolution of the capacitively coupled LC oscillator.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "jjbath/numerics.hpp"
#include "jjbath/types.hpp"

namespace jjb::gksl {

struct OscillatorParams {
    double omega0;  // plasma frequency 1/sqrt(LC)
    double e_q;     // renormalized oscillator charging energy e^2/(2C), e = 1
    double eps_i;   // capacitive coupling C_I/C

    OscillatorParams(double omega0_, double e_q_, double eps_i_);
};

struct Diagnostics {
    double omega_b = 0.0;         // bath correlation decay rate
    double zeta_m = 0.0;          // max over omega of kappa(omega)/omega
    double bm_margin = 0.0;       // kappa_max / omega_b
    double secular_margin = 0.0;  // zeta_m
    bool bm_ok = false;
    bool secular_ok = false;
};

struct GkslResult {
    double kappa = 0.0;                       // emission rate kappa(omega0) >= 0
    double lamb_shift = 0.0;                  // delta_LS(omega0), signed
    std::complex<double> gamma_omega{0, 0};   // half Fourier transform at omega0
    double kappa_negative = 0.0;              // absorption rate, identically 0
    double lamb_constant = 0.0;               // scalar part of H_LS, reported only
    Diagnostics diagnostics;
};

// Gamma(omega) = (eps_I/2)^2 [ pi J(omega) Theta(omega)
//                              - i PV ∫_0^inf dE J(E)/(E - omega) ].
std::complex<double> half_fourier(const SpectralDensity& j, double omega, double eps_i,
                                  const numerics::QuadratureOptions& opts = {});

// kappa(omega0) = pi eps_I^2 omega0 J(omega0) / (8 E_Q); zero outside support.
double decay_rate(const SpectralDensity& j, const OscillatorParams& osc);

// delta_LS(omega0) = (omega0 eps_I^2 / 16 E_Q)
//                    PV ∫ dE J(E) [1/(E - omega0) + 1/(E + omega0)].
double lamb_shift(const SpectralDensity& j, const OscillatorParams& osc);

// Scalar term of the Lamb-shift Hamiltonian; commutes with everything and is
// dropped from the evolution.
double lamb_constant(const SpectralDensity& j, const OscillatorParams& osc);

// Parameters of the engineered Lorentzian chain needed by the empirical
// Born--Markov/secular rule; other chains use the measured route below.
struct LorentzianRule {
    double amp, sigma, a, e_c0, e_j0, eps_i;
};

// omega_B = a E_C0 min(sigma, 1/2), zeta_M = pi A eps^2 E_J0^2/(8 a sigma^2 E_C0 E_Q),
// kappa_max = zeta_M E_C0 (1 + sqrt(1+(a sigma)^2))/2, plus the criteria booleans.
// The comparison threshold is configuration, not physics; default 0.01.
Diagnostics markovianity_report(const LorentzianRule& rule, const OscillatorParams& osc,
                                double threshold = 0.01);

// Generic chains: omega_B from the measured 1/e decay time of |Gamma(t) - Gamma0|,
// kappa_max and zeta_M from a sweep of J over its support.
Diagnostics markovianity_measured(const CorrelationSeries& gamma, double gamma0,
                                  const SpectralDensity& j, const OscillatorParams& osc,
                                  double threshold = 0.01);

// 1 / (first time |Gamma(t) - Gamma0| drops below |Gamma(0) - Gamma0| / e).
double measured_omega_b(const CorrelationSeries& gamma, double gamma0);

// kappa, Lamb shift, Gamma(omega0) and the zero absorption rate in one call.
GkslResult coefficients(const SpectralDensity& j, const OscillatorParams& osc);

struct OscillatorState {
    int n_fock = 0;          // Fock cutoff; matrix dimension n_fock + 1
    Eigen::MatrixXcd rho;

    static OscillatorState fock(int n_fock, int n0);
    double trace() const;
    double number_expectation() const;
    double purity() const;
    double min_eigenvalue() const;
};

void validate(const OscillatorState& state);

struct Trajectory {
    std::vector<double> times;
    std::vector<OscillatorState> states;
    bool cutoff_warning = false;  // top two Fock levels exceeded 1e-8 population
};

// Interaction-picture master equation
//   d rho/dt = -i delta_LS [b†b, rho] + kappa (b rho b† - {b†b, rho}/2),
// integrated with the adaptive embedded pair; Hermiticity is restored by
// symmetrization after every accepted step.
Trajectory evolve_oscillator(const GkslResult& res, const OscillatorParams& osc,
                             const OscillatorState& initial, std::span<const double> times,
                             const numerics::OdeOptions& opts = {.rel_tol = 1e-9,
                                                                 .abs_tol = 1e-12});

}  // namespace jjb::gksl
