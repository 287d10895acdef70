// perturbation.hpp — Closed-form perturbative results at second order in
// lambda = E_J/E_C: energies and first-order eigenstates, the three
// temperature-regime correlators, and the Matsubara imaginary-time building
// blocks K_n, L_n used as an independent analytic route to G(t).

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "jjbath/types.hpp"

namespace jjb::perturbation {

enum class Parity : int { even = +1, odd = -1 };

// Label of a parity-symmetrized charge state chi_{n,±}; level 0 is |0>.
struct BasisLabel {
    int level;
    Parity parity;
    bool operator==(const BasisLabel&) const = default;
};

struct StateCoefficient {
    BasisLabel label;
    double amplitude;  // includes the zeroth-order 1 on the state's own label
};

struct PerturbativeSpectrum {
    int level;
    Parity parity;          // meaningful for level >= 1
    double energy_o2;       // energy through second order in lambda
    std::vector<StateCoefficient> state_coeffs;
};

// E_0 = -lambda^2 E_C / 2; E_{1,+} = E_C (1 + 5 lambda^2/12);
// E_{1,-} = E_C (1 - lambda^2/12); E_{n,±} = E_C (n^2 + lambda^2/(2(4n^2-1))).
// The parity label is required for level >= 1 and ignored for the ground state.
double perturbative_energy(int level, std::optional<Parity> parity, const JunctionParams& p);

PerturbativeSpectrum perturbative_state(int level, std::optional<Parity> parity,
                                        const JunctionParams& p);

// True when the expansion parameter is inside its trusted window.
bool perturbation_valid(const JunctionParams& p);

// G(t) = (lambda^2/2) e^{-i E_C t}; valid for t << 1/(lambda^2 E_C) and
// temperatures below the zero-temperature threshold.
CorrelationSeries g_low_t(const JunctionParams& p, std::vector<double> times);

// G(t) = (lambda^2/2) e^{-i E_C t} + 2 e^{-beta E_C}; the moderate regime
// lambda^3 E_C << 1/beta << E_C where the first excited states contribute a
// constant offset.
CorrelationSeries g_moderate(const JunctionParams& p, double beta, std::vector<double> times);

// Free-rotor constant 2 sum n^2 e^{-n^2 beta E_C} / (1 + 2 sum e^{-n^2 beta E_C}).
// series_cutoff <= 0 selects the automatic cutoff (term below 1e-15 of the sum).
std::complex<double> g_high_t(const JunctionParams& p, double beta, int series_cutoff = 0);

// Matsubara kernels, closed forms of the nested integrals of
// F_n(tau) = exp(-E_C tau (1+2n)).
double matsubara_k(int n, double tau, double e_c);
double matsubara_l(int n, double tau, double beta, double e_c);

// G(t) = [2 e^{-beta E_C} + (lambda^2/2) e^{-i E_C t}] / [1 - beta E_C lambda^2/2],
// the low-temperature reduction of the second-order Matsubara expansion with
// the denominator kept unexpanded.
CorrelationSeries matsubara_correlation(const JunctionParams& p, double beta,
                                        std::vector<double> times);

}  // namespace jjb::perturbation
