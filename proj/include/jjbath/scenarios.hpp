// scenarios.hpp — The two concrete chains: an engineered chain whose effective
// spectral density is Lorentzian, and a chain with Gaussian disorder in the
// oxidation thickness, together with the fabrication parameter model relating
// thickness to charging and Josephson energies.

#pragma once

#include <cstdint>

#include "jjbath/chain.hpp"
#include "jjbath/gksl.hpp"
#include "jjbath/types.hpp"

namespace jjb::scenarios {

// E_C(x) = (1 + a x^2/2L^2) E_C0, E_J(x) = E_J0 / (1 + a x^2/2L^2),
// nu(x) = A L^2 |x| (1 + a x^2/2L^2)^2 / (x^4 + 4 sigma^2 L^4) on [-L, L].
struct LorentzianChainParams {
    double amp;          // dimensionless density amplitude
    double sigma;        // dimensionless density width
    double a;            // curvature of the charging-energy variation, > 0
    double e_c0;         // charging energy at the origin
    double e_j0;         // Josephson energy at the origin
    double half_length;  // L
};

struct LorentzianScenario {
    chain::ContinuumChain chain;
    SpectralDensity j_closed_form;  // a A E_C0 E_J0^2 / [(E-E_C0)^2 + (a sigma E_C0)^2]
                                    // on [E_C0, (1 + a/2) E_C0]
};

LorentzianScenario lorentzian_chain(const LorentzianChainParams& p, double eps_i);

gksl::LorentzianRule to_rule(const LorentzianChainParams& p, double eps_i);

// Everything in energy units: the linear map 2e^2/(eps_r A) between thickness
// and charging energy is absorbed into E_zeta, E_min, E_0, delta E_C.
struct FabricationConstants {
    double f_j_a_over_zeta;  // F_J A / zeta
    double e_zeta;           // E_zeta = 2 e^2 zeta / (eps_r A)
    double e_min;            // image of w_min
    double e_0;              // image of w_0
    double delta_ec;         // image of delta w
};

void validate(const FabricationConstants& fab);

// E_C = E_zeta (w/zeta); E_J = (F_J A/zeta) / sinh(w/zeta). The argument is
// the dimensionless thickness w/zeta.
JunctionParams fabrication_params(double w_over_zeta, const FabricationConstants& fab);
JunctionParams junction_from_charging(double e_c, const FabricationConstants& fab);

// lambda < 1 for every junction the truncated disorder law can produce.
bool large_charging_guaranteed(const FabricationConstants& fab);

struct DisorderChainParams {
    FabricationConstants fab;
    std::size_t n_j;     // junction count
    std::uint64_t seed;  // RNG seed; identical seed => byte-identical chain
};

// Thickness values from the truncated normal (mean E_0, width delta E_C,
// support E_C > E_min in energy units), mapped through the fabrication model.
chain::DiscreteChain gaussian_disorder_chain(const DisorderChainParams& p, double eps_i);

// J(E) = [2 N_J (F_J A/zeta)^2 / sinh^2(E/E_zeta)] * gaussian(E; E_0, delta E_C)
// for E > E_min; the Gaussian tail is truncated at E_0 + 10 delta E_C.
SpectralDensity disorder_spectral_density(const DisorderChainParams& p);

// The same bath as a continuum chain with x = E_C: identity charging profile,
// sinh-reciprocal Josephson profile, Gaussian density scaled by N_J.
chain::ContinuumChain disorder_continuum_chain(const DisorderChainParams& p, double eps_i);

// Quadrature of the continuum correlation integral over the disorder law.
CorrelationSeries disorder_gamma_analytic(const DisorderChainParams& p, double eps_i,
                                          std::vector<double> times,
                                          kernels::Exec exec = kernels::Exec::parallel);

}  // namespace jjb::scenarios
