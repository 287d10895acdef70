// duality.hpp — Parameter correspondence between the large-E_C chain and its
// large-E_J (harmonic) partner: Ẽ_C = 2 E_J^2/E_C, Ẽ_J = E_C^3/(4 E_J^2),
// so that ω̃ = sqrt(2 Ẽ_C Ẽ_J) = E_C pointwise and both descriptions produce
// the same spectral density and GKSL coefficients.

#pragma once

#include <functional>
#include <span>

#include "jjbath/chain.hpp"
#include "jjbath/gksl.hpp"

namespace jjb::duality {

struct DualityMap {
    chain::ContinuumChain source;  // large-E_C chain
    chain::ContinuumChain mapped;  // harmonic-regime chain (same nu, same intervals)
    double log_ratio_min = 0.0;    // min_x ln(E_C/E_J), sets the temperature rule

    // beta_tilde with the temperature rule applied as an equality.
    double mapped_beta(double beta) const {
        return std::isinf(beta) ? beta : beta / log_ratio_min;
    }
    double omega_tilde(double x) const {
        return std::sqrt(2.0 * mapped.ec_profile(x) * mapped.ej_profile(x));
    }
};

// Throws when the source violates the large-E_C regime or E_J vanishes
// anywhere (the mapped Josephson energy would diverge).
DualityMap map_to_large_ej(const chain::ContinuumChain& source);

struct DualityReport {
    double max_rel_j_dev = 0.0;      // max |J_harm(w) - J_largeEC(w)| / J over the grid
    double kappa_rel_dev = 0.0;      // decay rates from the two routes
    double lamb_rel_dev = 0.0;       // Lamb shifts from the two routes
    double max_regime_ratio = 0.0;   // max_x Ẽ_C/Ẽ_J (must be << 1)
    double max_omega_identity = 0.0; // max_x |ω̃(x) - E_C(x)| / E_C(x)
};

DualityReport verify_duality(const DualityMap& map, std::span<const double> probe_grid,
                             const gksl::OscillatorParams& reference);

}  // namespace jjb::duality
