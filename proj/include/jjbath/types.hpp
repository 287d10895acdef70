// types.hpp — Shared value types: junction parameters, correlation series,
// spectral densities. All quantities use hbar = k_B = e = 1; energies are
// expressed in the caller's reference unit (E_C for a junction, E_C0 for a chain).

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace jjb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One junction's physics: charging energy, Josephson energy, and the ratio
// lambda = E_J / E_C that controls the perturbative expansion.
struct JunctionParams {
    double e_c;
    double e_j;
    double lambda;

    JunctionParams(double charging, double josephson)
        : e_c(charging), e_j(josephson), lambda(josephson / charging) {
        if (!(e_c > 0.0)) {
            throw std::invalid_argument("JunctionParams: charging energy must be > 0");
        }
        if (!(e_j >= 0.0)) {
            throw std::invalid_argument("JunctionParams: Josephson energy must be >= 0");
        }
    }
};

// Source tag and parameter echo carried by every correlation series.
struct SeriesMeta {
    std::string source;  // exact | perturbative-lowT | perturbative-eps | highT |
                         // matsubara | chain-discrete | chain-continuum | harmonic
    double e_c = std::numeric_limits<double>::quiet_NaN();
    double e_j = std::numeric_limits<double>::quiet_NaN();
    double beta = kInf;
    bool cutoff_warning = false;    // basis truncation too small for this beta
    bool validity_warning = false;  // evaluated outside the formula's regime
    std::string validity_note;
};

// Complex-valued correlator sampled on an ascending time grid.
struct CorrelationSeries {
    std::vector<double> times;
    std::vector<std::complex<double>> values;
    SeriesMeta meta;
};

// Evaluable spectral density J(E) with explicit compact support.
// evaluate(E) must return 0 outside [support_lo, support_hi].
struct SpectralDensity {
    enum class Kind { large_ec, harmonic, closed_form, tabulated };

    double support_lo = 0.0;
    double support_hi = 0.0;
    std::function<double(double)> evaluate;
    Kind kind = Kind::closed_form;

    double operator()(double e) const { return evaluate ? evaluate(e) : 0.0; }
    double width() const { return support_hi - support_lo; }
};

inline std::string to_string(SpectralDensity::Kind k) {
    switch (k) {
        case SpectralDensity::Kind::large_ec: return "large-EC";
        case SpectralDensity::Kind::harmonic: return "harmonic";
        case SpectralDensity::Kind::closed_form: return "closed-form";
        case SpectralDensity::Kind::tabulated: return "tabulated";
    }
    return "unknown";
}

}  // namespace jjb
