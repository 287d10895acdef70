// chain.hpp — Whole-bath quantities assembled from junction-level physics:
// discrete and continuum correlation functions Gamma(t), the effective
// spectral density J(E_C) by monotone-interval inversion, the thermal offset
// Gamma_0, the zero-temperature-limit profile Delta(x), and the harmonic
// (large-E_J) counterparts.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "jjbath/kernels.hpp"
#include "jjbath/numerics.hpp"
#include "jjbath/types.hpp"

namespace jjb::chain {

// Closed-form profile descriptors keep the monotone decomposition and the
// JSON round trip exact; tabulated profiles are the generic fallback.
struct Profile {
    enum class Form {
        constant,       // c
        linear,         // c * x
        power_quad,     // c * (1 + k x^2)^p
        lorentzian_nu,  // amp L^2 |x| (1 + a x^2 / 2L^2)^2 / (x^4 + 4 sigma^2 L^4)
        gaussian,       // norm * exp(-(x-mean)^2 / 2 width^2) / sqrt(2 pi width^2), 0 below cut
        sinh_recip,     // c / sinh(x / scale)
        tabulated,      // linear interpolation of (xs, ys)
    };

    Form form = Form::constant;
    double c = 0.0, k = 0.0, p = 1.0;
    double amp = 0.0, sigma = 0.0, a = 0.0, half_length = 1.0;
    double norm = 0.0, mean = 0.0, width = 1.0, cut = -kInf;
    double scale = 1.0;
    std::vector<double> xs, ys;

    double operator()(double x) const;
    double derivative(double x) const;

    static Profile constant(double value);
    static Profile linear(double slope);
    static Profile power_quad(double c, double k, double p);
    static Profile lorentzian_nu(double amp, double sigma, double a, double half_length);
    static Profile gaussian(double norm, double mean, double width, double cut = -kInf);
    static Profile sinh_recip(double c, double scale);
    static Profile tabulated(std::vector<double> xs, std::vector<double> ys);
};

struct DiscreteChain {
    std::vector<JunctionParams> junctions;
    double coupling_eps = 0.0;  // epsilon_I; per-junction g = eps_I E_C (e = 1)
};

struct ContinuumChain {
    double x_lo = 0.0;
    double x_hi = 0.0;
    Profile density;     // nu(x) >= 0; integrates to the junction count
    Profile ec_profile;  // E_C(x) > 0
    Profile ej_profile;  // E_J(x) >= 0
    std::vector<std::pair<double, double>> monotone_intervals;  // E_C strictly monotonic
    double coupling_eps = 0.0;
};

// Checks positivity and per-interval strict monotonicity of E_C (sampled
// derivative sign, 1024 points per interval). Throws std::invalid_argument
// naming the offending interval.
void validate(const ContinuumChain& chain);

// Gamma(t) = (1/2) eps_I^2 sum_alpha E_J,alpha^2 exp(-i E_C,alpha t).
CorrelationSeries gamma_discrete(const DiscreteChain& chain, std::vector<double> times,
                                 kernels::Exec exec = kernels::Exec::parallel);

// J(E) = 2 sum_k nu(x_k(E)) E_J^2(x_k(E)) |dx_k/dE| with x_k(E) obtained by
// bisection on each monotone interval (1e-12 relative).
SpectralDensity spectral_density_large_ec(const ContinuumChain& chain);

// Gamma(t) = (eps_I/2)^2 ∫ dE J(E) exp(-i E t) over the support of J.
CorrelationSeries gamma_from_spectral(const SpectralDensity& j, double eps_i,
                                      std::vector<double> times,
                                      kernels::Exec exec = kernels::Exec::parallel,
                                      double rel_tol = 1e-9);

// Direct x-space route Gamma(t) = (1/2) eps_I^2 ∫ dx nu E_J^2 exp(-i E_C(x) t).
CorrelationSeries gamma_continuum(const ContinuumChain& chain, std::vector<double> times,
                                  kernels::Exec exec = kernels::Exec::parallel,
                                  double rel_tol = 1e-9);

// Thermal offset Gamma_0 = 2 eps_I^2 ∫ dx nu(x) E_C^2(x) exp(-beta E_C(x)).
double offset_gamma0(const ContinuumChain& chain, double beta);

struct DeltaProfile {
    std::function<double(double)> delta;  // Delta(x) = E_C(x) / (-ln lambda(x))
    double delta_star;                    // minimum over the domain
    double x_star;                        // its position (smallest x on ties)
};

// Requires lambda(x) < 1 everywhere (throws on regime violation).
DeltaProfile delta_profile(const ContinuumChain& chain);

// Harmonic-oscillator correlator G(t) = (w/4E_C)[coth(beta w/2) cos wt - i sin wt]
// with w = sqrt(2 E_J E_C); beta may be infinite.
CorrelationSeries harmonic_correlation(const JunctionParams& p, double beta,
                                       std::vector<double> times);

struct HarmonicBath {
    SpectralDensity j;        // J(w) = sum_k w nu_k(w) E_C^(k)(w) |dx_k/dw|
    CorrelationSeries gamma;  // finite-beta integral; coth -> 1 as beta -> inf
};

// Large-E_J route: the chain's frequency profile is w(x) = sqrt(2 E_J E_C),
// required to be monotone on the chain's stated intervals.
HarmonicBath harmonic_gamma(const ContinuumChain& chain, double beta,
                            std::vector<double> times,
                            kernels::Exec exec = kernels::Exec::parallel,
                            double rel_tol = 1e-9);

// ∫ nu dx — the junction count represented by the density.
double junction_count(const ContinuumChain& chain);

enum class SampleMode { stratified, random };

// Draw n junctions from nu(x) by inverse-CDF sampling (midpoint quantiles for
// stratified mode, seeded uniforms otherwise) and evaluate the parameter
// profiles at the sampled positions. The returned coupling carries the weight
// sqrt(∫nu dx / n) so gamma_discrete of the result estimates gamma_continuum
// of the source for any sample count.
DiscreteChain discretize(const ContinuumChain& chain, std::size_t n, SampleMode mode,
                         std::uint64_t seed = 0);

}  // namespace jjb::chain
