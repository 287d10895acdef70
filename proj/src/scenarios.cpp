#include "jjbath/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace jjb::scenarios {

LorentzianScenario lorentzian_chain(const LorentzianChainParams& p, double eps_i) {
    if (!(p.a > 0.0 && p.sigma > 0.0 && p.amp > 0.0 && p.half_length > 0.0)) {
        throw std::invalid_argument("lorentzian_chain: amp, sigma, a, L must be > 0");
    }
    if (!(p.e_c0 > 0.0 && p.e_j0 >= 0.0)) {
        throw std::invalid_argument("lorentzian_chain: invalid junction energies");
    }

    const double l2 = p.half_length * p.half_length;
    const double k = p.a / (2.0 * l2);

    LorentzianScenario s;
    s.chain.x_lo = -p.half_length;
    s.chain.x_hi = p.half_length;
    s.chain.coupling_eps = eps_i;
    s.chain.density = chain::Profile::lorentzian_nu(p.amp, p.sigma, p.a, p.half_length);
    s.chain.ec_profile = chain::Profile::power_quad(p.e_c0, k, 1.0);
    s.chain.ej_profile = chain::Profile::power_quad(p.e_j0, k, -1.0);
    s.chain.monotone_intervals = {{-p.half_length, 0.0}, {0.0, p.half_length}};
    chain::validate(s.chain);

    const double width = p.a * p.sigma * p.e_c0;
    const double peak_num = p.a * p.amp * p.e_c0 * p.e_j0 * p.e_j0;
    s.j_closed_form.support_lo = p.e_c0;
    s.j_closed_form.support_hi = (1.0 + 0.5 * p.a) * p.e_c0;
    s.j_closed_form.kind = SpectralDensity::Kind::closed_form;
    s.j_closed_form.evaluate = [peak_num, width, p](double e) {
        if (e < p.e_c0 || e > (1.0 + 0.5 * p.a) * p.e_c0) return 0.0;
        const double d = e - p.e_c0;
        return peak_num / (d * d + width * width);
    };
    return s;
}

gksl::LorentzianRule to_rule(const LorentzianChainParams& p, double eps_i) {
    return {p.amp, p.sigma, p.a, p.e_c0, p.e_j0, eps_i};
}

void validate(const FabricationConstants& fab) {
    if (!(fab.e_min > 0.0 && fab.delta_ec > 0.0 && fab.e_zeta > 0.0 && fab.e_0 > 0.0 &&
          fab.f_j_a_over_zeta > 0.0)) {
        throw std::invalid_argument("FabricationConstants: all energies must be > 0");
    }
}

JunctionParams fabrication_params(double w_over_zeta, const FabricationConstants& fab) {
    if (!(w_over_zeta > 0.0)) {
        throw std::invalid_argument("fabrication_params: thickness must be > 0");
    }
    const double e_c = fab.e_zeta * w_over_zeta;
    const double e_j = fab.f_j_a_over_zeta / std::sinh(w_over_zeta);
    return {e_c, e_j};
}

JunctionParams junction_from_charging(double e_c, const FabricationConstants& fab) {
    if (!(e_c > 0.0)) throw std::invalid_argument("junction_from_charging: E_C must be > 0");
    return {e_c, fab.f_j_a_over_zeta / std::sinh(e_c / fab.e_zeta)};
}

bool large_charging_guaranteed(const FabricationConstants& fab) {
    // E_min sinh(E_min/E_zeta) >> F_J A / zeta; tested as a factor of 10
    return fab.e_min * std::sinh(fab.e_min / fab.e_zeta) > 10.0 * fab.f_j_a_over_zeta;
}

chain::DiscreteChain gaussian_disorder_chain(const DisorderChainParams& p, double eps_i) {
    validate(p.fab);
    if (p.n_j < 1) throw std::invalid_argument("gaussian_disorder_chain: need n_j >= 1");
    const auto energies = numerics::rng_truncated_normal(p.fab.e_0, p.fab.delta_ec,
                                                         p.fab.e_min, p.seed, p.n_j);
    chain::DiscreteChain out;
    out.coupling_eps = eps_i;
    out.junctions.reserve(p.n_j);
    for (double e_c : energies) out.junctions.push_back(junction_from_charging(e_c, p.fab));
    return out;
}

SpectralDensity disorder_spectral_density(const DisorderChainParams& p) {
    validate(p.fab);
    const double f = p.fab.f_j_a_over_zeta;
    const double pref = 2.0 * static_cast<double>(p.n_j) * f * f;
    const double e_zeta = p.fab.e_zeta;
    const double e_0 = p.fab.e_0;
    const double de = p.fab.delta_ec;
    const double e_min = p.fab.e_min;

    SpectralDensity j;
    j.support_lo = e_min;
    j.support_hi = e_0 + 10.0 * de;  // Gaussian tail is negligible beyond
    j.kind = SpectralDensity::Kind::closed_form;
    j.evaluate = [pref, e_zeta, e_0, de, e_min, hi = j.support_hi](double e) {
        if (e < e_min || e > hi) return 0.0;
        const double z = (e - e_0) / de;
        const double gauss = std::exp(-0.5 * z * z) / (de * std::sqrt(2.0 * M_PI));
        const double s = std::sinh(e / e_zeta);
        return pref * gauss / (s * s);
    };
    return j;
}

chain::ContinuumChain disorder_continuum_chain(const DisorderChainParams& p, double eps_i) {
    validate(p.fab);
    chain::ContinuumChain c;
    c.x_lo = p.fab.e_min;
    c.x_hi = p.fab.e_0 + 10.0 * p.fab.delta_ec;
    c.coupling_eps = eps_i;
    // x is the charging energy itself; the thickness disorder law plays nu(x)
    c.density = chain::Profile::gaussian(static_cast<double>(p.n_j), p.fab.e_0,
                                         p.fab.delta_ec, p.fab.e_min);
    c.ec_profile = chain::Profile::linear(1.0);
    c.ej_profile = chain::Profile::sinh_recip(p.fab.f_j_a_over_zeta, p.fab.e_zeta);
    c.monotone_intervals = {{c.x_lo, c.x_hi}};
    chain::validate(c);
    return c;
}

CorrelationSeries disorder_gamma_analytic(const DisorderChainParams& p, double eps_i,
                                          std::vector<double> times, kernels::Exec exec) {
    const auto c = disorder_continuum_chain(p, eps_i);
    CorrelationSeries s = chain::gamma_continuum(c, std::move(times), exec);
    s.meta.source = "chain-continuum";
    s.meta.e_c = p.fab.e_0;
    return s;
}

}  // namespace jjb::scenarios
