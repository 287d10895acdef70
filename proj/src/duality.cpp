#include "jjbath/duality.hpp"

#include <cmath>
#include <stdexcept>

namespace jjb::duality {

namespace {

using chain::Profile;

bool same_quadratic_family(const Profile& ec, const Profile& ej) {
    return ec.form == Profile::Form::power_quad && ej.form == Profile::Form::power_quad &&
           ec.k == ej.k;
}

Profile tabulate(const std::function<double(double)>& f, double lo, double hi) {
    constexpr int kPoints = 4096;
    std::vector<double> xs(kPoints + 1), ys(kPoints + 1);
    for (int i = 0; i <= kPoints; ++i) {
        xs[i] = lo + (hi - lo) * i / kPoints;
        ys[i] = f(xs[i]);
    }
    return Profile::tabulated(std::move(xs), std::move(ys));
}

}  // namespace

DualityMap map_to_large_ej(const chain::ContinuumChain& source) {
    // pointwise algebra: only the domain and the regime need checking here;
    // spectral-density construction revalidates the interval decomposition
    if (!(source.x_lo < source.x_hi)) {
        throw std::invalid_argument("map_to_large_ej: empty domain");
    }

    double lambda_max = 0.0;
    double log_ratio_min = kInf;
    constexpr int kScan = 2048;
    for (int i = 0; i <= kScan; ++i) {
        const double x = source.x_lo + (source.x_hi - source.x_lo) * i / kScan;
        const double ec = source.ec_profile(x);
        const double ej = source.ej_profile(x);
        if (!(ej > 0.0)) {
            throw std::domain_error("map_to_large_ej: E_J vanishes; mapped chain degenerate");
        }
        lambda_max = std::max(lambda_max, ej / ec);
        log_ratio_min = std::min(log_ratio_min, std::log(ec / ej));
    }
    if (!(lambda_max < 1.0)) {
        throw std::domain_error("map_to_large_ej: source chain is not in the large-E_C regime");
    }

    DualityMap map;
    map.source = source;
    map.log_ratio_min = log_ratio_min;
    map.mapped = source;  // same domain, density, intervals, coupling

    if (same_quadratic_family(source.ec_profile, source.ej_profile)) {
        // c1 (1+kx^2)^p1 and c2 (1+kx^2)^p2 stay in the family under the map
        const Profile& ec = source.ec_profile;
        const Profile& ej = source.ej_profile;
        map.mapped.ec_profile =
            Profile::power_quad(2.0 * ej.c * ej.c / ec.c, ec.k, 2.0 * ej.p - ec.p);
        map.mapped.ej_profile = Profile::power_quad(ec.c * ec.c * ec.c / (4.0 * ej.c * ej.c),
                                                    ec.k, 3.0 * ec.p - 2.0 * ej.p);
    } else {
        const Profile ec = source.ec_profile;
        const Profile ej = source.ej_profile;
        map.mapped.ec_profile = tabulate(
            [ec, ej](double x) { return 2.0 * ej(x) * ej(x) / ec(x); }, source.x_lo,
            source.x_hi);
        map.mapped.ej_profile = tabulate(
            [ec, ej](double x) {
                const double e = ec(x);
                return e * e * e / (4.0 * ej(x) * ej(x));
            },
            source.x_lo, source.x_hi);
    }
    return map;
}

DualityReport verify_duality(const DualityMap& map, std::span<const double> probe_grid,
                             const gksl::OscillatorParams& reference) {
    DualityReport rep;

    const SpectralDensity j_ec = chain::spectral_density_large_ec(map.source);
    const chain::HarmonicBath bath = chain::harmonic_gamma(map.mapped, kInf, {0.0});
    const SpectralDensity& j_harm = bath.j;

    for (double w : probe_grid) {
        const double a = j_ec(w);
        const double b = j_harm(w);
        const double scale = std::max(std::abs(a), std::abs(b));
        if (scale > 0.0) {
            rep.max_rel_j_dev = std::max(rep.max_rel_j_dev, std::abs(a - b) / scale);
        }
    }

    const double kap_ec = gksl::decay_rate(j_ec, reference);
    const double kap_harm = gksl::decay_rate(j_harm, reference);
    rep.kappa_rel_dev =
        std::abs(kap_ec - kap_harm) / std::max({std::abs(kap_ec), std::abs(kap_harm), 1e-300});

    const double ls_ec = gksl::lamb_shift(j_ec, reference);
    const double ls_harm = gksl::lamb_shift(j_harm, reference);
    rep.lamb_rel_dev =
        std::abs(ls_ec - ls_harm) / std::max({std::abs(ls_ec), std::abs(ls_harm), 1e-300});

    constexpr int kScan = 2048;
    for (int i = 0; i <= kScan; ++i) {
        const double x = map.source.x_lo + (map.source.x_hi - map.source.x_lo) * i / kScan;
        const double ratio = map.mapped.ec_profile(x) / map.mapped.ej_profile(x);
        rep.max_regime_ratio = std::max(rep.max_regime_ratio, ratio);
        const double ec = map.source.ec_profile(x);
        rep.max_omega_identity =
            std::max(rep.max_omega_identity, std::abs(map.omega_tilde(x) - ec) / ec);
    }
    return rep;
}

}  // namespace jjb::duality
