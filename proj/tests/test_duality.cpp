#include "doctest.h"

#include <cmath>

#include "jjbath/duality.hpp"
#include "jjbath/scenarios.hpp"

using namespace jjb;

namespace {
const scenarios::LorentzianChainParams kFig3{500.0, 0.25, 0.4, 1.0, 0.05, 1.0};
constexpr double kEps = 0.01;
}  // namespace

TEST_CASE("parameter correspondence pointwise") {
    auto scenario = scenarios::lorentzian_chain(kFig3, kEps);
    auto map = duality::map_to_large_ej(scenario.chain);

    SUBCASE("origin: E_C = 1, E_J = 0.05") {
        CHECK(map.mapped.ec_profile(0.0) == doctest::Approx(0.005).epsilon(1e-14));
        CHECK(map.mapped.ej_profile(0.0) == doctest::Approx(100.0).epsilon(1e-14));
        CHECK(map.omega_tilde(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("chain end: E_C = 1.2, E_J = 0.0416667") {
        CHECK(map.mapped.ec_profile(1.0) == doctest::Approx(0.0028935).epsilon(1e-5));
        CHECK(map.mapped.ej_profile(1.0) == doctest::Approx(248.832).epsilon(1e-6));
        CHECK(map.omega_tilde(1.0) == doctest::Approx(1.2).epsilon(1e-14));
    }
    SUBCASE("frequency identity holds along the whole chain") {
        for (int i = 0; i <= 100; ++i) {
            const double x = -1.0 + 2.0 * i / 100.0;
            const double ec = scenario.chain.ec_profile(x);
            CHECK(std::abs(map.omega_tilde(x) - ec) <= 1e-12 * ec);
        }
    }
    SUBCASE("temperature rule") {
        // min over x of ln(E_C/E_J) is ln 20 at the origin
        CHECK(map.log_ratio_min == doctest::Approx(std::log(20.0)).epsilon(1e-12));
        CHECK(map.mapped_beta(10.0) == doctest::Approx(10.0 / std::log(20.0)).epsilon(1e-14));
        CHECK(std::isinf(map.mapped_beta(kInf)));
    }
    SUBCASE("vanishing Josephson energy rejected") {
        auto degenerate = scenario.chain;
        degenerate.ej_profile = chain::Profile::constant(0.0);
        CHECK_THROWS_AS(duality::map_to_large_ej(degenerate), std::domain_error);
    }
    SUBCASE("chain outside the large-E_C regime rejected") {
        auto wrong = scenario.chain;
        wrong.ej_profile = chain::Profile::constant(1.5);
        CHECK_THROWS_AS(duality::map_to_large_ej(wrong), std::domain_error);
    }
}

TEST_CASE("mapped profiles stay closed-form for the quadratic family") {
    auto scenario = scenarios::lorentzian_chain(kFig3, kEps);
    auto map = duality::map_to_large_ej(scenario.chain);
    CHECK(map.mapped.ec_profile.form == chain::Profile::Form::power_quad);
    CHECK(map.mapped.ej_profile.form == chain::Profile::Form::power_quad);
    // exponents (1 + k x^2)^{-3} and (1 + k x^2)^{5}
    CHECK(map.mapped.ec_profile.p == doctest::Approx(-3.0));
    CHECK(map.mapped.ej_profile.p == doctest::Approx(5.0));
}

TEST_CASE("generic profiles fall back to tables") {
    scenarios::FabricationConstants fab{0.01, 0.2, 0.2, 1.0, 0.1};
    auto c = scenarios::disorder_continuum_chain({fab, 1000, 1}, kEps);
    auto map = duality::map_to_large_ej(c);
    CHECK(map.mapped.ec_profile.form == chain::Profile::Form::tabulated);
    for (double x : {0.3, 0.9, 1.7}) {
        const double expect = 2.0 * std::pow(c.ej_profile(x), 2) / c.ec_profile(x);
        CHECK(map.mapped.ec_profile(x) == doctest::Approx(expect).epsilon(2e-5));
        CHECK(std::abs(map.omega_tilde(x) - x) < 2e-5 * x);
    }
}

TEST_CASE("both regimes produce the same bath") {
    auto scenario = scenarios::lorentzian_chain(kFig3, kEps);
    auto map = duality::map_to_large_ej(scenario.chain);

    std::vector<double> probe(101);
    for (int i = 0; i <= 100; ++i) probe[i] = 1.0 + 0.2 * i / 100.0;

    gksl::OscillatorParams reference{1.05, 100.0, kEps};
    const auto rep = duality::verify_duality(map, probe, reference);

    CHECK(rep.max_rel_j_dev <= 1e-8);
    CHECK(rep.kappa_rel_dev <= 1e-8);
    CHECK(rep.lamb_rel_dev <= 1e-8);
    CHECK(rep.max_omega_identity <= 1e-12);
    // regime ratio 8 lambda^4 for the scenario parameters
    CHECK(rep.max_regime_ratio <= 1e-2);
    CHECK(rep.max_regime_ratio == doctest::Approx(8.0 * std::pow(0.05, 4)).epsilon(1e-10));
}

TEST_CASE("trivial single-value chain maps exactly") {
    // E_C and E_J constant: the correspondence is pure arithmetic
    chain::ContinuumChain c;
    c.x_lo = 0.0;
    c.x_hi = 1.0;
    c.coupling_eps = kEps;
    c.density = chain::Profile::constant(1.0);
    c.ec_profile = chain::Profile::power_quad(1.0, 0.0, 1.0);
    c.ej_profile = chain::Profile::power_quad(0.05, 0.0, 1.0);
    c.monotone_intervals = {{0.0, 1.0}};
    auto map = duality::map_to_large_ej(c);
    for (double x : {0.0, 0.5, 1.0}) {
        CHECK(map.mapped.ec_profile(x) == doctest::Approx(0.005).epsilon(1e-15));
        CHECK(map.mapped.ej_profile(x) == doctest::Approx(100.0).epsilon(1e-15));
        CHECK(map.omega_tilde(x) == doctest::Approx(1.0).epsilon(1e-15));
    }
}
