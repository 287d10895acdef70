#include "doctest.h"

#include <cmath>
#include <complex>

#include "jjbath/chain.hpp"
#include "jjbath/gksl.hpp"
#include "jjbath/scenarios.hpp"

using namespace jjb;
using namespace jjb::scenarios;

namespace {

const LorentzianChainParams kFig3{500.0, 0.25, 0.4, 1.0, 0.05, 1.0};
// Fig-6-style constants: F_J A/zeta = E_0/100, E_min = E_zeta = E_0/5
const FabricationConstants kFab{0.01, 0.2, 0.2, 1.0, 0.1};
constexpr double kEps = 0.01;

}  // namespace

TEST_CASE("engineered Lorentzian chain") {
    auto s = lorentzian_chain(kFig3, kEps);

    SUBCASE("junction count integrates to about 1277") {
        CHECK(std::abs(chain::junction_count(s.chain) - 1277.0) <= 1.1);
    }
    SUBCASE("spectral support") {
        CHECK(s.j_closed_form.support_lo == 1.0);
        CHECK(s.j_closed_form.support_hi == doctest::Approx(1.2).epsilon(1e-15));
        CHECK(s.j_closed_form(0.999) == 0.0);
        CHECK(s.j_closed_form(1.201) == 0.0);
    }
    SUBCASE("peak value") {
        CHECK(s.j_closed_form(1.0) == doctest::Approx(50.0).epsilon(1e-14));
    }
    SUBCASE("closed form equals the generic decomposition") {
        auto numeric = chain::spectral_density_large_ec(s.chain);
        for (int i = 0; i <= 200; ++i) {
            const double e = 1.0 + 0.2 * i / 200.0;
            CHECK(std::abs(numeric(e) - s.j_closed_form(e)) <= 1e-8 * s.j_closed_form(e));
        }
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(lorentzian_chain({0.0, 0.25, 0.4, 1.0, 0.05, 1.0}, kEps),
                        std::invalid_argument);
        CHECK_THROWS_AS(lorentzian_chain({500.0, 0.25, -1.0, 1.0, 0.05, 1.0}, kEps),
                        std::invalid_argument);
    }
}

TEST_CASE("fabrication model") {
    SUBCASE("reference point w = 5 zeta") {
        auto p = fabrication_params(5.0, kFab);
        CHECK(p.e_c == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(p.e_j == doctest::Approx(1.3476517e-4).epsilon(1e-6));
    }
    SUBCASE("thin oxide leaves the large-charging regime") {
        auto p = fabrication_params(1e-3, kFab);
        CHECK(p.lambda > 1.0);  // regime flag
        CHECK(large_charging_guaranteed(kFab));
    }
    SUBCASE("Josephson energy falls with thickness") {
        double prev = kInf;
        for (double w = 0.5; w <= 8.0; w += 0.5) {
            const double ej = fabrication_params(w, kFab).e_j;
            CHECK(ej < prev);
            prev = ej;
        }
    }
    SUBCASE("charging-energy form of the same map") {
        auto a = fabrication_params(5.0, kFab);
        auto b = junction_from_charging(1.0, kFab);
        CHECK(a.e_c == b.e_c);
        CHECK(a.e_j == b.e_j);
    }
}

TEST_CASE("Gaussian thickness disorder sampling") {
    SUBCASE("vanishing width collapses to identical junctions") {
        FabricationConstants tight = kFab;
        tight.delta_ec = 1e-12;
        auto c = gaussian_disorder_chain({tight, 500, 9}, kEps);
        for (const auto& p : c.junctions) {
            CHECK(std::abs(p.e_c - 1.0) < 1e-9);
        }
    }
    SUBCASE("sample mean within three standard errors of the analytic mean") {
        const std::size_t n = 10000;
        auto c = gaussian_disorder_chain({kFab, n, 42}, kEps);
        double mean = 0.0;
        for (const auto& p : c.junctions) mean += p.e_c;
        mean /= static_cast<double>(n);
        const double expect = numerics::truncated_normal_mean(1.0, 0.1, 0.2);
        const double se = std::sqrt(numerics::truncated_normal_variance(1.0, 0.1, 0.2) /
                                    static_cast<double>(n));
        CHECK(std::abs(mean - expect) < 3.0 * se);
    }
    SUBCASE("fixed seed reproduces the chain exactly") {
        auto a = gaussian_disorder_chain({kFab, 1000, 7}, kEps);
        auto b = gaussian_disorder_chain({kFab, 1000, 7}, kEps);
        for (std::size_t i = 0; i < a.junctions.size(); ++i) {
            CHECK(a.junctions[i].e_c == b.junctions[i].e_c);
            CHECK(a.junctions[i].e_j == b.junctions[i].e_j);
        }
    }
    SUBCASE("pathological truncation rejected") {
        FabricationConstants hopeless = kFab;
        hopeless.e_min = 2.0;  // ten sigma above the mean
        CHECK_THROWS_AS(gaussian_disorder_chain({hopeless, 10, 1}, kEps),
                        std::invalid_argument);
    }
}

TEST_CASE("disorder spectral density") {
    DisorderChainParams p{kFab, 10000, 1};
    auto j = disorder_spectral_density(p);

    SUBCASE("frozen value at the center of the distribution") {
        CHECK(j(1.0) == doctest::Approx(1.4490876947331757e-3).epsilon(1e-10));
    }
    SUBCASE("vanishes below the truncation") {
        CHECK(j(0.19) == 0.0);
        CHECK(j(0.2 - 1e-12) == 0.0);
    }
    SUBCASE("decay rate versus disorder width peaks at |omega0 - E_0|") {
        // the Gaussian weight (2 pi dE^2)^{-1/2} exp(-(w0-E0)^2/(2 dE^2))
        // is maximal in dE at dE = |w0 - E0|
        for (double w0 : {1.15, 1.3, 0.8}) {
            double best_de = 0.0, best_k = -1.0;
            const int grid = 2000;
            for (int i = 1; i <= grid; ++i) {
                const double de = 0.01 + (0.6 - 0.01) * i / grid;
                DisorderChainParams q{kFab, 10000, 1};
                q.fab.delta_ec = de;
                auto jq = disorder_spectral_density(q);
                gksl::OscillatorParams osc{w0, 2.0, kEps};
                const double k = gksl::decay_rate(jq, osc);
                if (k > best_k) {
                    best_k = k;
                    best_de = de;
                }
            }
            CHECK(std::abs(best_de - std::abs(w0 - 1.0)) < 2.0 * (0.6 - 0.01) / grid);
        }
    }
}

TEST_CASE("disorder correlation function routes") {
    DisorderChainParams p{kFab, 10000, 2024};
    std::vector<double> grid;
    for (int i = 0; i <= 160; ++i) grid.push_back(50.0 * i / 160.0);

    auto analytic = disorder_gamma_analytic(p, kEps, grid);
    const double scale = analytic.values[0].real();

    SUBCASE("matches the spectral-density route") {
        auto via_j = chain::gamma_from_spectral(disorder_spectral_density(p), kEps, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(analytic.values[i] - via_j.values[i]) <= 1e-7 * scale);
        }
    }
    SUBCASE("sampled chain stays inside the statistical band") {
        auto sampled = gaussian_disorder_chain(p, kEps);
        auto g = chain::gamma_discrete(sampled, grid);
        // per-junction variance of E_J^2 e^{-i E_C t} estimated from the sample
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double m_re = 0.0, m_im = 0.0, v_re = 0.0, v_im = 0.0;
            for (const auto& jp : sampled.junctions) {
                const double w = jp.e_j * jp.e_j;
                m_re += w * std::cos(jp.e_c * grid[i]);
                m_im += w * std::sin(-jp.e_c * grid[i]);
            }
            m_re /= sampled.junctions.size();
            m_im /= sampled.junctions.size();
            for (const auto& jp : sampled.junctions) {
                const double w = jp.e_j * jp.e_j;
                v_re += std::pow(w * std::cos(jp.e_c * grid[i]) - m_re, 2);
                v_im += std::pow(w * std::sin(-jp.e_c * grid[i]) - m_im, 2);
            }
            const double n = static_cast<double>(sampled.junctions.size());
            const double pref = 0.5 * kEps * kEps;
            const double se_re = pref * std::sqrt(v_re / (n - 1.0) * n);
            const double se_im = pref * std::sqrt(v_im / (n - 1.0) * n);
            CHECK(std::abs(g.values[i].real() - analytic.values[i].real()) <=
                  5.0 * se_re + 1e-12 * scale);
            CHECK(std::abs(g.values[i].imag() - analytic.values[i].imag()) <=
                  5.0 * se_im + 1e-12 * scale);
        }
    }
    SUBCASE("narrow disorder oscillates without decay") {
        DisorderChainParams tight{kFab, 10000, 5};
        tight.fab.delta_ec = 1e-3;
        std::vector<double> t = {0.0, 20.0, 60.0, 100.0};
        auto g = disorder_gamma_analytic(tight, kEps, t);
        const double g0 = std::abs(g.values[0]);
        for (const auto& v : g.values) {
            CHECK(std::abs(v) > 0.99 * g0);
        }
        // phase advances at E_0
        CHECK(std::arg(g.values[1]) ==
              doctest::Approx(std::arg(std::exp(std::complex<double>(0, -20.0)))).epsilon(1e-3));
    }
}
