#include "doctest.h"

#include <cmath>
#include <numeric>

#include "jjbath/numerics.hpp"
#include "jjbath/types.hpp"

using namespace jjb;
using namespace jjb::numerics;

TEST_CASE("adaptive quadrature on polynomials and tails") {
    QuadratureOptions opts;
    opts.rel_tol = 1e-12;

    auto r = quad_adaptive([](double x) { return x * x; }, 0.0, 1.0, opts);
    CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-12);
    CHECK(r.abs_err_estimate >= 0.0);

    auto e = quad_semi_infinite([](double x) { return std::exp(-x); }, 0.0, opts);
    CHECK(std::abs(e.value - 1.0) < 1e-11);

    // shifted lower limit
    auto e2 = quad_semi_infinite([](double x) { return std::exp(-(x - 2.0)); }, 2.0, opts);
    CHECK(std::abs(e2.value - 1.0) < 1e-11);
}

TEST_CASE("adaptive quadrature reproduces the Lorentzian arctan area") {
    // a*A*E0*EJ0^2 / ((E-E0)^2 + c^2) over [E0, 1.2 E0]
    const double a = 0.4, amp = 500.0, ej0 = 0.05, c = 0.1;
    auto j = [&](double e) { return a * amp * ej0 * ej0 / ((e - 1.0) * (e - 1.0) + c * c); };
    QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    const auto r = quad_adaptive(j, 1.0, 1.2, opts);
    const double expected = a * amp * ej0 * ej0 / c * std::atan(0.2 / c);
    CHECK(std::abs(r.value - expected) < 1e-10 * expected);
    // the reported estimate must be conservative
    CHECK(r.abs_err_estimate >= std::abs(r.value - expected));
}

TEST_CASE("quadrature is deterministic and reports panel counts") {
    auto f = [](double x) { return std::sin(20.0 * x) / (1.0 + x * x); };
    auto r1 = quad_adaptive(f, 0.0, 5.0);
    auto r2 = quad_adaptive(f, 0.0, 5.0);
    CHECK(r1.value == r2.value);  // bitwise
    CHECK(r1.subdivisions == r2.subdivisions);
    CHECK(r1.subdivisions >= 1);
}

TEST_CASE("quadrature failure reports the achieved tolerance") {
    QuadratureOptions opts;
    opts.rel_tol = 1e-14;
    opts.max_subdivisions = 4;
    auto nasty = [](double x) { return std::sin(300.0 * x); };
    CHECK_THROWS_AS(quad_adaptive(nasty, 0.0, 10.0, opts), QuadratureError);
    try {
        quad_adaptive(nasty, 0.0, 10.0, opts);
    } catch (const QuadratureError& err) {
        CHECK(err.achieved_tolerance > 0.0);
    }
}

TEST_CASE("principal value quadrature") {
    QuadratureOptions opts;
    opts.rel_tol = 1e-11;

    SUBCASE("odd integrand vanishes") {
        auto r = quad_pv([](double) { return 1.0; }, -1.0, 1.0, 0.0, opts);
        CHECK(std::abs(r.value) < 1e-10);
    }
    SUBCASE("constant numerator gives the log") {
        auto r = quad_pv([](double) { return 1.0; }, 1.0, 2.0, 1.25, opts);
        CHECK(std::abs(r.value - std::log(3.0)) < 1e-9);
        auto r2 = quad_pv([](double) { return 2.5; }, 0.0, 3.0, 1.0, opts);
        CHECK(std::abs(r2.value - 2.5 * std::log(2.0 / 1.0)) < 1e-9);
    }
    SUBCASE("smooth numerator against analytic value") {
        // PV ∫_0^2 e^x/(x-1) dx = e * Ei(1) - e * Ei(-1) shape; use a simpler
        // check: subtracting the singularity must agree with direct PV.
        auto f = [](double x) { return std::exp(x); };
        const double pole = 1.0;
        auto pv = quad_pv(f, 0.0, 2.0, pole, opts);
        QuadratureOptions sub;
        sub.rel_tol = 1e-12;
        const double smooth =
            quad_adaptive(
                [&](double x) {
                    // removable singularity: limit is f'(pole)
                    if (std::abs(x - pole) < 1e-8) return std::exp(pole);
                    return (std::exp(x) - std::exp(pole)) / (x - pole);
                },
                0.0, 2.0, sub)
                .value;
        const double expected = smooth + std::exp(pole) * std::log(1.0);
        CHECK(std::abs(pv.value - expected) < 1e-9);
    }
    SUBCASE("pole on the boundary is rejected") {
        CHECK_THROWS_AS(quad_pv([](double) { return 1.0; }, 0.0, 1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(quad_pv([](double) { return 1.0; }, 0.0, 1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("ode integrator: exponential decay") {
    std::vector<double> times = {0.0, 0.5, 1.0, 2.0, 5.0};
    auto traj = ode_evolve(
        [](double, const Eigen::VectorXcd& y) { return Eigen::VectorXcd(-y); },
        Eigen::VectorXcd::Ones(1), times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(std::abs(traj[i][0].real() - std::exp(-times[i])) < 1e-9);
    }
}

TEST_CASE("ode integrator: harmonic oscillator norm over 100 periods") {
    // y' = -i y on the unit circle
    std::vector<double> times;
    for (int i = 0; i <= 100; ++i) times.push_back(2.0 * M_PI * i);
    OdeOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-14;
    auto traj = ode_evolve(
        [](double, const Eigen::VectorXcd& y) {
            return Eigen::VectorXcd(std::complex<double>(0.0, -1.0) * y);
        },
        Eigen::VectorXcd::Ones(1), times, opts);
    for (const auto& y : traj) {
        CHECK(std::abs(std::abs(y[0]) - 1.0) < 1e-9);
    }
}

TEST_CASE("ode integrator rejects non-ascending grids") {
    std::vector<double> times = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(ode_evolve([](double, const Eigen::VectorXcd& y) { return y; },
                               Eigen::VectorXcd::Ones(1), times),
                    std::invalid_argument);
}

TEST_CASE("inverse normal CDF round trip") {
    for (double p : {1e-12, 1e-6, 0.02, 0.3, 0.5, 0.7, 0.98, 1.0 - 1e-6}) {
        const double z = inverse_normal_cdf(p);
        CHECK(std::abs(normal_cdf(z) - p) < 1e-13 * std::max(p, 1.0 - p) + 1e-16);
    }
    CHECK(inverse_normal_cdf(0.5) == 0.0);
    CHECK_THROWS_AS(inverse_normal_cdf(0.0), std::invalid_argument);
}

TEST_CASE("truncated normal sampling") {
    const std::uint64_t seed = 12345;

    SUBCASE("fixed seed is byte-identical") {
        auto a = rng_truncated_normal(1.0, 0.1, 0.2, seed, 10000);
        auto b = rng_truncated_normal(1.0, 0.1, 0.2, seed, 10000);
        CHECK(a == b);
    }
    SUBCASE("unbounded limit recovers the plain normal mean") {
        auto v = rng_truncated_normal(2.0, 0.5, -kInf, seed, 20000);
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
        CHECK(std::abs(mean - 2.0) < 3.0 * 0.5 / std::sqrt(20000.0));
    }
    SUBCASE("moments match the analytic truncated-normal values") {
        const double mu = 1.0, s = 0.4, lo = 0.9;  // strong truncation
        auto v = rng_truncated_normal(mu, s, lo, seed, 40000);
        double mean = 0.0;
        for (double x : v) {
            CHECK(x > lo);
            mean += x;
        }
        mean /= v.size();
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var /= (v.size() - 1);

        const double tmean = truncated_normal_mean(mu, s, lo);
        const double tvar = truncated_normal_variance(mu, s, lo);
        const double se_mean = std::sqrt(tvar / v.size());
        CHECK(std::abs(mean - tmean) < 4.0 * se_mean);
        // SE of the sample variance ~ var * sqrt(2/(n-1)) for near-normal data
        CHECK(std::abs(var - tvar) < 6.0 * tvar * std::sqrt(2.0 / (v.size() - 1.0)));
    }
    SUBCASE("negligible support above the bound is rejected") {
        CHECK_THROWS_AS(rng_truncated_normal(0.0, 0.1, 10.0, seed, 10),
                        std::invalid_argument);
    }
}
