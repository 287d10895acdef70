// numerics.hpp — Shared numerical kernels with explicit contracts:
// globally-adaptive Gauss–Kronrod quadrature (finite and semi-infinite),
// Cauchy principal values by symmetric excision + Richardson extrapolation,
// an embedded Dormand–Prince 5(4) integrator with dense output, and a
// deterministic truncated-normal sampler.
//
// All kernels are deterministic functions of their inputs (including seeds):
// repeated calls agree bitwise.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jjb::numerics {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;        // absolute floor on the accepted total error
    int max_subdivisions = 4000; // panel budget before giving up
    // When true the relative tolerance is applied to the sum of panel
    // magnitudes instead of |total|. Used for strongly cancelling integrands
    // (principal values) where |total| can be arbitrarily small.
    bool magnitude_scale = false;
};

template <typename T>
struct QuadratureResult {
    T value{};
    double abs_err_estimate = 0.0;
    int subdivisions = 0;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

QuadratureResult<double> quad_adaptive(const std::function<double(double)>& f,
                                       double a, double b,
                                       const QuadratureOptions& opts = {});

QuadratureResult<std::complex<double>> quad_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureOptions& opts = {});

// Integral over [a, +inf) through the change of variable u = exp(-(x-a)),
// suitable for integrands with exponential or Gaussian tails.
QuadratureResult<double> quad_semi_infinite(const std::function<double(double)>& f,
                                            double a, const QuadratureOptions& opts = {});

// Cauchy principal value of ∫_a^b f(x)/(x - pole) dx with f smooth at the pole.
// Symmetric excision cancels the log term exactly; the remaining O(h) error is
// removed by Richardson extrapolation over excision radii h, h/10, h/100.
QuadratureResult<double> quad_pv(const std::function<double(double)>& f,
                                 double a, double b, double pole,
                                 const QuadratureOptions& opts = {});

// ---------------------------------------------------------------------------
// ODE integration
// ---------------------------------------------------------------------------

struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double initial_step = 0.0;  // 0 = span/100
};

class OdeStepUnderflow : public std::runtime_error {
  public:
    explicit OdeStepUnderflow(const std::string& what) : std::runtime_error(what) {}
};

using OdeRhs = std::function<Eigen::VectorXcd(double, const Eigen::VectorXcd&)>;
using OdePostStep = std::function<void(Eigen::VectorXcd&)>;

// Dormand–Prince 5(4) with step-size control; the trajectory is sampled by
// clipping steps to land exactly on the requested (ascending) times.
// post_step, when set, is applied to every accepted state (e.g. to restore
// Hermiticity of a flattened density matrix).
std::vector<Eigen::VectorXcd> ode_evolve(const OdeRhs& rhs, const Eigen::VectorXcd& y0,
                                         std::span<const double> times,
                                         const OdeOptions& opts = {},
                                         const OdePostStep& post_step = nullptr);

// ---------------------------------------------------------------------------
// Deterministic RNG
// ---------------------------------------------------------------------------

double normal_cdf(double z);
// Wichura's AS241 rational approximation, |error| below 1e-15 over (0,1).
double inverse_normal_cdf(double p);

// Inverse-CDF sampler for a normal(mean, width) restricted to w > lower_bound.
// Deterministic per seed and platform-stable (uniforms are built directly
// from mt19937_64 output words).
std::vector<double> rng_truncated_normal(double mean, double width, double lower_bound,
                                         std::uint64_t seed, std::size_t count);

// Moments of the lower-truncated normal, used as test oracles.
double truncated_normal_mean(double mean, double width, double lower_bound);
double truncated_normal_variance(double mean, double width, double lower_bound);

}  // namespace jjb::numerics
