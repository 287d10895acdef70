#include "jjbath/numerics.hpp"

#include <algorithm>
#include <queue>
#include <random>

namespace jjb::numerics {

namespace {

// 15-point Kronrod nodes on [0,1] (positive half) with the embedded 7-point
// Gauss rule on the odd-indexed nodes. Values from QUADPACK's dqk15.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename T>
struct Panel {
    double a, b;
    T integral;
    double err;
};

template <typename T>
struct PanelWorse {
    bool operator()(const Panel<T>& x, const Panel<T>& y) const { return x.err < y.err; }
};

template <typename T, typename F>
Panel<T> gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);

    T gauss{};
    T kronrod = kWgk[7] * f(center);
    gauss += kWg[3] * f(center);
    for (int j = 0; j < 7; ++j) {
        const double dx = halfwidth * kXgk[j];
        const T lo = f(center - dx);
        const T hi = f(center + dx);
        kronrod += kWgk[j] * (lo + hi);
        if (j % 2 == 1) gauss += kWg[j / 2] * (lo + hi);
    }
    kronrod *= halfwidth;
    gauss *= halfwidth;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

template <typename T, typename F>
QuadratureResult<T> adaptive(const F& f, std::span<const std::pair<double, double>> segments,
                             const QuadratureOptions& opts) {
    std::priority_queue<Panel<T>, std::vector<Panel<T>>, PanelWorse<T>> heap;
    T total{};
    double total_err = 0.0;
    double magnitude = 0.0;
    int panels = 0;

    auto check_finite = [](const Panel<T>& p) {
        if (!std::isfinite(std::abs(p.integral)) || !std::isfinite(p.err)) {
            throw QuadratureError("quadrature: integrand produced non-finite values",
                                  std::numeric_limits<double>::infinity());
        }
    };

    for (const auto& [a, b] : segments) {
        if (!(a < b)) throw std::invalid_argument("quadrature: requires a < b");
        Panel<T> p = gk15<T>(f, a, b);
        check_finite(p);
        total += p.integral;
        total_err += p.err;
        magnitude += std::abs(p.integral);
        heap.push(p);
        ++panels;
    }

    auto tolerance = [&]() {
        const double scale = opts.magnitude_scale ? magnitude : std::abs(total);
        return std::max({opts.abs_tol, opts.rel_tol * scale, 1e-300});
    };

    while (total_err > tolerance() && panels < opts.max_subdivisions) {
        Panel<T> worst = heap.top();
        heap.pop();
        total -= worst.integral;
        total_err -= worst.err;
        magnitude -= std::abs(worst.integral);

        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval exhausted at machine precision; keep its estimate
            total += worst.integral;
            total_err += worst.err;
            magnitude += std::abs(worst.integral);
            break;
        }
        for (const Panel<T>& half : {gk15<T>(f, worst.a, mid), gk15<T>(f, mid, worst.b)}) {
            check_finite(half);
            total += half.integral;
            total_err += half.err;
            magnitude += std::abs(half.integral);
            heap.push(half);
        }
        ++panels;
    }

    if (total_err > tolerance()) {
        throw QuadratureError("quadrature: max subdivisions exceeded", total_err);
    }
    return {total, total_err, panels};
}

template <typename T, typename F>
QuadratureResult<T> adaptive_one(const F& f, double a, double b, const QuadratureOptions& opts) {
    const std::pair<double, double> seg[1] = {{a, b}};
    return adaptive<T>(f, seg, opts);
}

}  // namespace

QuadratureResult<double> quad_adaptive(const std::function<double(double)>& f,
                                       double a, double b, const QuadratureOptions& opts) {
    return adaptive_one<double>(f, a, b, opts);
}

QuadratureResult<std::complex<double>> quad_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureOptions& opts) {
    return adaptive_one<std::complex<double>>(f, a, b, opts);
}

QuadratureResult<double> quad_semi_infinite(const std::function<double(double)>& f,
                                            double a, const QuadratureOptions& opts) {
    // u = exp(-(x-a)):  ∫_a^∞ f dx = ∫_0^1 f(a - ln u) / u du.
    // Gauss–Kronrod nodes are interior, so u = 0 is never evaluated.
    auto g = [&f, a](double u) { return f(a - std::log(u)) / u; };
    return adaptive_one<double>(g, 0.0, 1.0, opts);
}

QuadratureResult<double> quad_pv(const std::function<double(double)>& f,
                                 double a, double b, double pole,
                                 const QuadratureOptions& opts) {
    if (!(a < pole && pole < b)) {
        throw std::invalid_argument("quad_pv: pole must lie strictly inside (a, b)");
    }
    const double clearance = std::min(pole - a, b - pole);
    if (clearance < 1e4 * std::numeric_limits<double>::epsilon() *
                        std::max({std::abs(a), std::abs(b), b - a})) {
        throw std::invalid_argument("quad_pv: pole indistinguishable from the boundary");
    }
    const double h0 = std::min(1e-3 * (b - a), 0.5 * clearance);

    QuadratureOptions sub = opts;
    sub.magnitude_scale = true;
    sub.rel_tol = std::min(opts.rel_tol, 1e-11);

    auto integrand = [&f, pole](double x) { return f(x) / (x - pole); };
    auto excised = [&](double h) {
        const std::pair<double, double> segs[2] = {{a, pole - h}, {pole + h, b}};
        return adaptive<double>(integrand, segs, sub);
    };

    const auto i1 = excised(h0);
    const auto i2 = excised(h0 / 10.0);
    const auto i3 = excised(h0 / 100.0);

    // Excision error is odd in h (leading term 2 f'(pole) h); one Richardson
    // level in h leaves O(h^3), estimated from the level-to-level change.
    const double r12 = (10.0 * i2.value - i1.value) / 9.0;
    const double r23 = (10.0 * i3.value - i2.value) / 9.0;
    QuadratureResult<double> out;
    out.value = r23;
    out.abs_err_estimate = std::abs(r23 - r12) + i3.abs_err_estimate;
    out.subdivisions = i1.subdivisions + i2.subdivisions + i3.subdivisions;
    return out;
}

// ---------------------------------------------------------------------------
// Dormand–Prince 5(4)
// ---------------------------------------------------------------------------

namespace {

constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
// 4th-order weights of the embedded pair
constexpr double kB4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

std::vector<Eigen::VectorXcd> ode_evolve(const OdeRhs& rhs, const Eigen::VectorXcd& y0,
                                         std::span<const double> times,
                                         const OdeOptions& opts, const OdePostStep& post_step) {
    if (times.empty()) return {};
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument("ode_evolve: times must be strictly ascending");
        }
    }

    std::vector<Eigen::VectorXcd> out;
    out.reserve(times.size());

    double t = times.front();
    Eigen::VectorXcd y = y0;
    if (post_step) post_step(y);
    out.push_back(y);
    std::size_t next = 1;
    if (next == times.size()) return out;

    const double span = times.back() - t;
    double h = opts.initial_step > 0.0 ? opts.initial_step : span / 100.0;
    const double h_min = 1e-14 * std::max(span, std::abs(times.back()));

    Eigen::VectorXcd k[7];
    k[0] = rhs(t, y);

    while (next < times.size()) {
        bool clipped = false;
        if (t + h >= times[next]) {
            h = times[next] - t;
            clipped = true;
        }
        if (h < h_min) throw OdeStepUnderflow("ode_evolve: step size underflow");

        for (int s = 1; s < 7; ++s) {
            Eigen::VectorXcd ys = y;
            for (int j = 0; j < s; ++j) ys += (h * kA[s][j]) * k[j];
            k[s] = rhs(t + kC[s] * h, ys);
        }
        // stage 7 uses the 5th-order weights, so k[6] is evaluated at y5 (FSAL)
        Eigen::VectorXcd y5 = y;
        for (int j = 0; j < 6; ++j) y5 += (h * kA[6][j]) * k[j];
        Eigen::VectorXcd y4 = y;
        for (int j = 0; j < 7; ++j) y4 += (h * kB4[j]) * k[j];

        double err_sq = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double sc =
                opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double e = std::abs(y5[i] - y4[i]) / sc;
            err_sq += e * e;
        }
        const double err = std::sqrt(err_sq / static_cast<double>(y.size()));

        if (err <= 1.0) {
            t += h;
            y = std::move(y5);
            if (post_step) {
                post_step(y);
                k[6] = rhs(t, y);
            }
            k[0] = k[6];  // FSAL
            if (clipped) {
                out.push_back(y);
                ++next;
            }
        }
        const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// RNG
// ---------------------------------------------------------------------------

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double inverse_normal_cdf(double p) {
    // AS241 algorithm PPND16 (Wichura 1988).
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("inverse_normal_cdf: p must lie in (0, 1)");
    }
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r +
                    4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r +
                  1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r +
                3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r +
                    2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r +
                  6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r +
                1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r +
                 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r +
               5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r +
             1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r +
                 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r +
               1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r +
             1.0);
    } else {
        r -= 5.0;
        v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r +
                 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r +
               1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r +
             6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r +
                 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r +
               1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r +
             1.0);
    }
    return q < 0.0 ? -v : v;
}

std::vector<double> rng_truncated_normal(double mean, double width, double lower_bound,
                                         std::uint64_t seed, std::size_t count) {
    if (!(width > 0.0)) throw std::invalid_argument("rng_truncated_normal: width must be > 0");
    const double alpha = (lower_bound - mean) / width;
    const double mass = std::isinf(alpha) ? 1.0 : 1.0 - normal_cdf(alpha);
    if (!(mass > 1e-6)) {
        throw std::invalid_argument("rng_truncated_normal: negligible support above bound");
    }
    const double cdf_lo = 1.0 - mass;

    std::mt19937_64 engine(seed);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        // 53-bit uniform in [0, 1); independent of library distribution details
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        const double p = std::min(cdf_lo + u * mass, 1.0 - 1e-16);
        out[i] = mean + width * inverse_normal_cdf(std::max(p, 1e-300));
    }
    return out;
}

double truncated_normal_mean(double mean, double width, double lower_bound) {
    const double alpha = (lower_bound - mean) / width;
    if (std::isinf(alpha) && alpha < 0.0) return mean;
    const double phi = std::exp(-0.5 * alpha * alpha) / std::sqrt(2.0 * M_PI);
    const double mass = 1.0 - normal_cdf(alpha);
    return mean + width * phi / mass;
}

double truncated_normal_variance(double mean, double width, double lower_bound) {
    const double alpha = (lower_bound - mean) / width;
    if (std::isinf(alpha) && alpha < 0.0) return width * width;
    const double phi = std::exp(-0.5 * alpha * alpha) / std::sqrt(2.0 * M_PI);
    const double lam = phi / (1.0 - normal_cdf(alpha));
    return width * width * (1.0 + alpha * lam - lam * lam);
}

}  // namespace jjb::numerics
