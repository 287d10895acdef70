#include "jjbath/chain.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace jjb::chain {

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

}  // namespace

double Profile::operator()(double x) const {
    switch (form) {
        case Form::constant:
            return c;
        case Form::linear:
            return c * x;
        case Form::power_quad:
            return c * std::pow(1.0 + k * x * x, p);
        case Form::lorentzian_nu: {
            const double l2 = half_length * half_length;
            const double q = 1.0 + a * x * x / (2.0 * l2);
            return amp * l2 * std::abs(x) * q * q / (x * x * x * x + 4.0 * sigma * sigma * l2 * l2);
        }
        case Form::gaussian: {
            if (x < cut) return 0.0;
            const double z = (x - mean) / width;
            return norm * std::exp(-0.5 * z * z) / (width * std::sqrt(2.0 * M_PI));
        }
        case Form::sinh_recip:
            return c / std::sinh(x / scale);
        case Form::tabulated:
            return interp(xs, ys, x);
    }
    return 0.0;
}

double Profile::derivative(double x) const {
    switch (form) {
        case Form::constant:
            return 0.0;
        case Form::linear:
            return c;
        case Form::power_quad:
            return c * p * std::pow(1.0 + k * x * x, p - 1.0) * 2.0 * k * x;
        case Form::gaussian: {
            if (x < cut) return 0.0;
            const double z = (x - mean) / width;
            return -(*this)(x)*z / width;
        }
        case Form::sinh_recip:
            return -c * std::cosh(x / scale) / (std::sinh(x / scale) * std::sinh(x / scale)) /
                   scale;
        case Form::lorentzian_nu:
        case Form::tabulated: {
            const double h = 1e-6 * std::max(1.0, std::abs(x));
            return ((*this)(x + h) - (*this)(x - h)) / (2.0 * h);
        }
    }
    return 0.0;
}

Profile Profile::constant(double value) {
    Profile f;
    f.form = Form::constant;
    f.c = value;
    return f;
}

Profile Profile::linear(double slope) {
    Profile f;
    f.form = Form::linear;
    f.c = slope;
    return f;
}

Profile Profile::power_quad(double c, double k, double p) {
    Profile f;
    f.form = Form::power_quad;
    f.c = c;
    f.k = k;
    f.p = p;
    return f;
}

Profile Profile::lorentzian_nu(double amp, double sigma, double a, double half_length) {
    Profile f;
    f.form = Form::lorentzian_nu;
    f.amp = amp;
    f.sigma = sigma;
    f.a = a;
    f.half_length = half_length;
    return f;
}

Profile Profile::gaussian(double norm, double mean, double width, double cut) {
    Profile f;
    f.form = Form::gaussian;
    f.norm = norm;
    f.mean = mean;
    f.width = width;
    f.cut = cut;
    return f;
}

Profile Profile::sinh_recip(double c, double scale) {
    Profile f;
    f.form = Form::sinh_recip;
    f.c = c;
    f.scale = scale;
    return f;
}

Profile Profile::tabulated(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("Profile::tabulated: need matching xs/ys with >= 2 points");
    }
    Profile f;
    f.form = Form::tabulated;
    f.xs = std::move(xs);
    f.ys = std::move(ys);
    return f;
}

void validate(const ContinuumChain& chain) {
    if (!(chain.x_lo < chain.x_hi)) {
        throw std::invalid_argument("ContinuumChain: empty domain");
    }
    if (!(chain.coupling_eps > 0.0)) {
        throw std::invalid_argument("ContinuumChain: coupling eps_I must be > 0");
    }
    if (chain.monotone_intervals.empty()) {
        throw std::invalid_argument("ContinuumChain: no monotone intervals declared");
    }
    constexpr int kSamples = 1024;
    for (std::size_t k = 0; k < chain.monotone_intervals.size(); ++k) {
        const auto [lo, hi] = chain.monotone_intervals[k];
        if (!(lo >= chain.x_lo - 1e-12 && hi <= chain.x_hi + 1e-12 && lo < hi)) {
            throw std::invalid_argument("ContinuumChain: interval " + std::to_string(k) +
                                        " outside the domain");
        }
        int sign = 0;
        for (int i = 0; i < kSamples; ++i) {
            const double x = lo + (hi - lo) * (i + 0.5) / kSamples;
            const double d = chain.ec_profile.derivative(x);
            const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
            if (s == 0 || (sign != 0 && s != sign)) {
                throw std::invalid_argument(
                    "ContinuumChain: E_C(x) not strictly monotonic on interval " +
                    std::to_string(k));
            }
            sign = s;
        }
    }
    for (int i = 0; i <= 1024; ++i) {
        const double x = chain.x_lo + (chain.x_hi - chain.x_lo) * i / 1024.0;
        if (chain.density(x) < 0.0) {
            throw std::invalid_argument("ContinuumChain: nu(x) must be >= 0");
        }
    }
}

CorrelationSeries gamma_discrete(const DiscreteChain& chain, std::vector<double> times,
                                 kernels::Exec exec) {
    if (chain.junctions.empty()) {
        throw std::invalid_argument("gamma_discrete: chain has no junctions");
    }
    std::vector<double> weight(chain.junctions.size());
    std::vector<double> freq(chain.junctions.size());
    const double pref = 0.5 * chain.coupling_eps * chain.coupling_eps;
    for (std::size_t i = 0; i < chain.junctions.size(); ++i) {
        weight[i] = pref * chain.junctions[i].e_j * chain.junctions[i].e_j;
        freq[i] = -chain.junctions[i].e_c;
    }
    CorrelationSeries s;
    s.values.resize(times.size());
    kernels::phase_sum(weight, freq, times, s.values, exec);
    s.times = std::move(times);
    s.meta.source = "chain-discrete";
    return s;
}

// ---------------------------------------------------------------------------
// Monotone-interval inversion
// ---------------------------------------------------------------------------

namespace {

struct FreqIntervals {
    // frequency profile f(x), its derivative, and a weight w(x); the density
    // contribution of interval k at energy E is w(x_k(E)) / |f'(x_k(E))|.
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> w;
    std::vector<std::pair<double, double>> intervals;
};

double bisect(const std::function<double(double)>& f, double lo, double hi, double target) {
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double span = hi - lo;
    while (hi - lo > 1e-12 * std::max(span, std::abs(lo) + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid) - target;
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// w(x)/|f'(x)| with a one-sided Richardson limit where f' vanishes at an
// interval endpoint (the weight vanishes there too in every supported chain).
double density_ratio(const FreqIntervals& g, double x, double lo, double hi) {
    const double span = hi - lo;
    const double deriv_scale = std::abs(g.f(hi) - g.f(lo)) / span;
    const double d = g.df(x);
    if (std::abs(d) > 1e-6 * deriv_scale) return g.w(x) / std::abs(d);

    const double delta = 1e-5 * span;
    const double dir = (x - lo < hi - x) ? 1.0 : -1.0;
    auto ratio = [&](double s) {
        const double xi = x + dir * s;
        return g.w(xi) / std::abs(g.df(xi));
    };
    return 2.0 * ratio(delta) - ratio(2.0 * delta);
}

SpectralDensity spectral_from_intervals(FreqIntervals g, SpectralDensity::Kind kind) {
    double lo = kInf;
    double hi = -kInf;
    for (const auto& [a, b] : g.intervals) {
        lo = std::min({lo, g.f(a), g.f(b)});
        hi = std::max({hi, g.f(a), g.f(b)});
    }
    SpectralDensity j;
    j.support_lo = lo;
    j.support_hi = hi;
    j.kind = kind;
    j.evaluate = [g = std::move(g), lo, hi](double e) {
        if (e < lo || e > hi) return 0.0;
        double total = 0.0;
        for (const auto& [a, b] : g.intervals) {
            const double fa = g.f(a);
            const double fb = g.f(b);
            if (e < std::min(fa, fb) || e > std::max(fa, fb)) continue;
            const double x = bisect(g.f, a, b, e);
            if (!std::isfinite(x)) continue;
            total += density_ratio(g, x, a, b);
        }
        return total;
    };
    return j;
}

}  // namespace

SpectralDensity spectral_density_large_ec(const ContinuumChain& chain) {
    validate(chain);
    FreqIntervals g;
    const Profile ec = chain.ec_profile;
    const Profile ej = chain.ej_profile;
    const Profile nu = chain.density;
    g.f = [ec](double x) { return ec(x); };
    g.df = [ec](double x) { return ec.derivative(x); };
    g.w = [nu, ej](double x) {
        const double v = ej(x);
        return 2.0 * nu(x) * v * v;
    };
    g.intervals = chain.monotone_intervals;
    return spectral_from_intervals(std::move(g), SpectralDensity::Kind::large_ec);
}

CorrelationSeries gamma_from_spectral(const SpectralDensity& j, double eps_i,
                                      std::vector<double> times, kernels::Exec exec,
                                      double rel_tol) {
    if (!(j.support_hi > j.support_lo)) {
        CorrelationSeries empty;
        empty.values.assign(times.size(), {0.0, 0.0});
        empty.times = std::move(times);
        empty.meta.source = "chain-continuum";
        return empty;
    }
    const double pref = 0.25 * eps_i * eps_i;

    numerics::QuadratureOptions area_opts;
    area_opts.rel_tol = std::min(rel_tol, 1e-10);
    const double area =
        numerics::quad_adaptive([&j](double e) { return j(e); }, j.support_lo, j.support_hi,
                                area_opts)
            .value;

    CorrelationSeries s;
    s.values.resize(times.size());
    kernels::for_each_index(
        times.size(),
        [&](std::size_t k) {
            const double t = times[k];
            numerics::QuadratureOptions opts;
            opts.rel_tol = rel_tol;
            opts.abs_tol = rel_tol * area;  // scale set by Gamma(0)
            opts.max_subdivisions = 20000;
            auto f = [&j, t](double e) {
                return j(e) * std::exp(std::complex<double>(0.0, -e * t));
            };
            s.values[k] = pref * numerics::quad_adaptive_complex(f, j.support_lo, j.support_hi, opts).value;
        },
        exec);
    s.times = std::move(times);
    s.meta.source = "chain-continuum";
    return s;
}

CorrelationSeries gamma_continuum(const ContinuumChain& chain, std::vector<double> times,
                                  kernels::Exec exec, double rel_tol) {
    validate(chain);
    const Profile nu = chain.density;
    const Profile ec = chain.ec_profile;
    const Profile ej = chain.ej_profile;
    const double pref = 0.5 * chain.coupling_eps * chain.coupling_eps;

    numerics::QuadratureOptions area_opts;
    area_opts.rel_tol = std::min(rel_tol, 1e-10);
    const double mass = numerics::quad_adaptive(
                            [&](double x) {
                                const double v = ej(x);
                                return nu(x) * v * v;
                            },
                            chain.x_lo, chain.x_hi, area_opts)
                            .value;

    CorrelationSeries s;
    s.values.resize(times.size());
    kernels::for_each_index(
        times.size(),
        [&](std::size_t k) {
            const double t = times[k];
            numerics::QuadratureOptions opts;
            opts.rel_tol = rel_tol;
            opts.abs_tol = rel_tol * mass;
            opts.max_subdivisions = 20000;
            auto f = [&](double x) {
                const double v = ej(x);
                return nu(x) * v * v * std::exp(std::complex<double>(0.0, -ec(x) * t));
            };
            s.values[k] = pref * numerics::quad_adaptive_complex(f, chain.x_lo, chain.x_hi, opts).value;
        },
        exec);
    s.times = std::move(times);
    s.meta.source = "chain-continuum";
    return s;
}

double offset_gamma0(const ContinuumChain& chain, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("offset_gamma0: beta must be > 0");
    if (std::isinf(beta)) return 0.0;
    validate(chain);
    const Profile nu = chain.density;
    const Profile ec = chain.ec_profile;
    numerics::QuadratureOptions opts;
    opts.rel_tol = 1e-11;
    const double integral = numerics::quad_adaptive(
                                [&](double x) {
                                    const double e = ec(x);
                                    return nu(x) * e * e * std::exp(-beta * e);
                                },
                                chain.x_lo, chain.x_hi, opts)
                                .value;
    return 2.0 * chain.coupling_eps * chain.coupling_eps * integral;
}

DeltaProfile delta_profile(const ContinuumChain& chain) {
    // needs no monotone decomposition; uniform chains are fine here
    if (!(chain.x_lo < chain.x_hi)) {
        throw std::invalid_argument("delta_profile: empty domain");
    }
    const Profile ec = chain.ec_profile;
    const Profile ej = chain.ej_profile;
    auto delta = [ec, ej](double x) {
        const double lambda = ej(x) / ec(x);
        if (!(lambda < 1.0)) {
            throw std::domain_error("delta_profile: lambda(x) >= 1 violates the large-E_C regime");
        }
        return ec(x) / (-std::log(lambda));
    };

    constexpr int kGrid = 4096;
    double best = kInf;
    int best_i = 0;
    for (int i = 0; i <= kGrid; ++i) {
        const double x = chain.x_lo + (chain.x_hi - chain.x_lo) * i / kGrid;
        const double d = delta(x);
        if (d < best) {  // strict: ties keep the smallest x
            best = d;
            best_i = i;
        }
    }
    const double step = (chain.x_hi - chain.x_lo) / kGrid;
    double lo = std::max(chain.x_lo, chain.x_lo + (best_i - 1) * step);
    double hi = std::min(chain.x_hi, chain.x_lo + (best_i + 1) * step);
    // golden-section refinement of the bracketing cell
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = hi - gr * (hi - lo);
    double c2 = lo + gr * (hi - lo);
    double f1 = delta(c1);
    double f2 = delta(c2);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
        if (f1 <= f2) {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - gr * (hi - lo);
            f1 = delta(c1);
        } else {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + gr * (hi - lo);
            f2 = delta(c2);
        }
    }
    const double x_star = 0.5 * (lo + hi);
    const double d_star = delta(x_star);
    // ties (flat profile) resolve to the grid point, i.e. the smallest x
    if (d_star < best) return {delta, d_star, x_star};
    return {delta, best, chain.x_lo + best_i * step};
}

CorrelationSeries harmonic_correlation(const JunctionParams& p, double beta,
                                       std::vector<double> times) {
    const double omega = std::sqrt(2.0 * p.e_j * p.e_c);
    const double coth =
        std::isinf(beta) ? 1.0 : 1.0 / std::tanh(0.5 * beta * omega);
    const double amp = omega / (4.0 * p.e_c);
    CorrelationSeries s;
    s.values.reserve(times.size());
    for (double t : times) {
        s.values.emplace_back(amp * coth * std::cos(omega * t), -amp * std::sin(omega * t));
    }
    s.times = std::move(times);
    s.meta.source = "harmonic";
    s.meta.e_c = p.e_c;
    s.meta.e_j = p.e_j;
    s.meta.beta = beta;
    s.meta.validity_warning = !(p.e_c < p.e_j);
    s.meta.validity_note = "harmonic approximation requires E_C << E_J and 1/beta << E_J";
    return s;
}

HarmonicBath harmonic_gamma(const ContinuumChain& chain, double beta,
                            std::vector<double> times, kernels::Exec exec, double rel_tol) {
    if (!(chain.x_lo < chain.x_hi) || chain.monotone_intervals.empty()) {
        throw std::invalid_argument("harmonic_gamma: chain domain/intervals missing");
    }
    const Profile nu = chain.density;
    const Profile ec = chain.ec_profile;
    const Profile ej = chain.ej_profile;

    FreqIntervals g;
    g.f = [ec, ej](double x) { return std::sqrt(2.0 * ej(x) * ec(x)); };
    g.df = [ec, ej](double x) {
        const double w = std::sqrt(2.0 * ej(x) * ec(x));
        return (ej.derivative(x) * ec(x) + ej(x) * ec.derivative(x)) / w;
    };
    g.w = [nu, ec, ej](double x) {
        return std::sqrt(2.0 * ej(x) * ec(x)) * nu(x) * ec(x);
    };
    // the frequency profile must be monotone on the declared intervals
    for (std::size_t k = 0; k < chain.monotone_intervals.size(); ++k) {
        const auto [lo, hi] = chain.monotone_intervals[k];
        int sign = 0;
        for (int i = 0; i < 1024; ++i) {
            const double x = lo + (hi - lo) * (i + 0.5) / 1024;
            const double d = g.df(x);
            const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
            if (s == 0 || (sign != 0 && s != sign)) {
                throw std::invalid_argument(
                    "harmonic_gamma: omega(x) not strictly monotonic on interval " +
                    std::to_string(k));
            }
            sign = s;
        }
    }
    g.intervals = chain.monotone_intervals;

    HarmonicBath bath;
    bath.j = spectral_from_intervals(std::move(g), SpectralDensity::Kind::harmonic);
    if (!(bath.j.support_lo > 0.0)) {
        throw std::invalid_argument("harmonic_gamma: oscillator frequencies must be positive");
    }

    const double pref = 0.25 * chain.coupling_eps * chain.coupling_eps;
    numerics::QuadratureOptions area_opts;
    area_opts.rel_tol = std::min(rel_tol, 1e-10);
    const double area = numerics::quad_adaptive([&](double w) { return bath.j(w); },
                                                bath.j.support_lo, bath.j.support_hi, area_opts)
                            .value;
    const double coth_bound =
        std::isinf(beta) ? 1.0 : 1.0 / std::tanh(0.5 * beta * bath.j.support_lo);

    bath.gamma.values.resize(times.size());
    kernels::for_each_index(
        times.size(),
        [&](std::size_t k) {
            const double t = times[k];
            numerics::QuadratureOptions opts;
            opts.rel_tol = rel_tol;
            opts.abs_tol = rel_tol * area * coth_bound;
            opts.max_subdivisions = 20000;
            auto f = [&](double w) {
                const double coth = std::isinf(beta) ? 1.0 : 1.0 / std::tanh(0.5 * beta * w);
                return bath.j(w) *
                       std::complex<double>(coth * std::cos(w * t), -std::sin(w * t));
            };
            bath.gamma.values[k] =
                pref * numerics::quad_adaptive_complex(f, bath.j.support_lo, bath.j.support_hi, opts).value;
        },
        exec);
    bath.gamma.times = std::move(times);
    bath.gamma.meta.source = "harmonic";
    bath.gamma.meta.beta = beta;
    return bath;
}

double junction_count(const ContinuumChain& chain) {
    numerics::QuadratureOptions opts;
    opts.rel_tol = 1e-10;
    const Profile nu = chain.density;
    return numerics::quad_adaptive([nu](double x) { return nu(x); }, chain.x_lo, chain.x_hi,
                                   opts)
        .value;
}

DiscreteChain discretize(const ContinuumChain& chain, std::size_t n, SampleMode mode,
                         std::uint64_t seed) {
    validate(chain);
    if (n == 0) throw std::invalid_argument("discretize: need at least one junction");

    // cumulative of nu on a fine grid; cells are refined with a 3-point rule
    constexpr int kCells = 8192;
    const double step = (chain.x_hi - chain.x_lo) / kCells;
    std::vector<double> edge(kCells + 1);
    std::vector<double> cdf(kCells + 1, 0.0);
    edge[0] = chain.x_lo;
    for (int i = 1; i <= kCells; ++i) {
        edge[i] = chain.x_lo + i * step;
        const double a = edge[i - 1];
        // Simpson on the cell
        const double cell =
            step / 6.0 *
            (chain.density(a) + 4.0 * chain.density(a + 0.5 * step) + chain.density(edge[i]));
        cdf[i] = cdf[i - 1] + cell;
    }
    const double total = cdf.back();
    if (!(total > 0.0)) throw std::invalid_argument("discretize: density integrates to zero");

    std::vector<double> u(n);
    if (mode == SampleMode::stratified) {
        for (std::size_t i = 0; i < n; ++i) u[i] = (static_cast<double>(i) + 0.5) / n;
    } else {
        std::mt19937_64 engine(seed);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        }
    }

    DiscreteChain out;
    // the n samples stand in for the chain's full junction mass ∫nu dx;
    // Gamma scales with eps^2 times the junction sum, so the weight
    // total/n is absorbed into the coupling
    out.coupling_eps = chain.coupling_eps * std::sqrt(total / static_cast<double>(n));
    out.junctions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double target = u[i] * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        std::size_t cell = std::min<std::size_t>(
            static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - cdf.begin())), kCells);
        const double frac = (target - cdf[cell - 1]) / std::max(cdf[cell] - cdf[cell - 1], 1e-300);
        const double x = edge[cell - 1] + frac * step;
        out.junctions.emplace_back(chain.ec_profile(x), chain.ej_profile(x));
    }
    return out;
}

}  // namespace jjb::chain
