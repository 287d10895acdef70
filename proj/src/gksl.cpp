#include "jjbath/gksl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jjb::gksl {

OscillatorParams::OscillatorParams(double omega0_, double e_q_, double eps_i_)
    : omega0(omega0_), e_q(e_q_), eps_i(eps_i_) {
    if (!(omega0 > 0.0 && e_q > 0.0 && eps_i > 0.0)) {
        throw std::invalid_argument("OscillatorParams: omega0, E_Q, eps_I must be > 0");
    }
}

namespace {

// PV ∫ J(E)/(E - omega) over the support, handling the pole only when it
// actually lies inside.
double pv_over_support(const SpectralDensity& j, double omega,
                       const numerics::QuadratureOptions& opts) {
    if (!(j.support_hi > j.support_lo)) return 0.0;
    // poles within rounding distance of a support edge are treated as edge
    // poles: the excised integral would collapse to zero-width segments
    const double margin = 1e-9 * j.width();
    if (omega > j.support_lo + margin && omega < j.support_hi - margin) {
        return numerics::quad_pv([&j](double e) { return j(e); }, j.support_lo, j.support_hi,
                                 omega, opts)
            .value;
    }
    numerics::QuadratureOptions safe = opts;
    safe.magnitude_scale = true;
    return numerics::quad_adaptive(
               [&j, omega](double e) { return j(e) / (e - omega); }, j.support_lo,
               j.support_hi, safe)
        .value;
}

}  // namespace

std::complex<double> half_fourier(const SpectralDensity& j, double omega, double eps_i,
                                  const numerics::QuadratureOptions& opts) {
    const double pref = 0.25 * eps_i * eps_i;
    const double real_part = omega > 0.0 ? M_PI * j(omega) : 0.0;
    const double pv = pv_over_support(j, omega, opts);
    return pref * std::complex<double>(real_part, -pv);
}

double decay_rate(const SpectralDensity& j, const OscillatorParams& osc) {
    if (osc.omega0 < j.support_lo || osc.omega0 > j.support_hi) return 0.0;
    return M_PI * osc.eps_i * osc.eps_i * osc.omega0 * j(osc.omega0) / (8.0 * osc.e_q);
}

double lamb_shift(const SpectralDensity& j, const OscillatorParams& osc) {
    numerics::QuadratureOptions opts;
    opts.rel_tol = 1e-10;
    const double pv = pv_over_support(j, osc.omega0, opts);
    numerics::QuadratureOptions plain;
    plain.rel_tol = 1e-10;
    const double smooth =
        j.support_hi > j.support_lo
            ? numerics::quad_adaptive(
                  [&](double e) { return j(e) / (e + osc.omega0); }, j.support_lo,
                  j.support_hi, plain)
                  .value
            : 0.0;
    return osc.omega0 * osc.eps_i * osc.eps_i / (16.0 * osc.e_q) * (pv + smooth);
}

double lamb_constant(const SpectralDensity& j, const OscillatorParams& osc) {
    if (!(j.support_hi > j.support_lo)) return 0.0;
    numerics::QuadratureOptions plain;
    plain.rel_tol = 1e-10;
    const double smooth = numerics::quad_adaptive(
                              [&](double e) { return j(e) / (e + osc.omega0); }, j.support_lo,
                              j.support_hi, plain)
                              .value;
    return osc.omega0 * osc.eps_i * osc.eps_i / (16.0 * osc.e_q) * smooth;
}

Diagnostics markovianity_report(const LorentzianRule& r, const OscillatorParams& osc,
                                double threshold) {
    Diagnostics d;
    d.omega_b = r.a * r.e_c0 * std::min(r.sigma, 0.5);
    d.zeta_m = M_PI * r.amp * r.eps_i * r.eps_i * r.e_j0 * r.e_j0 /
               (8.0 * r.a * r.sigma * r.sigma * r.e_c0 * osc.e_q);
    const double asig = r.a * r.sigma;
    const double kappa_max = d.zeta_m * r.e_c0 * (1.0 + std::sqrt(1.0 + asig * asig)) / 2.0;
    d.bm_margin = kappa_max / d.omega_b;
    d.secular_margin = d.zeta_m;
    d.bm_ok =
        d.zeta_m * (1.0 + std::sqrt(1.0 + asig * asig)) / asig < threshold * std::min(1.0, 2.0 * r.sigma);
    d.secular_ok = d.zeta_m < threshold;
    return d;
}

double measured_omega_b(const CorrelationSeries& gamma, double gamma0) {
    if (gamma.times.size() < 2) {
        throw std::invalid_argument("measured_omega_b: need a sampled series");
    }
    const double scale = std::abs(gamma.values.front() - gamma0);
    const double target = scale / M_E;
    for (std::size_t i = 1; i < gamma.times.size(); ++i) {
        if (std::abs(gamma.values[i] - gamma0) < target) return 1.0 / gamma.times[i];
    }
    return 1.0 / gamma.times.back();  // no decay observed within the window
}

Diagnostics markovianity_measured(const CorrelationSeries& gamma, double gamma0,
                                  const SpectralDensity& j, const OscillatorParams& osc,
                                  double threshold) {
    Diagnostics d;
    d.omega_b = measured_omega_b(gamma, gamma0);
    double kappa_max = 0.0;
    double zeta = 0.0;
    constexpr int kGrid = 400;
    for (int i = 0; i <= kGrid; ++i) {
        const double w = j.support_lo + (j.support_hi - j.support_lo) * i / kGrid;
        if (w <= 0.0) continue;
        const double kap = M_PI * osc.eps_i * osc.eps_i * w * j(w) / (8.0 * osc.e_q);
        kappa_max = std::max(kappa_max, kap);
        zeta = std::max(zeta, kap / w);
    }
    d.zeta_m = zeta;
    d.bm_margin = kappa_max / d.omega_b;
    d.secular_margin = zeta;
    d.bm_ok = d.bm_margin < threshold;
    d.secular_ok = d.secular_margin < threshold;
    return d;
}

GkslResult coefficients(const SpectralDensity& j, const OscillatorParams& osc) {
    GkslResult res;
    res.kappa = decay_rate(j, osc);
    res.lamb_shift = lamb_shift(j, osc);
    res.gamma_omega = half_fourier(j, osc.omega0, osc.eps_i);
    res.kappa_negative = 0.0;  // Theta(-omega0) = 0: the bath emits no photons
    res.lamb_constant = lamb_constant(j, osc);
    return res;
}

OscillatorState OscillatorState::fock(int n_fock, int n0) {
    if (n_fock < 2) throw std::invalid_argument("OscillatorState: n_fock must be >= 2");
    if (n0 < 0 || n0 > n_fock) throw std::invalid_argument("OscillatorState: n0 out of range");
    OscillatorState s;
    s.n_fock = n_fock;
    s.rho = Eigen::MatrixXcd::Zero(n_fock + 1, n_fock + 1);
    s.rho(n0, n0) = 1.0;
    return s;
}

double OscillatorState::trace() const { return rho.trace().real(); }

double OscillatorState::number_expectation() const {
    double acc = 0.0;
    for (int n = 0; n <= n_fock; ++n) acc += n * rho(n, n).real();
    return acc;
}

double OscillatorState::purity() const { return (rho * rho).trace().real(); }

double OscillatorState::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
    return solver.eigenvalues().minCoeff();
}

void validate(const OscillatorState& state) {
    if (state.rho.rows() != state.n_fock + 1 || state.rho.cols() != state.n_fock + 1) {
        throw std::invalid_argument("OscillatorState: dimension mismatch");
    }
    if (std::abs(state.trace() - 1.0) > 1e-10) {
        throw std::invalid_argument("OscillatorState: trace must be 1");
    }
    if ((state.rho - state.rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("OscillatorState: density matrix must be Hermitian");
    }
    if (state.min_eigenvalue() < -1e-10) {
        throw std::invalid_argument("OscillatorState: density matrix must be positive");
    }
}

Trajectory evolve_oscillator(const GkslResult& res, const OscillatorParams& /*osc*/,
                             const OscillatorState& initial, std::span<const double> times,
                             const numerics::OdeOptions& opts) {
    validate(initial);
    const int dim = initial.n_fock + 1;
    const double kappa = res.kappa;
    const double dls = res.lamb_shift;

    auto rhs = [dim, kappa, dls](double /*t*/, const Eigen::VectorXcd& y) {
        Eigen::VectorXcd dy(y.size());
        auto at = [&y, dim](int m, int n) { return y[m * dim + n]; };
        for (int m = 0; m < dim; ++m) {
            for (int n = 0; n < dim; ++n) {
                // -i dls (m - n) rho_mn - kappa (m + n)/2 rho_mn
                std::complex<double> v =
                    (std::complex<double>(0.0, -dls * (m - n)) - 0.5 * kappa * (m + n)) *
                    at(m, n);
                // gain term of b rho b†
                if (m + 1 < dim && n + 1 < dim) {
                    v += kappa * std::sqrt(double(m + 1) * double(n + 1)) * at(m + 1, n + 1);
                }
                dy[m * dim + n] = v;
            }
        }
        return dy;
    };

    auto hermitize = [dim](Eigen::VectorXcd& y) {
        for (int m = 0; m < dim; ++m) {
            for (int n = m; n < dim; ++n) {
                const std::complex<double> avg =
                    0.5 * (y[m * dim + n] + std::conj(y[n * dim + m]));
                y[m * dim + n] = avg;
                y[n * dim + m] = std::conj(avg);
            }
        }
    };

    Eigen::VectorXcd y0(dim * dim);
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) y0[m * dim + n] = initial.rho(m, n);
    }

    const auto states = numerics::ode_evolve(rhs, y0, times, opts, hermitize);

    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.states.reserve(states.size());
    for (const auto& y : states) {
        OscillatorState s;
        s.n_fock = initial.n_fock;
        s.rho = Eigen::Map<const Eigen::MatrixXcd>(y.data(), dim, dim).transpose();
        const double top = s.rho(dim - 1, dim - 1).real() +
                           (dim >= 2 ? s.rho(dim - 2, dim - 2).real() : 0.0);
        if (top >= 1e-8) traj.cutoff_warning = true;
        traj.states.push_back(std::move(s));
    }
    return traj;
}

}  // namespace jjb::gksl
