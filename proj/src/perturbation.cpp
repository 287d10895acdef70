#include "jjbath/perturbation.hpp"

#include <cmath>
#include <stdexcept>

namespace jjb::perturbation {

namespace {

Parity require_label(int level, std::optional<Parity> parity) {
    if (level < 0) throw std::invalid_argument("perturbation: level must be >= 0");
    if (level >= 1 && !parity) {
        throw std::invalid_argument("perturbation: parity label required for excited levels");
    }
    return parity.value_or(Parity::even);
}

constexpr double kLambdaWindow = 0.2;

}  // namespace

bool perturbation_valid(const JunctionParams& p) { return p.lambda <= kLambdaWindow; }

double perturbative_energy(int level, std::optional<Parity> parity, const JunctionParams& p) {
    const Parity par = require_label(level, parity);
    const double l2 = p.lambda * p.lambda;
    if (level == 0) return -0.5 * l2 * p.e_c;
    if (level == 1) {
        return par == Parity::even ? p.e_c * (1.0 + 5.0 * l2 / 12.0)
                                   : p.e_c * (1.0 - l2 / 12.0);
    }
    const double n2 = static_cast<double>(level) * level;
    return p.e_c * (n2 + l2 / (2.0 * (4.0 * n2 - 1.0)));
}

PerturbativeSpectrum perturbative_state(int level, std::optional<Parity> parity,
                                        const JunctionParams& p) {
    const Parity par = require_label(level, parity);
    PerturbativeSpectrum s;
    s.level = level;
    s.parity = par;
    s.energy_o2 = perturbative_energy(level, parity, p);
    const double lam = p.lambda;

    if (level == 0) {
        s.parity = Parity::even;  // the ground state is even under conjugation
        s.state_coeffs = {{{0, Parity::even}, 1.0}, {{1, Parity::even}, lam / std::sqrt(2.0)}};
    } else if (level == 1) {
        if (par == Parity::even) {
            s.state_coeffs = {{{1, Parity::even}, 1.0},
                              {{2, Parity::even}, lam / 6.0},
                              {{0, Parity::even}, lam / std::sqrt(2.0)}};
        } else {
            s.state_coeffs = {{{1, Parity::odd}, 1.0}, {{2, Parity::odd}, lam / 6.0}};
        }
    } else {
        s.state_coeffs = {{{level, par}, 1.0},
                          {{level + 1, par}, lam / (4.0 * level + 2.0)},
                          {{level - 1, par}, -lam / (4.0 * level - 2.0)}};
    }
    return s;
}

CorrelationSeries g_low_t(const JunctionParams& p, std::vector<double> times) {
    CorrelationSeries s;
    const double amp = 0.5 * p.lambda * p.lambda;
    s.values.reserve(times.size());
    for (double t : times) {
        s.values.push_back(amp * std::exp(std::complex<double>(0.0, -p.e_c * t)));
    }
    s.times = std::move(times);
    s.meta.source = "perturbative-lowT";
    s.meta.e_c = p.e_c;
    s.meta.e_j = p.e_j;
    s.meta.validity_warning = !perturbation_valid(p);
    s.meta.validity_note = "valid for t << 1/(lambda^2 E_C)";
    return s;
}

CorrelationSeries g_moderate(const JunctionParams& p, double beta, std::vector<double> times) {
    if (!(beta > 0.0)) throw std::invalid_argument("g_moderate: beta must be > 0");
    CorrelationSeries s;
    const double amp = 0.5 * p.lambda * p.lambda;
    const double offset = 2.0 * std::exp(-beta * p.e_c);
    s.values.reserve(times.size());
    for (double t : times) {
        s.values.push_back(amp * std::exp(std::complex<double>(0.0, -p.e_c * t)) + offset);
    }
    s.times = std::move(times);
    s.meta.source = "perturbative-eps";
    s.meta.e_c = p.e_c;
    s.meta.e_j = p.e_j;
    s.meta.beta = beta;
    const double lam3 = p.lambda * p.lambda * p.lambda;
    s.meta.validity_warning =
        !perturbation_valid(p) || (std::isfinite(beta) && beta * p.e_c * lam3 > 1.0);
    s.meta.validity_note = "valid for lambda^3 E_C << 1/beta << E_C, t << 1/(lambda^2 E_C)";
    return s;
}

std::complex<double> g_high_t(const JunctionParams& p, double beta, int series_cutoff) {
    double num = 0.0;
    double den = 1.0;
    const int limit = series_cutoff > 0 ? series_cutoff : 100000;
    for (int n = 1; n <= limit; ++n) {
        const double w = std::exp(-static_cast<double>(n) * n * beta * p.e_c);
        num += 2.0 * n * static_cast<double>(n) * w;
        den += 2.0 * w;
        if (series_cutoff <= 0 && n * static_cast<double>(n) * w < 1e-15 * std::max(num, 1e-300)) {
            break;
        }
    }
    return {num / den, 0.0};
}

double matsubara_k(int n, double tau, double e_c) {
    if (!(tau >= 0.0)) throw std::invalid_argument("matsubara_k: tau must be >= 0");
    const double m = (1.0 + 2.0 * n) * e_c;
    return std::exp(-tau * m) / (m * m) + tau / m - 1.0 / (m * m);
}

double matsubara_l(int n, double tau, double beta, double e_c) {
    if (!(tau >= 0.0 && tau <= beta)) {
        throw std::invalid_argument("matsubara_l: tau must lie in [0, beta]");
    }
    const double m = (1.0 + 2.0 * n) * e_c;
    return (std::exp(-beta * m) * (1.0 - std::exp(tau * m)) - std::exp(-tau * m) + 1.0) /
           (m * m);
}

CorrelationSeries matsubara_correlation(const JunctionParams& p, double beta,
                                        std::vector<double> times) {
    if (!(beta > 0.0) || std::isinf(beta)) {
        throw std::invalid_argument("matsubara_correlation: beta must be finite and > 0");
    }
    CorrelationSeries s;
    const double l2 = p.lambda * p.lambda;
    const double offset = 2.0 * std::exp(-beta * p.e_c);
    const double denom = 1.0 - 0.5 * beta * p.e_c * l2;
    s.values.reserve(times.size());
    for (double t : times) {
        const std::complex<double> numerator =
            offset + 0.5 * l2 * std::exp(std::complex<double>(0.0, -p.e_c * t));
        s.values.push_back(numerator / denom);
    }
    s.times = std::move(times);
    s.meta.source = "matsubara";
    s.meta.e_c = p.e_c;
    s.meta.e_j = p.e_j;
    s.meta.beta = beta;
    s.meta.validity_warning = beta * p.e_c * l2 > 0.1;
    s.meta.validity_note = "Matsubara expansion requires beta E_C lambda^2 << 1";
    return s;
}

}  // namespace jjb::perturbation
