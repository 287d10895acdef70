#include "jjbath/junction.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace jjb::junction {

namespace {

void require_cutoff(int n_max) {
    if (n_max < 1) throw std::invalid_argument("charge basis cutoff must satisfy n_max >= 1");
}

}  // namespace

ChargeBasisOperator build_hamiltonian(const JunctionParams& p, int n_max) {
    require_cutoff(n_max);
    ChargeBasisOperator h{n_max, Eigen::MatrixXcd::Zero(2 * n_max + 1, 2 * n_max + 1)};
    for (int n = -n_max; n <= n_max; ++n) {
        h.entries(h.index(n), h.index(n)) = static_cast<double>(n) * n * p.e_c;
        if (n < n_max) {
            h.entries(h.index(n), h.index(n + 1)) = -0.5 * p.e_j;
            h.entries(h.index(n + 1), h.index(n)) = -0.5 * p.e_j;
        }
    }
    return h;
}

ChargeBasisOperator parity_operator(int n_max) {
    require_cutoff(n_max);
    ChargeBasisOperator c{n_max, Eigen::MatrixXcd::Zero(2 * n_max + 1, 2 * n_max + 1)};
    for (int n = -n_max; n <= n_max; ++n) c.entries(c.index(-n), c.index(n)) = 1.0;
    return c;
}

ChargeBasisOperator charge_operator(int n_max) {
    require_cutoff(n_max);
    ChargeBasisOperator q{n_max, Eigen::MatrixXcd::Zero(2 * n_max + 1, 2 * n_max + 1)};
    for (int n = -n_max; n <= n_max; ++n) q.entries(q.index(n), q.index(n)) = n;
    return q;
}

ChargeBasisOperator cos_phase_operator(int n_max) {
    require_cutoff(n_max);
    ChargeBasisOperator c{n_max, Eigen::MatrixXcd::Zero(2 * n_max + 1, 2 * n_max + 1)};
    for (int n = -n_max; n < n_max; ++n) {
        c.entries(c.index(n), c.index(n + 1)) = 0.5;
        c.entries(c.index(n + 1), c.index(n)) = 0.5;
    }
    return c;
}

SpectralDecomposition diagonalize(const ChargeBasisOperator& h) {
    require_cutoff(h.n_max);
    const int dim = h.dim();
    if (h.entries.rows() != dim || h.entries.cols() != dim) {
        throw std::invalid_argument("diagonalize: operator dimension does not match cutoff");
    }
    const double scale = std::max(1e-300, h.entries.cwiseAbs().maxCoeff());
    if ((h.entries - h.entries.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("diagonalize: operator is not Hermitian");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize: eigensolver failed");
    }

    SpectralDecomposition dec;
    dec.energies = solver.eigenvalues();
    dec.states = solver.eigenvectors();
    dec.parities.assign(dim, 0);

    // E_C read off the n = +1 diagonal entry; the Josephson term is purely
    // off-diagonal so this is exact for junction Hamiltonians.
    const double e_c = std::max(std::real(h.entries(h.index(1), h.index(1))),
                                (dec.energies(dim - 1) - dec.energies(0)) / (dim * dim));
    const double cluster_gap = 1e-8 * e_c;
    const Eigen::MatrixXcd parity = parity_operator(h.n_max).entries;

    int lo = 0;
    while (lo < dim) {
        int hi = lo + 1;
        while (hi < dim && dec.energies(hi) - dec.energies(hi - 1) < cluster_gap) ++hi;
        const int k = hi - lo;
        if (k > 1) {
            // rotate the degenerate block onto definite-parity combinations
            Eigen::MatrixXcd block = dec.states.middleCols(lo, k);
            Eigen::MatrixXcd restricted = block.adjoint() * parity * block;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sub(restricted);
            dec.states.middleCols(lo, k) = block * sub.eigenvectors();
            for (int j = 0; j < k; ++j) {
                dec.parities[lo + j] = sub.eigenvalues()(j) > 0.0 ? 1 : -1;
            }
        } else {
            const std::complex<double> expect =
                dec.states.col(lo).dot(parity * dec.states.col(lo));
            dec.parities[lo] = std::real(expect) > 0.0 ? 1 : -1;
        }
        lo = hi;
    }
    return dec;
}

CorrelationSeries exact_correlation(const JunctionParams& p, int n_max, double beta,
                                    std::vector<double> times, kernels::Exec exec) {
    require_cutoff(n_max);
    if (!(beta > 0.0)) throw std::invalid_argument("exact_correlation: beta must be > 0");

    const auto dec = diagonalize(build_hamiltonian(p, n_max));
    const int dim = 2 * n_max + 1;
    const Eigen::MatrixXcd n_eigen =
        dec.states.adjoint() * charge_operator(n_max).entries * dec.states;

    const double e0 = dec.energies(0);
    Eigen::VectorXd boltzmann(dim);
    double z = 0.0;
    for (int m = 0; m < dim; ++m) {
        boltzmann(m) = std::exp(-beta * (dec.energies(m) - e0));
        z += boltzmann(m);
    }

    std::vector<double> weight;
    std::vector<double> freq;
    weight.reserve(static_cast<std::size_t>(dim) * dim / 2);
    freq.reserve(weight.capacity());
    for (int m = 0; m < dim; ++m) {
        if (boltzmann(m) == 0.0) continue;
        for (int n = 0; n < dim; ++n) {
            const double amp = std::norm(n_eigen(m, n)) * boltzmann(m) / z;
            if (amp == 0.0) continue;
            weight.push_back(amp);
            freq.push_back(dec.energies(m) - dec.energies(n));
        }
    }

    CorrelationSeries series;
    series.values.resize(times.size());
    kernels::phase_sum(weight, freq, times, series.values, exec);
    series.times = std::move(times);
    series.meta.source = "exact";
    series.meta.e_c = p.e_c;
    series.meta.e_j = p.e_j;
    series.meta.beta = beta;
    series.meta.cutoff_warning =
        std::exp(-beta * static_cast<double>(n_max) * n_max * p.e_c) >= 1e-14;
    if (series.meta.cutoff_warning) {
        series.meta.validity_note = "charge cutoff too small for this temperature";
    }
    return series;
}

double thermal_charge_expectation(const JunctionParams& p, int n_max, double beta) {
    require_cutoff(n_max);
    if (!(beta > 0.0)) {
        throw std::invalid_argument("thermal_charge_expectation: beta must be > 0");
    }
    const auto dec = diagonalize(build_hamiltonian(p, n_max));
    const int dim = 2 * n_max + 1;
    const Eigen::MatrixXcd n_eigen =
        dec.states.adjoint() * charge_operator(n_max).entries * dec.states;

    const double e0 = dec.energies(0);
    double z = 0.0;
    double acc = 0.0;
    for (int m = 0; m < dim; ++m) {
        const double w = std::exp(-beta * (dec.energies(m) - e0));
        z += w;
        acc += w * std::real(n_eigen(m, m));
    }
    return acc / z;
}

}  // namespace jjb::junction
