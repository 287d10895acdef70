// junction.hpp — Exact physics of a single Josephson junction in a truncated
// charge basis |n>, n in {-n_max, ..., n_max}: Hamiltonian construction,
// diagonalization with charge-parity labels, and the thermal correlator
// G(t) = <N(t) N(0)>.

#pragma once

#include <Eigen/Dense>

#include "jjbath/kernels.hpp"
#include "jjbath/types.hpp"

namespace jjb::junction {

// Dense operator on the truncated charge basis; matrix index i = n + n_max.
struct ChargeBasisOperator {
    int n_max = 0;
    Eigen::MatrixXcd entries;

    int dim() const { return 2 * n_max + 1; }
    int index(int n) const { return n + n_max; }
};

struct SpectralDecomposition {
    Eigen::VectorXd energies;     // ascending
    Eigen::MatrixXcd states;      // orthonormal columns
    std::vector<int> parities;    // charge-conjugation eigenvalue of each column
};

// H = E_C N^2 - E_J cos(phi): real tridiagonal with diagonal n^2 E_C and
// off-diagonal -E_J/2.
ChargeBasisOperator build_hamiltonian(const JunctionParams& p, int n_max);

// Charge conjugation C|n> = |-n>; C^2 = 1.
ChargeBasisOperator parity_operator(int n_max);

// N = diag(n).
ChargeBasisOperator charge_operator(int n_max);

// cos(phi): off-diagonal 1/2 couplings between neighboring charge states.
ChargeBasisOperator cos_phase_operator(int n_max);

// Hermitian eigendecomposition with parity labels. Numerically degenerate
// clusters (gap below 1e-8 E_C) are rotated onto the ±1 eigenspaces of C,
// since the eigensolver returns arbitrary mixtures there.
SpectralDecomposition diagonalize(const ChargeBasisOperator& h);

// G(t) = Z^{-1} sum_{m,n} |<psi_m|N|psi_n>|^2 e^{-beta E_m} e^{i(E_m-E_n)t}.
// Sets meta.cutoff_warning when exp(-beta n_max^2 E_C) >= 1e-14.
CorrelationSeries exact_correlation(const JunctionParams& p, int n_max, double beta,
                                    std::vector<double> times,
                                    kernels::Exec exec = kernels::Exec::parallel);

// Thermal <N>; zero by charge-conjugation symmetry.
double thermal_charge_expectation(const JunctionParams& p, int n_max, double beta);

inline constexpr int kDefaultChargeCutoff = 20;  // 41 basis states

}  // namespace jjb::junction
