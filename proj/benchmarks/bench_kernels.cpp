// Timing comparison of the serial reference kernels against the OpenMP
// versions on the three hot paths: mode phase sums, the exact junction
// correlator, and quadrature sweeps over a time grid.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#include "jjbath/chain.hpp"
#include "jjbath/junction.hpp"
#include "jjbath/kernels.hpp"
#include "jjbath/scenarios.hpp"

using namespace jjb;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_of(const std::function<void()>& body, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = Clock::now();
        body();
        best = std::min(best, std::chrono::duration<double>(Clock::now() - start).count());
    }
    return best;
}

void report(const char* label, double serial, double parallel) {
    std::printf("%-38s serial %8.4f s   parallel %8.4f s   speedup %.2fx\n", label, serial,
                parallel, serial / parallel);
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", kernels::max_threads());

    // mode phase sum: 10^4 modes x 4001 time points
    {
        const std::size_t modes = 10000, points = 4001;
        std::vector<double> w(modes), f(modes), t(points);
        for (std::size_t j = 0; j < modes; ++j) {
            w[j] = 1.0 + std::sin(0.1 * j);
            f[j] = std::cos(0.01 * j) * 3.0;
        }
        for (std::size_t k = 0; k < points; ++k) t[k] = 0.025 * k;
        std::vector<std::complex<double>> out(points);
        const double ts = seconds_of(
            [&] { kernels::phase_sum(w, f, t, out, kernels::Exec::serial); }, 3);
        const double tp = seconds_of(
            [&] { kernels::phase_sum(w, f, t, out, kernels::Exec::parallel); }, 3);
        report("phase_sum 1e4 modes x 4001 points", ts, tp);
    }

    // exact junction correlator on a dense grid
    {
        const JunctionParams p{1.0, 0.05};
        std::vector<double> grid(2001);
        for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.05 * i;
        const double ts = seconds_of(
            [&] { junction::exact_correlation(p, 28, 1.0, grid, kernels::Exec::serial); }, 3);
        const double tp = seconds_of(
            [&] { junction::exact_correlation(p, 28, 1.0, grid, kernels::Exec::parallel); }, 3);
        report("exact_correlation n_max=28, 2001 pts", ts, tp);
    }

    // oscillatory quadrature sweep for the engineered chain
    {
        const auto scenario =
            scenarios::lorentzian_chain({500.0, 0.25, 0.4, 1.0, 0.05, 1.0}, 0.01);
        std::vector<double> grid(513);
        for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 100.0 * i / (grid.size() - 1);
        const double ts = seconds_of(
            [&] {
                chain::gamma_from_spectral(scenario.j_closed_form, 0.01, grid,
                                           kernels::Exec::serial);
            },
            3);
        const double tp = seconds_of(
            [&] {
                chain::gamma_from_spectral(scenario.j_closed_form, 0.01, grid,
                                           kernels::Exec::parallel);
            },
            3);
        report("gamma_from_spectral 513 pts", ts, tp);
    }

    return 0;
}
