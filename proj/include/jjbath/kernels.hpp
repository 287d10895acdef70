// kernels.hpp — Data-parallel inner loops shared by the correlation and sweep
// code paths. Every kernel exists in a serial reference form and an
// OpenMP-parallel form; parallelism is always over independent output points
// while each point is accumulated in fixed order, so the two forms agree
// bitwise for any thread count.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace jjb::kernels {

enum class Exec { serial, parallel };

// out[k] = sum_j weight[j] * exp(i * freq[j] * t[k])
void phase_sum(std::span<const double> weight, std::span<const double> freq,
               std::span<const double> t, std::span<std::complex<double>> out,
               Exec exec = Exec::parallel);

// Evaluate body(k) for k in [0, n); bodies must be independent.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Exec exec = Exec::parallel);

int max_threads();

}  // namespace jjb::kernels
