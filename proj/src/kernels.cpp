#include "jjbath/kernels.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jjb::kernels {

namespace {

inline std::complex<double> point_phase_sum(std::span<const double> weight,
                                            std::span<const double> freq, double t) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < weight.size(); ++j) {
        const double phase = freq[j] * t;
        re += weight[j] * std::cos(phase);
        im += weight[j] * std::sin(phase);
    }
    return {re, im};
}

}  // namespace

void phase_sum(std::span<const double> weight, std::span<const double> freq,
               std::span<const double> t, std::span<std::complex<double>> out, Exec exec) {
    if (weight.size() != freq.size()) {
        throw std::invalid_argument("phase_sum: weight/freq size mismatch");
    }
    if (t.size() != out.size()) {
        throw std::invalid_argument("phase_sum: time/output size mismatch");
    }
    if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(t.size()); ++k) {
            out[static_cast<std::size_t>(k)] =
                point_phase_sum(weight, freq, t[static_cast<std::size_t>(k)]);
        }
    } else {
        for (std::size_t k = 0; k < t.size(); ++k) {
            out[k] = point_phase_sum(weight, freq, t[k]);
        }
    }
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec) {
    if (exec == Exec::parallel) {
        // exceptions may not cross an OpenMP region; capture and rethrow
        std::exception_ptr failure = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
            try {
                body(static_cast<std::size_t>(k));
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical(jjb_kernels_failure)
#endif
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::size_t k = 0; k < n; ++k) body(k);
    }
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace jjb::kernels
