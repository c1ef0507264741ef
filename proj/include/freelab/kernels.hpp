#pragma once

#include <cstddef>

#include "freelab/common.hpp"

namespace freelab::kernels {

// Data-parallel inner loops of the transform evaluators. Each function has a scalar
// reference implementation and (on x86-64 with AVX2) a vectorized variant; the active
// backend is picked once at startup. FREELAB_KERNELS=scalar|avx2 overrides detection.
struct Backend {
    const char* name;

    // out[i] = sum_j coeffs[j] * (x[i] - center)^j
    void (*horner)(const double* x, std::size_t n, const double* coeffs, std::size_t ncoeff,
                   double center, double* out);

    // sum_i w[i] / (z - t[i])
    Complex (*accum_cauchy)(const double* t, const double* w, std::size_t n, Complex z);

    // sum_i w[i] * (1 + t[i] z) / (z - t[i])
    Complex (*accum_levy)(const double* t, const double* w, std::size_t n, Complex z);

    // sum_i w[i] * t[i] z / (1 - t[i] z)
    Complex (*accum_psi)(const double* t, const double* w, std::size_t n, Complex z);

    // sum_i w[i] * (1 + t[i]^2) / |z - t[i]|^2
    double (*accum_poisson)(const double* t, const double* w, std::size_t n, Complex z);

    // Circle nodes T[i] = tc[i] + i ts[i] on the unit circle.
    // sum_i w[i] * (T[i] + z) / (T[i] - z)
    Complex (*accum_herglotz)(const double* tc, const double* ts, const double* w, std::size_t n,
                              Complex z);

    // sum_i w[i] * T[i] z / (1 - T[i] z)
    Complex (*accum_psi_circle)(const double* tc, const double* ts, const double* w, std::size_t n,
                                Complex z);

    // sum_i w[i] / |T[i] - z|^2
    double (*accum_poisson_circle)(const double* tc, const double* ts, const double* w,
                                   std::size_t n, Complex z);
};

const Backend& scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
const Backend& avx2_backend();
bool avx2_available();
#endif

const Backend& active();

}  // namespace freelab::kernels
