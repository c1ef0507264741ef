// AVX2 variants of the kernel inner loops. Compiled with -mavx2 -mfma; callers must
// check avx2_available() (the dispatcher does) before taking this backend.
#include "freelab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace freelab::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

void horner_avx2(const double* x, std::size_t n, const double* coeffs, std::size_t ncoeff,
                 double center, double* out) {
    const __m256d c0 = _mm256_set1_pd(center);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d u = _mm256_sub_pd(_mm256_loadu_pd(x + i), c0);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = ncoeff; j-- > 0;)
            acc = _mm256_fmadd_pd(acc, u, _mm256_set1_pd(coeffs[j]));
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        double u = x[i] - center;
        double acc = 0.0;
        for (std::size_t j = ncoeff; j-- > 0;) acc = acc * u + coeffs[j];
        out[i] = acc;
    }
}

Complex accum_cauchy_avx2(const double* t, const double* w, std::size_t n, Complex z) {
    const __m256d zr = _mm256_set1_pd(z.real());
    const __m256d zi = _mm256_set1_pd(z.imag());
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ti = _mm256_loadu_pd(t + i);
        __m256d wi = _mm256_loadu_pd(w + i);
        __m256d dr = _mm256_sub_pd(zr, ti);
        __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(zi, zi));
        __m256d q = _mm256_div_pd(wi, den);
        re = _mm256_fmadd_pd(q, dr, re);
        im = _mm256_fnmadd_pd(q, zi, im);
    }
    double sre = hsum(re), sim = hsum(im);
    for (; i < n; ++i) {
        double dr = z.real() - t[i];
        double den = dr * dr + z.imag() * z.imag();
        sre += w[i] * dr / den;
        sim -= w[i] * z.imag() / den;
    }
    return {sre, sim};
}

Complex accum_levy_avx2(const double* t, const double* w, std::size_t n, Complex z) {
    const __m256d zr = _mm256_set1_pd(z.real());
    const __m256d zi = _mm256_set1_pd(z.imag());
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ti = _mm256_loadu_pd(t + i);
        __m256d wi = _mm256_loadu_pd(w + i);
        __m256d nr = _mm256_fmadd_pd(ti, zr, one);
        __m256d ni = _mm256_mul_pd(ti, zi);
        __m256d dr = _mm256_sub_pd(zr, ti);
        __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(zi, zi));
        __m256d q = _mm256_div_pd(wi, den);
        __m256d pr = _mm256_fmadd_pd(nr, dr, _mm256_mul_pd(ni, zi));
        __m256d pi = _mm256_fnmadd_pd(nr, zi, _mm256_mul_pd(ni, dr));
        re = _mm256_fmadd_pd(q, pr, re);
        im = _mm256_fmadd_pd(q, pi, im);
    }
    double sre = hsum(re), sim = hsum(im);
    for (; i < n; ++i) {
        double ti = t[i];
        double nr = 1.0 + ti * z.real(), ni = ti * z.imag();
        double dr = z.real() - ti, di = z.imag();
        double den = dr * dr + di * di;
        sre += w[i] * (nr * dr + ni * di) / den;
        sim += w[i] * (ni * dr - nr * di) / den;
    }
    return {sre, sim};
}

Complex accum_psi_avx2(const double* t, const double* w, std::size_t n, Complex z) {
    const __m256d zr = _mm256_set1_pd(z.real());
    const __m256d zi = _mm256_set1_pd(z.imag());
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ti = _mm256_loadu_pd(t + i);
        __m256d wi = _mm256_loadu_pd(w + i);
        __m256d nr = _mm256_mul_pd(ti, zr);
        __m256d ni = _mm256_mul_pd(ti, zi);
        __m256d dr = _mm256_sub_pd(one, nr);
        __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(ni, ni));
        __m256d q = _mm256_div_pd(wi, den);
        // num * conj(den): (nr,ni)*(dr, +ni) -> re: nr*dr - ni*ni*(-1)? use scalar identity:
        // re = nr*dr + ni*di with di = -ni  => nr*dr - ni*ni
        __m256d pr = _mm256_fnmadd_pd(ni, ni, _mm256_mul_pd(nr, dr));
        __m256d pi = _mm256_fmadd_pd(ni, dr, _mm256_mul_pd(nr, ni));
        re = _mm256_fmadd_pd(q, pr, re);
        im = _mm256_fmadd_pd(q, pi, im);
    }
    double sre = hsum(re), sim = hsum(im);
    for (; i < n; ++i) {
        double ti = t[i];
        double nr = ti * z.real(), ni = ti * z.imag();
        double dr = 1.0 - nr, di = -ni;
        double den = dr * dr + di * di;
        sre += w[i] * (nr * dr + ni * di) / den;
        sim += w[i] * (ni * dr - nr * di) / den;
    }
    return {sre, sim};
}

double accum_poisson_avx2(const double* t, const double* w, std::size_t n, Complex z) {
    const __m256d zr = _mm256_set1_pd(z.real());
    const __m256d zi2 = _mm256_set1_pd(z.imag() * z.imag());
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ti = _mm256_loadu_pd(t + i);
        __m256d wi = _mm256_loadu_pd(w + i);
        __m256d dr = _mm256_sub_pd(zr, ti);
        __m256d den = _mm256_fmadd_pd(dr, dr, zi2);
        __m256d num = _mm256_fmadd_pd(ti, ti, one);
        acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_mul_pd(wi, num), den));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        double dr = z.real() - t[i];
        s += w[i] * (1.0 + t[i] * t[i]) / (dr * dr + z.imag() * z.imag());
    }
    return s;
}

Complex accum_herglotz_avx2(const double* tc, const double* ts, const double* w, std::size_t n,
                            Complex z) {
    const __m256d zr = _mm256_set1_pd(z.real());
    const __m256d zi = _mm256_set1_pd(z.imag());
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d cr = _mm256_loadu_pd(tc + i);
        __m256d ci = _mm256_loadu_pd(ts + i);
        __m256d wi = _mm256_loadu_pd(w + i);
        __m256d nr = _mm256_add_pd(cr, zr), ni = _mm256_add_pd(ci, zi);
        __m256d dr = _mm256_sub_pd(cr, zr), di = _mm256_sub_pd(ci, zi);
        __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
        __m256d q = _mm256_div_pd(wi, den);
        __m256d pr = _mm256_fmadd_pd(nr, dr, _mm256_mul_pd(ni, di));
        __m256d pi = _mm256_fnmadd_pd(nr, di, _mm256_mul_pd(ni, dr));
        re = _mm256_fmadd_pd(q, pr, re);
        im = _mm256_fmadd_pd(q, pi, im);
    }
    double sre = hsum(re), sim = hsum(im);
    for (; i < n; ++i) {
        double nr = tc[i] + z.real(), ni = ts[i] + z.imag();
        double dr = tc[i] - z.real(), di = ts[i] - z.imag();
        double den = dr * dr + di * di;
        sre += w[i] * (nr * dr + ni * di) / den;
        sim += w[i] * (ni * dr - nr * di) / den;
    }
    return {sre, sim};
}

Complex accum_psi_circle_avx2(const double* tc, const double* ts, const double* w, std::size_t n,
                              Complex z) {
    const __m256d zr = _mm256_set1_pd(z.real());
    const __m256d zi = _mm256_set1_pd(z.imag());
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d cr = _mm256_loadu_pd(tc + i);
        __m256d ci = _mm256_loadu_pd(ts + i);
        __m256d wi = _mm256_loadu_pd(w + i);
        __m256d nr = _mm256_fnmadd_pd(ci, zi, _mm256_mul_pd(cr, zr));
        __m256d ni = _mm256_fmadd_pd(ci, zr, _mm256_mul_pd(cr, zi));
        __m256d dr = _mm256_sub_pd(one, nr);
        __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(ni, ni));
        __m256d q = _mm256_div_pd(wi, den);
        __m256d pr = _mm256_fnmadd_pd(ni, ni, _mm256_mul_pd(nr, dr));
        __m256d pi = _mm256_fmadd_pd(ni, dr, _mm256_mul_pd(nr, ni));
        re = _mm256_fmadd_pd(q, pr, re);
        im = _mm256_fmadd_pd(q, pi, im);
    }
    double sre = hsum(re), sim = hsum(im);
    for (; i < n; ++i) {
        double nr = tc[i] * z.real() - ts[i] * z.imag();
        double ni = tc[i] * z.imag() + ts[i] * z.real();
        double dr = 1.0 - nr, di = -ni;
        double den = dr * dr + di * di;
        sre += w[i] * (nr * dr + ni * di) / den;
        sim += w[i] * (ni * dr - nr * di) / den;
    }
    return {sre, sim};
}

double accum_poisson_circle_avx2(const double* tc, const double* ts, const double* w, std::size_t n,
                                 Complex z) {
    const __m256d zr = _mm256_set1_pd(z.real());
    const __m256d zi = _mm256_set1_pd(z.imag());
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(tc + i), zr);
        __m256d di = _mm256_sub_pd(_mm256_loadu_pd(ts + i), zi);
        __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
        acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_loadu_pd(w + i), den));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        double dr = tc[i] - z.real(), di = ts[i] - z.imag();
        s += w[i] / (dr * dr + di * di);
    }
    return s;
}

}  // namespace

const Backend& avx2_backend() {
    static const Backend b{
        "avx2",
        horner_avx2,
        accum_cauchy_avx2,
        accum_levy_avx2,
        accum_psi_avx2,
        accum_poisson_avx2,
        accum_herglotz_avx2,
        accum_psi_circle_avx2,
        accum_poisson_circle_avx2,
    };
    return b;
}

}  // namespace freelab::kernels

#endif  // x86-64
