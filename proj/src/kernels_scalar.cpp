#include "freelab/kernels.hpp"

namespace freelab::kernels {
namespace {

void horner_scalar(const double* x, std::size_t n, const double* coeffs, std::size_t ncoeff,
                   double center, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        double u = x[i] - center;
        double acc = 0.0;
        for (std::size_t j = ncoeff; j-- > 0;) acc = acc * u + coeffs[j];
        out[i] = acc;
    }
}

Complex accum_cauchy_scalar(const double* t, const double* w, std::size_t n, Complex z) {
    double re = 0.0, im = 0.0;
    double zr = z.real(), zi = z.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double dr = zr - t[i];
        double den = dr * dr + zi * zi;
        re += w[i] * dr / den;
        im -= w[i] * zi / den;
    }
    return {re, im};
}

Complex accum_levy_scalar(const double* t, const double* w, std::size_t n, Complex z) {
    // (1 + t z)/(z - t) with numerator expanded against conj(z - t).
    double re = 0.0, im = 0.0;
    double zr = z.real(), zi = z.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double ti = t[i];
        double nr = 1.0 + ti * zr, ni = ti * zi;
        double dr = zr - ti, di = zi;
        double den = dr * dr + di * di;
        re += w[i] * (nr * dr + ni * di) / den;
        im += w[i] * (ni * dr - nr * di) / den;
    }
    return {re, im};
}

Complex accum_psi_scalar(const double* t, const double* w, std::size_t n, Complex z) {
    double re = 0.0, im = 0.0;
    double zr = z.real(), zi = z.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double ti = t[i];
        double nr = ti * zr, ni = ti * zi;
        double dr = 1.0 - nr, di = -ni;
        double den = dr * dr + di * di;
        re += w[i] * (nr * dr + ni * di) / den;
        im += w[i] * (ni * dr - nr * di) / den;
    }
    return {re, im};
}

double accum_poisson_scalar(const double* t, const double* w, std::size_t n, Complex z) {
    double acc = 0.0;
    double zr = z.real(), zi = z.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double dr = zr - t[i];
        acc += w[i] * (1.0 + t[i] * t[i]) / (dr * dr + zi * zi);
    }
    return acc;
}

Complex accum_herglotz_scalar(const double* tc, const double* ts, const double* w, std::size_t n,
                              Complex z) {
    double re = 0.0, im = 0.0;
    double zr = z.real(), zi = z.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double nr = tc[i] + zr, ni = ts[i] + zi;
        double dr = tc[i] - zr, di = ts[i] - zi;
        double den = dr * dr + di * di;
        re += w[i] * (nr * dr + ni * di) / den;
        im += w[i] * (ni * dr - nr * di) / den;
    }
    return {re, im};
}

Complex accum_psi_circle_scalar(const double* tc, const double* ts, const double* w, std::size_t n,
                                Complex z) {
    double re = 0.0, im = 0.0;
    double zr = z.real(), zi = z.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double nr = tc[i] * zr - ts[i] * zi, ni = tc[i] * zi + ts[i] * zr;  // T z
        double dr = 1.0 - nr, di = -ni;
        double den = dr * dr + di * di;
        re += w[i] * (nr * dr + ni * di) / den;
        im += w[i] * (ni * dr - nr * di) / den;
    }
    return {re, im};
}

double accum_poisson_circle_scalar(const double* tc, const double* ts, const double* w,
                                   std::size_t n, Complex z) {
    double acc = 0.0;
    double zr = z.real(), zi = z.imag();
    for (std::size_t i = 0; i < n; ++i) {
        double dr = tc[i] - zr, di = ts[i] - zi;
        acc += w[i] / (dr * dr + di * di);
    }
    return acc;
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{
        "scalar",
        horner_scalar,
        accum_cauchy_scalar,
        accum_levy_scalar,
        accum_psi_scalar,
        accum_poisson_scalar,
        accum_herglotz_scalar,
        accum_psi_circle_scalar,
        accum_poisson_circle_scalar,
    };
    return b;
}

}  // namespace freelab::kernels
