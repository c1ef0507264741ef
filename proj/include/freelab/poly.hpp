#pragma once

#include <vector>

#include "freelab/common.hpp"
#include "freelab/rational.hpp"

namespace freelab {

// Polynomial in monomial basis about a center: p(t) = sum coeffs[j] * (t - center)^j.
template <class T>
struct Poly {
    T center{};
    std::vector<T> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    template <class X>
    auto eval(const X& x) const {
        X acc{};
        X u = x - X(center);
        for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * u + X(coeffs[j]);
        return acc;
    }

    Poly derivative() const {
        Poly d;
        d.center = center;
        if (coeffs.size() <= 1) {
            d.coeffs = {T{}};
            return d;
        }
        d.coeffs.resize(coeffs.size() - 1);
        for (std::size_t j = 1; j < coeffs.size(); ++j) d.coeffs[j - 1] = coeffs[j] * T(static_cast<long>(j));
        return d;
    }

    // Definite integral over [a, b].
    T integral(const T& a, const T& b) const {
        T ua = a - center, ub = b - center;
        T acc{};
        T pa = ua, pb = ub;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            acc += coeffs[j] * (pb - pa) / T(static_cast<long>(j + 1));
            pa *= ua;
            pb *= ub;
        }
        return acc;
    }

    // Taylor shift: same polynomial expressed about new_center.
    Poly recentered(const T& new_center) const {
        Poly out;
        out.center = new_center;
        out.coeffs.assign(coeffs.size(), T{});
        if (coeffs.empty()) return out;
        T h = new_center - center;  // (t - c) = (t - nc) + h
        // Synthetic Horner translation.
        std::vector<T> work = coeffs;
        for (std::size_t round = 0; round < coeffs.size(); ++round) {
            for (std::size_t j = coeffs.size() - 1; j > round; --j) work[j - 1] += work[j] * h;
            out.coeffs[round] = work[round];
        }
        return out;
    }

    Poly operator*(const Poly& o) const {
        Poly out;
        out.center = center;  // caller must ensure matching centers
        out.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, T{});
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs.size(); ++j) out.coeffs[i + j] += coeffs[i] * o.coeffs[j];
        return out;
    }
};

using PolyD = Poly<double>;
using PolyQ = Poly<Rational>;

inline PolyD to_double_poly(const PolyQ& p) {
    PolyD out;
    out.center = to_double(p.center);
    out.coeffs.reserve(p.coeffs.size());
    for (const auto& c : p.coeffs) out.coeffs.push_back(to_double(c));
    return out;
}

// Order of vanishing of p at its center (number of leading zero coefficients).
template <class T>
std::size_t vanishing_order_at_center(const Poly<T>& p) {
    for (std::size_t j = 0; j < p.coeffs.size(); ++j)
        if (!(p.coeffs[j] == T{})) return j;
    return p.coeffs.size();
}

}  // namespace freelab
