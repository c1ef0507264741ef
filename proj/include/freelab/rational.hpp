#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "freelab/common.hpp"

namespace freelab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_string(const std::string& s);  // "p/q" or integer or decimal
std::string rational_to_string(const Rational& r);

// Exact square root when the argument is a perfect square of rationals.
std::optional<Rational> rational_sqrt_exact(const Rational& r);

inline Rational rational_pow(Rational base, long e) {
    Rational acc = 1;
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return inv ? Rational(1) / acc : acc;
}

}  // namespace freelab
