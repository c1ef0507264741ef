#include "freelab/rational.hpp"

#include <sstream>

namespace freelab {

Rational rational_from_string(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) fail(ErrorCode::BadInput, "empty rational literal");
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        BigInt num(t.substr(0, slash));
        BigInt den(t.substr(slash + 1));
        if (den == 0) fail(ErrorCode::BadInput, "zero denominator in '" + s + "'");
        return Rational(num, den);
    }
    auto dot = t.find('.');
    if (dot == std::string::npos) return Rational(BigInt(t));
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    std::size_t frac_len = t.size() - dot - 1;
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(BigInt(digits), den);
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

static std::optional<BigInt> isqrt_exact(const BigInt& n) {
    if (n < 0) return std::nullopt;
    if (n == 0) return BigInt(0);
    BigInt root = boost::multiprecision::sqrt(n);
    // sqrt() floors; widen by one in each direction against rounding in the backend.
    for (BigInt cand = root - 1; cand <= root + 1; ++cand)
        if (cand >= 0 && cand * cand == n) return cand;
    return std::nullopt;
}

std::optional<Rational> rational_sqrt_exact(const Rational& r) {
    if (r < 0) return std::nullopt;
    auto n = isqrt_exact(numerator(r));
    if (!n) return std::nullopt;
    auto d = isqrt_exact(denominator(r));
    if (!d) return std::nullopt;
    return Rational(*n, *d);
}

}  // namespace freelab
