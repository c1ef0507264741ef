#include "freelab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "freelab/kernels.hpp"
#include "freelab/quadrature.hpp"

namespace freelab {

namespace {

constexpr double kMassTol = 1e-12;

double wrap_angle(double th) {
    th = std::fmod(th, 2 * kPi);
    if (th < 0) th += 2 * kPi;
    return th;
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityPiece
// ---------------------------------------------------------------------------

DensityPiece DensityPiece::polynomial(double a, double b, PolyD p) {
    DensityPiece d;
    d.a = a;
    d.b = b;
    d.form = PieceForm::Polynomial;
    d.poly = std::move(p);
    return d;
}

DensityPiece DensityPiece::polynomial_exact(const Rational& a, const Rational& b, PolyQ p) {
    DensityPiece d;
    d.a = to_double(a);
    d.b = to_double(b);
    d.form = PieceForm::Polynomial;
    d.poly = to_double_poly(p);
    d.exact = ExactPiece{a, b, std::move(p)};
    return d;
}

DensityPiece DensityPiece::semicircle(double mean, double variance) {
    DensityPiece d;
    d.form = PieceForm::Semicircle;
    d.p1 = mean;
    d.p2 = variance;
    d.a = mean - 2 * std::sqrt(variance);
    d.b = mean + 2 * std::sqrt(variance);
    return d;
}

DensityPiece DensityPiece::arcsine(double a, double b) {
    DensityPiece d;
    d.form = PieceForm::Arcsine;
    d.a = d.p1 = a;
    d.b = d.p2 = b;
    return d;
}

DensityPiece DensityPiece::free_poisson(double rate, double scale) {
    DensityPiece d;
    d.form = PieceForm::FreePoisson;
    d.p1 = rate;
    d.p2 = scale;
    double s = std::sqrt(rate);
    d.a = scale * (1 - s) * (1 - s);
    d.b = scale * (1 + s) * (1 + s);
    return d;
}

DensityPiece DensityPiece::uniform(double a, double b) {
    DensityPiece d;
    d.form = PieceForm::Uniform;
    d.a = d.p1 = a;
    d.b = d.p2 = b;
    return d;
}

double DensityPiece::mass() const {
    switch (form) {
        case PieceForm::Polynomial:
            if (exact) return to_double(exact->poly.integral(exact->a, exact->b));
            return poly.integral(a, b);  // inverted pieces carry the same mass as poly
        case PieceForm::Semicircle:
        case PieceForm::Arcsine:
            return 1.0;
        case PieceForm::FreePoisson:
            return std::min(1.0, p1);
        case PieceForm::Uniform:
            return 1.0;
    }
    return 0.0;
}

double DensityPiece::density_at(double t) const {
    switch (form) {
        case PieceForm::Polynomial: {
            if (inverted) {
                double lo = 1.0 / b, hi = 1.0 / a;
                if (t < lo || t > hi) return 0.0;
                double u = 1.0 / t;
                return poly.eval(u) / (t * t);
            }
            if (t < a || t > b) return 0.0;
            return poly.eval(t);
        }
        case PieceForm::Semicircle: {
            double d2 = 4 * p2 - (t - p1) * (t - p1);
            return d2 > 0 ? std::sqrt(d2) / (2 * kPi * p2) : 0.0;
        }
        case PieceForm::Arcsine: {
            if (t <= a || t >= b) return 0.0;
            return 1.0 / (kPi * std::sqrt((t - a) * (b - t)));
        }
        case PieceForm::FreePoisson: {
            if (t <= a || t >= b || t <= 0) return 0.0;
            return std::sqrt((b - t) * (t - a)) / (2 * kPi * p2 * t);
        }
        case PieceForm::Uniform:
            return (t >= a && t <= b) ? 1.0 / (b - a) : 0.0;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// MeasureSpec basics
// ---------------------------------------------------------------------------

double MeasureSpec::total_mass() const {
    double m = infinity_mass;
    for (const auto& at : atoms) m += at.mass;
    for (const auto& p : pieces) m += p.mass();
    return m;
}

double MeasureSpec::atom_mass_at(double pos, double tol) const {
    double m = 0.0;
    for (const auto& at : atoms) {
        double d = carrier == Carrier::Circle
                       ? std::abs(std::remainder(at.pos - pos, 2 * kPi))
                       : std::abs(at.pos - pos);
        if (d <= tol) m += at.mass;
    }
    return m;
}

bool MeasureSpec::is_point_mass() const {
    return pieces.empty() && infinity_mass == 0.0 && atoms.size() == 1;
}

double MeasureSpec::distance_to_pieces(double x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : pieces) {
        double lo = p.a, hi = p.b;
        if (p.form == PieceForm::Polynomial && p.inverted) {
            lo = 1.0 / p.b;
            hi = 1.0 / p.a;
        }
        if (x >= lo && x <= hi) return 0.0;
        d = std::min(d, std::min(std::abs(x - lo), std::abs(x - hi)));
    }
    return d;
}

MeasureSpec MeasureSpec::point(Carrier c, double pos, double mass) {
    MeasureSpec m;
    m.carrier = c;
    m.atoms.push_back({c == Carrier::Circle ? wrap_angle(pos) : pos, mass});
    return m;
}

MeasureSpec MeasureSpec::bernoulli(double a) {
    MeasureSpec m;
    m.carrier = Carrier::RealLine;
    m.atoms.push_back({-a, 0.5});
    m.atoms.push_back({a, 0.5});
    return m;
}

MeasureSpec MeasureSpec::semicircle_law(double mean, double variance) {
    MeasureSpec m;
    m.carrier = Carrier::RealLine;
    m.pieces.push_back(DensityPiece::semicircle(mean, variance));
    return m;
}

MeasureSpec MeasureSpec::arcsine_law(double a, double b) {
    MeasureSpec m;
    m.carrier = Carrier::RealLine;
    m.pieces.push_back(DensityPiece::arcsine(a, b));
    return m;
}

// ---------------------------------------------------------------------------
// validate / dual / affine / moment
// ---------------------------------------------------------------------------

MeasureSpec validate(const MeasureSpec& m, bool probability, bool allow_infinity) {
    if (m.infinity_mass < 0) fail(ErrorCode::NegativeMass, "negative mass at infinity");
    if (m.infinity_mass > 0 && !(allow_infinity && m.carrier == Carrier::PositiveHalfLine))
        fail(ErrorCode::OffCarrierAtom, "mass at infinity outside sigma-generator use");
    for (const auto& at : m.atoms) {
        if (at.mass < 0) fail(ErrorCode::NegativeMass, "negative atom mass");
        if (m.carrier == Carrier::PositiveHalfLine && at.pos < 0)
            fail(ErrorCode::OffCarrierAtom, "atom below 0 on the positive half-line");
        if (!std::isfinite(at.pos)) fail(ErrorCode::OffCarrierAtom, "non-finite atom position");
    }
    std::vector<std::pair<double, double>> spans;
    for (const auto& p : m.pieces) {
        if (!(p.b > p.a)) fail(ErrorCode::BadInput, "piece with empty interval");
        if (m.carrier == Carrier::PositiveHalfLine && p.a < 0)
            fail(ErrorCode::OffCarrierAtom, "piece below 0 on the positive half-line");
        if (p.form == PieceForm::Polynomial) {
            for (int i = 0; i < 1024; ++i) {
                double t = p.a + (p.b - p.a) * i / 1023.0;
                if (p.poly.eval(t) < -1e-9) fail(ErrorCode::NegativeMass, "piece density negative");
            }
        } else if (p.p2 <= 0 || (p.form == PieceForm::FreePoisson && p.p1 <= 0)) {
            fail(ErrorCode::BadInput, "family parameter out of range");
        }
        double lo = p.a, hi = p.b;
        if (p.form == PieceForm::Polynomial && p.inverted) {
            lo = 1.0 / p.b;
            hi = 1.0 / p.a;
        }
        spans.emplace_back(lo, hi);
    }
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 0; i + 1 < spans.size(); ++i)
        if (spans[i + 1].first < spans[i].second - kMassTol)
            fail(ErrorCode::OverlappingPieces, "density pieces overlap");
    if (probability && std::abs(m.total_mass() - 1.0) > kMassTol)
        fail(ErrorCode::MassNotOne, "total mass differs from 1");
    return m;
}

MeasureSpec dual_measure(const MeasureSpec& m, bool allow_infinity) {
    if (m.carrier == Carrier::RealLine)
        fail(ErrorCode::UnsupportedCarrier, "dual is defined on R+ and the circle");
    MeasureSpec out;
    out.carrier = m.carrier;
    if (m.carrier == Carrier::Circle) {
        for (const auto& at : m.atoms) out.atoms.push_back({wrap_angle(-at.pos), at.mass});
        for (const auto& p : m.pieces) {
            if (p.form != PieceForm::Polynomial)
                fail(ErrorCode::BadInput, "circle dual supports polynomial pieces only");
            DensityPiece q = p;
            q.a = wrap_angle(-p.b);
            q.b = q.a + (p.b - p.a);
            q.poly.center = (2 * kPi) - p.poly.center;
            for (std::size_t j = 1; j < q.poly.coeffs.size(); j += 2) q.poly.coeffs[j] = -q.poly.coeffs[j];
            out.pieces.push_back(std::move(q));
        }
        return out;
    }
    // PositiveHalfLine: pushforward under t -> 1/t.
    out.infinity_mass = 0.0;
    for (const auto& at : m.atoms) {
        if (at.pos == 0.0) {
            if (!allow_infinity) fail(ErrorCode::AtomAtZero, "atom at 0 has no finite dual");
            out.infinity_mass += at.mass;  // convention 1/0 = +inf
        } else {
            out.atoms.push_back({1.0 / at.pos, at.mass});
        }
    }
    if (m.infinity_mass > 0) out.atoms.push_back({0.0, m.infinity_mass});
    for (const auto& p : m.pieces) {
        if (p.form != PieceForm::Polynomial)
            fail(ErrorCode::BadInput, "dual supports polynomial pieces only");
        if (p.a <= 0) fail(ErrorCode::AtomAtZero, "piece touching 0 has no finite dual");
        DensityPiece q = p;
        q.inverted = !p.inverted;
        out.pieces.push_back(std::move(q));
    }
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const Atom& x, const Atom& y) { return x.pos < y.pos; });
    return out;
}

MeasureSpec affine_map(const MeasureSpec& m, double scale, double shift) {
    if (scale == 0 || !std::isfinite(scale)) fail(ErrorCode::InvalidScale, "scale must be nonzero");
    if (m.carrier != Carrier::RealLine && shift != 0.0)
        fail(ErrorCode::ShiftNotAllowed, "only pure dilation/rotation off the real line");
    if (m.carrier == Carrier::PositiveHalfLine && scale < 0)
        fail(ErrorCode::InvalidScale, "negative dilation leaves the positive half-line");
    MeasureSpec out;
    out.carrier = m.carrier;
    out.infinity_mass = m.infinity_mass;
    if (m.carrier == Carrier::Circle) {
        if (scale != 1.0 && scale != -1.0)
            fail(ErrorCode::InvalidScale, "circle dilation must be a rotation by +-1");
        for (const auto& at : m.atoms)
            out.atoms.push_back({wrap_angle(at.pos + (scale < 0 ? kPi : 0.0)), at.mass});
        for (const auto& p : m.pieces) {
            DensityPiece q = p;
            if (scale < 0) {
                q.a = p.a + kPi;
                q.b = p.b + kPi;
                q.poly.center = p.poly.center + kPi;
            }
            out.pieces.push_back(q);
        }
        return out;
    }
    for (const auto& at : m.atoms) out.atoms.push_back({scale * at.pos + shift, at.mass});
    for (const auto& p : m.pieces) {
        DensityPiece q;
        switch (p.form) {
            case PieceForm::Polynomial: {
                if (p.inverted) fail(ErrorCode::BadInput, "affine map of inverted piece unsupported");
                PolyD np;
                np.center = scale * p.poly.center + shift;
                np.coeffs.resize(p.poly.coeffs.size());
                double sj = 1.0;
                for (std::size_t j = 0; j < p.poly.coeffs.size(); ++j) {
                    np.coeffs[j] = p.poly.coeffs[j] / (sj * std::abs(scale));
                    sj *= scale;
                }
                double na = scale * p.a + shift, nb = scale * p.b + shift;
                q = DensityPiece::polynomial(std::min(na, nb), std::max(na, nb), std::move(np));
                break;
            }
            case PieceForm::Semicircle:
                q = DensityPiece::semicircle(scale * p.p1 + shift, scale * scale * p.p2);
                break;
            case PieceForm::Arcsine: {
                double na = scale * p.p1 + shift, nb = scale * p.p2 + shift;
                q = DensityPiece::arcsine(std::min(na, nb), std::max(na, nb));
                break;
            }
            case PieceForm::FreePoisson:
                if (scale < 0) fail(ErrorCode::InvalidScale, "free-Poisson piece needs scale > 0");
                if (shift != 0) fail(ErrorCode::ShiftNotAllowed, "free-Poisson piece shift unsupported");
                q = DensityPiece::free_poisson(p.p1, scale * p.p2);
                break;
            case PieceForm::Uniform: {
                double na = scale * p.p1 + shift, nb = scale * p.p2 + shift;
                q = DensityPiece::uniform(std::min(na, nb), std::max(na, nb));
                break;
            }
        }
        out.pieces.push_back(std::move(q));
    }
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const Atom& x, const Atom& y) { return x.pos < y.pos; });
    return out;
}

namespace transforms {
double integrate_function(const MeasureSpec& m, const std::function<double(double)>& f);
}

double moment(const MeasureSpec& m, int k) {
    if (m.carrier == Carrier::Circle) fail(ErrorCode::UnsupportedCarrier, "use moment_circle");
    if (m.infinity_mass > 0 && k > 0) fail(ErrorCode::DivergentMoment, "mass at infinity");
    double acc = (k == 0) ? m.infinity_mass : 0.0;
    for (const auto& at : m.atoms) acc += at.mass * std::pow(at.pos, k);
    for (const auto& p : m.pieces) {
        if (p.form == PieceForm::Polynomial && !p.inverted) {
            // integrate t^k * poly exactly
            PolyD tk;
            tk.center = p.poly.center;
            tk.coeffs.assign(static_cast<std::size_t>(k) + 1, 0.0);
            // t^k = ((t-c)+c)^k binomial
            double c = p.poly.center;
            double binom = 1.0;
            for (int j = 0; j <= k; ++j) {
                tk.coeffs[j] = binom * std::pow(c, k - j);
                binom = binom * (k - j) / (j + 1);
            }
            PolyD prod = tk * p.poly;
            acc += prod.integral(p.a, p.b);
        } else {
            MeasureSpec single;
            single.carrier = m.carrier;
            single.pieces.push_back(p);
            acc += transforms::integrate_function(single,
                                                  [k](double t) { return std::pow(t, k); });
        }
    }
    return acc;
}

Complex moment_circle(const MeasureSpec& m, int k) {
    if (m.carrier != Carrier::Circle) fail(ErrorCode::UnsupportedCarrier, "circle only");
    Complex acc{};
    for (const auto& at : m.atoms) acc += at.mass * std::polar(1.0, k * at.pos);
    for (const auto& p : m.pieces) {
        auto f = [&](const double* th, std::size_t n, Complex* out) {
            std::vector<double> dens(n);
            kernels::active().horner(th, n, p.poly.coeffs.data(), p.poly.coeffs.size(),
                                     p.poly.center, dens.data());
            for (std::size_t i = 0; i < n; ++i) out[i] = dens[i] * std::polar(1.0, k * th[i]);
        };
        acc += quad::integrate(f, p.a, p.b).value;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// transform internals
// ---------------------------------------------------------------------------

namespace transforms {
namespace {

// log((z-a)/(z-b)) with the from-H branch at the cut [a,b].
Complex log_cr_from_h(Complex z, double a, double b) {
    if (z.imag() > 0.0) return std::log(z - a) - std::log(z - b);
    double x = z.real();
    if (x < a) return Complex(std::log((a - x) / (b - x)), 0.0);
    if (x > b) return Complex(std::log((x - a) / (x - b)), 0.0);
    return Complex(std::log((x - a) / (b - x)), -kPi);
}

// sqrt((z-a)(z-b)) continued from H, ~ z at infinity.
Complex sqrt_edges_from_h(Complex z, double a, double b) {
    Complex za = z - a, zb = z - b;
    if (z.imag() == 0.0) {
        za = Complex(za.real(), 0.0);
        zb = Complex(zb.real(), 0.0);
        // boundary from above: negative reals get +i sqrt
        Complex sa = za.real() >= 0 ? Complex(std::sqrt(za.real()), 0)
                                    : Complex(0, std::sqrt(-za.real()));
        Complex sb = zb.real() >= 0 ? Complex(std::sqrt(zb.real()), 0)
                                    : Complex(0, std::sqrt(-zb.real()));
        return sa * sb;
    }
    return std::sqrt(za) * std::sqrt(zb);
}

// Q(z) = integral over [a,b] of (p(t)-p(z))/(t-z) dt; polynomial of degree deg-1.
PolyD cauchy_remainder_poly(const PolyD& p, double a, double b) {
    PolyD q;
    q.center = p.center;
    std::size_t deg = p.coeffs.size();
    if (deg <= 1) {
        q.coeffs = {0.0};
        return q;
    }
    double ua = a - p.center, ub = b - p.center;
    std::vector<double> M(deg);  // M[k] = int u^k du over [ua,ub]
    double pa = ua, pb = ub;
    for (std::size_t k = 0; k < deg; ++k) {
        M[k] = (pb - pa) / static_cast<double>(k + 1);
        pa *= ua;
        pb *= ub;
    }
    q.coeffs.assign(deg - 1, 0.0);
    for (std::size_t mdeg = 0; mdeg + 1 < deg; ++mdeg)
        for (std::size_t j = mdeg + 1; j < deg; ++j) q.coeffs[mdeg] += p.coeffs[j] * M[j - 1 - mdeg];
    return q;
}

// Cauchy transform of one polynomial piece, from-H branch (valid Im z >= 0).
Complex cauchy_poly_piece_from_h(const DensityPiece& p, Complex z) {
    Complex L = log_cr_from_h(z, p.a, p.b);
    PolyD q = cauchy_remainder_poly(p.poly, p.a, p.b);
    return p.poly.eval(z) * L - q.eval(z);
}

Complex conj_eval(Complex w) { return std::conj(w); }

// Piece Cauchy transform continued from the lower half-plane (conjugate branch).
Complex cauchy_poly_piece_from_lower(const DensityPiece& p, Complex z) {
    return conj_eval(cauchy_poly_piece_from_h(p, std::conj(z)));
}

Complex cauchy_piece_from_h(const DensityPiece& p, Complex z);

Complex cauchy_inverted_piece_from_h(const DensityPiece& p, Complex z) {
    // density p0(1/x)/x^2 on [1/b,1/a]; G(z) = (mass - (1/z) Gp(1/z)) / z
    double mass = p.poly.integral(p.a, p.b);
    Complex w = 1.0 / z;
    DensityPiece base = p;
    base.inverted = false;
    Complex gp = (w.imag() > 0.0) ? cauchy_poly_piece_from_h(base, w)
                                  : cauchy_poly_piece_from_lower(base, w);
    return (mass - w * gp) / z;
}

Complex cauchy_family_from_h(const DensityPiece& p, Complex z) {
    switch (p.form) {
        case PieceForm::Semicircle: {
            Complex w = z - p.p1;
            Complex s = sqrt_edges_from_h(z, p.a, p.b);
            return (w - s) / (2 * p.p2);
        }
        case PieceForm::Arcsine:
            return 1.0 / sqrt_edges_from_h(z, p.a, p.b);
        case PieceForm::FreePoisson: {
            double lam = p.p1, s = p.p2;
            Complex sq = sqrt_edges_from_h(z, p.a, p.b);
            return (z + s * (1 - lam) - sq) / (2.0 * s * z);
        }
        case PieceForm::Uniform:
            return log_cr_from_h(z, p.a, p.b) / (p.b - p.a);
        default:
            fail(ErrorCode::BadInput, "not a family piece");
    }
}

Complex cauchy_piece_from_h(const DensityPiece& p, Complex z) {
    if (p.form == PieceForm::Polynomial)
        return p.inverted ? cauchy_inverted_piece_from_h(p, z) : cauchy_poly_piece_from_h(p, z);
    return cauchy_family_from_h(p, z);
}

Complex atoms_cauchy(const MeasureSpec& m, Complex z) {
    std::vector<double> t, w;
    t.reserve(m.atoms.size());
    w.reserve(m.atoms.size());
    for (const auto& at : m.atoms) {
        t.push_back(at.pos);
        w.push_back(at.mass);
    }
    return kernels::active().accum_cauchy(t.data(), w.data(), t.size(), z);
}

}  // namespace

Complex cauchy_from_h(const MeasureSpec& m, Complex z) {
    if (m.carrier == Carrier::Circle) fail(ErrorCode::UnsupportedCarrier, "circle Cauchy unused");
    Complex acc = atoms_cauchy(m, z);
    for (const auto& p : m.pieces) acc += cauchy_piece_from_h(p, z);
    return acc;
}

Complex cauchy(const MeasureSpec& m, Complex z) {
    if (z.imag() >= 0.0) return cauchy_from_h(m, z);
    return std::conj(cauchy_from_h(m, std::conj(z)));
}

Complex f_from_h(const MeasureSpec& m, Complex z) {
    Complex g = cauchy_from_h(m, z);
    if (std::abs(g) < 1e-300) fail(ErrorCode::TransformUndefined, "Cauchy transform vanishes");
    return 1.0 / g;
}

Complex psi_from_h(const MeasureSpec& m, Complex z) {
    if (m.carrier == Carrier::Circle) {
        // psi on the disk via direct sums/quadrature
        std::vector<double> tc, ts, w;
        for (const auto& at : m.atoms) {
            tc.push_back(std::cos(at.pos));
            ts.push_back(std::sin(at.pos));
            w.push_back(at.mass);
        }
        Complex acc = kernels::active().accum_psi_circle(tc.data(), ts.data(), w.data(), tc.size(), z);
        for (const auto& p : m.pieces) {
            auto f = [&](const double* th, std::size_t n, Complex* out) {
                std::vector<double> dens(n);
                kernels::active().horner(th, n, p.poly.coeffs.data(), p.poly.coeffs.size(),
                                         p.poly.center, dens.data());
                for (std::size_t i = 0; i < n; ++i) {
                    Complex T = std::polar(1.0, th[i]);
                    out[i] = dens[i] * T * z / (1.0 - T * z);
                }
            };
            acc += quad::integrate(f, p.a, p.b).value;
        }
        return acc;
    }
    if (z == 0.0) return 0.0;
    double mass = m.total_mass();
    Complex w = 1.0 / z;
    Complex g;
    if (w.imag() > 0.0)
        g = cauchy_from_h(m, w);
    else if (w.imag() < 0.0)
        g = std::conj(cauchy_from_h(m, std::conj(w)));
    else if (z.imag() >= 0.0)  // boundary from H: 1/z approaches the axis from below
        g = std::conj(cauchy_from_h(m, w));
    else
        g = cauchy_from_h(m, w);
    Complex val = -mass + w * g;
    if (m.infinity_mass > 0) val += m.infinity_mass * (-1.0);  // tz/(1-tz) -> -1 at t=inf
    return val;
}

Complex psi(const MeasureSpec& m, Complex z) {
    if (m.carrier == Carrier::Circle || z.imag() >= 0.0) return psi_from_h(m, z);
    return std::conj(psi_from_h(m, std::conj(z)));
}

Complex eta_from_h(const MeasureSpec& m, Complex z) {
    Complex ps = psi_from_h(m, z);
    Complex den = 1.0 + ps;
    if (std::abs(den) < 1e-300) fail(ErrorCode::TransformUndefined, "1 + psi vanishes");
    return ps / den;
}

Complex eta(const MeasureSpec& m, Complex z) {
    Complex ps = psi(m, z);
    Complex den = 1.0 + ps;
    if (std::abs(den) < 1e-300) fail(ErrorCode::TransformUndefined, "1 + psi vanishes");
    return ps / den;
}

Complex reciprocal_f(const MeasureSpec& m, Complex z) {
    Complex g = cauchy(m, z);
    if (std::abs(g) < 1e-300) fail(ErrorCode::TransformUndefined, "Cauchy transform vanishes");
    return 1.0 / g;
}

Complex herglotz(const MeasureSpec& m, Complex z) {
    if (m.carrier != Carrier::Circle) fail(ErrorCode::UnsupportedCarrier, "Herglotz is circular");
    std::vector<double> tc, ts, w;
    for (const auto& at : m.atoms) {
        tc.push_back(std::cos(at.pos));
        ts.push_back(std::sin(at.pos));
        w.push_back(at.mass);
    }
    Complex acc = kernels::active().accum_herglotz(tc.data(), ts.data(), w.data(), tc.size(), z);
    for (const auto& p : m.pieces) {
        auto f = [&](const double* th, std::size_t n, Complex* out) {
            std::vector<double> dens(n);
            kernels::active().horner(th, n, p.poly.coeffs.data(), p.poly.coeffs.size(),
                                     p.poly.center, dens.data());
            for (std::size_t i = 0; i < n; ++i) {
                Complex T = std::polar(1.0, th[i]);
                out[i] = dens[i] * (T + z) / (T - z);
            }
        };
        acc += quad::integrate(f, p.a, p.b).value;
    }
    return acc;
}

Complex cauchy_by_quadrature(const MeasureSpec& m, Complex z) {
    Complex acc = atoms_cauchy(m, z);
    for (const auto& p : m.pieces) {
        auto f = [&](const double* t, std::size_t n, Complex* out) {
            for (std::size_t i = 0; i < n; ++i) out[i] = p.density_at(t[i]) / (z - t[i]);
        };
        double lo = p.a, hi = p.b;
        if (p.form == PieceForm::Polynomial && p.inverted) {
            lo = 1.0 / p.b;
            hi = 1.0 / p.a;
        }
        acc += quad::integrate(f, lo, hi).value;
    }
    return acc;
}

Complex psi_by_quadrature(const MeasureSpec& m, Complex z) {
    Complex acc{};
    std::vector<double> t, w;
    for (const auto& at : m.atoms) {
        t.push_back(at.pos);
        w.push_back(at.mass);
    }
    acc = kernels::active().accum_psi(t.data(), w.data(), t.size(), z);
    for (const auto& p : m.pieces) {
        auto f = [&](const double* tt, std::size_t n, Complex* out) {
            for (std::size_t i = 0; i < n; ++i)
                out[i] = p.density_at(tt[i]) * tt[i] * z / (1.0 - tt[i] * z);
        };
        double lo = p.a, hi = p.b;
        if (p.form == PieceForm::Polynomial && p.inverted) {
            lo = 1.0 / p.b;
            hi = 1.0 / p.a;
        }
        acc += quad::integrate(f, lo, hi).value;
    }
    if (m.infinity_mass > 0) acc += m.infinity_mass * (-1.0);
    return acc;
}

double poisson_sum(const MeasureSpec& sigma, Complex z) {
    std::vector<double> t, w;
    for (const auto& at : sigma.atoms) {
        t.push_back(at.pos);
        w.push_back(at.mass);
    }
    double acc = kernels::active().accum_poisson(t.data(), w.data(), t.size(), z);
    for (const auto& p : sigma.pieces) {
        auto f = [&](const double* tt, std::size_t n, Complex* out) {
            for (std::size_t i = 0; i < n; ++i) {
                double dr = z.real() - tt[i];
                out[i] = p.density_at(tt[i]) * (1.0 + tt[i] * tt[i]) /
                         (dr * dr + z.imag() * z.imag());
            }
        };
        double lo = p.a, hi = p.b;
        if (p.form == PieceForm::Polynomial && p.inverted) {
            lo = 1.0 / p.b;
            hi = 1.0 / p.a;
        }
        std::vector<double> splits;
        if (z.imag() == 0.0 && z.real() > lo && z.real() < hi) splits.push_back(z.real());
        quad::Options opt;
        opt.divergence_threshold = 1e12;
        auto r = quad::integrate_split(f, lo, hi, splits, opt);
        if (r.divergent) return std::numeric_limits<double>::infinity();
        acc += r.value.real();
    }
    acc += sigma.infinity_mass;
    return acc;
}

double poisson_sum_circle(const MeasureSpec& sigma, Complex z) {
    std::vector<double> tc, ts, w;
    for (const auto& at : sigma.atoms) {
        tc.push_back(std::cos(at.pos));
        ts.push_back(std::sin(at.pos));
        w.push_back(at.mass);
    }
    double acc = kernels::active().accum_poisson_circle(tc.data(), ts.data(), w.data(), tc.size(), z);
    for (const auto& p : sigma.pieces) {
        auto f = [&](const double* th, std::size_t n, Complex* out) {
            for (std::size_t i = 0; i < n; ++i) {
                Complex T = std::polar(1.0, th[i]);
                double d = std::norm(T - z);
                out[i] = p.poly.eval(th[i]) / d;
            }
        };
        quad::Options opt;
        opt.divergence_threshold = 1e12;
        auto r = quad::integrate(f, p.a, p.b, opt);
        if (r.divergent) return std::numeric_limits<double>::infinity();
        acc += r.value.real();
    }
    return acc;
}

double integrate_function(const MeasureSpec& m, const std::function<double(double)>& f) {
    double acc = 0.0;
    for (const auto& at : m.atoms) acc += at.mass * f(at.pos);
    for (const auto& p : m.pieces) {
        switch (p.form) {
            case PieceForm::Polynomial: {
                double lo = p.a, hi = p.b;
                bool inv = p.inverted;
                auto g = [&](const double* t, std::size_t n, Complex* out) {
                    for (std::size_t i = 0; i < n; ++i)
                        out[i] = p.poly.eval(t[i]) * (inv ? f(1.0 / t[i]) : f(t[i]));
                };
                acc += quad::integrate(g, lo, hi).value.real();
                break;
            }
            case PieceForm::Semicircle: {
                double mte = p.p1, sd = 2 * std::sqrt(p.p2);
                auto g = [&](const double* ph, std::size_t n, Complex* out) {
                    for (std::size_t i = 0; i < n; ++i) {
                        double c = std::cos(ph[i]);
                        out[i] = (2.0 / kPi) * c * c * f(mte + sd * std::sin(ph[i]));
                    }
                };
                acc += quad::integrate(g, -kPi / 2, kPi / 2).value.real();
                break;
            }
            case PieceForm::Arcsine: {
                double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
                auto g = [&](const double* ph, std::size_t n, Complex* out) {
                    for (std::size_t i = 0; i < n; ++i)
                        out[i] = f(mid + half * std::sin(ph[i])) / kPi;
                };
                acc += quad::integrate(g, -kPi / 2, kPi / 2).value.real();
                break;
            }
            case PieceForm::FreePoisson: {
                double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
                auto g = [&](const double* ph, std::size_t n, Complex* out) {
                    for (std::size_t i = 0; i < n; ++i) {
                        double c = std::cos(ph[i]);
                        double t = mid + half * std::sin(ph[i]);
                        out[i] = half * half * c * c / (2 * kPi * p.p2 * t) * f(t);
                    }
                };
                acc += quad::integrate(g, -kPi / 2, kPi / 2).value.real();
                break;
            }
            case PieceForm::Uniform: {
                auto g = [&](const double* t, std::size_t n, Complex* out) {
                    for (std::size_t i = 0; i < n; ++i) out[i] = f(t[i]) / (p.b - p.a);
                };
                acc += quad::integrate(g, p.a, p.b).value.real();
                break;
            }
        }
    }
    return acc;
}

}  // namespace transforms

// ---------------------------------------------------------------------------
// eval_transform (public op with carrier guards)
// ---------------------------------------------------------------------------

Complex eval_transform(const MeasureSpec& m, Transform which, Complex z) {
    switch (m.carrier) {
        case Carrier::RealLine:
            if (z.imag() == 0.0) fail(ErrorCode::PointOnCarrier, "z on the real line");
            break;
        case Carrier::PositiveHalfLine:
            if (z.imag() == 0.0 && z.real() >= 0.0)
                fail(ErrorCode::PointOnCarrier, "z on the positive half-line");
            break;
        case Carrier::Circle:
            if (which == Transform::CauchyG || which == Transform::ReciprocalF) {
                if (std::abs(std::abs(z) - 1.0) < 1e-15)
                    fail(ErrorCode::PointOnCarrier, "z on the unit circle");
            } else if (std::abs(z) >= 1.0) {
                fail(ErrorCode::PointOnCarrier, "z outside the open disk");
            }
            break;
    }
    switch (which) {
        case Transform::CauchyG:
            if (m.carrier == Carrier::Circle) fail(ErrorCode::UnsupportedCarrier, "G on R/R+ only");
            return transforms::cauchy(m, z);
        case Transform::ReciprocalF:
            if (m.carrier == Carrier::Circle) fail(ErrorCode::UnsupportedCarrier, "F on R/R+ only");
            return transforms::reciprocal_f(m, z);
        case Transform::PsiMoment:
            return transforms::psi(m, z);
        case Transform::Eta:
            return transforms::eta(m, z);
        case Transform::HerglotzH:
            if (m.carrier != Carrier::Circle)
                fail(ErrorCode::PointOnCarrier, "Herglotz transform is circle-only");
            return transforms::herglotz(m, z);
    }
    fail(ErrorCode::BadInput, "unknown transform");
}

// ---------------------------------------------------------------------------
// exact rational-kernel integration
// ---------------------------------------------------------------------------

std::optional<Rational> exact_integral_rational_kernel(const MeasureSpec& m, const PolyQ& num,
                                                       const Rational& pole, int pole_order) {
    Rational acc = 0;
    if (m.infinity_mass != 0.0) return std::nullopt;
    // atoms: need exact positions
    if (!m.atoms.empty()) {
        if (!m.exact_atoms || m.exact_atoms->size() != m.atoms.size()) return std::nullopt;
        for (const auto& [pos, mass] : *m.exact_atoms) {
            Rational val = num.eval(pos);
            if (pole_order > 0) {
                Rational d = pos - pole;
                if (d == 0) return std::nullopt;  // divergent at the atom
                val /= rational_pow(d, pole_order);
            }
            acc += mass * val;
        }
    }
    for (const auto& p : m.pieces) {
        if (p.form != PieceForm::Polynomial || p.inverted || !p.exact) return std::nullopt;
        const ExactPiece& e = *p.exact;
        PolyQ prod = num.recentered(e.poly.center) * e.poly;
        PolyQ about_pole = prod.recentered(pole);
        bool pole_inside = (pole >= e.a && pole <= e.b);
        Rational ua = e.a - pole, ub = e.b - pole;
        for (std::size_t j = 0; j < about_pole.coeffs.size(); ++j) {
            const Rational& d = about_pole.coeffs[j];
            long expo = static_cast<long>(j) - pole_order;
            if (d == 0) continue;
            if (expo == -1) return std::nullopt;  // log term
            if (expo < -1 && pole_inside) return std::nullopt;  // divergent
            acc += d * (rational_pow(ub, expo + 1) - rational_pow(ua, expo + 1)) /
                   Rational(expo + 1);
        }
    }
    return acc;
}

}  // namespace freelab
