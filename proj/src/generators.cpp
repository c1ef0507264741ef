#include "freelab/generators.hpp"

#include <cmath>

namespace freelab {

namespace {

Carrier carrier_of(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::AdditiveReal: return Carrier::RealLine;
        case GeneratorKind::MultiplicativePositive: return Carrier::PositiveHalfLine;
        case GeneratorKind::MultiplicativeCircle: return Carrier::Circle;
    }
    return Carrier::RealLine;
}

void check_domain(GeneratorKind kind, Complex z) {
    switch (kind) {
        case GeneratorKind::AdditiveReal:
            if (z.imag() < 0) fail(ErrorCode::DomainViolation, "z below the closed half-plane");
            break;
        case GeneratorKind::MultiplicativePositive:
            break;  // C \ R+, closure from H allowed everywhere
        case GeneratorKind::MultiplicativeCircle:
            if (std::abs(z) > 1.0 + 1e-12) fail(ErrorCode::DomainViolation, "z outside the disk");
            break;
    }
}

}  // namespace

GeneratorSpec GeneratorSpec::additive(double gamma, MeasureSpec sigma) {
    GeneratorSpec g;
    g.kind = GeneratorKind::AdditiveReal;
    g.gamma = gamma;
    g.sigma = std::move(sigma);
    g.sigma.carrier = Carrier::RealLine;
    return g;
}

GeneratorSpec GeneratorSpec::positive(double gamma, MeasureSpec sigma) {
    GeneratorSpec g;
    g.kind = GeneratorKind::MultiplicativePositive;
    g.gamma = gamma;
    g.sigma = std::move(sigma);
    g.sigma.carrier = Carrier::PositiveHalfLine;
    return g;
}

GeneratorSpec GeneratorSpec::circle(double gamma_angle, MeasureSpec sigma) {
    GeneratorSpec g;
    g.kind = GeneratorKind::MultiplicativeCircle;
    g.gamma = gamma_angle;
    g.sigma = std::move(sigma);
    g.sigma.carrier = Carrier::Circle;
    return g;
}

GeneratorSpec GeneratorSpec::semicircle_type(double gamma, double beta) {
    MeasureSpec s;
    s.carrier = Carrier::RealLine;
    s.atoms.push_back({0.0, beta});
    s.exact_atoms = std::vector<std::pair<Rational, Rational>>{{Rational(0), Rational(beta)}};
    return additive(gamma, std::move(s));
}

GeneratorSpec validate(const GeneratorSpec& g) {
    validate(g.sigma, /*probability=*/false,
             /*allow_infinity=*/g.kind == GeneratorKind::MultiplicativePositive);
    if (g.kind == GeneratorKind::MultiplicativePositive && g.gamma <= 0)
        fail(ErrorCode::BadInput, "gamma must be positive for the R+ kind");
    if (g.kind == GeneratorKind::AdditiveReal && g.sigma.infinity_mass != 0)
        fail(ErrorCode::BadInput, "no mass at infinity for the additive kind");
    if (g.kind == GeneratorKind::MultiplicativeCircle && g.sigma.infinity_mass != 0)
        fail(ErrorCode::BadInput, "no mass at infinity on the circle");
    if (!std::isfinite(g.sigma.total_mass()))
        fail(ErrorCode::BadInput, "sigma must be a finite measure");
    return g;
}

Complex u_eval(const GeneratorSpec& g, Complex z) {
    check_domain(g.kind, z);
    switch (g.kind) {
        case GeneratorKind::AdditiveReal:
        case GeneratorKind::MultiplicativePositive: {
            // (1+tz)/(z-t) = (1+z^2)/(z-t) - z on the finite part; -z at t = infinity.
            Complex G = (z.imag() >= 0.0) ? transforms::cauchy_from_h(g.sigma, z)
                                          : transforms::cauchy(g.sigma, z);
            double fin = g.sigma.total_mass() - g.sigma.infinity_mass;
            return (1.0 + z * z) * G - z * fin - z * g.sigma.infinity_mass;
        }
        case GeneratorKind::MultiplicativeCircle:
            return transforms::herglotz(g.sigma, z);
    }
    fail(ErrorCode::BadInput, "unknown kind");
}

Complex phi_eval(const GeneratorSpec& g, Complex z) {
    check_domain(g.kind, z);
    switch (g.kind) {
        case GeneratorKind::AdditiveReal:
            return g.gamma + z + u_eval(g, z);
        case GeneratorKind::MultiplicativePositive:
            return g.gamma * z * std::exp(u_eval(g, z));
        case GeneratorKind::MultiplicativeCircle:
            return std::polar(1.0, g.gamma) * z * std::exp(u_eval(g, z));
    }
    fail(ErrorCode::BadInput, "unknown kind");
}

GeneratorSpec dual_generator(const GeneratorSpec& g) {
    if (g.kind != GeneratorKind::MultiplicativePositive)
        fail(ErrorCode::UnsupportedKind, "dual generator lives on R+");
    GeneratorSpec out;
    out.kind = g.kind;
    out.gamma = 1.0 / g.gamma;
    out.sigma = dual_measure(g.sigma, /*allow_infinity=*/true);
    return out;
}

// ---------------------------------------------------------------------------
// Subordination contexts
// ---------------------------------------------------------------------------

namespace {

std::function<Complex(Complex)> bind_eta(std::shared_ptr<const MeasureSpec> m) {
    return [m](Complex z) { return transforms::eta_from_h(*m, z); };
}

std::function<Complex(Complex)> bind_f(std::shared_ptr<const MeasureSpec> m) {
    return [m](Complex z) { return transforms::f_from_h(*m, z); };
}

// Continuously tracked log(z / eta_nu(z)) along the ray from 0 to z in the disk.
Complex circle_log_ratio(const std::function<Complex(Complex)>& eta, Complex z) {
    auto g_of = [&](Complex w) {
        Complex e = eta(w);
        if (std::abs(w) < 1e-14) fail(ErrorCode::DomainViolation, "ratio undefined at 0");
        return e / w;
    };
    double r = std::abs(z);
    if (r < 1e-14) fail(ErrorCode::DomainViolation, "ratio log undefined at 0");
    Complex dir = z / r;
    double prev_arg = 0.0;
    int steps = 8;
    double total = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        double acc = 0.0;
        prev_arg = 0.0;  // arg of eta'(0) direction: start from the mean, assumed arg ~ 0
        Complex g0 = g_of(1e-7 * dir);
        prev_arg = std::arg(g0);
        acc = prev_arg;
        bool ok = true;
        for (int j = 1; j <= steps; ++j) {
            double rj = 1e-7 + (r - 1e-7) * j / steps;
            Complex gj = g_of(rj * dir);
            if (std::abs(gj) < 1e-300) fail(ErrorCode::EtaVanishes, "eta ratio vanishes on ray");
            double aj = std::arg(gj);
            double d = std::remainder(aj - prev_arg, 2 * kPi);
            if (std::abs(d) > kPi / 2) {
                ok = false;
                break;
            }
            acc += d;
            prev_arg = aj;
        }
        if (ok) {
            if (attempt > 0 && std::abs(acc - total) < 1e-9) {
                total = acc;
                break;
            }
            total = acc;
        }
        steps *= 2;
    }
    Complex ge = g_of(z);
    // log(z/eta) = -log(eta/z): modulus from the endpoint, argument from tracking.
    return Complex(-std::log(std::abs(ge)), -total);
}

}  // namespace

Complex eta_square_circle(const MeasureSpec& nu, Complex z) {
    // eta_{nu x| nu}(z) = eta_nu(w) where w solves w^2 = z eta_nu(w).
    if (std::abs(z) < 1e-300) return 0.0;
    Complex mean = moment_circle(nu, 1);
    Complex w = z * mean;
    if (std::abs(w) < 1e-30) w = 0.5 * z;
    for (int it = 0; it < 2000; ++it) {
        Complex e = transforms::eta_from_h(nu, w);
        Complex next = (std::abs(w) < 1e-300) ? z * mean : z * e / w;
        if (std::abs(next - w) < 1e-15 * (1 + std::abs(w))) {
            w = next;
            break;
        }
        w = next;
        if (it == 1999) fail(ErrorCode::NoConvergence, "square subordination fixed point");
    }
    return transforms::eta_from_h(nu, w);
}

Complex exponent_eval(const SubordinationContext& ctx, Complex z) {
    switch (ctx.mode) {
        case SubordinationMode::PureInfDiv:
            return u_eval(ctx.base, z);
        case SubordinationMode::SurrogatePsi: {
            if (ctx.additive()) return u_eval(ctx.base, ctx.companion_f(z));
            return u_eval(ctx.base, ctx.companion_eta(z));
        }
        case SubordinationMode::PowerAdditive:
            return (ctx.order - 1.0) * (z - ctx.companion_f(z));
        case SubordinationMode::PowerPositive: {
            Complex e = ctx.companion_eta(z);
            if (std::abs(e) < 1e-300) fail(ErrorCode::EtaVanishes, "eta vanished off 0");
            if (std::abs(z) < 1e-300) fail(ErrorCode::DomainViolation, "z = 0");
            double am = std::log(std::abs(z)) - std::log(std::abs(e));
            double aa = std::arg(z) - std::arg(e);
            return (ctx.order - 1.0) * Complex(am, aa);
        }
        case SubordinationMode::PowerCircle: {
            if (std::abs(z) < 1e-300) return 0.0;
            Complex lr = circle_log_ratio(ctx.companion_eta, z);
            return (ctx.order - 1.0) * lr;
        }
    }
    fail(ErrorCode::BadInput, "unknown mode");
}

Complex psi_eval(const SubordinationContext& ctx, Complex z) {
    switch (ctx.kind) {
        case GeneratorKind::AdditiveReal: {
            if (ctx.mode == SubordinationMode::PowerAdditive)
                return ctx.order * z - (ctx.order - 1.0) * ctx.companion_f(z);
            return ctx.base.gamma + z + exponent_eval(ctx, z);
        }
        case GeneratorKind::MultiplicativePositive: {
            double c = (ctx.mode == SubordinationMode::PowerPositive) ? 1.0 : ctx.base.gamma;
            return c * z * std::exp(exponent_eval(ctx, z));
        }
        case GeneratorKind::MultiplicativeCircle: {
            Complex c = (ctx.mode == SubordinationMode::PowerCircle)
                            ? Complex(1.0, 0.0)
                            : std::polar(1.0, ctx.base.gamma);
            if (std::abs(z) < 1e-300) return 0.0;
            return c * z * std::exp(exponent_eval(ctx, z));
        }
    }
    fail(ErrorCode::BadInput, "unknown kind");
}

SubordinationContext make_infdiv_context(const GeneratorSpec& g) {
    if (!g.nondegenerate()) fail(ErrorCode::BadInput, "degenerate generator");
    SubordinationContext ctx;
    ctx.kind = g.kind;
    ctx.mode = SubordinationMode::PureInfDiv;
    ctx.base = g;
    ctx.description = "infdiv";
    return ctx;
}

SubordinationContext make_convolution_context(const MeasureSpec& mu1, const GeneratorSpec& g) {
    if (!g.nondegenerate()) fail(ErrorCode::BadInput, "degenerate generator");
    if (mu1.carrier != carrier_of(g.kind))
        fail(ErrorCode::UnsupportedCarrier, "mu1 carrier does not match the generator kind");
    SubordinationContext ctx;
    ctx.kind = g.kind;
    ctx.mode = SubordinationMode::SurrogatePsi;
    ctx.base = g;
    ctx.companion = std::make_shared<MeasureSpec>(mu1);
    ctx.companion_eta = bind_eta(ctx.companion);
    if (g.kind == GeneratorKind::AdditiveReal) ctx.companion_f = bind_f(ctx.companion);
    ctx.description = "convolution";
    return ctx;
}

SubordinationContext power_generator(const MeasureSpec& nu, double order, GeneratorKind kind) {
    if (!(order > 1.0)) fail(ErrorCode::OrderTooSmall, "order must exceed 1");
    if (nu.carrier != carrier_of(kind))
        fail(ErrorCode::UnsupportedCarrier, "base measure carrier mismatch");
    SubordinationContext ctx;
    ctx.kind = kind;
    ctx.order = order;
    ctx.companion = std::make_shared<MeasureSpec>(nu);
    ctx.description = "power";
    switch (kind) {
        case GeneratorKind::AdditiveReal:
            ctx.mode = SubordinationMode::PowerAdditive;
            ctx.companion_f = bind_f(ctx.companion);
            ctx.companion_eta = bind_eta(ctx.companion);
            break;
        case GeneratorKind::MultiplicativePositive:
            if (nu.atom_mass_at(0.0) >= 1.0 - 1e-15)
                fail(ErrorCode::BadInput, "nu = delta_0 has trivial powers");
            ctx.mode = SubordinationMode::PowerPositive;
            ctx.companion_eta = bind_eta(ctx.companion);
            break;
        case GeneratorKind::MultiplicativeCircle: {
            Complex mean = moment_circle(nu, 1);
            if (!(mean.real() > 0))
                fail(ErrorCode::CircleMeanZero, "base measure needs a mean with positive real part");
            ctx.mode = SubordinationMode::PowerCircle;
            // Zero scan for eta_nu on D \ {0}: winding of eta(z)/z on a large circle.
            auto cp = ctx.companion;
            bool has_zero = false;
            {
                const int M = 2048;
                double prev = 0.0, acc = 0.0;
                for (int j = 0; j <= M; ++j) {
                    Complex w = std::polar(0.999, 2 * kPi * j / M);
                    Complex gv = transforms::eta_from_h(*cp, w) / w;
                    double a = std::arg(gv);
                    if (j > 0) acc += std::remainder(a - prev, 2 * kPi);
                    prev = a;
                }
                has_zero = std::abs(acc) > kPi;  // nonzero winding
            }
            if (!has_zero) {
                ctx.companion_eta = bind_eta(cp);
            } else {
                if (!(order / 2.0 > 1.0))
                    fail(ErrorCode::OrderTooSmall, "order must exceed 2 after squaring");
                ctx.order = order / 2.0;
                MeasureSpec base = nu;
                ctx.companion_eta = [base](Complex z) { return eta_square_circle(base, z); };
                ctx.description = "power(squared base)";
            }
            break;
        }
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// Surrogate pairs
// ---------------------------------------------------------------------------

SurrogatePair surrogate_pair(const GeneratorSpec& g, const MeasureSpec& mu1) {
    validate(g);
    if (!g.nondegenerate()) fail(ErrorCode::BetaZero, "sigma = 0");
    SurrogatePair out;
    out.rho1_ctx = make_convolution_context(mu1, g);
    auto mu1p = out.rho1_ctx.companion;
    switch (g.kind) {
        case GeneratorKind::AdditiveReal: {
            double beta = transforms::integrate_function(g.sigma,
                                                         [](double t) { return 1.0 + t * t; });
            if (!(beta > 0)) fail(ErrorCode::BetaZero, "integral (1+t^2) dsigma vanishes");
            if (!std::isfinite(beta)) fail(ErrorCode::BetaDivergent, "sigma second moment");
            out.beta = beta;
            out.gamma_prime = g.gamma + moment(g.sigma, 1);
            out.nu2 = GeneratorSpec::semicircle_type(out.gamma_prime, beta);
            GeneratorSpec sig = g;
            out.nu1_transform = [sig, mu1p, beta](Complex z) {
                Complex w = transforms::f_from_h(*mu1p, z);
                Complex G = transforms::cauchy_from_h(sig.sigma, w);
                double tot = sig.sigma.total_mass();
                double m1 = moment(sig.sigma, 1);
                return ((1.0 + w * w) * G - w * tot - m1) / beta;
            };
            break;
        }
        case GeneratorKind::MultiplicativePositive: {
            if (g.sigma.atom_mass_at(0.0) > 0 || g.sigma.infinity_mass > 0)
                fail(ErrorCode::BetaDivergent, "sigma charges 0 or infinity");
            for (const auto& p : g.sigma.pieces)
                if (p.a <= 0 && p.density_at(0.0) > 0)
                    fail(ErrorCode::BetaDivergent, "sigma density positive at 0");
            double beta = 0.5 * transforms::integrate_function(
                                    g.sigma, [](double t) { return t + 1.0 / t; });
            if (!std::isfinite(beta)) fail(ErrorCode::BetaDivergent, "integral (t+1/t) dsigma");
            if (!(beta > 0)) fail(ErrorCode::BetaZero, "beta = 0");
            out.beta = beta;
            double gshift = 0.5 * transforms::integrate_function(
                                      g.sigma, [](double t) { return t - 1.0 / t; });
            out.gamma_prime = g.gamma * std::exp(gshift);
            MeasureSpec s1 = MeasureSpec::point(Carrier::PositiveHalfLine, 1.0, beta);
            out.nu2 = GeneratorSpec::positive(out.gamma_prime, std::move(s1));
            GeneratorSpec sig = g;
            double recip = transforms::integrate_function(g.sigma,
                                                          [](double t) { return 1.0 / t; });
            out.nu1_transform = [sig, mu1p, beta, recip](Complex z) {
                Complex e = transforms::eta_from_h(*mu1p, z);
                Complex G = transforms::cauchy_from_h(sig.sigma, e);
                double tot = sig.sigma.total_mass();
                return (e * tot - (1.0 + e * e) * G - recip) / (2.0 * beta);
            };
            break;
        }
        case GeneratorKind::MultiplicativeCircle: {
            Complex mean = moment_circle(g.sigma, 1);
            if (std::abs(mean) < 1e-14) fail(ErrorCode::CircleMeanZero, "integral t dsigma = 0");
            double beta = g.sigma.total_mass();
            if (!(beta > 0)) fail(ErrorCode::BetaZero, "sigma(T) = 0");
            out.beta = beta;
            out.gamma_prime = g.gamma;  // nu2 keeps the same unimodular gamma
            MeasureSpec s1 = MeasureSpec::point(Carrier::Circle, 0.0, beta);
            out.nu2 = GeneratorSpec::circle(g.gamma, std::move(s1));
            GeneratorSpec sig = g;
            out.nu1_transform = [sig, mu1p, beta](Complex z) {
                Complex e = transforms::eta_from_h(*mu1p, z);
                Complex H = transforms::herglotz(sig.sigma, e);
                return (H - beta) / (2.0 * beta);
            };
            break;
        }
    }
    return out;
}

}  // namespace freelab
