#include "freelab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace freelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kThetaTol = 1e-12;

double imag_exponent_over_theta(const SubordinationContext& ctx, double r, double theta) {
    Complex z = std::polar(r, theta);
    return -exponent_eval(ctx, z).imag() / theta;
}

// Limit of g(s) as s -> 0+ along a geometric ladder; +inf when the values blow up.
double ladder_limit(const std::function<double(double)>& g, double s0, double blowup) {
    double prev = g(s0);
    double s = s0;
    for (int j = 0; j < 18; ++j) {
        s *= 0.25;
        double cur = g(s);
        if (!std::isfinite(cur) || cur > blowup) return kInf;
        if (std::abs(cur - prev) < 1e-10 * (1.0 + std::abs(cur))) {
            // one 4x Richardson step assuming O(s^2) error, harmless when already flat
            return cur + (cur - prev) / 15.0;
        }
        prev = cur;
    }
    return prev;
}

}  // namespace

double i_r_eval(const SubordinationContext& ctx, double r, double theta) {
    if (ctx.kind != GeneratorKind::MultiplicativePositive)
        fail(ErrorCode::DomainViolation, "I_r is for R+-type contexts");
    if (!(r > 0) || theta < 0 || theta > kPi) fail(ErrorCode::DomainViolation, "bad (r, theta)");
    if (theta > 0) return imag_exponent_over_theta(ctx, r, theta);
    // theta = 0: the limit integral
    if (ctx.mode == SubordinationMode::PureInfDiv) {
        double w = transforms::poisson_sum(ctx.base.sigma, Complex(r, 0.0));
        return std::isfinite(w) ? r * w : kInf;
    }
    if (ctx.mode == SubordinationMode::SurrogatePsi) {
        Complex e = ctx.companion_eta(Complex(r, 0.0));
        if (e.imag() > 1e-11) return kInf;  // Im u(eta) < 0 strictly
    }
    return ladder_limit([&](double th) { return imag_exponent_over_theta(ctx, r, th); }, 1e-4, 10.0);
}

double f_of_r(const SubordinationContext& ctx, double r) {
    double at0 = i_r_eval(ctx, r, 0.0);
    if (at0 <= 1.0) return 0.0;
    double hi = kPi;  // I_r(pi) = 0 < 1
    double lo = kPi / 2;
    while (i_r_eval(ctx, r, lo) <= 1.0) {
        hi = lo;
        lo *= 0.5;
        if (lo < 1e-300) return 0.0;
    }
    while (hi - lo > kThetaTol) {
        double mid = 0.5 * (lo + hi);
        if (i_r_eval(ctx, r, mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double f = 0.5 * (lo + hi);
    // post-hoc sign pattern (interval structure of {I_r < 1})
    double eps = 1e-7;
    if (f + eps < kPi && i_r_eval(ctx, r, f + eps) > 1.0 + 1e-6)
        fail(ErrorCode::NonIntervalSet, "I_r not below 1 above the root");
    if (f - eps > 0 && i_r_eval(ctx, r, f - eps) < 1.0 - 1e-6)
        fail(ErrorCode::NonIntervalSet, "I_r not above 1 below the root");
    return f;
}

double h_of_r(const SubordinationContext& ctx, double r) {
    double f = f_of_r(ctx, r);
    Complex val = psi_eval(ctx, std::polar(r, f));
    if (std::abs(val.imag()) > 1e-9 * (1.0 + std::abs(val)))
        fail(ErrorCode::NoConvergence, "h(r) not real at the boundary");
    return val.real();
}

double h_inverse(const SubordinationContext& ctx, double s) {
    if (!(s > 0)) fail(ErrorCode::DomainViolation, "h is positive");
    double lo = 1.0, hi = 1.0;
    int guard = 0;
    while (h_of_r(ctx, hi) < s) {
        hi *= 2.0;
        if (++guard > 200) fail(ErrorCode::BracketingFailed, "no upper bracket for h inverse");
    }
    guard = 0;
    while (h_of_r(ctx, lo) > s) {
        lo *= 0.5;
        if (++guard > 200) fail(ErrorCode::BracketingFailed, "no lower bracket for h inverse");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, lo); ++it) {
        double mid = 0.5 * (lo + hi);
        if (h_of_r(ctx, mid) < s)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double t_of_zeta(const SubordinationContext& ctx, Complex zeta) {
    if (ctx.kind != GeneratorKind::MultiplicativeCircle)
        fail(ErrorCode::DomainViolation, "T is for circle contexts");
    if (ctx.mode == SubordinationMode::PureInfDiv)
        return 2.0 * transforms::poisson_sum_circle(ctx.base.sigma, zeta);
    return ladder_limit(
        [&](double d) {
            double r = 1.0 - d;
            return -exponent_eval(ctx, r * zeta).real() / std::log(r);
        },
        1e-4, 1e6);
}

double R_of_zeta(const SubordinationContext& ctx, Complex zeta) {
    if (ctx.kind != GeneratorKind::MultiplicativeCircle)
        fail(ErrorCode::DomainViolation, "R is for circle contexts");
    auto logmod = [&](double r) { return std::log(std::abs(psi_eval(ctx, r * zeta))); };
    double t = t_of_zeta(ctx, zeta);
    if (std::isfinite(t) && t <= 1.0) return 1.0;
    double hi = 1.0 - 1e-12;
    if (logmod(hi) < 0.0) return 1.0;
    double lo = 0.5;
    int guard = 0;
    while (logmod(lo) >= 0.0) {
        lo *= 0.5;
        if (++guard > 200) fail(ErrorCode::BracketingFailed, "no inner bracket for R");
    }
    while (hi - lo > kThetaTol) {
        double mid = 0.5 * (lo + hi);
        if (logmod(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double R_of_angle(const SubordinationContext& ctx, double angle) {
    return R_of_zeta(ctx, std::polar(1.0, angle));
}

double j_of_y_additive(const SubordinationContext& ctx, double x, double y) {
    if (ctx.kind != GeneratorKind::AdditiveReal)
        fail(ErrorCode::DomainViolation, "J is for additive contexts");
    auto j_at = [&](double yy) {
        Complex v = exponent_eval(ctx, Complex(x, yy));
        return -v.imag() / yy;
    };
    if (y > 0) return j_at(y);
    switch (ctx.mode) {
        case SubordinationMode::PureInfDiv: {
            double w = transforms::poisson_sum(ctx.base.sigma, Complex(x, 0.0));
            return std::isfinite(w) ? w : kInf;
        }
        case SubordinationMode::SurrogatePsi: {
            Complex w0 = ctx.companion_f(Complex(x, 0.0));
            if (w0.imag() > 1e-11) return kInf;
            break;
        }
        default:
            break;
    }
    return ladder_limit(j_at, 1e-4, 10.0);
}

double f_of_x_additive(const SubordinationContext& ctx, double x) {
    double j0 = j_of_y_additive(ctx, x, 0.0);
    if (j0 <= 1.0) return 0.0;
    auto im_psi = [&](double y) { return psi_eval(ctx, Complex(x, y)).imag(); };
    double hi = 1.0;
    int guard = 0;
    while (im_psi(hi) <= 0.0) {
        hi *= 2.0;
        if (++guard > 200) fail(ErrorCode::BracketingFailed, "Im Psi stays negative");
    }
    double lo = hi / 2;
    guard = 0;
    while (im_psi(lo) > 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) return 0.0;
    }
    double tol = kThetaTol * std::max(1.0, std::abs(x));
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (im_psi(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

Complex boundary_point(const SubordinationContext& ctx, double param) {
    switch (ctx.kind) {
        case GeneratorKind::AdditiveReal:
            return Complex(param, f_of_x_additive(ctx, param));
        case GeneratorKind::MultiplicativePositive:
            return std::polar(param, f_of_r(ctx, param));
        case GeneratorKind::MultiplicativeCircle:
            return R_of_angle(ctx, param) * std::polar(1.0, param);
    }
    fail(ErrorCode::BadInput, "unknown kind");
}

BoundaryCurve trace_curve(const SubordinationContext& ctx, const std::vector<double>& grid) {
    if (!std::is_sorted(grid.begin(), grid.end()))
        fail(ErrorCode::BadInput, "grid must be sorted");
    BoundaryCurve c;
    c.kind = ctx.kind;
    c.params = grid;
    c.values.assign(grid.size(), 0.0);
    c.psi_at_boundary.assign(grid.size(), Complex{});
    parallel_for(grid.size(), [&](std::size_t i) {
        switch (ctx.kind) {
            case GeneratorKind::AdditiveReal:
                c.values[i] = f_of_x_additive(ctx, grid[i]);
                break;
            case GeneratorKind::MultiplicativePositive:
                if (!(grid[i] > 0)) fail(ErrorCode::DomainViolation, "r must be positive");
                c.values[i] = f_of_r(ctx, grid[i]);
                break;
            case GeneratorKind::MultiplicativeCircle:
                c.values[i] = R_of_angle(ctx, grid[i]);
                break;
        }
        Complex bp;
        if (ctx.kind == GeneratorKind::AdditiveReal)
            bp = Complex(grid[i], c.values[i]);
        else if (ctx.kind == GeneratorKind::MultiplicativePositive)
            bp = std::polar(grid[i], c.values[i]);
        else
            bp = c.values[i] * std::polar(1.0, grid[i]);
        c.psi_at_boundary[i] = psi_eval(ctx, bp);
    });
    if (grid.size() >= 3) {
        double vmin = *std::min_element(c.values.begin(), c.values.end());
        double vmax = *std::max_element(c.values.begin(), c.values.end());
        double span = grid.back() - grid.front();
        double slope = (vmax - vmin + 1e-12) / (span > 0 ? span : 1.0);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            double dp = grid[i + 1] - grid[i];
            double dv = std::abs(c.values[i + 1] - c.values[i]);
            if (dp > 0 && dv > 100.0 * slope * dp)
                fail(ErrorCode::RefinementNeeded, "boundary jump exceeds the slope budget");
        }
    }
    return c;
}

Complex invert_interior(const SubordinationContext& ctx, Complex z) {
    const double tol = 1e-10 * (1.0 + std::abs(z));
    auto newton_polish = [&](Complex w) {
        for (int it = 0; it < 60; ++it) {
            Complex rz = psi_eval(ctx, w) - z;
            if (std::abs(rz) < tol) return w;
            double h = 1e-7 * (1.0 + std::abs(w));
            Complex d = (psi_eval(ctx, w + h) - psi_eval(ctx, w - h)) / (2.0 * h);
            if (std::abs(d) < 1e-300) break;
            Complex step = rz / d;
            // damping: keep the iterate inside the open half-plane / slit plane / disk
            for (int back = 0; back < 50; ++back) {
                Complex cand = w - step;
                bool ok = true;
                if (ctx.kind == GeneratorKind::AdditiveReal) ok = cand.imag() > 0;
                if (ctx.kind == GeneratorKind::MultiplicativePositive)
                    ok = !(cand.imag() == 0 && cand.real() >= 0);
                if (ctx.kind == GeneratorKind::MultiplicativeCircle) ok = std::abs(cand) < 1.0;
                if (ok && std::abs(psi_eval(ctx, cand) - z) < std::abs(rz)) {
                    w = cand;
                    break;
                }
                step *= 0.5;
                if (back == 49) return w;  // stalled
            }
        }
        return w;
    };

    Complex w;
    switch (ctx.kind) {
        case GeneratorKind::AdditiveReal: {
            if (!(z.imag() > 0)) fail(ErrorCode::DomainViolation, "z must lie in H");
            double c = (ctx.mode == SubordinationMode::PowerAdditive) ? 0.0 : ctx.base.gamma;
            w = z;
            for (int it = 0; it < 500; ++it) {
                Complex next = z - c - exponent_eval(ctx, w);
                if (std::abs(next - w) < 1e-14 * (1.0 + std::abs(w))) {
                    w = next;
                    break;
                }
                w = next;
            }
            break;
        }
        case GeneratorKind::MultiplicativePositive: {
            if (z.imag() == 0 && z.real() >= 0)
                fail(ErrorCode::DomainViolation, "z must avoid R+");
            double c = (ctx.mode == SubordinationMode::PowerPositive) ? 1.0 : ctx.base.gamma;
            w = z / c;
            Complex logw = std::log(w);
            for (int it = 0; it < 500; ++it) {
                Complex v = exponent_eval(ctx, w);
                Complex next_log = std::log(z / c) - v;
                // clamp the argument into (0, pi) when z is in H (conjugate for -H)
                double a = next_log.imag();
                if (z.imag() > 0) a = std::clamp(a, 1e-12, kPi - 1e-12);
                if (z.imag() < 0) a = std::clamp(a, -kPi + 1e-12, -1e-12);
                next_log = Complex(next_log.real(), a);
                Complex next = std::exp(next_log);
                if (std::abs(next - w) < 1e-14 * (1.0 + std::abs(w))) {
                    w = next;
                    break;
                }
                logw = next_log;
                w = next;
            }
            break;
        }
        case GeneratorKind::MultiplicativeCircle: {
            if (!(std::abs(z) < 1.0)) fail(ErrorCode::DomainViolation, "z must lie in D");
            Complex c = (ctx.mode == SubordinationMode::PowerCircle) ? Complex(1.0, 0.0)
                                                                     : std::polar(1.0, ctx.base.gamma);
            w = 0.5 * z;
            for (int it = 0; it < 800; ++it) {
                Complex next = (z / c) * std::exp(-exponent_eval(ctx, w));
                if (std::abs(next) >= 1.0) next /= (std::abs(next) + 1e-9);
                if (std::abs(next - w) < 1e-15) {
                    w = next;
                    break;
                }
                w = next;
            }
            break;
        }
    }
    w = newton_polish(w);
    if (std::abs(psi_eval(ctx, w) - z) > tol)
        fail(ErrorCode::NoConvergence, "interior inversion did not converge");
    return w;
}

}  // namespace freelab
