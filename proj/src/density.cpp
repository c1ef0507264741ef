#include "freelab/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace freelab {

namespace {

constexpr double kZeroF = 1e-10;
constexpr double kZeroR = 1e-12;

double wrap2pi(double a) {
    a = std::fmod(a, 2 * kPi);
    if (a < 0) a += 2 * kPi;
    return a;
}

// --- location solvers -------------------------------------------------------

// Additive: find s with Psi(s + i f(s)) = x (the boundary pushforward is increasing).
double solve_additive_param(const SubordinationContext& ctx, double x) {
    auto push = [&](double s) {
        double fs = f_of_x_additive(ctx, s);
        return psi_eval(ctx, Complex(s, fs)).real();
    };
    double w = 1.0, lo = x - w, hi = x + w;
    int guard = 0;
    while (push(lo) > x) {
        w *= 2;
        lo = x - w;
        if (++guard > 90) fail(ErrorCode::BracketingFailed, "additive pushforward bracket");
    }
    guard = 0;
    w = hi - x;
    while (push(hi) < x) {
        w *= 2;
        hi = x + w;
        if (++guard > 90) fail(ErrorCode::BracketingFailed, "additive pushforward bracket");
    }
    for (int it = 0; it < 100 && hi - lo > 1e-13 * std::max(1.0, std::abs(x)); ++it) {
        double mid = 0.5 * (lo + hi);
        if (push(mid) < x)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Circle: coarse bracket of the boundary angle map, then local bisection.
struct CircleBoundaryMap {
    const SubordinationContext* ctx;
    std::vector<double> taus;   // parameter angles, ascending, [0, 2pi]
    std::vector<double> lifts;  // unwrapped angle of Psi(z(tau))

    explicit CircleBoundaryMap(const SubordinationContext& c) : ctx(&c) {
        const int M = 256;
        taus.resize(M + 1);
        lifts.resize(M + 1);
        double prev = 0.0;
        for (int j = 0; j <= M; ++j) {
            double tau = 2 * kPi * j / M;
            taus[j] = tau;
            Complex w = boundary_point(c, tau);
            double a = std::arg(psi_eval(c, w));
            if (j == 0) {
                lifts[0] = a;
            } else {
                lifts[j] = lifts[j - 1] + std::remainder(a - prev, 2 * kPi);
            }
            prev = a;
        }
    }

    double angle_at(double tau) const {
        Complex w = boundary_point(*ctx, tau);
        return std::arg(psi_eval(*ctx, w));
    }

    // Solve Psi(z(tau)) = e^{i target}; returns tau.
    double solve(double target) const {
        // lift target into [lifts.front(), lifts.front() + 2pi)
        double t = target;
        while (t < lifts.front()) t += 2 * kPi;
        while (t >= lifts.front() + 2 * kPi) t -= 2 * kPi;
        std::size_t j = 0;
        while (j + 1 < lifts.size() && !(lifts[j] <= t && t <= lifts[j + 1])) ++j;
        if (j + 1 >= lifts.size()) {
            // wrap: target sits across the seam
            t -= 2 * kPi;
            j = 0;
            while (j + 1 < lifts.size() && !(lifts[j] <= t && t <= lifts[j + 1])) ++j;
            if (j + 1 >= lifts.size()) fail(ErrorCode::NoConvergence, "circle bracket scan");
        }
        double lo = taus[j], hi = taus[j + 1];
        double alo = lifts[j];
        for (int it = 0; it < 90 && hi - lo > 1e-13; ++it) {
            double mid = 0.5 * (lo + hi);
            double am = angle_at(mid);
            double lifted = alo + std::remainder(am - angle_at(lo), 2 * kPi);
            if (lifted < t) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
};

// --- per-point values --------------------------------------------------------

struct PointValue {
    double p = 0.0;    // density wrt dt / dtheta
    double q = 0.0;    // R+ only: t p(t)
    PointFlag flag = PointFlag::Ok;
};

PointValue value_additive(const SubordinationContext& ctx, double x) {
    PointValue out;
    double s = solve_additive_param(ctx, x);
    double fs = f_of_x_additive(ctx, s);
    Complex w(s, fs);
    if (fs < kZeroF) {
        out.flag = PointFlag::ZeroSet;
        out.p = 0.0;
        return out;
    }
    switch (ctx.mode) {
        case SubordinationMode::PureInfDiv:
            out.p = fs / (kPi * std::norm(w));
            break;
        case SubordinationMode::SurrogatePsi:
        case SubordinationMode::PowerAdditive: {
            Complex G = transforms::cauchy_from_h(*ctx.companion, w);
            out.p = -G.imag() / kPi;
            break;
        }
        default:
            fail(ErrorCode::BadInput, "additive mode");
    }
    return out;
}

PointValue value_positive(const SubordinationContext& ctx, double t) {
    PointValue out;
    if (!(t > 0)) fail(ErrorCode::DomainViolation, "location must be positive");
    double r = h_inverse(ctx, 1.0 / t);
    double fr = f_of_r(ctx, r);
    Complex w = std::polar(r, fr);
    if (fr < kZeroF) {
        out.flag = PointFlag::ZeroSet;
        return out;
    }
    switch (ctx.mode) {
        case SubordinationMode::PureInfDiv: {
            out.q = (1.0 / kPi) * r * std::sin(fr) / std::norm(1.0 - w);
            break;
        }
        case SubordinationMode::SurrogatePsi: {
            Complex e = ctx.companion_eta(w);
            out.q = (1.0 / kPi) * (1.0 / (1.0 - e)).imag();
            break;
        }
        case SubordinationMode::PowerPositive: {
            double beta = ctx.order;
            Complex e = ctx.companion_eta(w);
            double amp = std::pow(t * r, 1.0 / (beta - 1.0));
            out.q = (amp / kPi) * r * std::sin(beta / (beta - 1.0) * fr) / std::norm(1.0 - e);
            break;
        }
        default:
            fail(ErrorCode::BadInput, "positive mode");
    }
    out.p = out.q / t;
    return out;
}

PointValue value_circle(const SubordinationContext& ctx, const CircleBoundaryMap& map,
                        double angle) {
    PointValue out;
    // location xi = e^{i angle}; boundary point w solves Psi(w) = conj(xi)
    double tau = map.solve(-angle);
    double R = R_of_angle(ctx, tau);
    Complex w = R * std::polar(1.0, tau);
    if (R > 1.0 - kZeroR) {
        out.flag = PointFlag::ZeroSet;
        return out;
    }
    switch (ctx.mode) {
        case SubordinationMode::PureInfDiv: {
            out.p = (1.0 / (2 * kPi)) * ((1.0 + w) / (1.0 - w)).real();
            break;
        }
        case SubordinationMode::SurrogatePsi: {
            Complex e = ctx.companion_eta(w);
            out.p = (1.0 / (2 * kPi)) * ((1.0 + e) / (1.0 - e)).real();
            break;
        }
        case SubordinationMode::PowerCircle: {
            double k = ctx.order;
            Complex e = ctx.companion_eta(w);
            out.p = (1.0 - std::pow(R, 2.0 * k / (k - 1.0))) / (2 * kPi * std::norm(1.0 - e));
            break;
        }
        default:
            fail(ErrorCode::BadInput, "circle mode");
    }
    return out;
}

DensityProfile profile_from_context(const SubordinationContext& ctx,
                                    const std::vector<double>& grid, std::string description) {
    DensityProfile prof;
    prof.carrier = ctx.kind == GeneratorKind::AdditiveReal ? Carrier::RealLine
                   : ctx.kind == GeneratorKind::MultiplicativePositive ? Carrier::PositiveHalfLine
                                                                       : Carrier::Circle;
    prof.grid = grid;
    prof.description = std::move(description);
    prof.values.assign(grid.size(), 0.0);
    prof.flags.assign(grid.size(), PointFlag::Ok);
    if (ctx.kind == GeneratorKind::MultiplicativePositive) prof.values_q.assign(grid.size(), 0.0);

    std::unique_ptr<CircleBoundaryMap> map;
    if (ctx.kind == GeneratorKind::MultiplicativeCircle)
        map = std::make_unique<CircleBoundaryMap>(ctx);

    std::vector<double> clamps(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t i) {
        PointValue v;
        try {
            switch (ctx.kind) {
                case GeneratorKind::AdditiveReal:
                    v = value_additive(ctx, grid[i]);
                    break;
                case GeneratorKind::MultiplicativePositive:
                    v = value_positive(ctx, grid[i]);
                    break;
                case GeneratorKind::MultiplicativeCircle:
                    v = value_circle(ctx, *map, grid[i]);
                    break;
            }
        } catch (const Error&) {
            v.flag = PointFlag::Singular;  // solver failure flagged, not fatal
        }
        if (v.p < 0) {
            clamps[i] = -v.p;
            v.p = 0.0;
            v.q = std::max(v.q, 0.0);
        }
        prof.values[i] = v.p;
        if (!prof.values_q.empty()) prof.values_q[i] = v.q;
        prof.flags[i] = v.flag;
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        prof.clamp_magnitude = std::max(prof.clamp_magnitude, clamps[i]);
        if (prof.flags[i] == PointFlag::ZeroSet) prof.zero_set.push_back(grid[i]);
    }
    return prof;
}

}  // namespace

double density_value(const SubordinationContext& ctx, double location) {
    switch (ctx.kind) {
        case GeneratorKind::AdditiveReal:
            return value_additive(ctx, location).p;
        case GeneratorKind::MultiplicativePositive:
            return value_positive(ctx, location).p;
        case GeneratorKind::MultiplicativeCircle: {
            CircleBoundaryMap map(ctx);
            return value_circle(ctx, map, location).p;
        }
    }
    fail(ErrorCode::BadInput, "unknown kind");
}

// --- atoms -------------------------------------------------------------------

std::vector<Atom> detect_atoms_infdiv(const GeneratorSpec& g) {
    std::vector<Atom> out;
    switch (g.kind) {
        case GeneratorKind::MultiplicativePositive: {
            auto ctx = make_infdiv_context(g);
            double i10 = i_r_eval(ctx, 1.0, 0.0);
            if (i10 <= 1.0) {
                double h1 = h_of_r(ctx, 1.0);
                if (1.0 - i10 > 0) out.push_back({1.0 / h1, 1.0 - i10});
            }
            break;
        }
        case GeneratorKind::AdditiveReal: {
            double c = transforms::poisson_sum(g.sigma, Complex(0.0, 0.0));
            if (std::isfinite(c) && c <= 1.0) {
                double t_mu =
                    g.gamma - transforms::integrate_function(g.sigma, [](double t) { return 1.0 / t; });
                if (1.0 - c > 0) out.push_back({t_mu, 1.0 - c});
            }
            break;
        }
        case GeneratorKind::MultiplicativeCircle: {
            double T1 = 2.0 * transforms::poisson_sum_circle(g.sigma, Complex(1.0, 0.0));
            if (std::isfinite(T1) && T1 <= 1.0) {
                Complex phi1 = phi_eval(g, Complex(1.0, 0.0));
                if (1.0 - T1 > 0) out.push_back({wrap2pi(-std::arg(phi1)), 1.0 - T1});
            }
            break;
        }
    }
    return out;
}

std::vector<Atom> detect_atoms_convolution(const MeasureSpec& mu1, const GeneratorSpec& g) {
    std::vector<Atom> out;
    auto mu2_atoms = detect_atoms_infdiv(g);
    switch (g.kind) {
        case GeneratorKind::AdditiveReal: {
            double c = transforms::poisson_sum(g.sigma, Complex(0.0, 0.0));
            if (!std::isfinite(c) || c > 1.0) return out;  // set A empty
            double t_mu2 = mu2_atoms.empty() ? 0.0 : mu2_atoms.front().pos;
            for (const auto& at : mu1.atoms)
                if (at.mass > c) out.push_back({at.pos + t_mu2, at.mass - c});
            break;
        }
        case GeneratorKind::MultiplicativePositive: {
            double c = transforms::poisson_sum(g.sigma, Complex(1.0, 0.0));
            if (!std::isfinite(c) || c > 1.0) return out;
            double b = mu2_atoms.empty() ? 0.0 : mu2_atoms.front().pos;
            for (const auto& at : mu1.atoms)
                if (at.mass > c) out.push_back({at.pos * b, at.mass - c});
            break;
        }
        case GeneratorKind::MultiplicativeCircle: {
            double T1 = 2.0 * transforms::poisson_sum_circle(g.sigma, Complex(1.0, 0.0));
            if (!std::isfinite(T1) || T1 > 1.0) return out;
            double b = mu2_atoms.empty() ? 0.0 : mu2_atoms.front().pos;
            for (const auto& at : mu1.atoms)
                if (at.mass > T1) out.push_back({wrap2pi(at.pos + b), at.mass - T1});
            break;
        }
    }
    std::sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) { return a.pos < b.pos; });
    return out;
}

std::vector<Atom> detect_atoms_semigroup(const MeasureSpec& nu, double order, GeneratorKind kind) {
    if (!(order > 1)) fail(ErrorCode::OrderTooSmall, "order must exceed 1");
    std::vector<Atom> out;
    double threshold = 1.0 - 1.0 / order;
    for (const auto& at : nu.atoms) {
        if (at.mass < threshold) continue;
        double mass = order * at.mass - (order - 1.0);
        if (mass <= 0) continue;
        switch (kind) {
            case GeneratorKind::AdditiveReal:
                out.push_back({order * at.pos, mass});
                break;
            case GeneratorKind::MultiplicativePositive:
                out.push_back({std::pow(at.pos, order), mass});
                break;
            case GeneratorKind::MultiplicativeCircle:
                out.push_back({wrap2pi(order * at.pos), mass});
                break;
        }
    }
    std::sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) { return a.pos < b.pos; });
    return out;
}

// --- profiles ----------------------------------------------------------------

DensityProfile density_infdiv(const GeneratorSpec& g, const std::vector<double>& grid) {
    validate(g);
    if (!g.nondegenerate()) fail(ErrorCode::BadInput, "degenerate generator");
    auto ctx = make_infdiv_context(g);
    auto prof = profile_from_context(ctx, grid, "infdiv");
    prof.atoms = detect_atoms_infdiv(g);
    for (const auto& a : prof.atoms) prof.discontinuities.push_back(a.pos);
    return prof;
}

DensityProfile density_convolution(const MeasureSpec& mu1, const GeneratorSpec& g,
                                   const std::vector<double>& grid) {
    validate(g);
    validate(mu1);
    if (!g.nondegenerate()) fail(ErrorCode::BadInput, "degenerate generator");
    if (mu1.is_point_mass() && g.kind == GeneratorKind::AdditiveReal) {
        // delta_a + law of g: a pure translate
        double a = mu1.atoms.front().pos;
        GeneratorSpec shifted = g;
        shifted.gamma += a;
        return density_infdiv(shifted, grid);
    }
    auto ctx = make_convolution_context(mu1, g);
    auto prof = profile_from_context(ctx, grid, "convolution");
    prof.atoms = detect_atoms_convolution(mu1, g);
    for (const auto& a : prof.atoms) prof.discontinuities.push_back(a.pos);
    return prof;
}

DensityProfile density_semigroup(const MeasureSpec& nu, double order, GeneratorKind kind,
                                 const std::vector<double>& grid) {
    validate(nu);
    auto ctx = power_generator(nu, order, kind);
    auto prof = profile_from_context(ctx, grid, "semigroup");
    prof.atoms = detect_atoms_semigroup(nu, order, kind);
    for (const auto& a : prof.atoms) prof.discontinuities.push_back(a.pos);
    return prof;
}

double profile_mass(const DensityProfile& p) {
    double acc = 0.0;
    for (const auto& at : p.atoms) acc += at.mass;
    if (p.grid.size() >= 2) {
        for (std::size_t i = 0; i + 1 < p.grid.size(); ++i)
            acc += 0.5 * (p.values[i] + p.values[i + 1]) * (p.grid[i + 1] - p.grid[i]);
    }
    if (p.carrier != Carrier::Circle) {
        if (!p.values.empty() && (p.values.front() > 1e-4 || p.values.back() > 1e-4))
            fail(ErrorCode::SupportNotCovered, "grid does not reach the support edge");
    }
    return acc;
}

std::vector<double> default_grid(const SubordinationContext& ctx, std::size_t n) {
    std::vector<double> grid;
    grid.reserve(n);
    if (ctx.kind == GeneratorKind::MultiplicativePositive) {
        for (std::size_t i = 0; i < n; ++i) {
            double lr = -4.0 + 8.0 * static_cast<double>(i) / (n - 1);
            double r = std::pow(10.0, lr);
            grid.push_back(1.0 / h_of_r(ctx, r));
        }
        std::sort(grid.begin(), grid.end());
    } else if (ctx.kind == GeneratorKind::MultiplicativeCircle) {
        for (std::size_t i = 0; i < n; ++i) grid.push_back(2 * kPi * i / n);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            grid.push_back(-8.0 + 16.0 * static_cast<double>(i) / (n - 1));
    }
    return grid;
}

}  // namespace freelab
