#pragma once

#include <vector>

#include "freelab/generators.hpp"

namespace freelab {

struct BoundaryCurve {
    GeneratorKind kind = GeneratorKind::AdditiveReal;
    std::vector<double> params;            // r on R+, angle of zeta on T, x on R
    std::vector<double> values;            // f(r), R(zeta), f(x)
    std::vector<Complex> psi_at_boundary;  // Psi evaluated on the traced boundary point
};

// I_r(theta) for R+-type contexts; theta in [0, pi], theta = 0 returns the limit
// (possibly +infinity).
double i_r_eval(const SubordinationContext& ctx, double r, double theta);

double f_of_r(const SubordinationContext& ctx, double r);
double h_of_r(const SubordinationContext& ctx, double r);
double h_inverse(const SubordinationContext& ctx, double s);

double R_of_zeta(const SubordinationContext& ctx, Complex zeta);
double R_of_angle(const SubordinationContext& ctx, double angle);
// T(zeta) boundary criterion value (pure mode closed form, ladder otherwise).
double t_of_zeta(const SubordinationContext& ctx, Complex zeta);

double f_of_x_additive(const SubordinationContext& ctx, double x);
// J_x(y) = (y - Im Psi(x+iy))/y; y = 0 returns the limit (possibly +infinity).
double j_of_y_additive(const SubordinationContext& ctx, double x, double y);

BoundaryCurve trace_curve(const SubordinationContext& ctx, const std::vector<double>& grid);

Complex invert_interior(const SubordinationContext& ctx, Complex z);

// Boundary point of the subordination domain over a parameter (r, angle, or x).
Complex boundary_point(const SubordinationContext& ctx, double param);

}  // namespace freelab
