#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freelab/common.hpp"
#include "freelab/poly.hpp"
#include "freelab/rational.hpp"

namespace freelab {

enum class Carrier { RealLine, PositiveHalfLine, Circle };
enum class Transform { CauchyG, ReciprocalF, PsiMoment, Eta, HerglotzH };
enum class PieceForm { Polynomial, Semicircle, Arcsine, FreePoisson, Uniform };

// pos is a point of the carrier; on Circle it is an angle in [0, 2pi).
struct Atom {
    double pos = 0.0;
    double mass = 0.0;
};

struct ExactPiece {
    Rational a, b;
    PolyQ poly;
};

struct DensityPiece {
    double a = 0.0, b = 0.0;  // interval (angles on Circle)
    PieceForm form = PieceForm::Polynomial;
    PolyD poly;        // Polynomial form: density about poly.center
    bool inverted = false;  // Polynomial only: density(x) = poly(1/x)/x^2 on [1/b0,1/a0]
    double p1 = 0.0, p2 = 0.0;  // family parameters
    std::optional<ExactPiece> exact;

    static DensityPiece polynomial(double a, double b, PolyD p);
    static DensityPiece polynomial_exact(const Rational& a, const Rational& b, PolyQ p);
    static DensityPiece semicircle(double mean, double variance);
    static DensityPiece arcsine(double a, double b);
    static DensityPiece free_poisson(double rate, double scale);
    static DensityPiece uniform(double a, double b);

    double mass() const;
    double density_at(double t) const;
};

struct MeasureSpec {
    Carrier carrier = Carrier::RealLine;
    std::vector<Atom> atoms;
    std::vector<DensityPiece> pieces;
    double infinity_mass = 0.0;  // only meaningful for sigma-generators on R+
    std::optional<std::vector<std::pair<Rational, Rational>>> exact_atoms;  // (pos, mass)

    double total_mass() const;
    double atom_mass_at(double pos, double tol = 1e-12) const;
    bool is_zero() const { return total_mass() == 0.0 && infinity_mass == 0.0; }
    bool is_point_mass() const;
    // Distance from x to the closed support of the continuous part (+inf if none).
    double distance_to_pieces(double x) const;

    static MeasureSpec point(Carrier c, double pos, double mass = 1.0);
    static MeasureSpec bernoulli(double a = 1.0);  // (delta_{-a} + delta_{a})/2 on R
    static MeasureSpec semicircle_law(double mean, double variance);
    static MeasureSpec arcsine_law(double a, double b);
};

MeasureSpec validate(const MeasureSpec& m, bool probability = true, bool allow_infinity = false);
MeasureSpec dual_measure(const MeasureSpec& m, bool allow_infinity = false);
MeasureSpec affine_map(const MeasureSpec& m, double scale, double shift);
double moment(const MeasureSpec& m, int k);
Complex moment_circle(const MeasureSpec& m, int k);

// Public transform evaluation (spec pre: z off the carrier).
Complex eval_transform(const MeasureSpec& m, Transform which, Complex z);

namespace transforms {

// Integral-definition evaluators (conjugate symmetric; z off the carrier).
Complex cauchy(const MeasureSpec& m, Complex z);
Complex psi(const MeasureSpec& m, Complex z);
Complex eta(const MeasureSpec& m, Complex z);
Complex reciprocal_f(const MeasureSpec& m, Complex z);
Complex herglotz(const MeasureSpec& m, Complex z);  // Circle, |z| < 1

// From-H analytic continuation through density pieces; Im z >= 0. Used by boundary
// solvers; boundary values at real z inside a piece come out with Im G = -pi*density.
Complex cauchy_from_h(const MeasureSpec& m, Complex z);
Complex f_from_h(const MeasureSpec& m, Complex z);
Complex psi_from_h(const MeasureSpec& m, Complex z);  // PositiveHalfLine, Re z > 0 boundary ok
Complex eta_from_h(const MeasureSpec& m, Complex z);

// Quadrature-only paths, for cross-checking the closed forms.
Complex cauchy_by_quadrature(const MeasureSpec& m, Complex z);
Complex psi_by_quadrature(const MeasureSpec& m, Complex z);

// sum over sigma of (1+t^2)/|z-t|^2 (finite part) + infinity_mass (its t->inf limit).
double poisson_sum(const MeasureSpec& sigma, Complex z);
// Circle: integral of 1/|t-z|^2 dsigma.
double poisson_sum_circle(const MeasureSpec& sigma, Complex z);

// integral of f against the measure (pieces by quadrature, atoms directly).
double integrate_function(const MeasureSpec& m, const std::function<double(double)>& f);

}  // namespace transforms

// Exact definite integrals of r(t) = poly_num(t) / (t-pole)^pole_order against the
// exact polynomial pieces and exact atoms. Fails (returns nullopt) if a log term with
// a nonzero coefficient appears or exact data is missing.
std::optional<Rational> exact_integral_rational_kernel(const MeasureSpec& m, const PolyQ& num,
                                                       const Rational& pole, int pole_order);

}  // namespace freelab
