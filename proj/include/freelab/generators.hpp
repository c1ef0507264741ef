#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "freelab/measures.hpp"

namespace freelab {

enum class GeneratorKind { AdditiveReal, MultiplicativePositive, MultiplicativeCircle };

// Levy-Hincin pair (gamma, sigma). gamma is an angle for MultiplicativeCircle so that
// |gamma| = 1 holds exactly.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::AdditiveReal;
    double gamma = 0.0;
    MeasureSpec sigma;
    std::optional<std::pair<Rational, Rational>> exact_gamma;  // (gamma) as rational, unused angle

    double sigma_total() const { return sigma.total_mass(); }
    Complex gamma_value() const {
        return kind == GeneratorKind::MultiplicativeCircle ? std::polar(1.0, gamma)
                                                           : Complex(gamma, 0.0);
    }
    bool nondegenerate() const { return !sigma.is_zero(); }

    static GeneratorSpec additive(double gamma, MeasureSpec sigma);
    static GeneratorSpec positive(double gamma, MeasureSpec sigma);
    static GeneratorSpec circle(double gamma_angle, MeasureSpec sigma);
    // sigma = beta * delta_0 on R: the semicircle-type generator (free Brownian).
    static GeneratorSpec semicircle_type(double gamma, double beta);
};

GeneratorSpec validate(const GeneratorSpec& g);

// The integral part of Phi: N_sigma (R), u (R+, with -z for mass at infinity), H_sigma (T).
// For real kinds the value is the from-H continuation when Im z == 0.
Complex u_eval(const GeneratorSpec& g, Complex z);
Complex phi_eval(const GeneratorSpec& g, Complex z);
GeneratorSpec dual_generator(const GeneratorSpec& g);

enum class SubordinationMode { PureInfDiv, SurrogatePsi, PowerAdditive, PowerPositive, PowerCircle };

struct SubordinationContext {
    GeneratorKind kind = GeneratorKind::AdditiveReal;
    SubordinationMode mode = SubordinationMode::PureInfDiv;
    GeneratorSpec base;                                 // Pure/Surrogate modes
    std::shared_ptr<const MeasureSpec> companion;       // mu1 (Surrogate) or nu (power modes)
    double order = 0.0;                                 // beta/k for power modes
    std::function<Complex(Complex)> companion_eta;      // from-H eta of the companion
    std::function<Complex(Complex)> companion_f;        // from-H F of the companion (additive)
    std::string description;

    bool additive() const { return kind == GeneratorKind::AdditiveReal; }
    bool circle() const { return kind == GeneratorKind::MultiplicativeCircle; }
};

// v(z): for multiplicative kinds Psi = C z exp(v); for additive kinds Psi = c + z + v
// with c = gamma (Pure/Surrogate) or 0 (PowerAdditive).
Complex exponent_eval(const SubordinationContext& ctx, Complex z);
Complex psi_eval(const SubordinationContext& ctx, Complex z);

SubordinationContext make_infdiv_context(const GeneratorSpec& g);
SubordinationContext make_convolution_context(const MeasureSpec& mu1, const GeneratorSpec& g);
SubordinationContext power_generator(const MeasureSpec& nu, double order, GeneratorKind kind);

struct SurrogatePair {
    double beta = 0.0;
    double gamma_prime = 0.0;  // angle for the circle kind
    GeneratorSpec nu2;
    std::function<Complex(Complex)> nu1_transform;  // psi_{nu1} (mult) or G_{nu1} (additive)
    SubordinationContext rho1_ctx;                  // shared subordination function
};

SurrogatePair surrogate_pair(const GeneratorSpec& g, const MeasureSpec& mu1);

// Fixed-point subordination for the square nu x| nu on the circle (preprocessing for
// real powers when eta_nu vanishes in D \ {0}).
Complex eta_square_circle(const MeasureSpec& nu, Complex z);

}  // namespace freelab
