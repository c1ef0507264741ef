#pragma once

#include <string>
#include <vector>

#include "freelab/boundary.hpp"
#include "freelab/generators.hpp"

namespace freelab {

enum class PointFlag { Ok, Singular, ZeroSet };

struct DensityProfile {
    Carrier carrier = Carrier::RealLine;
    std::vector<double> grid;      // locations on R / R+, angles in [0,2pi) on T
    std::vector<double> values;    // density wrt dt (R, R+) or dtheta (T)
    std::vector<double> values_q;  // R+ only: q wrt dx/x, i.e. t p(t)
    std::vector<PointFlag> flags;
    std::vector<Atom> atoms;
    std::vector<double> discontinuities;  // D set (locations / angles)
    std::vector<double> zero_set;         // grid locations where the boundary degenerates
    std::string description;
    double clamp_magnitude = 0.0;
};

DensityProfile density_infdiv(const GeneratorSpec& g, const std::vector<double>& grid);
DensityProfile density_convolution(const MeasureSpec& mu1, const GeneratorSpec& g,
                                   const std::vector<double>& grid);
DensityProfile density_semigroup(const MeasureSpec& nu, double order, GeneratorKind kind,
                                 const std::vector<double>& grid);

// Per-point, fully re-solved evaluation (no interpolation).
double density_value(const SubordinationContext& ctx, double location);

std::vector<Atom> detect_atoms_infdiv(const GeneratorSpec& g);
std::vector<Atom> detect_atoms_convolution(const MeasureSpec& mu1, const GeneratorSpec& g);
std::vector<Atom> detect_atoms_semigroup(const MeasureSpec& nu, double order, GeneratorKind kind);

double profile_mass(const DensityProfile& p);

// Default evaluation grid: R+ grids are generated in the r parameter and pushed
// through 1/h(r); R and T grids are uniform.
std::vector<double> default_grid(const SubordinationContext& ctx, std::size_t n);

}  // namespace freelab
