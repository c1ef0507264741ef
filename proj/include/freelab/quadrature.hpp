#pragma once

#include <functional>
#include <vector>

#include "freelab/common.hpp"

namespace freelab::quad {

// Batch integrand: fills out[i] = f(t[i]) for the panel nodes.
using BatchFn = std::function<void(const double* t, std::size_t n, Complex* out)>;

struct Options {
    double rel_tol = 1e-11;
    double abs_tol = 1e-14;
    int max_depth = 60;
    // When set, a panel stack whose partial sum magnitude exceeds this while still
    // refining at max depth is reported as divergent instead of ErrorCode::NoConvergence.
    double divergence_threshold = 0.0;
};

struct Result {
    Complex value{};
    double error = 0.0;
    bool converged = true;
    bool divergent = false;  // only with divergence_threshold > 0
};

// Adaptive Gauss-Kronrod (G7,K15) panels over [a,b].
Result integrate(const BatchFn& f, double a, double b, const Options& opt = {});

// Same, splitting first at the interior points in `splits` (singularity guards).
Result integrate_split(const BatchFn& f, double a, double b, const std::vector<double>& splits,
                       const Options& opt = {});

}  // namespace freelab::quad
