#include "freelab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace freelab::quad {
namespace {

// (G7, K15) nodes on [-1,1]; Gauss weight 0 marks Kronrod-only nodes.
constexpr int kNodes = 15;
constexpr double kX[kNodes] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kWK[kNodes] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kWG[kNodes] = {
    0.0, 0.129484966168870, 0.0, 0.279705391489277, 0.0, 0.381830050505119, 0.0,
    0.417959183673469,
    0.0, 0.381830050505119, 0.0, 0.279705391489277, 0.0, 0.129484966168870, 0.0};

struct Panel {
    double a, b;
    int depth;
};

void eval_panel(const BatchFn& f, double a, double b, Complex& k15, double& err) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double ts[kNodes];
    Complex fs[kNodes];
    for (int i = 0; i < kNodes; ++i) ts[i] = mid + half * kX[i];
    f(ts, kNodes, fs);
    Complex sk{}, sg{};
    for (int i = 0; i < kNodes; ++i) {
        sk += kWK[i] * fs[i];
        if (kWG[i] != 0.0) sg += kWG[i] * fs[i];
    }
    k15 = half * sk;
    err = std::abs(half * (sk - sg));
}

}  // namespace

Result integrate_split(const BatchFn& f, double a, double b, const std::vector<double>& splits,
                       const Options& opt) {
    Result res;
    if (!(a < b)) return res;
    std::vector<Panel> stack;
    std::vector<double> cuts{a};
    for (double s : splits)
        if (s > a && s < b) cuts.push_back(s);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i] < cuts[i + 1]) stack.push_back({cuts[i], cuts[i + 1], 0});

    Complex total{};
    double total_err = 0.0;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        Complex v;
        double e;
        eval_panel(f, p.a, p.b, v, e);
        bool ok = e <= opt.abs_tol || e <= opt.rel_tol * (std::abs(v) + std::abs(total));
        if (ok || p.depth >= opt.max_depth) {
            if (!ok) {
                if (opt.divergence_threshold > 0.0 &&
                    std::abs(total) + std::abs(v) > opt.divergence_threshold) {
                    res.divergent = true;
                } else {
                    res.converged = false;
                }
            }
            total += v;
            total_err += e;
            continue;
        }
        double mid = 0.5 * (p.a + p.b);
        stack.push_back({p.a, mid, p.depth + 1});
        stack.push_back({mid, p.b, p.depth + 1});
    }
    res.value = total;
    res.error = total_err;
    return res;
}

Result integrate(const BatchFn& f, double a, double b, const Options& opt) {
    return integrate_split(f, a, b, {}, opt);
}

}  // namespace freelab::quad
