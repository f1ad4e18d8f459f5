#pragma once

// Derivative-free Nelder-Mead minimizer on R^n. Converged when the spread of
// objective values across the simplex falls below f_tol.

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace discordant {

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value;
    int iterations;
    bool converged;
};

template <typename F>
NelderMeadResult nelder_mead(F&& f, const Eigen::VectorXd& x0, double step, int max_iters, double f_tol) {
    const Eigen::Index n = x0.size();
    if (n == 0) return {x0, f(x0), 0, true};

    std::vector<Eigen::VectorXd> pts(static_cast<size_t>(n + 1), x0);
    std::vector<double> vals(static_cast<size_t>(n + 1));
    for (Eigen::Index k = 0; k < n; ++k) pts[static_cast<size_t>(k + 1)](k) += step;
    for (size_t k = 0; k < pts.size(); ++k) vals[k] = f(pts[k]);

    std::vector<size_t> order(pts.size());
    int iter = 0;
    bool converged = false;
    for (; iter < max_iters; ++iter) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        const size_t best = order.front();
        const size_t worst = order.back();
        const size_t second = order[order.size() - 2];
        if (vals[worst] - vals[best] < f_tol) {
            converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (size_t k = 0; k + 1 < order.size(); ++k) centroid += pts[order[k]];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
        const double f_reflected = f(reflected);
        if (f_reflected < vals[best]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
            const double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                pts[worst] = expanded;
                vals[worst] = f_expanded;
            } else {
                pts[worst] = reflected;
                vals[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < vals[second]) {
            pts[worst] = reflected;
            vals[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < vals[worst];
        const Eigen::VectorXd contracted = outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                                                   : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
        const double f_contracted = f(contracted);
        if (f_contracted < (outside ? f_reflected : vals[worst])) {
            pts[worst] = contracted;
            vals[worst] = f_contracted;
            continue;
        }
        // Shrink towards the best vertex.
        for (size_t k = 0; k < pts.size(); ++k) {
            if (k == best) continue;
            pts[k] = pts[best] + 0.5 * (pts[k] - pts[best]);
            vals[k] = f(pts[k]);
        }
    }
    const auto best = static_cast<size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best], iter, converged};
}

}  // namespace discordant
