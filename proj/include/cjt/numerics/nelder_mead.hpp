// nelder_mead.hpp -- derivative-free simplex minimization
//
// Standard coefficients (reflection 1, expansion 2, contraction 0.5,
// shrink 0.5), fully deterministic. Serves as the independent oracle for
// the closed-form saddle-point results, so it must not share any code with
// the mean-field solvers.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace cjt {

struct MinimizeResult {
    std::vector<double> x;
    double value{0.0};
    int evaluations{0};
    bool converged{false};
};

inline MinimizeResult nelder_mead_min(const std::function<double(const std::vector<double>&)>& f,
                                      const std::vector<double>& x0, double tol, int max_eval,
                                      double initial_step = 0.1) {
    const int n = static_cast<int>(x0.size());
    if (n == 0) throw std::invalid_argument("nelder_mead_min: empty start point");

    // nonzero coordinates get a 5% relative step, zero coordinates an absolute one
    std::vector<std::vector<double>> xs(n + 1, x0);
    for (int i = 0; i < n; ++i)
        xs[i + 1][i] += (x0[i] != 0.0 ? 0.05 * std::abs(x0[i]) : initial_step);

    std::vector<double> fs(n + 1);
    int evals = 0;
    for (int i = 0; i <= n; ++i) fs[i] = (++evals, f(xs[i]));

    auto order = [&]() {
        std::vector<int> idx(n + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::vector<std::vector<double>> xs2(n + 1);
        std::vector<double> fs2(n + 1);
        for (int i = 0; i <= n; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs.swap(xs2);
        fs.swap(fs2);
    };

    auto diameter = [&]() {
        double d = 0.0;
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j < n; ++j) d = std::max(d, std::abs(xs[i][j] - xs[0][j]));
        return d;
    };

    MinimizeResult res;
    while (true) {
        order();
        if (diameter() <= tol) {
            res.converged = true;
            break;
        }
        if (evals >= max_eval) break;

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) centroid[j] += xs[i][j] / n;

        auto along = [&](double coeff) {
            std::vector<double> p(n);
            for (int j = 0; j < n; ++j) p[j] = centroid[j] + coeff * (centroid[j] - xs[n][j]);
            return p;
        };

        const std::vector<double> xr = along(1.0);
        const double fr = (++evals, f(xr));
        if (fr < fs[0]) {
            const std::vector<double> xe = along(2.0);
            const double fe = (++evals, f(xe));
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const bool outside = fr < fs[n];
            std::vector<double> xc(n);
            for (int j = 0; j < n; ++j)
                xc[j] = centroid[j] + 0.5 * ((outside ? xr[j] : xs[n][j]) - centroid[j]);
            const double fc = (++evals, f(xc));
            if (fc < (outside ? fr : fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j) xs[i][j] = xs[0][j] + 0.5 * (xs[i][j] - xs[0][j]);
                    fs[i] = (++evals, f(xs[i]));
                }
            }
        }
    }

    order();
    res.x = xs[0];
    res.value = fs[0];
    res.evaluations = evals;
    return res;
}

} // namespace cjt
