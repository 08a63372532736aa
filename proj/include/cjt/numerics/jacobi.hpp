// jacobi.hpp -- cyclic Jacobi eigensolver for real symmetric matrices
//
// Deterministic sweep order, eigenpairs returned ascending. Accurate and
// dependency-free; everything in this project is desk scale so the O(n^3)
// per sweep cost is acceptable.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cjt/errors.hpp"
#include "cjt/matrix.hpp"

namespace cjt {

struct EigenResult {
    std::vector<double> values; // ascending
    Matrix vectors;             // orthonormal columns, vectors(:,i) pairs with values[i]
};

namespace detail {

inline double offdiag_norm(const Matrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
}

} // namespace detail

inline EigenResult symmetric_eigen(const Matrix& input) {
    if (!input.square()) throw std::invalid_argument("symmetric_eigen: square matrix expected");
    const int n = input.rows();
    const double scale = std::max(1.0, max_abs(input));
    if (max_asymmetry(input) > 1e-12 * scale)
        throw std::invalid_argument("symmetric_eigen: matrix is not symmetric to 1e-12");

    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));
    Matrix v = Matrix::identity(n);

    const double target = 1e-14 * std::max(frobenius_norm(a), 1e-300);
    const int max_sweeps = 100;
    int sweep = 0;
    while (detail::offdiag_norm(a) > target) {
        if (++sweep > max_sweeps)
            throw convergence_error("symmetric_eigen: Jacobi sweeps exhausted",
                                    detail::offdiag_norm(a));
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p), arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) < a(j, j); });

    EigenResult out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        out.values[i] = a(order[i], order[i]);
        for (int r = 0; r < n; ++r) out.vectors(r, i) = v(r, order[i]);
    }
    return out;
}

// Symmetric square root of a symmetric positive definite matrix.
inline Matrix matrix_sqrt_spd(const Matrix& a) {
    const EigenResult e = symmetric_eigen(a);
    if (!e.values.empty() && e.values.front() <= 0.0)
        throw std::domain_error("matrix_sqrt_spd: matrix is not positive definite");
    const int n = a.rows();
    Matrix s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += e.vectors(i, k) * std::sqrt(e.values[k]) * e.vectors(j, k);
            s(i, j) = acc;
        }
    return s;
}

} // namespace cjt
