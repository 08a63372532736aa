// fluctuations.hpp -- Gaussian fluctuations around the symmetry-broken
// saddle point: the per-mode 3x3 coupling matrix whose eigenvalues are the
// squared collective-mode frequencies, the three dispersion branches
// (one Goldstone, two amplitude modes), their closed-form gaps and the
// Goldstone velocity, an independent symplectic route to the same spectrum,
// and the long-wavelength (continuum) substitution.
//
// The textbook m_{+-}(k) = (1 +- sqrt(Delta_0/Delta_k))^{-1} parametrization
// diverges at the zone center; everything here is written in terms of
// mu_{+-} = 1/m_{+-} = 1 +- sqrt(Delta_0/Delta_k), which is finite for all k
// and equals the m-form entrywise wherever the latter is defined.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <numbers>
#include <utility>
#include <vector>

#include "cjt/errors.hpp"
#include "cjt/meanfield.hpp"
#include "cjt/numerics/jacobi.hpp"
#include "cjt/numerics/parallel.hpp"

namespace cjt {

struct FluctuationMatrix {
    int k_index{0};
    Matrix B;             // symmetric 3x3, eigenvalues are omega^2
    double omega_cap{0.0}; // renormalized spin frequency Omega
    double eps_sq{0.0};    // (Delta_k^2 + Omega^2)/2
    double mu_plus{0.0};   // 1 + sqrt(Delta_0/Delta_k), in [1, 2]
    double mu_minus{0.0};  // 1 - sqrt(Delta_0/Delta_k), in [0, 1)
};

struct BranchSpectrum {
    std::vector<int> k_index;
    std::vector<double> wavenumber;             // 2 pi k / N labels
    std::vector<std::array<double, 3>> omega;   // ascending per k
};

namespace detail {

// Broken-phase scalars plus the mode-energy table used by every fluctuation
// routine. For uniform NN chains the energies carry the wavenumber labeling
// k = 0..N-1 of the closed form; explicit lattices use ascending mode order.
struct BrokenContext {
    int n_sites{0};
    double g_c{0.0};
    double omega_cap{0.0};
    double sin_theta{0.0};
    double cos_theta{0.0};
    double delta0{0.0};
    std::vector<double> delta_k;
    bool nn_band{false};
    double band_minimum{0.0};   // Delta of the NN band form
    double band_curvature{0.0}; // t of the NN band form
};

inline BrokenContext broken_context(const ModelParams& p) {
    // validates translation invariance and the center-of-mass band minimum
    const MeanFieldState mf = homogeneous_saddle_point(p);
    if (mf.phase != Phase::Broken)
        throw std::domain_error(
            "fluctuations: g <= g_c; the fluctuation theory is derived in the "
            "symmetry-broken phase");
    BrokenContext c;
    c.n_sites = p.lattice.n_sites;
    c.g_c = critical_coupling(p);
    c.cos_theta = std::cos(mf.theta.front());
    c.sin_theta = std::sin(mf.theta.front());
    c.omega_cap = p.omega_z / std::abs(c.cos_theta);
    if (p.lattice.kind == HoppingSpec::Kind::NNPeriodic && p.lattice.uniform_onsite()) {
        c.nn_band = true;
        c.band_curvature = -p.lattice.amplitude;
        c.band_minimum = p.lattice.onsite.front() - 2.0 * c.band_curvature;
        c.delta_k.resize(c.n_sites);
        for (int k = 0; k < c.n_sites; ++k)
            c.delta_k[k] = c.band_minimum +
                           2.0 * c.band_curvature *
                               (1.0 - std::cos(2.0 * std::numbers::pi * k / c.n_sites));
        c.delta0 = c.band_minimum;
    } else {
        c.delta_k = normal_modes(p.lattice).energies;
        c.delta0 = c.delta_k.front();
    }
    return c;
}

inline Matrix coupling_block(const BrokenContext& c, double delta_k) {
    const double ratio = std::sqrt(c.delta0 / delta_k);
    const double mu_p = 1.0 + ratio;
    const double mu_m = 1.0 - ratio;
    const double eps_sq = 0.5 * (delta_k * delta_k + c.omega_cap * c.omega_cap);
    const double gc_sq = c.g_c * c.g_c;
    Matrix b(3, 3);
    b(0, 0) = delta_k * delta_k;
    b(1, 1) = eps_sq * mu_p;
    b(2, 2) = eps_sq * mu_m;
    b(0, 1) = b(1, 0) = -gc_sq * std::sqrt(2.0 * delta_k * mu_p / c.delta0);
    b(0, 2) = b(2, 0) = -gc_sq * std::sqrt(2.0 * delta_k * mu_m / c.delta0);
    b(1, 2) = b(2, 1) = (eps_sq - delta_k * delta_k) * std::sqrt(mu_p * mu_m);
    return b;
}

// squared frequencies -> frequencies, with the clamping policy: tiny negative
// eigenvalues from rounding are clamped to zero, anything clearly negative
// signals an invalid saddle point
inline std::array<double, 3> frequencies_from_squares(const std::vector<double>& w2,
                                                      double scale) {
    const double clamp_floor = -1e-12 * std::max(1.0, scale);
    const double error_floor = -1e-9 * std::max(1.0, scale);
    std::array<double, 3> w{};
    for (int i = 0; i < 3; ++i) {
        double v = w2[i];
        if (v < error_floor)
            throw std::domain_error("fluctuations: unstable fluctuation spectrum");
        if (v < 0.0 && v >= clamp_floor) v = 0.0;
        if (v < 0.0) throw std::domain_error("fluctuations: unstable fluctuation spectrum");
        w[i] = std::sqrt(v);
    }
    return w;
}

// Real roots of x^3 + a2 x^2 + a1 x + a0 (trigonometric method); used only by
// the conditioning fallback of the symplectic route.
inline std::array<double, 3> cubic_real_roots(double a2, double a1, double a0) {
    const double p = a1 - a2 * a2 / 3.0;
    const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    const double shift = -a2 / 3.0;
    std::array<double, 3> r{};
    if (std::abs(p) < 1e-30) {
        const double root = std::cbrt(-q);
        r = {root + shift, root + shift, root + shift};
    } else {
        const double m = 2.0 * std::sqrt(std::max(-p / 3.0, 0.0));
        double arg = 3.0 * q / (p * m);
        arg = std::clamp(arg, -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int i = 0; i < 3; ++i)
            r[i] = m * std::cos(phi - 2.0 * std::numbers::pi * i / 3.0) + shift;
    }
    std::sort(r.begin(), r.end());
    return r;
}

} // namespace detail

// Omega = omega_z / |cos theta| = omega_z g^2 / g_c^2 in the broken phase.
inline double renormalized_frequency(const ModelParams& p) {
    return detail::broken_context(p).omega_cap;
}

inline FluctuationMatrix fluctuation_matrix(const ModelParams& p, int k_index) {
    const detail::BrokenContext c = detail::broken_context(p);
    if (k_index < 0 || k_index >= c.n_sites)
        throw std::invalid_argument("fluctuation_matrix: mode index out of range");
    const double dk = c.delta_k[k_index];
    FluctuationMatrix f;
    f.k_index = k_index;
    f.B = detail::coupling_block(c, dk);
    f.omega_cap = c.omega_cap;
    f.eps_sq = 0.5 * (dk * dk + c.omega_cap * c.omega_cap);
    const double ratio = std::sqrt(c.delta0 / dk);
    f.mu_plus = 1.0 + ratio;
    f.mu_minus = 1.0 - ratio;
    return f;
}

// The three collective branches over a grid of mode indices, sorted ascending
// per k; grid points are evaluated concurrently and assembled in index order.
inline BranchSpectrum branch_dispersion(const ModelParams& p, const std::vector<int>& k_grid,
                                        int workers = 0) {
    const detail::BrokenContext c = detail::broken_context(p);
    for (int k : k_grid)
        if (k < 0 || k >= c.n_sites)
            throw std::invalid_argument("branch_dispersion: mode index out of range");
    BranchSpectrum spec;
    spec.k_index = k_grid;
    spec.wavenumber.resize(k_grid.size());
    spec.omega.resize(k_grid.size());
    parallel_for(
        static_cast<int>(k_grid.size()),
        [&](int i) {
            const int k = k_grid[i];
            const Matrix b = detail::coupling_block(c, c.delta_k[k]);
            const EigenResult e = symmetric_eigen(b);
            spec.wavenumber[i] = 2.0 * std::numbers::pi * k / c.n_sites;
            spec.omega[i] = detail::frequencies_from_squares(e.values, max_abs(b));
        },
        workers);
    return spec;
}

// Closed-form amplitude gaps (Delta_-, Delta_+):
//   Delta_{+-}^2 = Omega^2/2 + Delta_0^2 +- sqrt(Omega^4/4 + 4 g_c^4).
inline std::pair<double, double> amplitude_gaps(const ModelParams& p) {
    const detail::BrokenContext c = detail::broken_context(p);
    const double om2 = c.omega_cap * c.omega_cap;
    const double root = std::sqrt(om2 * om2 / 4.0 + 4.0 * std::pow(c.g_c, 4));
    const double base = om2 / 2.0 + c.delta0 * c.delta0;
    return {std::sqrt(base - root), std::sqrt(base + root)};
}

// Goldstone velocity of the uniform NN chain:
//   c_s = 2 g^2 sin(theta) sqrt(t Delta / (Delta^4 + 4 g^4 sin^2(theta))).
inline double goldstone_slope(const ModelParams& p) {
    const detail::BrokenContext c = detail::broken_context(p);
    if (!c.nn_band || c.band_curvature < 0.0)
        throw std::domain_error(
            "goldstone_slope: closed form requires a uniform NN chain with positive "
            "band curvature");
    const double d = c.delta0;
    const double s = c.sin_theta;
    const double g4 = std::pow(p.g, 4);
    return 2.0 * p.g * p.g * s *
           std::sqrt(c.band_curvature * d / (std::pow(d, 4) + 4.0 * g4 * s * s));
}

// Independent spectrum route built from the coupled-oscillator kinetic and
// potential pair in the (x, y, z) oscillator order:
//   V = [[Dk^2, 0, -2 gc^2 sqrt(Dk/D0)], [0, Dk^2, 0], [.., 0, Omega^2]]
//   T = [[1,0,0],[0,1,-s],[0,-s,1]],  s = sqrt(D0/Dk).
// The squared frequencies are the eigenvalues of T V, computed through the
// symmetric similarity V^{1/2} T V^{1/2} whenever V is positive definite.
inline std::array<double, 3> symplectic_oracle(const ModelParams& p, int k_index) {
    const detail::BrokenContext c = detail::broken_context(p);
    if (k_index < 0 || k_index >= c.n_sites)
        throw std::invalid_argument("symplectic_oracle: mode index out of range");
    const double dk = c.delta_k[k_index];
    const double s = std::sqrt(c.delta0 / dk);
    const double off = -2.0 * c.g_c * c.g_c * std::sqrt(dk / c.delta0);
    const Matrix v{{dk * dk, 0.0, off}, {0.0, dk * dk, 0.0}, {off, 0.0, c.omega_cap * c.omega_cap}};
    const Matrix t{{1.0, 0.0, 0.0}, {0.0, 1.0, -s}, {0.0, -s, 1.0}};

    const EigenResult ev = symmetric_eigen(v);
    if (ev.values.front() > 0.0) {
        const Matrix vh = matrix_sqrt_spd(v);
        const Matrix m = matmul(vh, matmul(t, vh));
        const EigenResult e = symmetric_eigen(m);
        return detail::frequencies_from_squares(e.values, max_abs(m));
    }
    // conditioning fallback: roots of the characteristic polynomial of T V
    std::cerr << "symplectic_oracle: potential block not positive definite, "
                 "falling back to the characteristic polynomial of T*V\n";
    const Matrix tv = matmul(t, v);
    const double tr = tv(0, 0) + tv(1, 1) + tv(2, 2);
    const double c2 = tv(0, 0) * tv(1, 1) - tv(0, 1) * tv(1, 0) + tv(0, 0) * tv(2, 2) -
                      tv(0, 2) * tv(2, 0) + tv(1, 1) * tv(2, 2) - tv(1, 2) * tv(2, 1);
    const double det =
        tv(0, 0) * (tv(1, 1) * tv(2, 2) - tv(1, 2) * tv(2, 1)) -
        tv(0, 1) * (tv(1, 0) * tv(2, 2) - tv(1, 2) * tv(2, 0)) +
        tv(0, 2) * (tv(1, 0) * tv(2, 1) - tv(1, 1) * tv(2, 0));
    const std::array<double, 3> roots = detail::cubic_real_roots(-tr, c2, -det);
    return detail::frequencies_from_squares({roots[0], roots[1], roots[2]}, max_abs(tv));
}

// Position and momentum transformation matrices that decouple the oscillator
// action into the coupling-matrix form: q_old = Q q_new, p_old = P p_new with
// P^T T P = 1, Q^T V Q = B and Q^T P = 1. Singular at the zone center where
// m_-(0) diverges.
inline std::pair<Matrix, Matrix> appendix_transform_matrices(const ModelParams& p, int k_index) {
    const detail::BrokenContext c = detail::broken_context(p);
    if (k_index <= 0 || k_index >= c.n_sites) {
        if (k_index == 0)
            throw std::domain_error(
                "appendix_transform_matrices: non-invertible at the zone center");
        throw std::invalid_argument("appendix_transform_matrices: mode index out of range");
    }
    const double dk = c.delta_k[k_index];
    if (std::abs(dk - c.delta0) <= 1e-14 * c.delta0)
        throw std::domain_error("appendix_transform_matrices: non-invertible at the zone center");
    const double s = std::sqrt(c.delta0 / dk);
    const double m_p = 1.0 / (1.0 + s);
    const double m_m = 1.0 / (1.0 - s);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix q{{1.0, 0.0, 0.0},
             {0.0, -inv_sqrt2 / std::sqrt(m_p), inv_sqrt2 / std::sqrt(m_m)},
             {0.0, inv_sqrt2 / std::sqrt(m_p), inv_sqrt2 / std::sqrt(m_m)}};
    Matrix pm{{1.0, 0.0, 0.0},
              {0.0, -inv_sqrt2 * std::sqrt(m_p), inv_sqrt2 * std::sqrt(m_m)},
              {0.0, inv_sqrt2 * std::sqrt(m_p), inv_sqrt2 * std::sqrt(m_m)}};

    // self-check of the canonical pairing and of both quadratic forms
    const double off = -2.0 * c.g_c * c.g_c * std::sqrt(dk / c.delta0);
    const Matrix v{{dk * dk, 0.0, off}, {0.0, dk * dk, 0.0}, {off, 0.0, c.omega_cap * c.omega_cap}};
    const Matrix t{{1.0, 0.0, 0.0}, {0.0, 1.0, -s}, {0.0, -s, 1.0}};
    const Matrix b = detail::coupling_block(c, dk);
    const double scale = std::max(1.0, max_abs(b));
    if (max_abs_diff(matmul(transpose(pm), matmul(t, pm)), Matrix::identity(3)) > 1e-10 ||
        max_abs_diff(matmul(transpose(q), matmul(v, q)), b) > 1e-10 * scale ||
        max_abs_diff(matmul(transpose(q), pm), Matrix::identity(3)) > 1e-10)
        throw std::runtime_error("appendix_transform_matrices: canonical check failed");
    return {std::move(q), std::move(pm)};
}

enum class ContinuumOffset {
    OffsetFree, // Delta_k ~ Delta + t (k a)^2, matches the discrete chain at k -> 0
    PaperForm   // Delta_k ~ Delta - t d + t (k a)^2
};

// Branch frequencies with the boson dispersion replaced by its long-wavelength
// quadratic form on a d-dimensional cubic lattice of spacing a. Both offset
// conventions reduce to band minimum + t (k a)^2; they differ only in where
// the band minimum sits, which feeds g_c and Omega.
inline BranchSpectrum continuum_dispersion(const ModelParams& p, int d, double a,
                                           const std::vector<double>& k_values,
                                           ContinuumOffset offset = ContinuumOffset::OffsetFree) {
    p.validate();
    if (d < 1) throw std::invalid_argument("continuum_dispersion: d >= 1 required");
    if (p.lattice.kind != HoppingSpec::Kind::NNPeriodic || !p.lattice.uniform_onsite())
        throw std::domain_error("continuum_dispersion: uniform NN chain required");
    const double t_band = -p.lattice.amplitude;
    const double delta_band = p.lattice.onsite.front() - 2.0 * t_band;
    if (t_band <= 0.0)
        throw std::domain_error("continuum_dispersion: positive band curvature required");
    const double delta0 =
        offset == ContinuumOffset::PaperForm ? delta_band - t_band * d : delta_band;
    if (delta0 <= 0.0) throw std::domain_error("continuum_dispersion: unstable boson sector");

    const double gc = std::sqrt(delta0 * p.omega_z / 2.0);
    if (p.g <= gc)
        throw std::domain_error("continuum_dispersion: g <= g_c for the continuum band");
    detail::BrokenContext c;
    c.n_sites = static_cast<int>(k_values.size());
    c.g_c = gc;
    c.cos_theta = -(gc * gc) / (p.g * p.g);
    c.sin_theta = std::sqrt(1.0 - c.cos_theta * c.cos_theta);
    c.omega_cap = p.omega_z / std::abs(c.cos_theta);
    c.delta0 = delta0;

    BranchSpectrum spec;
    spec.k_index.resize(k_values.size());
    spec.wavenumber = k_values;
    spec.omega.resize(k_values.size());
    for (std::size_t i = 0; i < k_values.size(); ++i) {
        spec.k_index[i] = static_cast<int>(i);
        const double ka = k_values[i] * a;
        const double dk = delta0 + t_band * ka * ka;
        const Matrix b = detail::coupling_block(c, dk);
        const EigenResult e = symmetric_eigen(b);
        spec.omega[i] = detail::frequencies_from_squares(e.values, max_abs(b));
    }
    return spec;
}

} // namespace cjt
