// meanfield.hpp -- saddle-point (classical) problem of the cooperative
// E(x)e Jahn-Teller lattice: critical coupling, closed-form homogeneous
// solution, self-consistent solver for inhomogeneous chains, stationarity
// residual and the classical energy functional.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "cjt/errors.hpp"
#include "cjt/lattice.hpp"

namespace cjt {

struct ModelParams {
    double omega_z{1.0}; // spin splitting
    double g{0.0};       // Jahn-Teller coupling
    HoppingSpec lattice;

    void validate() const {
        if (!(omega_z > 0.0)) throw std::invalid_argument("ModelParams: omega_z > 0 required");
        if (g < 0.0) throw std::invalid_argument("ModelParams: g >= 0 required");
        lattice.validate();
    }
};

enum class Phase { Normal, Broken };

// Saddle-point configuration: spin angles per site, condensate amplitudes per
// mode (both chiralities), a phase label and the condensate density rho_bar.
struct MeanFieldState {
    std::vector<double> theta; // in [0, pi]
    std::vector<double> phi;   // in [0, 2 pi)
    std::vector<cxd> alpha_r;
    std::vector<cxd> alpha_l;
    Phase phase{Phase::Normal};
    double rho_bar{0.0};
};

inline MeanFieldState normal_state(int n_sites) {
    MeanFieldState s;
    s.theta.assign(n_sites, std::numbers::pi);
    s.phi.assign(n_sites, 0.0);
    s.alpha_r.assign(n_sites, cxd{});
    s.alpha_l.assign(n_sites, cxd{});
    s.phase = Phase::Normal;
    s.rho_bar = 0.0;
    return s;
}

inline double critical_coupling(const ModelParams& p) {
    p.validate();
    return std::sqrt(min_mode_energy(p.lattice) * p.omega_z / 2.0);
}

namespace detail {

inline bool is_circulant(const Matrix& t) {
    const int n = t.rows();
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            if (std::abs(t(j, l) - t((j + 1) % n, (l + 1) % n)) > 0.0) return false;
    return true;
}

inline bool translation_invariant(const HoppingSpec& spec) {
    if (!spec.uniform_onsite()) return false;
    if (spec.kind == HoppingSpec::Kind::NNPeriodic) return true;
    return is_circulant(spec.hopping);
}

// index of the uniform (center-of-mass) mode, or -1 if the band minimum is a
// different mode (e.g. positive NN amplitude, which condenses staggered)
inline int uniform_mode_index(const NormalModeBasis& basis) {
    const int n = basis.n_modes();
    const double target = 1.0 / std::sqrt(double(n));
    for (int j = 0; j < n; ++j)
        if (std::abs(basis.wavefunctions(0, j) - target) > 1e-8 * target) return -1;
    return 0;
}

} // namespace detail

// Closed-form saddle point of the translation-invariant chain. Below the
// critical coupling every spin points down and no condensate forms; above it
// the spins tilt to cos(theta) = -(g_c/g)^2 and both boson species condense
// in the uniform k=0 mode.
inline MeanFieldState homogeneous_saddle_point(const ModelParams& p) {
    p.validate();
    if (!detail::translation_invariant(p.lattice))
        throw std::invalid_argument(
            "homogeneous_saddle_point: lattice is not translation invariant; "
            "use general_saddle_point");
    const int n = p.lattice.n_sites;
    const NormalModeBasis basis = normal_modes(p.lattice);
    if (n > 1 && detail::uniform_mode_index(basis) != 0)
        throw std::domain_error(
            "homogeneous_saddle_point: band minimum is not the uniform mode; "
            "apply staggered_transform to the lattice first");
    const double delta0 = basis.energies.front();
    const double gc = std::sqrt(delta0 * p.omega_z / 2.0);

    MeanFieldState s = normal_state(n);
    if (p.g <= gc) return s;

    const double cos_theta = -(gc * gc) / (p.g * p.g);
    const double theta = std::acos(cos_theta);
    const double sin_theta = std::sin(theta);
    s.theta.assign(n, theta);
    s.phase = Phase::Broken;
    const double alpha0 = -(p.g * std::sqrt(double(n)) / (2.0 * delta0)) * sin_theta;
    s.alpha_r[0] = alpha0;
    s.alpha_l[0] = alpha0;
    s.rho_bar = std::pow(p.g / (2.0 * delta0) * sin_theta, 2);
    return s;
}

// Classical energy of an arbitrary field configuration:
//   E = sum_{gamma,k} Delta_k |alpha_{gamma,k}|^2 + (omega_z/2) sum_j cos(theta_j)
//     + (g/2) sum_{j,k} sin(theta_j) { e^{i phi_j} (b_{k,j} alpha_{r,k}
//                                      + b_{k,j} alpha*_{l,k}) + c.c. }
inline double classical_energy(const ModelParams& p, const MeanFieldState& s) {
    const NormalModeBasis basis = normal_modes(p.lattice);
    const int n = p.lattice.n_sites;
    double e = 0.0;
    for (int k = 0; k < n; ++k)
        e += basis.energies[k] * (std::norm(s.alpha_r[k]) + std::norm(s.alpha_l[k]));
    for (int j = 0; j < n; ++j) e += 0.5 * p.omega_z * std::cos(s.theta[j]);
    for (int k = 0; k < n; ++k) {
        // sum_j b_{k,j} sin(theta_j) e^{i phi_j}
        cxd w{};
        for (int j = 0; j < n; ++j)
            w += basis.wavefunctions(k, j) * std::sin(s.theta[j]) *
                 std::exp(cxd(0.0, s.phi[j]));
        e += p.g * std::real(w * s.alpha_r[k] + w * std::conj(s.alpha_l[k]));
    }
    return e;
}

// Max-norm of the stacked stationarity conditions: the two spin equations and
// the condensate self-consistency for both chiralities.
inline double saddle_residual(const ModelParams& p, const MeanFieldState& s) {
    const NormalModeBasis basis = normal_modes(p.lattice);
    const Matrix j_mat = coupling_matrix_J(p.g, basis);
    const int n = p.lattice.n_sites;
    double r = 0.0;
    for (int j = 0; j < n; ++j) {
        double h_cos = 0.0, h_sin = 0.0;
        for (int l = 0; l < n; ++l) {
            h_cos += j_mat(j, l) * std::sin(s.theta[l]) * std::cos(s.phi[j] - s.phi[l]);
            h_sin += j_mat(j, l) * std::sin(s.theta[l]) * std::sin(s.phi[j] - s.phi[l]);
        }
        r = std::max(r, std::abs(p.omega_z * std::sin(s.theta[j]) +
                                 std::cos(s.theta[j]) * h_cos));
        r = std::max(r, std::abs(h_sin));
    }
    for (int k = 0; k < n; ++k) {
        cxd sum_m{}, sum_p{};
        for (int j = 0; j < n; ++j) {
            const double b = basis.wavefunctions(k, j);
            sum_m += b * std::sin(s.theta[j]) * std::exp(cxd(0.0, -s.phi[j]));
            sum_p += b * std::sin(s.theta[j]) * std::exp(cxd(0.0, s.phi[j]));
        }
        const double w = p.g / (2.0 * basis.energies[k]);
        r = std::max(r, std::abs(s.alpha_r[k] + w * sum_m));
        r = std::max(r, std::abs(s.alpha_l[k] + w * sum_p));
    }
    return r;
}

namespace detail {

inline MeanFieldState assemble_state(const ModelParams& p, const NormalModeBasis& basis,
                                     const std::vector<double>& theta,
                                     const std::vector<double>& phi) {
    const int n = p.lattice.n_sites;
    MeanFieldState s;
    s.theta = theta;
    s.phi = phi;
    s.alpha_r.assign(n, cxd{});
    s.alpha_l.assign(n, cxd{});
    for (int k = 0; k < n; ++k) {
        cxd sum_m{}, sum_p{};
        for (int j = 0; j < n; ++j) {
            const double b = basis.wavefunctions(k, j);
            sum_m += b * std::sin(theta[j]) * std::exp(cxd(0.0, -phi[j]));
            sum_p += b * std::sin(theta[j]) * std::exp(cxd(0.0, phi[j]));
        }
        const double w = -p.g / (2.0 * basis.energies[k]);
        s.alpha_r[k] = w * sum_m;
        s.alpha_l[k] = w * sum_p;
    }
    double max_sin = 0.0;
    for (int j = 0; j < n; ++j) max_sin = std::max(max_sin, std::abs(std::sin(theta[j])));
    s.phase = max_sin > 1e-8 ? Phase::Broken : Phase::Normal;
    s.rho_bar = (std::norm(s.alpha_r[0]) + std::norm(s.alpha_l[0])) / (2.0 * n);
    return s;
}

} // namespace detail

struct SaddlePointResult {
    MeanFieldState state;
    int iterations{0};
    double residual{0.0};
    // set when the iteration converged to a stationary point lying above the
    // trivial (all spins down) branch, which is then returned instead
    bool fell_back_to_trivial{false};
};

// Damped fixed-point iteration on the spin stationarity equations, with the
// condensate eliminated through its own stationarity condition. The azimuthal
// angles relax by aligning each site with its exchange field; the first site
// is gauge-fixed to phi = 0. Both the trivial branch and the converged branch
// are evaluated and the lower-energy one is returned.
inline SaddlePointResult general_saddle_point(const ModelParams& p, const MeanFieldState& init,
                                              double tol = 1e-12, int max_iter = 5000,
                                              double damping = 0.5) {
    p.validate();
    const int n = p.lattice.n_sites;
    if (static_cast<int>(init.theta.size()) != n || static_cast<int>(init.phi.size()) != n)
        throw std::invalid_argument("general_saddle_point: init size mismatch");
    const NormalModeBasis basis = normal_modes(p.lattice);
    const Matrix j_mat = coupling_matrix_J(p.g, basis);

    std::vector<double> theta = init.theta;
    std::vector<double> phi = init.phi;
    const double gauge = phi.empty() ? 0.0 : phi.front();
    for (double& f : phi) f -= gauge;

    const MeanFieldState trivial = normal_state(n);
    const double trivial_energy = classical_energy(p, trivial);

    SaddlePointResult out;
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        // exchange field per site from the current angles
        std::vector<double> theta_target(n), phi_target(n);
        for (int j = 0; j < n; ++j) {
            cxd w{};
            for (int l = 0; l < n; ++l)
                w += j_mat(j, l) * std::sin(theta[l]) * std::exp(cxd(0.0, phi[l]));
            const double h = std::abs(w);
            phi_target[j] = h > 1e-300 ? std::arg(w) : phi[j];
            theta_target[j] = std::numbers::pi - std::atan2(h, p.omega_z);
        }
        const double gauge_shift = phi_target.front();
        for (double& f : phi_target) f -= gauge_shift;

        // accept the undamped target outright whenever it is already stationary
        MeanFieldState candidate = detail::assemble_state(p, basis, theta_target, phi_target);
        residual = saddle_residual(p, candidate);
        out.iterations = it;
        if (residual <= tol) {
            out.state = std::move(candidate);
            out.residual = residual;
            const double e = classical_energy(p, out.state);
            if (e > trivial_energy + 1e-12 * std::max(1.0, std::abs(trivial_energy))) {
                out.state = trivial;
                out.fell_back_to_trivial = true;
            }
            return out;
        }
        for (int j = 0; j < n; ++j)
            theta[j] = (1.0 - damping) * theta[j] + damping * theta_target[j];
        phi = phi_target;

        MeanFieldState damped = detail::assemble_state(p, basis, theta, phi);
        const double damped_residual = saddle_residual(p, damped);
        out.iterations = it;
        if (damped_residual <= tol) {
            out.state = std::move(damped);
            out.residual = damped_residual;
            const double e = classical_energy(p, out.state);
            if (e > trivial_energy + 1e-12 * std::max(1.0, std::abs(trivial_energy))) {
                out.state = trivial;
                out.fell_back_to_trivial = true;
            }
            return out;
        }
        residual = damped_residual;
    }
    throw convergence_error("general_saddle_point: no fixed point within max_iter", residual);
}

} // namespace cjt
