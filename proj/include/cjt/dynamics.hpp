// dynamics.hpp -- real-time classical precession dynamics of the coupled
// spin-boson fields.
//
// Convention note: the saddle-point equations of motion are derived in
// imaginary time; this integrator implements their Wick-rotated real-time
// analog, which is the form that supports conservation-law testing. The
// coupled system is
//   d n_j/dt       = (omega_z B + 2 g alpha_vec_j) x n_j,   B = [0,0,1]
//   i d alpha_r,k/dt = Delta_k alpha_r,k + (g/2) sum_j b_{k,j} (n_x,j - i n_y,j)
//   i d alpha_l,k/dt = Delta_k alpha_l,k + (g/2) sum_j b_{k,j} (n_x,j + i n_y,j)
// with alpha_vec_j the local in-plane field rebuilt from the mode amplitudes.
// Bloch vectors are NOT renormalized between steps; norm drift is an
// integration-quality observable.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "cjt/meanfield.hpp"
#include "cjt/numerics/rk4.hpp"

namespace cjt {

struct ClassicalField {
    std::vector<std::array<double, 3>> n; // Bloch vector per site
    std::vector<cxd> alpha_r;             // per mode
    std::vector<cxd> alpha_l;
};

struct BlochTrajectory {
    std::vector<double> times;
    std::vector<std::vector<std::array<double, 3>>> n; // [step][site]
    std::vector<std::vector<cxd>> alpha_r;             // [step][mode]
    std::vector<std::vector<cxd>> alpha_l;
};

inline ClassicalField to_classical_field(const MeanFieldState& s) {
    ClassicalField f;
    const int n = static_cast<int>(s.theta.size());
    f.n.resize(n);
    for (int j = 0; j < n; ++j)
        f.n[j] = {std::sin(s.theta[j]) * std::cos(s.phi[j]),
                  std::sin(s.theta[j]) * std::sin(s.phi[j]), std::cos(s.theta[j])};
    f.alpha_r = s.alpha_r;
    f.alpha_l = s.alpha_l;
    return f;
}

// Conserved U(1) charge of the classical flow.
inline double classical_charge(const ClassicalField& f) {
    double c = 0.0;
    for (std::size_t k = 0; k < f.alpha_r.size(); ++k)
        c += std::norm(f.alpha_r[k]) - std::norm(f.alpha_l[k]);
    for (const auto& nj : f.n) c += 0.5 * nj[2];
    return c;
}

// Classical energy of a Bloch-vector configuration (same functional as
// classical_energy, parametrized by n instead of the angles).
inline double field_energy(const ModelParams& p, const ClassicalField& f) {
    const NormalModeBasis basis = normal_modes(p.lattice);
    const int n = p.lattice.n_sites;
    double e = 0.0;
    for (int k = 0; k < n; ++k)
        e += basis.energies[k] * (std::norm(f.alpha_r[k]) + std::norm(f.alpha_l[k]));
    for (int j = 0; j < n; ++j) e += 0.5 * p.omega_z * f.n[j][2];
    for (int k = 0; k < n; ++k) {
        cxd w{};
        for (int j = 0; j < n; ++j)
            w += basis.wavefunctions(k, j) * cxd(f.n[j][0], f.n[j][1]);
        e += p.g * std::real(w * f.alpha_r[k] + w * std::conj(f.alpha_l[k]));
    }
    return e;
}

namespace detail {

// state layout: [n (3N)] [Re/Im alpha_r (2N)] [Re/Im alpha_l (2N)]
inline std::vector<double> pack_field(const ClassicalField& f) {
    const int n = static_cast<int>(f.n.size());
    std::vector<double> y(7 * n);
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < 3; ++c) y[3 * j + c] = f.n[j][c];
    for (int k = 0; k < n; ++k) {
        y[3 * n + 2 * k] = f.alpha_r[k].real();
        y[3 * n + 2 * k + 1] = f.alpha_r[k].imag();
        y[5 * n + 2 * k] = f.alpha_l[k].real();
        y[5 * n + 2 * k + 1] = f.alpha_l[k].imag();
    }
    return y;
}

inline ClassicalField unpack_field(const std::vector<double>& y, int n) {
    ClassicalField f;
    f.n.resize(n);
    f.alpha_r.resize(n);
    f.alpha_l.resize(n);
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < 3; ++c) f.n[j][c] = y[3 * j + c];
    for (int k = 0; k < n; ++k) {
        f.alpha_r[k] = cxd(y[3 * n + 2 * k], y[3 * n + 2 * k + 1]);
        f.alpha_l[k] = cxd(y[5 * n + 2 * k], y[5 * n + 2 * k + 1]);
    }
    return f;
}

} // namespace detail

inline BlochTrajectory evolve_classical(const ModelParams& p, const ClassicalField& initial,
                                        double dt, int steps) {
    p.validate();
    const int n = p.lattice.n_sites;
    if (static_cast<int>(initial.n.size()) != n ||
        static_cast<int>(initial.alpha_r.size()) != n ||
        static_cast<int>(initial.alpha_l.size()) != n)
        throw std::invalid_argument("evolve_classical: field size mismatch");
    const NormalModeBasis basis = normal_modes(p.lattice);
    const double g = p.g, wz = p.omega_z;

    auto rhs = [&](const std::vector<double>& y) {
        std::vector<double> d(7 * n, 0.0);
        // mode amplitudes -> site fields (real wavefunctions)
        std::vector<cxd> ar(n), al(n), ar_site(n), al_site(n);
        for (int k = 0; k < n; ++k) {
            ar[k] = cxd(y[3 * n + 2 * k], y[3 * n + 2 * k + 1]);
            al[k] = cxd(y[5 * n + 2 * k], y[5 * n + 2 * k + 1]);
        }
        for (int j = 0; j < n; ++j) {
            cxd sr{}, sl{};
            for (int k = 0; k < n; ++k) {
                const double b = basis.wavefunctions(k, j);
                sr += b * ar[k];
                sl += b * al[k];
            }
            ar_site[j] = sr;
            al_site[j] = sl;
        }
        // spins: precession around omega_z z + 2 g alpha_vec
        for (int j = 0; j < n; ++j) {
            const double ax = (ar_site[j] + al_site[j]).real();
            const double ay = (al_site[j] - ar_site[j]).imag();
            const double fx = 2.0 * g * ax, fy = 2.0 * g * ay, fz = wz;
            const double nx = y[3 * j], ny = y[3 * j + 1], nz = y[3 * j + 2];
            d[3 * j] = fy * nz - fz * ny;
            d[3 * j + 1] = fz * nx - fx * nz;
            d[3 * j + 2] = fx * ny - fy * nx;
        }
        // bosons: i d alpha/dt = Delta_k alpha + (g/2) sum_j b (n_x -+ i n_y)
        for (int k = 0; k < n; ++k) {
            cxd drive_r{}, drive_l{};
            for (int j = 0; j < n; ++j) {
                const double b = basis.wavefunctions(k, j);
                drive_r += b * cxd(y[3 * j], -y[3 * j + 1]);
                drive_l += b * cxd(y[3 * j], y[3 * j + 1]);
            }
            const cxd dar = cxd(0.0, -1.0) * (basis.energies[k] * ar[k] + 0.5 * g * drive_r);
            const cxd dal = cxd(0.0, -1.0) * (basis.energies[k] * al[k] + 0.5 * g * drive_l);
            d[3 * n + 2 * k] = dar.real();
            d[3 * n + 2 * k + 1] = dar.imag();
            d[5 * n + 2 * k] = dal.real();
            d[5 * n + 2 * k + 1] = dal.imag();
        }
        return d;
    };

    BlochTrajectory traj;
    traj.times.reserve(steps + 1);
    traj.n.reserve(steps + 1);
    traj.alpha_r.reserve(steps + 1);
    traj.alpha_l.reserve(steps + 1);
    std::vector<double> y = detail::pack_field(initial);
    for (int s = 0; s <= steps; ++s) {
        const ClassicalField f = detail::unpack_field(y, n);
        traj.times.push_back(s * dt);
        traj.n.push_back(f.n);
        traj.alpha_r.push_back(f.alpha_r);
        traj.alpha_l.push_back(f.alpha_l);
        if (s < steps) y = rk4_step(rhs, y, dt);
    }
    return traj;
}

} // namespace cjt
