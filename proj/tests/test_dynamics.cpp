// Real-time classical dynamics: free precession, stationarity of the saddle
// point, and conservation of energy and of the U(1) charge.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cjt/dynamics.hpp"
#include "cjt/meanfield.hpp"

using namespace cjt;

namespace {

ModelParams fig1_params(int n, double g) {
    ModelParams p;
    p.omega_z = 1.0;
    p.g = g;
    p.lattice = HoppingSpec::nn_band(n, 1.0, 0.5);
    return p;
}

ClassicalField random_field(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ClassicalField f;
    f.n.resize(n);
    f.alpha_r.resize(n);
    f.alpha_l.resize(n);
    for (int j = 0; j < n; ++j) {
        std::array<double, 3> v{u(rng), u(rng), u(rng)};
        const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        for (double& c : v) c /= norm;
        f.n[j] = v;
        f.alpha_r[j] = 0.3 * cxd(u(rng), u(rng));
        f.alpha_l[j] = 0.3 * cxd(u(rng), u(rng));
    }
    return f;
}

} // namespace

TEST_CASE("decoupled spins precess at omega_z") {
    const int n = 3;
    const ModelParams p = fig1_params(n, 0.0);
    ClassicalField f;
    f.n.assign(n, {1.0, 0.0, 0.0});
    f.alpha_r.assign(n, cxd{});
    f.alpha_l.assign(n, cxd{});
    const double dt = 0.01;
    const int steps = 200;
    const BlochTrajectory traj = evolve_classical(p, f, dt, steps);
    for (int s = 0; s <= steps; s += 40) {
        const double t = traj.times[s];
        REQUIRE(traj.n[s][0][0] == Catch::Approx(std::cos(t)).margin(1e-8));
        REQUIRE(traj.n[s][0][1] == Catch::Approx(std::sin(t)).margin(1e-8));
        REQUIRE(traj.n[s][0][2] == Catch::Approx(0.0).margin(1e-10));
        REQUIRE(std::abs(traj.alpha_r[s][0]) == 0.0);
    }
}

TEST_CASE("saddle point mapped to real time is stationary") {
    const int n = 4;
    const ModelParams p = fig1_params(n, 1.0);
    const ClassicalField f = to_classical_field(homogeneous_saddle_point(p));
    const BlochTrajectory traj = evolve_classical(p, f, 0.01, 500);
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < 3; ++c)
            REQUIRE(traj.n.back()[j][c] == Catch::Approx(f.n[j][c]).margin(1e-9));
    for (int k = 0; k < n; ++k)
        REQUIRE(std::abs(traj.alpha_r.back()[k] - f.alpha_r[k]) < 1e-9);
}

TEST_CASE("charge and energy are conserved over 1e4 steps") {
    const int n = 4;
    const ModelParams p = fig1_params(n, 1.0);
    const ClassicalField f0 = random_field(n, 7);
    const double dt = 0.002;
    const int steps = 10000;
    const BlochTrajectory traj = evolve_classical(p, f0, dt, steps);

    const double c0 = classical_charge(f0);
    const double e0 = field_energy(p, f0);
    double max_dc = 0.0, max_de = 0.0, max_norm_drift = 0.0;
    for (int s = 0; s <= steps; s += 250) {
        ClassicalField f;
        f.n = traj.n[s];
        f.alpha_r = traj.alpha_r[s];
        f.alpha_l = traj.alpha_l[s];
        max_dc = std::max(max_dc, std::abs(classical_charge(f) - c0));
        max_de = std::max(max_de, std::abs(field_energy(p, f) - e0));
        for (const auto& v : f.n)
            max_norm_drift = std::max(
                max_norm_drift,
                std::abs(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) - 1.0));
    }
    REQUIRE(max_dc < 1e-8);
    REQUIRE(max_de < 1e-8);
    // Bloch norms are never renormalized; the drift itself must stay at
    // integrator accuracy
    REQUIRE(max_norm_drift < 1e-9);
}

TEST_CASE("conservation error scales as dt^4 at fixed time span") {
    const int n = 3;
    const ModelParams p = fig1_params(n, 1.0);
    const ClassicalField f0 = random_field(n, 12);
    const double e0 = field_energy(p, f0);
    auto drift = [&](double dt, int steps) {
        const BlochTrajectory traj = evolve_classical(p, f0, dt, steps);
        ClassicalField f;
        f.n = traj.n.back();
        f.alpha_r = traj.alpha_r.back();
        f.alpha_l = traj.alpha_l.back();
        return std::abs(field_energy(p, f) - e0);
    };
    // at least the 16x gain of a fourth-order method; the nearly linear boson
    // sector can push the observed gain somewhat above that
    const double d1 = drift(0.02, 1000);
    const double d2 = drift(0.01, 2000);
    REQUIRE(d1 / d2 > 12.0);
    REQUIRE(d1 / d2 < 100.0);
}

TEST_CASE("trajectory bookkeeping") {
    const ModelParams p = fig1_params(2, 0.5);
    const BlochTrajectory traj = evolve_classical(p, random_field(2, 3), 0.05, 10);
    REQUIRE(traj.times.size() == 11);
    REQUIRE(traj.times[0] == 0.0);
    REQUIRE(traj.times[10] == Catch::Approx(0.5));
    REQUIRE(traj.n.size() == 11);
    REQUIRE(traj.alpha_r.size() == 11);
    ClassicalField bad = random_field(3, 1);
    REQUIRE_THROWS_AS(evolve_classical(p, bad, 0.05, 10), std::invalid_argument);
}
