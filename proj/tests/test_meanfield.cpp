// Saddle-point results checked against independent oracles: derivative-free
// minimization of the classical energy for the closed forms, and bisection on
// the self-consistent solver's order parameter for the critical coupling.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "cjt/meanfield.hpp"
#include "cjt/numerics/nelder_mead.hpp"

using namespace cjt;

namespace {

ModelParams fig1_params(int n = 8, double g = 1.0) {
    ModelParams p;
    p.omega_z = 1.0;
    p.g = g;
    p.lattice = HoppingSpec::nn_band(n, 1.0, 0.5);
    return p;
}

// state with uniform tilt theta and a real condensate amplitude in the k=0 mode
MeanFieldState uniform_trial(int n, double theta, double alpha0) {
    MeanFieldState s;
    s.theta.assign(n, theta);
    s.phi.assign(n, 0.0);
    s.alpha_r.assign(n, cxd{});
    s.alpha_l.assign(n, cxd{});
    s.alpha_r[0] = alpha0;
    s.alpha_l[0] = alpha0;
    return s;
}

} // namespace

TEST_CASE("critical coupling closed form") {
    REQUIRE(critical_coupling(fig1_params()) == Catch::Approx(std::sqrt(0.5)).margin(1e-14));
    // Fig. 1 regime sits above threshold
    REQUIRE(1.0 / critical_coupling(fig1_params()) == Catch::Approx(std::sqrt(2.0)));
    ModelParams bad = fig1_params();
    bad.omega_z = 0.0;
    REQUIRE_THROWS_AS(critical_coupling(bad), std::invalid_argument);
}

TEST_CASE("critical coupling agrees with the solver-onset oracle") {
    // bisection on the order parameter of the self-consistent solver
    const int n = 4;
    auto broken_at = [&](double g) {
        ModelParams p = fig1_params(n, g);
        const MeanFieldState init = uniform_trial(n, std::numbers::pi - 0.4, 0.0);
        const SaddlePointResult r = general_saddle_point(p, init, 1e-8, 300000);
        double max_sin = 0.0;
        for (double th : r.state.theta) max_sin = std::max(max_sin, std::abs(std::sin(th)));
        return max_sin > 1e-4;
    };
    double lo = 0.55, hi = 0.85;
    REQUIRE_FALSE(broken_at(lo));
    REQUIRE(broken_at(hi));
    for (int it = 0; it < 10; ++it) {
        const double mid = 0.5 * (lo + hi);
        (broken_at(mid) ? hi : lo) = mid;
    }
    REQUIRE(0.5 * (lo + hi) == Catch::Approx(critical_coupling(fig1_params(n))).margin(1e-3));
}

TEST_CASE("homogeneous saddle point below threshold") {
    const MeanFieldState s = homogeneous_saddle_point(fig1_params(8, 0.5));
    REQUIRE(s.phase == Phase::Normal);
    for (double th : s.theta) REQUIRE(std::cos(th) == Catch::Approx(-1.0));
    for (const cxd& a : s.alpha_r) REQUIRE(std::abs(a) == 0.0);
    REQUIRE(s.rho_bar == 0.0);
}

TEST_CASE("homogeneous saddle point in the broken phase (Fig. 1 regime)") {
    const int n = 8;
    const MeanFieldState s = homogeneous_saddle_point(fig1_params(n, 1.0));
    REQUIRE(s.phase == Phase::Broken);
    REQUIRE(std::cos(s.theta.front()) == Catch::Approx(-0.5).margin(1e-14));
    REQUIRE(std::sin(s.theta.front()) == Catch::Approx(std::sqrt(3.0) / 2.0).margin(1e-14));
    const double expected_alpha = -(std::sqrt(double(n)) / 2.0) * std::sqrt(3.0) / 2.0;
    REQUIRE(s.alpha_r[0].real() == Catch::Approx(expected_alpha).margin(1e-12));
    REQUIRE(s.alpha_l[0] == s.alpha_r[0]);
    for (int k = 1; k < n; ++k) REQUIRE(std::abs(s.alpha_r[k]) == 0.0);
    REQUIRE(s.rho_bar == Catch::Approx(0.25 * 0.75).margin(1e-14)); // (g/2D0)^2 sin^2
}

TEST_CASE("strong coupling tilts the spins toward the equator") {
    const MeanFieldState s = homogeneous_saddle_point(fig1_params(4, 50.0));
    REQUIRE(std::cos(s.theta.front()) == Catch::Approx(0.0).margin(1e-3));
}

TEST_CASE("homogeneous solver refuses non-uniform lattices") {
    ModelParams p;
    p.omega_z = 1.0;
    p.g = 1.0;
    p.lattice = HoppingSpec::nn_periodic(2, {1.0, 1.2}, -0.3);
    REQUIRE_THROWS_WITH(homogeneous_saddle_point(p),
                        Catch::Matchers::ContainsSubstring("general_saddle_point"));
}

TEST_CASE("positive NN amplitude needs the staggered transform first") {
    ModelParams p;
    p.omega_z = 1.0;
    p.g = 1.0;
    p.lattice = HoppingSpec::nn_periodic(6, 2.0, 0.5); // band minimum is staggered
    REQUIRE_THROWS_AS(homogeneous_saddle_point(p), std::domain_error);
    p.lattice = staggered_transform(p.lattice);
    REQUIRE(homogeneous_saddle_point(p).phase == Phase::Broken);
}

TEST_CASE("classical energy of the normal state and the broken closed form") {
    const int n = 8;
    const ModelParams p = fig1_params(n, 1.0);
    REQUIRE(classical_energy(p, normal_state(n)) == Catch::Approx(-0.5 * n).margin(1e-14));
    const double e_broken = classical_energy(p, homogeneous_saddle_point(p));
    REQUIRE(e_broken / n == Catch::Approx(-0.625).margin(1e-12));
    // variational ordering strictly above threshold
    const ModelParams near = fig1_params(n, 1.01 * critical_coupling(fig1_params(n)));
    REQUIRE(classical_energy(near, homogeneous_saddle_point(near)) <
            classical_energy(near, normal_state(n)));
}

TEST_CASE("closed-form minimum matches derivative-free minimization") {
    const int n = 4;
    const ModelParams p = fig1_params(n, 1.0);
    auto energy = [&](const std::vector<double>& x) {
        return classical_energy(p, uniform_trial(n, x[0], x[1]));
    };
    const MinimizeResult r = nelder_mead_min(energy, {2.0, -0.5}, 1e-9, 20000);
    REQUIRE(r.converged);
    REQUIRE(r.value / n == Catch::Approx(-0.625).margin(1e-6));
    const MeanFieldState closed = homogeneous_saddle_point(p);
    REQUIRE(r.x[0] == Catch::Approx(closed.theta.front()).margin(1e-4));
    REQUIRE(r.x[1] == Catch::Approx(closed.alpha_r[0].real()).margin(1e-4));
}

TEST_CASE("order parameter is continuous at the transition") {
    const int n = 8;
    const double gc = critical_coupling(fig1_params(n));
    for (double ratio : {1.0 + 1e-7, 1.001, 1.1, 2.0}) {
        const MeanFieldState s = homogeneous_saddle_point(fig1_params(n, ratio * gc));
        const double expected = std::sqrt(1.0 - 1.0 / std::pow(ratio, 4));
        REQUIRE(std::sin(s.theta.front()) == Catch::Approx(expected).margin(1e-12));
    }
    const MeanFieldState at = homogeneous_saddle_point(fig1_params(n, gc));
    REQUIRE(at.phase == Phase::Normal);
}

TEST_CASE("saddle residual vanishes at stationary points and flags perturbations") {
    const int n = 6;
    const ModelParams p = fig1_params(n, 1.0);
    REQUIRE(saddle_residual(p, homogeneous_saddle_point(p)) < 1e-12);
    REQUIRE(saddle_residual(p, normal_state(n)) < 1e-14); // trivial branch at any g
    REQUIRE(saddle_residual(fig1_params(n, 0.3), normal_state(n)) < 1e-14);

    MeanFieldState perturbed = homogeneous_saddle_point(p);
    for (double& th : perturbed.theta) th += 0.01;
    REQUIRE(saddle_residual(p, perturbed) > 1e-4);
}

TEST_CASE("classical energy is U(1) invariant") {
    const int n = 5;
    const ModelParams p = fig1_params(n, 1.3);
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MeanFieldState s;
    s.theta.resize(n);
    s.phi.resize(n);
    s.alpha_r.resize(n);
    s.alpha_l.resize(n);
    for (int j = 0; j < n; ++j) {
        s.theta[j] = 0.5 + 0.3 * u(rng);
        s.phi[j] = 3.0 * u(rng);
        s.alpha_r[j] = cxd(u(rng), u(rng));
        s.alpha_l[j] = cxd(u(rng), u(rng));
    }
    const double e0 = classical_energy(p, s);
    for (double phi : {0.3, 1.7, -2.4}) {
        MeanFieldState rot = s;
        const cxd wr = std::exp(cxd(0.0, -phi));
        const cxd wl = std::exp(cxd(0.0, phi));
        for (int j = 0; j < n; ++j) {
            rot.phi[j] += phi;
            rot.alpha_r[j] *= wr;
            rot.alpha_l[j] *= wl;
        }
        REQUIRE(classical_energy(p, rot) == Catch::Approx(e0).margin(1e-12));
    }
}

TEST_CASE("general solver reproduces the closed form on uniform chains") {
    const int n = 6;
    const double gc = critical_coupling(fig1_params(n));
    for (double ratio : {1.1, 1.5, 2.0, 4.0}) {
        const ModelParams p = fig1_params(n, ratio * gc);
        const MeanFieldState init = uniform_trial(n, std::numbers::pi - 0.1, 0.0);
        const SaddlePointResult r = general_saddle_point(p, init, 1e-12, 20000);
        const MeanFieldState closed = homogeneous_saddle_point(p);
        REQUIRE_FALSE(r.fell_back_to_trivial);
        for (int j = 0; j < n; ++j)
            REQUIRE(r.state.theta[j] == Catch::Approx(closed.theta[j]).margin(1e-9));
        for (int k = 0; k < n; ++k) {
            REQUIRE(std::abs(r.state.alpha_r[k] - closed.alpha_r[k]) < 1e-9);
            REQUIRE(std::abs(r.state.alpha_l[k] - closed.alpha_l[k]) < 1e-9);
        }
        REQUIRE(saddle_residual(p, r.state) <= 1e-10);
    }
}

TEST_CASE("general solver settles the normal state in one iteration at g = 0") {
    const int n = 4;
    const ModelParams p = fig1_params(n, 0.0);
    const SaddlePointResult r =
        general_saddle_point(p, uniform_trial(n, std::numbers::pi - 0.3, 0.0), 1e-12, 100);
    REQUIRE(r.iterations == 1);
    REQUIRE(r.state.phase == Phase::Normal);
    REQUIRE(r.residual < 1e-13);
}

TEST_CASE("general solver on a non-uniform two-site chain matches minimization") {
    ModelParams p;
    p.omega_z = 1.0;
    p.g = 1.0;
    p.lattice = HoppingSpec::nn_periodic(2, {1.0, 1.2}, -0.3);
    REQUIRE(p.g > critical_coupling(p));

    const SaddlePointResult r =
        general_saddle_point(p, uniform_trial(2, std::numbers::pi - 0.5, 0.0), 1e-12, 20000);
    REQUIRE(saddle_residual(p, r.state) <= 1e-10);
    REQUIRE(r.state.theta[0] != r.state.theta[1]); // site-dependent tilt

    // oracle: minimize the classical energy over (theta_1, theta_2) with the
    // condensate eliminated by its own stationarity condition
    const NormalModeBasis basis = normal_modes(p.lattice);
    auto energy = [&](const std::vector<double>& th) {
        MeanFieldState s;
        s.theta = th;
        s.phi.assign(2, 0.0);
        s.alpha_r.assign(2, cxd{});
        s.alpha_l.assign(2, cxd{});
        for (int k = 0; k < 2; ++k) {
            double sum = 0.0;
            for (int j = 0; j < 2; ++j) sum += basis.wavefunctions(k, j) * std::sin(th[j]);
            const double a = -p.g / (2.0 * basis.energies[k]) * sum;
            s.alpha_r[k] = a;
            s.alpha_l[k] = a;
        }
        return classical_energy(p, s);
    };
    const MinimizeResult nm = nelder_mead_min(energy, {2.5, 2.5}, 1e-10, 40000);
    REQUIRE(nm.converged);
    REQUIRE(r.state.theta[0] == Catch::Approx(nm.x[0]).margin(1e-6));
    REQUIRE(r.state.theta[1] == Catch::Approx(nm.x[1]).margin(1e-6));
}

TEST_CASE("general solver carries the residual on non-convergence") {
    const ModelParams p = fig1_params(4, 1.0);
    try {
        general_saddle_point(p, uniform_trial(4, std::numbers::pi - 0.4, 0.0), 1e-15, 3);
        FAIL("expected convergence_error");
    } catch (const convergence_error& e) {
        REQUIRE(e.residual() > 0.0);
    }
}
