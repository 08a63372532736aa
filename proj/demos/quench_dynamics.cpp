// Evolves a misaligned spin configuration and reports the conserved charge
// and energy along the trajectory.

#include <cmath>
#include <cstdio>

#include "cjt/dynamics.hpp"

int main() {
    cjt::ModelParams p;
    p.omega_z = 1.0;
    p.g = 1.0;
    p.lattice = cjt::HoppingSpec::nn_band(6, 1.0, 0.5);

    // start from the saddle point, then tilt one spin
    cjt::ClassicalField f = cjt::to_classical_field(cjt::homogeneous_saddle_point(p));
    f.n[0] = {0.0, std::sqrt(0.5), -std::sqrt(0.5)};

    const double dt = 0.005;
    const int steps = 4000;
    const cjt::BlochTrajectory traj = cjt::evolve_classical(p, f, dt, steps);

    const double c0 = cjt::classical_charge(f);
    const double e0 = cjt::field_energy(p, f);
    std::printf("# t      n_z(site 0)   |dC|        |dE|\n");
    for (int s = 0; s <= steps; s += 500) {
        cjt::ClassicalField snap;
        snap.n = traj.n[s];
        snap.alpha_r = traj.alpha_r[s];
        snap.alpha_l = traj.alpha_l[s];
        std::printf("%6.2f  %12.8f  %.3e  %.3e\n", traj.times[s], traj.n[s][0][2],
                    std::abs(cjt::classical_charge(snap) - c0),
                    std::abs(cjt::field_energy(p, snap) - e0));
    }
    return 0;
}
