// Prints the three collective branches of a short chain together with the
// closed-form gap and slope checks.

#include <cstdio>
#include <numbers>

#include "cjt/fluctuations.hpp"

int main() {
    cjt::ModelParams p;
    p.omega_z = 1.0;
    p.g = 1.0;
    p.lattice = cjt::HoppingSpec::nn_band(40, 1.0, 0.5);

    std::vector<int> grid(p.lattice.n_sites);
    for (int k = 0; k < p.lattice.n_sites; ++k) grid[k] = k;
    const cjt::BranchSpectrum s = cjt::branch_dispersion(p, grid);

    std::printf("# k  2pi k/N   omega_G   omega_A-   omega_A+\n");
    for (std::size_t i = 0; i < s.k_index.size(); ++i)
        std::printf("%3d  %8.5f  %9.6f  %9.6f  %9.6f\n", s.k_index[i], s.wavenumber[i],
                    s.omega[i][0], s.omega[i][1], s.omega[i][2]);

    const auto [dm, dp] = cjt::amplitude_gaps(p);
    std::printf("\ngaps: %.9f %.9f   goldstone slope: %.9f\n", dm, dp, cjt::goldstone_slope(p));
    std::printf("first-mode finite difference: %.9f\n",
                s.omega[1][0] / (2.0 * std::numbers::pi / p.lattice.n_sites));
    return 0;
}
