// Hopping matrices, normal modes, the closed-form NN dispersion, the
// staggered transformation and the boson-mediated coupling matrix J.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cjt/lattice.hpp"

using namespace cjt;

namespace {

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("build_hopping_matrix direct assembly") {
    const Matrix m2 = build_hopping_matrix(HoppingSpec::nn_periodic(2, 1.0, -0.3));
    REQUIRE(m2 == Matrix{{1.0, -0.3}, {-0.3, 1.0}});

    const Matrix m3 = build_hopping_matrix(HoppingSpec::nn_periodic(3, 2.0, -0.5));
    REQUIRE(m3 == Matrix{{2.0, -0.5, -0.5}, {-0.5, 2.0, -0.5}, {-0.5, -0.5, 2.0}});

    const Matrix m1 = build_hopping_matrix(HoppingSpec::nn_periodic(1, 1.7, 0.0));
    REQUIRE(m1 == Matrix{{1.7}});
}

TEST_CASE("explicit hopping must be symmetric with zero diagonal") {
    REQUIRE_THROWS_AS(HoppingSpec::explicit_matrix({1.0, 1.0}, Matrix{{0, 0.2}, {0.3, 0}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(HoppingSpec::explicit_matrix({1.0, 1.0}, Matrix{{0.1, 0.2}, {0.2, 0}}),
                      std::invalid_argument);
    const HoppingSpec ok = HoppingSpec::explicit_matrix({1.0, 1.2}, Matrix{{0, 0.2}, {0.2, 0}});
    REQUIRE(build_hopping_matrix(ok) == Matrix{{1.0, 0.2}, {0.2, 1.2}});
}

TEST_CASE("normal_modes of the two-site chain by hand") {
    const NormalModeBasis b = normal_modes(HoppingSpec::nn_periodic(2, 1.0, -0.3));
    REQUIRE(b.energies[0] == Catch::Approx(0.7).margin(1e-14));
    REQUIRE(b.energies[1] == Catch::Approx(1.3).margin(1e-14));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // sign convention: first nonzero component positive
    REQUIRE(b.wavefunctions(0, 0) == Catch::Approx(inv_sqrt2).margin(1e-14));
    REQUIRE(b.wavefunctions(0, 1) == Catch::Approx(inv_sqrt2).margin(1e-14));
    REQUIRE(b.wavefunctions(1, 0) == Catch::Approx(inv_sqrt2).margin(1e-14));
    REQUIRE(b.wavefunctions(1, 1) == Catch::Approx(-inv_sqrt2).margin(1e-14));
}

TEST_CASE("normal_modes single site") {
    const NormalModeBasis b = normal_modes(HoppingSpec::nn_periodic(1, 1.7, 0.0));
    REQUIRE(b.energies == std::vector<double>{1.7});
    REQUIRE(b.wavefunctions(0, 0) == 1.0);
}

TEST_CASE("normal_modes matches the closed-form NN dispersion as a multiset") {
    const int n = 8;
    const double delta = 1.0, t = 0.5;
    const NormalModeBasis b = normal_modes(HoppingSpec::nn_band(n, delta, t));
    std::vector<double> analytic(n);
    for (int k = 0; k < n; ++k) analytic[k] = analytic_nn_dispersion(delta, t, n, k);
    const std::vector<double> lhs = sorted(b.energies);
    const std::vector<double> rhs = sorted(analytic);
    for (int k = 0; k < n; ++k) REQUIRE(lhs[k] == Catch::Approx(rhs[k]).margin(1e-10));
}

TEST_CASE("fourier fast path agrees with the dense eigensolver") {
    for (int n : {3, 5, 8, 12}) {
        const HoppingSpec spec = HoppingSpec::nn_periodic(n, 2.2, -0.4);
        const NormalModeBasis fast = normal_modes(spec);
        // force the dense path through an equivalent explicit matrix
        Matrix t = build_hopping_matrix(spec);
        std::vector<double> onsite(n);
        for (int j = 0; j < n; ++j) {
            onsite[j] = t(j, j);
            t(j, j) = 0.0;
        }
        const NormalModeBasis dense = normal_modes(HoppingSpec::explicit_matrix(onsite, t));
        for (int k = 0; k < n; ++k)
            REQUIRE(fast.energies[k] == Catch::Approx(dense.energies[k]).margin(1e-10));
        // both bases reconstruct the same hopping matrix
        const Matrix m = build_hopping_matrix(spec);
        for (const NormalModeBasis& b : {fast, dense}) {
            const Matrix w = b.wavefunctions;
            Matrix lam(n, n);
            for (int k = 0; k < n; ++k) lam(k, k) = b.energies[k];
            const Matrix rec = matmul(transpose(w), matmul(lam, w));
            REQUIRE(max_abs_diff(rec, m) < 1e-10);
        }
    }
}

TEST_CASE("normal mode rows are orthonormal to 1e-12") {
    const NormalModeBasis b = normal_modes(HoppingSpec::nn_band(16, 1.0, 0.5));
    const Matrix wwt = matmul(b.wavefunctions, transpose(b.wavefunctions));
    REQUIRE(max_abs_diff(wwt, Matrix::identity(16)) < 1e-12);
}

TEST_CASE("unstable boson sector is rejected") {
    REQUIRE_THROWS_AS(normal_modes(HoppingSpec::nn_periodic(4, 1.0, -0.6)), std::domain_error);
    REQUIRE_THROWS_AS(analytic_nn_dispersion(1.0, -0.25, 4, 1), std::domain_error);
    REQUIRE_THROWS_AS(analytic_nn_dispersion(-0.1, 0.5, 4, 1), std::domain_error);
}

TEST_CASE("analytic_nn_dispersion values") {
    REQUIRE(analytic_nn_dispersion(1.0, 0.5, 100, 0) == Catch::Approx(1.0));
    REQUIRE(analytic_nn_dispersion(1.0, 0.5, 100, 50) == Catch::Approx(3.0));
    REQUIRE(analytic_nn_dispersion(1.0, 0.5, 4, 1) == Catch::Approx(2.0));
    REQUIRE_THROWS_AS(analytic_nn_dispersion(1.0, 0.5, 4, 4), std::invalid_argument);
}

TEST_CASE("staggered_transform flips odd-separation bonds only") {
    const HoppingSpec nn = HoppingSpec::nn_periodic(6, 2.0, 0.4);
    const HoppingSpec st = staggered_transform(nn);
    REQUIRE(st.kind == HoppingSpec::Kind::NNPeriodic);
    REQUIRE(st.amplitude == -0.4);
    REQUIRE(st.onsite == nn.onsite);

    Matrix t(4, 4);
    t(1, 3) = t(3, 1) = 0.2; // even separation stays
    t(0, 1) = t(1, 0) = -0.7;
    const HoppingSpec ex = HoppingSpec::explicit_matrix({1, 1, 1, 1}, t);
    const HoppingSpec exs = staggered_transform(ex);
    REQUIRE(exs.hopping(1, 3) == 0.2);
    REQUIRE(exs.hopping(0, 1) == 0.7);
}

TEST_CASE("staggered_transform is an involution") {
    const HoppingSpec nn = HoppingSpec::nn_periodic(8, 2.0, -0.5);
    const HoppingSpec twice = staggered_transform(staggered_transform(nn));
    REQUIRE(twice.kind == nn.kind);
    REQUIRE(twice.amplitude == nn.amplitude);
    REQUIRE(twice.onsite == nn.onsite);

    Matrix t(3, 3);
    t(0, 1) = t(1, 0) = 0.3;
    t(1, 2) = t(2, 1) = -0.1;
    t(0, 2) = t(2, 0) = 0.05;
    const HoppingSpec ex = HoppingSpec::explicit_matrix({1, 2, 3}, t);
    const HoppingSpec twice_ex = staggered_transform(staggered_transform(ex));
    REQUIRE(max_abs_diff(twice_ex.hopping, ex.hopping) == 0.0);
}

TEST_CASE("staggered_transform preserves the spectrum on even-N periodic chains") {
    const HoppingSpec nn = HoppingSpec::nn_band(10, 1.3, 0.4);
    const std::vector<double> before = sorted(normal_modes(nn).energies);
    const std::vector<double> after = sorted(normal_modes(staggered_transform(nn)).energies);
    for (std::size_t k = 0; k < before.size(); ++k)
        REQUIRE(before[k] == Catch::Approx(after[k]).margin(1e-10));
}

TEST_CASE("odd-N periodic staggering leaves the wrap bond unchanged") {
    const HoppingSpec nn = HoppingSpec::nn_periodic(5, 2.0, -0.3);
    const HoppingSpec st = staggered_transform(nn);
    REQUIRE(st.kind == HoppingSpec::Kind::Explicit);
    REQUIRE(st.hopping(0, 1) == 0.3);  // odd separation flips
    REQUIRE(st.hopping(0, 4) == -0.3); // |j-l| = 4 is even: wrap bond keeps its sign
    const HoppingSpec twice = staggered_transform(st);
    REQUIRE(max_abs_diff(twice.hopping, build_hopping_matrix(nn) - 2.0 * Matrix::identity(5)) ==
            0.0);
}

TEST_CASE("coupling_matrix_J on fixed cases") {
    const NormalModeBasis single = normal_modes(HoppingSpec::nn_periodic(1, 1.0, 0.0));
    const Matrix j1 = coupling_matrix_J(1.0, single);
    REQUIRE(j1(0, 0) == Catch::Approx(2.0));

    const NormalModeBasis pair = normal_modes(HoppingSpec::nn_periodic(2, 1.0, -0.3));
    const Matrix j2 = coupling_matrix_J(1.0, pair);
    REQUIRE(j2(0, 0) == Catch::Approx(1.0 / 0.7 + 1.0 / 1.3).margin(1e-12));
    REQUIRE(j2(0, 1) == Catch::Approx(1.0 / 0.7 - 1.0 / 1.3).margin(1e-12));
    REQUIRE(j2(0, 1) == j2(1, 0));
    REQUIRE(j2(0, 0) == Catch::Approx(2.1978).margin(1e-4));
    REQUIRE(j2(0, 1) == Catch::Approx(0.6593).margin(1e-4));
}

TEST_CASE("J row sums are dominated by the k=0 term for uniform chains") {
    const double g = 1.3;
    const NormalModeBasis b = normal_modes(HoppingSpec::nn_band(8, 1.0, 0.5));
    const Matrix j = coupling_matrix_J(g, b);
    // sum_l J_{j,l} = 2 g^2 sum_k b_{k,j} (sum_l b_{k,l}) / Delta_k; only the
    // uniform k=0 row survives the inner sum
    for (int row = 0; row < 8; ++row) {
        double s = 0.0;
        for (int col = 0; col < 8; ++col) s += j(row, col);
        REQUIRE(s == Catch::Approx(2.0 * g * g / b.energies[0]).margin(1e-10));
    }
}

TEST_CASE("J is symmetric positive semidefinite") {
    const NormalModeBasis b = normal_modes(HoppingSpec::nn_periodic(6, 2.0, -0.7));
    const Matrix j = coupling_matrix_J(0.9, b);
    REQUIRE(max_asymmetry(j) == 0.0);
    const EigenResult e = symmetric_eigen(j);
    REQUIRE(e.values.front() >= -1e-12);
}
