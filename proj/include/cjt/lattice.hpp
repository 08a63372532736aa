// lattice.hpp -- bosonic tight-binding problem: hopping matrices, normal
// modes, the closed-form nearest-neighbor dispersion, the staggered basis
// transformation, and the spin-spin coupling matrix J induced by the bosons.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cjt/errors.hpp"
#include "cjt/matrix.hpp"
#include "cjt/numerics/jacobi.hpp"

namespace cjt {

// Site count, on-site energies and hopping, either as a periodic
// nearest-neighbor chain with one amplitude or as an explicit symmetric
// matrix with zero diagonal.
struct HoppingSpec {
    enum class Kind { NNPeriodic, Explicit };

    Kind kind{Kind::NNPeriodic};
    int n_sites{0};
    std::vector<double> onsite;
    double amplitude{0.0}; // NN matrix element t_{j,j+1}
    Matrix hopping;        // explicit off-diagonal matrix, zero diagonal

    static HoppingSpec nn_periodic(int n, double onsite_energy, double amplitude) {
        return nn_periodic(n, std::vector<double>(static_cast<std::size_t>(n), onsite_energy),
                           amplitude);
    }

    static HoppingSpec nn_periodic(int n, std::vector<double> onsite_energies, double amplitude) {
        HoppingSpec s;
        s.kind = Kind::NNPeriodic;
        s.n_sites = n;
        s.onsite = std::move(onsite_energies);
        s.amplitude = amplitude;
        s.validate();
        return s;
    }

    // Band parametrization of the uniform chain: on-site energy Delta + 2t and
    // matrix element -t, so the mode energies are Delta + 2t(1 - cos(2 pi k/N))
    // with band minimum Delta at the uniform k=0 mode (for t >= 0).
    static HoppingSpec nn_band(int n, double band_minimum, double band_curvature) {
        return nn_periodic(n, band_minimum + 2.0 * band_curvature, -band_curvature);
    }

    static HoppingSpec explicit_matrix(std::vector<double> onsite_energies, Matrix t) {
        HoppingSpec s;
        s.kind = Kind::Explicit;
        s.n_sites = static_cast<int>(onsite_energies.size());
        s.onsite = std::move(onsite_energies);
        s.hopping = std::move(t);
        s.validate();
        return s;
    }

    bool uniform_onsite() const {
        for (double d : onsite)
            if (d != onsite.front()) return false;
        return true;
    }

    void validate() const {
        if (n_sites < 1) throw std::invalid_argument("HoppingSpec: N >= 1 required");
        if (static_cast<int>(onsite.size()) != n_sites)
            throw std::invalid_argument("HoppingSpec: onsite size must equal N");
        if (kind == Kind::Explicit) {
            if (hopping.rows() != n_sites || hopping.cols() != n_sites)
                throw std::invalid_argument("HoppingSpec: hopping matrix must be N x N");
            if (max_asymmetry(hopping) > 0.0)
                throw std::invalid_argument("HoppingSpec: hopping matrix must be symmetric");
            for (int j = 0; j < n_sites; ++j)
                if (hopping(j, j) != 0.0)
                    throw std::invalid_argument("HoppingSpec: hopping diagonal must be zero");
        }
    }
};

struct NormalModeBasis {
    Matrix wavefunctions;        // rows are the mode wavefunctions b_k
    std::vector<double> energies; // ascending, so index 0 is the band minimum

    int n_modes() const { return static_cast<int>(energies.size()); }
};

inline Matrix build_hopping_matrix(const HoppingSpec& spec) {
    spec.validate();
    const int n = spec.n_sites;
    Matrix m(n, n);
    for (int j = 0; j < n; ++j) m(j, j) = spec.onsite[j];
    if (spec.kind == HoppingSpec::Kind::NNPeriodic) {
        for (int j = 0; j < n; ++j) {
            const int l = (j + 1) % n;
            if (l == j) continue; // N = 1
            m(j, l) = spec.amplitude;
            m(l, j) = spec.amplitude;
        }
    } else {
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                if (l != j) m(j, l) = spec.hopping(j, l);
    }
    return m;
}

// Closed-form dispersion of the uniform periodic NN chain in the band
// parametrization: Delta + 2t(1 - cos(2 pi k/N)).
inline double analytic_nn_dispersion(double band_minimum, double band_curvature, int n_sites,
                                     int k) {
    if (k < 0 || k >= n_sites)
        throw std::invalid_argument("analytic_nn_dispersion: k must be in 0..N-1");
    if (band_minimum <= 0.0 || band_minimum + 4.0 * band_curvature <= 0.0)
        throw std::domain_error("analytic_nn_dispersion: unstable boson sector");
    const double phase = 2.0 * std::numbers::pi * k / n_sites;
    return band_minimum + 2.0 * band_curvature * (1.0 - std::cos(phase));
}

namespace detail {

// first component above noise made positive; fixes the arbitrary eigenvector sign
inline void canonical_sign(Matrix& w, int row) {
    const int n = w.cols();
    double peak = 0.0;
    for (int j = 0; j < n; ++j) peak = std::max(peak, std::abs(w(row, j)));
    for (int j = 0; j < n; ++j) {
        if (std::abs(w(row, j)) > 1e-12 * peak) {
            if (w(row, j) < 0.0)
                for (int l = 0; l < n; ++l) w(row, l) = -w(row, l);
            return;
        }
    }
}

inline void canonicalize_modes(NormalModeBasis& basis) {
    const int n = basis.n_modes();
    for (int k = 0; k < n; ++k) canonical_sign(basis.wavefunctions, k);
    // within a degenerate group, order modes lexicographically by wavefunction
    const double scale = std::max(1.0, std::abs(basis.energies.back()));
    int lo = 0;
    while (lo < n) {
        int hi = lo + 1;
        while (hi < n && std::abs(basis.energies[hi] - basis.energies[lo]) <= 1e-10 * scale) ++hi;
        if (hi - lo > 1) {
            std::vector<int> idx(hi - lo);
            for (int i = 0; i < hi - lo; ++i) idx[i] = lo + i;
            std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
                for (int j = 0; j < basis.wavefunctions.cols(); ++j) {
                    const double x = basis.wavefunctions(a, j), y = basis.wavefunctions(b, j);
                    if (x != y) return x < y;
                }
                return false;
            });
            Matrix rows(hi - lo, basis.wavefunctions.cols());
            std::vector<double> vals(hi - lo);
            for (int i = 0; i < hi - lo; ++i) {
                vals[i] = basis.energies[idx[i]];
                for (int j = 0; j < basis.wavefunctions.cols(); ++j)
                    rows(i, j) = basis.wavefunctions(idx[i], j);
            }
            for (int i = 0; i < hi - lo; ++i) {
                basis.energies[lo + i] = vals[i];
                for (int j = 0; j < basis.wavefunctions.cols(); ++j)
                    basis.wavefunctions(lo + i, j) = rows(i, j);
            }
        }
        lo = hi;
    }
}

// Real Fourier modes of the uniform periodic chain; avoids the dense
// eigensolver for large N. Valid for N >= 3 (the N=2 ring collapses the two
// bonds between a site pair onto a single matrix element).
inline NormalModeBasis nn_fourier_modes(const HoppingSpec& spec) {
    const int n = spec.n_sites;
    const double onsite = spec.onsite.front();
    const double amp = spec.amplitude;
    NormalModeBasis basis;
    basis.wavefunctions = Matrix(n, n);
    basis.energies.resize(n);
    int row = 0;
    auto put_energy = [&](int m) { basis.energies[row] = onsite + 2.0 * amp * std::cos(2.0 * std::numbers::pi * m / n); };
    // uniform mode
    put_energy(0);
    for (int j = 0; j < n; ++j) basis.wavefunctions(row, j) = 1.0 / std::sqrt(double(n));
    ++row;
    for (int m = 1; 2 * m < n; ++m) {
        const double norm = std::sqrt(2.0 / n);
        put_energy(m);
        for (int j = 0; j < n; ++j)
            basis.wavefunctions(row, j) = norm * std::cos(2.0 * std::numbers::pi * m * j / n);
        ++row;
        put_energy(m);
        for (int j = 0; j < n; ++j)
            basis.wavefunctions(row, j) = norm * std::sin(2.0 * std::numbers::pi * m * j / n);
        ++row;
    }
    if (n % 2 == 0) {
        put_energy(n / 2);
        for (int j = 0; j < n; ++j)
            basis.wavefunctions(row, j) = (j % 2 == 0 ? 1.0 : -1.0) / std::sqrt(double(n));
        ++row;
    }
    // sort rows by energy, keeping the pairing between energy and wavefunction
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return basis.energies[a] < basis.energies[b]; });
    NormalModeBasis sorted;
    sorted.wavefunctions = Matrix(n, n);
    sorted.energies.resize(n);
    for (int i = 0; i < n; ++i) {
        sorted.energies[i] = basis.energies[order[i]];
        for (int j = 0; j < n; ++j) sorted.wavefunctions(i, j) = basis.wavefunctions(order[i], j);
    }
    return sorted;
}

} // namespace detail

inline NormalModeBasis normal_modes(const HoppingSpec& spec) {
    spec.validate();
    NormalModeBasis basis;
    if (spec.kind == HoppingSpec::Kind::NNPeriodic && spec.uniform_onsite() && spec.n_sites >= 3) {
        basis = detail::nn_fourier_modes(spec);
    } else {
        const EigenResult e = symmetric_eigen(build_hopping_matrix(spec));
        basis.energies = e.values;
        basis.wavefunctions = transpose(e.vectors);
    }
    detail::canonicalize_modes(basis);
    if (basis.energies.front() <= 0.0)
        throw std::domain_error("normal_modes: unstable boson sector (mode energy <= 0)");
    return basis;
}

// Smallest mode energy without materializing the full basis.
inline double min_mode_energy(const HoppingSpec& spec) {
    if (spec.kind == HoppingSpec::Kind::NNPeriodic && spec.uniform_onsite() && spec.n_sites >= 3) {
        // cos reaches -1 exactly only for even N; take the true grid minimum
        double m = spec.onsite.front() + 2.0 * spec.amplitude;
        for (int k = 0; k < spec.n_sites; ++k)
            m = std::min(m, spec.onsite.front() +
                                2.0 * spec.amplitude *
                                    std::cos(2.0 * std::numbers::pi * k / spec.n_sites));
        if (m <= 0.0) throw std::domain_error("min_mode_energy: unstable boson sector");
        return m;
    }
    return normal_modes(spec).energies.front();
}

// Site-alternating sign redefinition of the bosons: t_{j,l} -> (-1)^{j-l} t_{j,l}.
// For even-N periodic NN chains this is just an amplitude sign flip; the odd-N
// ring keeps its wrap bond unchanged and therefore leaves the NN form, so it is
// returned as an explicit matrix.
inline HoppingSpec staggered_transform(const HoppingSpec& spec) {
    spec.validate();
    if (spec.kind == HoppingSpec::Kind::NNPeriodic) {
        if (spec.n_sites % 2 == 0 || spec.n_sites == 1)
            return HoppingSpec::nn_periodic(spec.n_sites, spec.onsite, -spec.amplitude);
        Matrix t = build_hopping_matrix(spec);
        for (int j = 0; j < spec.n_sites; ++j) t(j, j) = 0.0;
        for (int j = 0; j < spec.n_sites; ++j)
            for (int l = 0; l < spec.n_sites; ++l)
                if ((j - l) % 2 != 0) t(j, l) = -t(j, l);
        return HoppingSpec::explicit_matrix(spec.onsite, std::move(t));
    }
    Matrix t = spec.hopping;
    for (int j = 0; j < spec.n_sites; ++j)
        for (int l = 0; l < spec.n_sites; ++l)
            if ((j - l) % 2 != 0) t(j, l) = -t(j, l);
    return HoppingSpec::explicit_matrix(spec.onsite, std::move(t));
}

// Effective spin-spin coupling mediated by the bosons:
// J_{j,l} = 2 g^2 sum_k b_{k,j} b_{k,l} / Delta_k.
inline Matrix coupling_matrix_J(double g, const NormalModeBasis& basis) {
    const int n = basis.n_modes();
    Matrix j(n, n);
    for (int k = 0; k < n; ++k) {
        const double w = 2.0 * g * g / basis.energies[k];
        const double* bk = basis.wavefunctions.row(k);
        for (int a = 0; a < n; ++a) {
            const double wba = w * bk[a];
            for (int b = 0; b < n; ++b) j(a, b) += wba * bk[b];
        }
    }
    // enforce exact symmetry against rounding in the accumulation
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const double s = 0.5 * (j(a, b) + j(b, a));
            j(a, b) = j(b, a) = s;
        }
    return j;
}

} // namespace cjt
