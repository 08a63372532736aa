// ed.hpp -- exact diagonalization of the full quantum Hamiltonian at small
// site count with a per-mode Fock cutoff.
//
// Basis layout (fixed, so state-vector fixtures are portable): site-major,
// and within a site spin, then right-chiral occupation, then left-chiral
// occupation. Spin index 0 is |up>. The U(1) charge
//   C = sum_j (n_r,j - n_l,j + sigma_z,j / 2)
// is diagonal in this layout by construction.
//
// Two Hamiltonian builders produce the same operator through different
// algebraic routes: the chiral builder assembles the raising/lowering form
// directly from the r/l ladder matrices, while the Cartesian builder first
// represents a_x = (a_r + a_l)/sqrt(2), a_y = i(a_r - a_l)/sqrt(2) on the same
// truncated space and then assembles the symmetric two-species form with its
// 1/sqrt(2) coupling convention. Agreement of their spectra checks both
// conventions against each other.

#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "cjt/errors.hpp"
#include "cjt/matrix.hpp"
#include "cjt/meanfield.hpp"
#include "cjt/numerics/hermitian.hpp"
#include "cjt/numerics/jacobi.hpp"

namespace cjt {

inline constexpr std::size_t kDefaultDimensionBudget = 20000;

struct TruncationSpec {
    int n_max{0};   // per-mode Fock cutoff (occupations 0..n_max)
    int n_sites{1}; // 1..3; larger chains are out of reach of the dense solver

    int fock_dim() const { return n_max + 1; }
    int local_dim() const { return 2 * fock_dim() * fock_dim(); }

    std::size_t dimension() const {
        std::size_t d = 1;
        for (int j = 0; j < n_sites; ++j) d *= static_cast<std::size_t>(local_dim());
        return d;
    }

    void validate(std::size_t budget = kDefaultDimensionBudget) const {
        if (n_max < 0) throw std::invalid_argument("TruncationSpec: n_max >= 0 required");
        if (n_sites < 1 || n_sites > 3)
            throw std::invalid_argument("TruncationSpec: N_sites must be 1, 2 or 3");
        if (dimension() > budget)
            throw budget_error("TruncationSpec: dimension " + std::to_string(dimension()) +
                               " exceeds the dense-solver budget of " + std::to_string(budget));
    }
};

struct SpectrumResult {
    std::vector<double> energies;      // ascending
    std::vector<double> charge_values; // <C> per eigenstate
    TruncationSpec cutoff_used;
};

namespace detail {

inline Matrix ladder(int n_max) {
    Matrix a(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline CMatrix complexify(const Matrix& m) {
    CMatrix c(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) c(i, j) = m(i, j);
    return c;
}

// local operator spin (x) r-mode (x) l-mode on one site
inline CMatrix local_op(const CMatrix& spin, const CMatrix& r_mode, const CMatrix& l_mode) {
    return kron(kron(spin, r_mode), l_mode);
}

inline CMatrix spin_identity() { return CMatrix::identity(2); }

// Accumulate coeff * (product of local factors, identity elsewhere) into h.
// factors are (site, local matrix) pairs with distinct sites.
inline void add_term(CMatrix& h, const TruncationSpec& t, cxd coeff,
                     const std::vector<std::pair<int, const CMatrix*>>& factors) {
    const int n = t.n_sites;
    const std::size_t local = static_cast<std::size_t>(t.local_dim());

    // strides of the site-major layout: site 0 is the most significant digit
    std::vector<std::size_t> stride(n, 1);
    for (int j = n - 2; j >= 0; --j) stride[j] = stride[j + 1] * local;

    std::vector<char> touched(n, 0);
    for (const auto& f : factors) touched[f.first] = 1;

    // enumerate the untouched digits once, then every combination of local
    // row/column indices for the touched sites
    std::vector<std::size_t> untouched_strides;
    std::vector<int> untouched_sites;
    for (int j = 0; j < n; ++j)
        if (!touched[j]) {
            untouched_sites.push_back(j);
            untouched_strides.push_back(stride[j]);
        }
    const int n_free = static_cast<int>(untouched_sites.size());
    std::size_t free_count = 1;
    for (int i = 0; i < n_free; ++i) free_count *= local;

    const int n_touched = static_cast<int>(factors.size());
    std::vector<std::size_t> touched_strides(n_touched);
    for (int i = 0; i < n_touched; ++i) touched_strides[i] = stride[factors[i].first];

    std::vector<int> rows(n_touched, 0), cols(n_touched, 0);
    while (true) {
        // value = prod of factor entries at the current (rows, cols)
        cxd value = coeff;
        for (int i = 0; i < n_touched; ++i) value *= (*factors[i].second)(rows[i], cols[i]);
        if (value != cxd{}) {
            std::size_t row_base = 0, col_base = 0;
            for (int i = 0; i < n_touched; ++i) {
                row_base += touched_strides[i] * static_cast<std::size_t>(rows[i]);
                col_base += touched_strides[i] * static_cast<std::size_t>(cols[i]);
            }
            for (std::size_t f = 0; f < free_count; ++f) {
                std::size_t rem = f, offset = 0;
                for (int i = 0; i < n_free; ++i) {
                    offset += (rem % local) * untouched_strides[i];
                    rem /= local;
                }
                h(static_cast<int>(row_base + offset), static_cast<int>(col_base + offset)) +=
                    value;
            }
        }
        // advance the (rows, cols) odometer
        int pos = 2 * n_touched - 1;
        while (pos >= 0) {
            int& digit = pos % 2 == 0 ? rows[pos / 2] : cols[pos / 2];
            if (++digit < static_cast<int>(local)) break;
            digit = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

struct LocalOps {
    CMatrix a_r, a_l, a_r_dag, a_l_dag; // chiral ladders on the local space
    CMatrix a_x, a_y, a_x_dag, a_y_dag; // Cartesian combinations of the above
    CMatrix sx, sy, sz, sp, sm;         // spin operators on the local space
    CMatrix n_r, n_l;
};

inline LocalOps make_local_ops(const TruncationSpec& t) {
    const Matrix a = ladder(t.n_max);
    const CMatrix ac = complexify(a);
    const CMatrix id_f = CMatrix::identity(t.fock_dim());
    const CMatrix s2 = spin_identity();

    const CMatrix sx{{cxd{0}, cxd{1}}, {cxd{1}, cxd{0}}};
    const CMatrix sy{{cxd{0}, cxd{0, -1}}, {cxd{0, 1}, cxd{0}}};
    const CMatrix sz{{cxd{1}, cxd{0}}, {cxd{0}, cxd{-1}}};
    const CMatrix sp{{cxd{0}, cxd{1}}, {cxd{0}, cxd{0}}};
    const CMatrix sm{{cxd{0}, cxd{0}}, {cxd{1}, cxd{0}}};

    LocalOps ops;
    ops.a_r = local_op(s2, ac, id_f);
    ops.a_l = local_op(s2, id_f, ac);
    ops.a_r_dag = adjoint(ops.a_r);
    ops.a_l_dag = adjoint(ops.a_l);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ops.a_x = (ops.a_r + ops.a_l) * cxd{inv_sqrt2};
    ops.a_y = (ops.a_r - ops.a_l) * cxd{0.0, inv_sqrt2};
    ops.a_x_dag = adjoint(ops.a_x);
    ops.a_y_dag = adjoint(ops.a_y);
    ops.sx = local_op(sx, id_f, id_f);
    ops.sy = local_op(sy, id_f, id_f);
    ops.sz = local_op(sz, id_f, id_f);
    ops.sp = local_op(sp, id_f, id_f);
    ops.sm = local_op(sm, id_f, id_f);
    ops.n_r = matmul(ops.a_r_dag, ops.a_r);
    ops.n_l = matmul(ops.a_l_dag, ops.a_l);
    return ops;
}

// shared tight-binding + spin-splitting assembly, parametrized by the two
// species ladder pairs to use
inline void add_free_part(CMatrix& h, const ModelParams& p, const TruncationSpec& t,
                          const CMatrix& a1, const CMatrix& a1_dag, const CMatrix& a2,
                          const CMatrix& a2_dag, const CMatrix& sz) {
    const Matrix hop = build_hopping_matrix(p.lattice);
    const CMatrix num1 = matmul(a1_dag, a1);
    const CMatrix num2 = matmul(a2_dag, a2);
    for (int j = 0; j < t.n_sites; ++j) {
        add_term(h, t, 0.5 * p.omega_z, {{j, &sz}});
        add_term(h, t, hop(j, j), {{j, &num1}});
        add_term(h, t, hop(j, j), {{j, &num2}});
        for (int l = 0; l < j; ++l) {
            if (hop(j, l) == 0.0) continue;
            add_term(h, t, hop(j, l), {{j, &a1_dag}, {l, &a1}});
            add_term(h, t, hop(j, l), {{l, &a1_dag}, {j, &a1}});
            add_term(h, t, hop(j, l), {{j, &a2_dag}, {l, &a2}});
            add_term(h, t, hop(j, l), {{l, &a2_dag}, {j, &a2}});
        }
    }
}

} // namespace detail

// Symmetric two-species (Cartesian) form:
//   H_I = (g/sqrt(2)) sum_j { sigma_x (a_x + a_x^dag) + sigma_y (a_y + a_y^dag) }.
inline CMatrix build_hamiltonian(const ModelParams& p, const TruncationSpec& t,
                                 std::size_t budget = kDefaultDimensionBudget) {
    p.validate();
    t.validate(budget);
    if (p.lattice.n_sites != t.n_sites)
        throw std::invalid_argument("build_hamiltonian: lattice and truncation disagree on N");
    const detail::LocalOps ops = detail::make_local_ops(t);
    const int dim = static_cast<int>(t.dimension());
    CMatrix h(dim, dim);
    detail::add_free_part(h, p, t, ops.a_x, ops.a_x_dag, ops.a_y, ops.a_y_dag, ops.sz);
    const CMatrix x_quad = ops.a_x + ops.a_x_dag;
    const CMatrix y_quad = ops.a_y + ops.a_y_dag;
    const CMatrix term_x = matmul(ops.sx, x_quad);
    const CMatrix term_y = matmul(ops.sy, y_quad);
    const double c = p.g / std::sqrt(2.0);
    for (int j = 0; j < t.n_sites; ++j) {
        detail::add_term(h, t, c, {{j, &term_x}});
        detail::add_term(h, t, c, {{j, &term_y}});
    }
    return h;
}

// Chiral raising/lowering form:
//   H_I = g sum_j { sigma^+ (a_r + a_l^dag) + sigma^- (a_r^dag + a_l) }.
inline CMatrix build_hamiltonian_chiral(const ModelParams& p, const TruncationSpec& t,
                                        std::size_t budget = kDefaultDimensionBudget) {
    p.validate();
    t.validate(budget);
    if (p.lattice.n_sites != t.n_sites)
        throw std::invalid_argument(
            "build_hamiltonian_chiral: lattice and truncation disagree on N");
    const detail::LocalOps ops = detail::make_local_ops(t);
    const int dim = static_cast<int>(t.dimension());
    CMatrix h(dim, dim);
    detail::add_free_part(h, p, t, ops.a_r, ops.a_r_dag, ops.a_l, ops.a_l_dag, ops.sz);
    const CMatrix up_part = matmul(ops.sp, ops.a_r + ops.a_l_dag);
    const CMatrix down_part = matmul(ops.sm, ops.a_r_dag + ops.a_l);
    for (int j = 0; j < t.n_sites; ++j) {
        detail::add_term(h, t, p.g, {{j, &up_part}});
        detail::add_term(h, t, p.g, {{j, &down_part}});
    }
    return h;
}

// Diagonal of the conserved charge in the chiral layout.
inline std::vector<double> charge_diagonal(const TruncationSpec& t) {
    t.validate();
    const std::size_t dim = t.dimension();
    const std::size_t local = static_cast<std::size_t>(t.local_dim());
    const int fock = t.fock_dim();
    std::vector<double> c(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t rem = i;
        for (int j = t.n_sites - 1; j >= 0; --j) {
            const std::size_t loc = rem % local;
            rem /= local;
            const int n_l = static_cast<int>(loc) % fock;
            const int n_r = (static_cast<int>(loc) / fock) % fock;
            const int spin = static_cast<int>(loc) / (fock * fock); // 0 = up
            c[i] += n_r - n_l + (spin == 0 ? 0.5 : -0.5);
        }
    }
    return c;
}

inline CMatrix charge_operator(const TruncationSpec& t) {
    const std::vector<double> diag = charge_diagonal(t);
    CMatrix c(static_cast<int>(diag.size()), static_cast<int>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i)
        c(static_cast<int>(i), static_cast<int>(i)) = diag[i];
    return c;
}

// U(1) rotation R(phi) = exp(i phi C); diagonal unitary in the chiral layout.
inline CMatrix symmetry_rotation(double phi, const TruncationSpec& t) {
    const std::vector<double> diag = charge_diagonal(t);
    CMatrix r(static_cast<int>(diag.size()), static_cast<int>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i)
        r(static_cast<int>(i), static_cast<int>(i)) = std::exp(cxd(0.0, phi * diag[i]));
    return r;
}

// Projector onto the interior sector (every occupation <= n_max - 1), where
// the truncated ladder algebra is exact.
inline std::vector<bool> interior_mask(const TruncationSpec& t) {
    const std::size_t dim = t.dimension();
    const std::size_t local = static_cast<std::size_t>(t.local_dim());
    const int fock = t.fock_dim();
    std::vector<bool> mask(dim, true);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t rem = i;
        for (int j = 0; j < t.n_sites; ++j) {
            const std::size_t loc = rem % local;
            rem /= local;
            const int n_l = static_cast<int>(loc) % fock;
            const int n_r = (static_cast<int>(loc) / fock) % fock;
            if (n_l >= t.n_max || n_r >= t.n_max) {
                mask[i] = false;
                break;
            }
        }
    }
    return mask;
}

namespace detail {

inline bool essentially_real(const CMatrix& h) {
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j)
            if (std::abs(h(i, j).imag()) > 1e-14) return false;
    return true;
}

inline HermitianEigenResult diagonalize(const CMatrix& h) {
    if (essentially_real(h)) {
        Matrix m(h.rows(), h.cols());
        for (int i = 0; i < h.rows(); ++i)
            for (int j = 0; j < h.cols(); ++j) m(i, j) = h(i, j).real();
        const EigenResult e = symmetric_eigen(m);
        HermitianEigenResult out;
        out.values = e.values;
        out.vectors = complexify(e.vectors);
        return out;
    }
    return hermitian_eigen(h);
}

} // namespace detail

inline std::pair<double, std::vector<cxd>> ground_state(const CMatrix& h) {
    const HermitianEigenResult e = detail::diagonalize(h);
    std::vector<cxd> v(h.rows());
    for (int i = 0; i < h.rows(); ++i) v[i] = e.vectors(i, 0);
    return {e.values.front(), std::move(v)};
}

// m lowest eigenvalues with charge expectations; assumes the chiral layout
// for the charge diagonal.
inline SpectrumResult low_spectrum(const CMatrix& h, int m, const TruncationSpec& t) {
    if (m < 1 || m > h.rows())
        throw std::invalid_argument("low_spectrum: m must be in 1..dimension");
    if (static_cast<std::size_t>(h.rows()) != t.dimension())
        throw std::invalid_argument("low_spectrum: operator does not match the truncation");
    const HermitianEigenResult e = detail::diagonalize(h);
    const std::vector<double> charge = charge_diagonal(t);
    SpectrumResult out;
    out.cutoff_used = t;
    out.energies.assign(e.values.begin(), e.values.begin() + m);
    out.charge_values.resize(m);
    for (int col = 0; col < m; ++col) {
        double c = 0.0;
        for (int i = 0; i < h.rows(); ++i) c += std::norm(e.vectors(i, col)) * charge[i];
        out.charge_values[col] = c;
    }
    return out;
}

} // namespace cjt
