// hermitian.hpp -- complex Hermitian eigensolver via the real symmetric embedding
//
// A = X + iY maps to the 2n x 2n symmetric matrix [[X, -Y], [Y, X]] whose
// spectrum is that of A with every eigenvalue doubled. Complex eigenvectors
// are recovered from the embedded pairs and re-orthonormalized inside
// degenerate groups.

#pragma once

#include <cmath>
#include <vector>

#include "cjt/matrix.hpp"
#include "cjt/numerics/jacobi.hpp"

namespace cjt {

struct HermitianEigenResult {
    std::vector<double> values; // ascending, n entries
    CMatrix vectors;            // orthonormal columns
};

inline HermitianEigenResult hermitian_eigen(const CMatrix& a) {
    if (!a.square()) throw std::invalid_argument("hermitian_eigen: square matrix expected");
    const int n = a.rows();
    double herm_dev = 0.0, scale = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            herm_dev = std::max(herm_dev, std::abs(a(i, j) - std::conj(a(j, i))));
            scale = std::max(scale, std::abs(a(i, j)));
        }
    if (herm_dev > 1e-12 * scale)
        throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian to 1e-12");

    Matrix m(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = 0.5 * (a(i, j).real() + a(j, i).real());
            const double y = 0.5 * (a(i, j).imag() - a(j, i).imag());
            m(i, j) = x;
            m(n + i, n + j) = x;
            m(i, n + j) = -y;
            m(n + i, j) = y;
        }

    const EigenResult er = symmetric_eigen(m);

    // Every complex eigenvector appears twice in the embedding (z and i z).
    // Walk the doubled spectrum, project accepted vectors out of each
    // candidate, and keep the n independent ones.
    HermitianEigenResult out;
    out.values.reserve(n);
    out.vectors = CMatrix(n, n);
    std::vector<std::vector<cxd>> accepted;
    const double degeneracy_tol = 1e-8 * std::max(1.0, std::abs(er.values.back()));
    for (int col = 0; col < 2 * n && static_cast<int>(accepted.size()) < n; ++col) {
        std::vector<cxd> z(n);
        for (int i = 0; i < n; ++i) z[i] = cxd(er.vectors(i, col), er.vectors(n + i, col));
        // project out previously accepted vectors with (near-)equal eigenvalue
        for (std::size_t k = 0; k < accepted.size(); ++k) {
            if (std::abs(er.values[col] - out.values[k]) > degeneracy_tol) continue;
            cxd overlap{};
            for (int i = 0; i < n; ++i) overlap += std::conj(accepted[k][i]) * z[i];
            for (int i = 0; i < n; ++i) z[i] -= overlap * accepted[k][i];
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(z[i]);
        norm = std::sqrt(norm);
        if (norm < 1e-6) continue; // the i*z partner of an accepted vector
        for (int i = 0; i < n; ++i) z[i] /= norm;
        out.values.push_back(er.values[col]);
        accepted.push_back(std::move(z));
    }
    if (static_cast<int>(accepted.size()) != n)
        throw std::runtime_error("hermitian_eigen: failed to pair embedded eigenvectors");
    for (int col = 0; col < n; ++col)
        for (int i = 0; i < n; ++i) out.vectors(i, col) = accepted[col][i];
    return out;
}

} // namespace cjt
