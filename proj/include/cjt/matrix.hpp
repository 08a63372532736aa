// matrix.hpp -- small dense row-major matrices (real and complex)
//
// The library deliberately carries its own dense type instead of linking an
// external linear-algebra package: every kernel that consumes these stays
// self-contained and checkable. Sizes are desk scale (3x3 fluctuation blocks
// up to a few thousand for exact diagonalization).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace cjt {

using cxd = std::complex<double>;

template <typename T>
class Dense {
public:
    Dense() = default;

    Dense(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Dense: negative dimension");
    }

    // Row-major nested initializer, e.g. Matrix{{1,2},{3,4}}.
    Dense(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        a_.reserve(static_cast<std::size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw std::invalid_argument("Dense: ragged initializer");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static Dense identity(int n) {
        Dense m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    T* data() noexcept { return a_.data(); }
    const T* data() const noexcept { return a_.data(); }
    T* row(int r) noexcept { return a_.data() + static_cast<std::size_t>(r) * cols_; }
    const T* row(int r) const noexcept { return a_.data() + static_cast<std::size_t>(r) * cols_; }

    Dense& operator+=(const Dense& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Dense& operator-=(const Dense& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Dense& operator*=(T s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend Dense operator+(Dense a, const Dense& b) { return a += b; }
    friend Dense operator-(Dense a, const Dense& b) { return a -= b; }
    friend Dense operator*(Dense a, T s) { return a *= s; }
    friend Dense operator*(T s, Dense a) { return a *= s; }

    friend bool operator==(const Dense& a, const Dense& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    void check_same_shape(const Dense& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Dense: shape mismatch");
    }

    int rows_{0};
    int cols_{0};
    std::vector<T> a_;
};

using Matrix = Dense<double>;
using CMatrix = Dense<cxd>;

template <typename T>
Dense<T> matmul(const Dense<T>& a, const Dense<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
    Dense<T> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            const T* brow = b.row(k);
            T* crow = c.row(i);
            for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

template <typename T>
std::vector<T> matvec(const Dense<T>& a, const std::vector<T>& x) {
    if (a.cols() != static_cast<int>(x.size()))
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<T> y(a.rows(), T{});
    for (int i = 0; i < a.rows(); ++i) {
        T acc{};
        const T* arow = a.row(i);
        for (int j = 0; j < a.cols(); ++j) acc += arow[j] * x[j];
        y[i] = acc;
    }
    return y;
}

template <typename T>
Dense<T> transpose(const Dense<T>& a) {
    Dense<T> t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline CMatrix adjoint(const CMatrix& a) {
    CMatrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

template <typename T>
double max_abs(const Dense<T>& a) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

template <typename T>
double max_abs_diff(const Dense<T>& a, const Dense<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

template <typename T>
double frobenius_norm(const Dense<T>& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const double v = std::abs(a(i, j));
            s += v * v;
        }
    return std::sqrt(s);
}

inline double max_asymmetry(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("max_asymmetry: square matrix expected");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - a(j, i)));
    return m;
}

// Kronecker product; used for composing local operators on tensor-product spaces.
template <typename T>
Dense<T> kron(const Dense<T>& a, const Dense<T>& b) {
    Dense<T> c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ia = 0; ia < a.rows(); ++ia)
        for (int ja = 0; ja < a.cols(); ++ja) {
            const T aij = a(ia, ja);
            if (aij == T{}) continue;
            for (int ib = 0; ib < b.rows(); ++ib)
                for (int jb = 0; jb < b.cols(); ++jb)
                    c(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
        }
    return c;
}

} // namespace cjt
