#pragma once

// Small dense row-major matrix used throughout the library, plus the
// validated symmetric wrapper SymMatrix.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "gremban/error.hpp"

namespace gremban {

/// Centralised numerical tolerances.
namespace tol {
inline constexpr double symmetry = 1e-12;
inline constexpr double block_residual = 1e-10;
inline constexpr double spectral = 1e-9;
}  // namespace tol

using Vector = std::vector<double>;

template <typename T>
class BasicMatrix {
public:
    BasicMatrix() = default;
    BasicMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    BasicMatrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static BasicMatrix identity(std::size_t n) {
        BasicMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    static BasicMatrix diagonal(std::span<const T> d) {
        BasicMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_column(std::size_t j, std::span<const T> values) {
        if (values.size() != rows_) throw DimensionError("set_column: length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
    }

    const std::vector<T>& data() const noexcept { return data_; }

    BasicMatrix transpose() const {
        BasicMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Copy of the rows x cols block starting at (r0, c0).
    BasicMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
        if (r0 + rows > rows_ || c0 + cols > cols_) throw DimensionError("block out of range");
        BasicMatrix b(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const BasicMatrix& b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("set_block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    BasicMatrix& operator+=(const BasicMatrix& o) {
        require_same_shape(o, "+");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    BasicMatrix& operator-=(const BasicMatrix& o) {
        require_same_shape(o, "-");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    BasicMatrix& operator*=(T s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
    friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
    friend BasicMatrix operator*(BasicMatrix a, T s) { return a *= s; }
    friend BasicMatrix operator*(T s, BasicMatrix a) { return a *= s; }

    friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw DimensionError("matrix product: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                 " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
        }
        BasicMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    friend std::vector<T> operator*(const BasicMatrix& a, std::span<const T> x) {
        if (a.cols_ != x.size()) throw DimensionError("matrix-vector product: length mismatch");
        std::vector<T> y(a.rows_, T{});
        for (std::size_t i = 0; i < a.rows_; ++i) {
            T s{};
            for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }
    friend std::vector<T> operator*(const BasicMatrix& a, const std::vector<T>& x) {
        return a * std::span<const T>(x);
    }

    friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

private:
    void require_same_shape(const BasicMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError(std::string("matrix ") + op + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;
using IntMatrix = BasicMatrix<std::int64_t>;

inline double max_abs(const Matrix& m) {
    double r = 0.0;
    for (double x : m.data()) r = std::max(r, std::abs(x));
    return r;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
    double r = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) r = std::max(r, std::abs(a.data()[k] - b.data()[k]));
    return r;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionError("max_abs_diff: length mismatch");
    double r = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, std::abs(a[k] - b[k]));
    return r;
}

inline double frobenius(const Matrix& m) {
    double s = 0.0;
    for (double x : m.data()) s += x * x;
    return std::sqrt(s);
}

inline Matrix to_real(const IntMatrix& m) {
    Matrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = static_cast<double>(m(i, j));
    return r;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(std::span<const double> a) {
    double r = 0.0;
    for (double x : a) r = std::max(r, std::abs(x));
    return r;
}

/// Dense real symmetric matrix. Construction checks finiteness and symmetry
/// within `tol * max(1, max|m_ij|)`.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(Matrix m, double tolerance = tol::symmetry) : m_(std::move(m)) {
        if (!m_.square()) throw DimensionError("SymMatrix must be square");
        const double scale = std::max(1.0, max_abs(m_));
        for (std::size_t i = 0; i < m_.rows(); ++i) {
            for (std::size_t j = 0; j < m_.cols(); ++j) {
                if (!std::isfinite(m_(i, j))) throw NumericalError("SymMatrix has a non-finite entry");
                if (j > i && std::abs(m_(i, j) - m_(j, i)) > tolerance * scale) {
                    throw SymmetryError("matrix is not symmetric at (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
                }
            }
        }
    }

    static SymMatrix zeros(std::size_t n) { return SymMatrix(Matrix(n, n)); }
    static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

    std::size_t order() const noexcept { return m_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const Matrix& matrix() const noexcept { return m_; }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    Matrix m_;
};

}  // namespace gremban
