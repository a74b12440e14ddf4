#pragma once

// Signed walk counting through powers of the expanded adjacency matrix,
// walk generating functions (resolvents) and communicability.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gremban/error.hpp"
#include "gremban/matrix.hpp"
#include "gremban/operators.hpp"
#include "gremban/signed_graph.hpp"
#include "gremban/spectral.hpp"

namespace gremban {

class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The requested parameter lies outside the convergence disk |t| < radius.
class DivergenceError : public NumericalError {
public:
    DivergenceError(const std::string& what, double radius)
        : NumericalError(what + " (convergence radius " + std::to_string(radius) + ")"), radius_(radius) {}
    double radius() const noexcept { return radius_; }

private:
    double radius_;
};

/// Integer adjacency matrices: signed A, unsigned A_bar and expanded A.
struct IntAdjacency {
    IntMatrix signed_adj, unsigned_adj, expanded;
};

inline IntAdjacency int_adjacency(const SignedGraph& g) {
    const std::size_t n = g.node_count();
    IntAdjacency a{IntMatrix(n, n), IntMatrix(n, n), IntMatrix(2 * n, 2 * n)};
    for (const auto& e : g.edges()) {
        a.signed_adj(e.u, e.v) = a.signed_adj(e.v, e.u) = e.sign;
        a.unsigned_adj(e.u, e.v) = a.unsigned_adj(e.v, e.u) = 1;
        const std::size_t shift = e.sign > 0 ? 0 : n;
        a.expanded(e.u, e.v + shift) = a.expanded(e.v + shift, e.u) = 1;
        a.expanded(e.u + n, (e.v + n + shift) % (2 * n)) = a.expanded((e.v + n + shift) % (2 * n), e.u + n) = 1;
    }
    return a;
}

/// Product with overflow detection.
inline IntMatrix checked_product(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("integer matrix product: shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::int64_t aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                std::int64_t term = 0;
                if (__builtin_mul_overflow(aik, b(k, j), &term) || __builtin_add_overflow(c(i, j), term, &c(i, j))) {
                    throw OverflowError("walk count exceeds the 64-bit integer range");
                }
            }
        }
    return c;
}

inline IntMatrix int_power(const IntMatrix& m, int k) {
    if (k < 0) throw RangeError("matrix power: exponent must be nonnegative");
    if (!m.square()) throw DimensionError("matrix power: matrix must be square");
    IntMatrix r = IntMatrix::identity(m.rows());
    for (int i = 0; i < k; ++i) r = checked_product(r, m);
    return r;
}

struct WalkCounts {
    IntMatrix positive;  // walks v -> w of length k with sign +1
    IntMatrix negative;  // ... with sign -1
    int length = 0;
};

/// Upper-left and upper-right blocks of the k-th power of the expanded adjacency.
inline WalkCounts count_signed_walks(const SignedGraph& g, int k) {
    if (k < 0) throw RangeError("walk length must be nonnegative, got " + std::to_string(k));
    const std::size_t n = g.node_count();
    const IntMatrix p = int_power(int_adjacency(g).expanded, k);
    return {p.block(0, 0, n, n), p.block(0, n, n, n), k};
}

struct WalkPair {
    std::int64_t positive = 0;
    std::int64_t negative = 0;
    friend bool operator==(const WalkPair&, const WalkPair&) = default;
};

inline constexpr int kBruteForceWalkLength = 8;
inline constexpr std::size_t kBruteForceWalkNodes = 8;

/// Enumerates every walk v -> w of length k by depth-first search.
inline WalkPair brute_force_walks(const SignedGraph& g, int k, NodeId v, NodeId w) {
    if (k < 0) throw RangeError("walk length must be nonnegative");
    if (k > kBruteForceWalkLength) throw SizeLimitError("brute_force_walks: walk length too large", kBruteForceWalkLength);
    if (g.node_count() > kBruteForceWalkNodes) {
        throw SizeLimitError("brute_force_walks: too many nodes", kBruteForceWalkNodes);
    }
    if (v >= g.node_count() || w >= g.node_count()) throw RangeError("walk endpoint out of range");
    WalkPair out;
    auto dfs = [&](auto&& self, NodeId at, int left, int sign) -> void {
        if (left == 0) {
            if (at == w) (sign > 0 ? out.positive : out.negative) += 1;
            return;
        }
        for (const auto& nb : g.neighbors(at)) self(self, nb.node, left - 1, sign * nb.sign);
    };
    dfs(dfs, v, k, 1);
    return out;
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
inline Matrix inverse(const Matrix& m) {
    if (!m.square()) throw DimensionError("inverse: matrix must be square");
    const std::size_t n = m.rows();
    Matrix a = m, inv = Matrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
        if (std::abs(a(p, c)) < 1e-14) throw NumericalError("inverse: matrix is singular");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        const double piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0.0) continue;
            const double f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

inline double spectral_radius(const SymMatrix& m) {
    const Vector ev = eigenvalues(m);
    return ev.empty() ? 0.0 : std::max(std::abs(ev.front()), std::abs(ev.back()));
}

struct MatrixTriple {
    Matrix signed_part;    // function of A
    Matrix unsigned_part;  // function of A_bar
    Matrix expanded;       // function of the expanded adjacency
};

inline constexpr double kConvergenceMargin = 1e-6;

/// W_M(t) = (I - t M)^{-1} for M = A, A_bar and the expanded adjacency.
/// Requires |t| < 1 / rho(A_bar) - 1e-6 (rho(A_bar) bounds rho(A)).
inline MatrixTriple resolvent_generating(const SignedGraph& g, double t) {
    const MatrixBundle b = build_bundle(g);
    const double rho = std::max(spectral_radius(b.A), spectral_radius(b.A_bar));
    const double radius = rho > 0.0 ? 1.0 / rho : std::numeric_limits<double>::infinity();
    if (!(std::abs(t) < radius - kConvergenceMargin)) {
        throw DivergenceError("walk generating function diverges at t = " + std::to_string(t), radius);
    }
    auto solve = [t](const SymMatrix& m) { return inverse(Matrix::identity(m.order()) - t * m.matrix()); };
    return {solve(b.A), solve(b.A_bar), solve(b.gremban_A)};
}

/// exp(t M) by spectral decomposition.
inline Matrix matrix_exponential(const SymMatrix& m, double t) {
    const SpectralDecomposition d = eig_sym(m);
    const std::size_t n = m.order();
    Matrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double e = std::exp(t * d.eigenvalues[k]);
        for (std::size_t i = 0; i < n; ++i) {
            const double vi = e * d.eigenvectors(i, k);
            if (vi == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * d.eigenvectors(j, k);
        }
    }
    return out;
}

inline MatrixTriple communicability(const SignedGraph& g, double t) {
    const MatrixBundle b = build_bundle(g);
    return {matrix_exponential(b.A, t), matrix_exponential(b.A_bar, t), matrix_exponential(b.gremban_A, t)};
}

/// Largest deviation of the expanded matrix from the block form
/// [[(U + S)/2, (U - S)/2], [(U - S)/2, (U + S)/2]], U unsigned, S signed.
inline double block_identity_residual(const MatrixTriple& m) {
    const std::size_t n = m.signed_part.rows();
    Matrix want(2 * n, 2 * n);
    Matrix diag = m.unsigned_part + m.signed_part, off = m.unsigned_part - m.signed_part;
    diag *= 0.5;
    off *= 0.5;
    want.set_block(0, 0, diag);
    want.set_block(n, n, diag);
    want.set_block(0, n, off);
    want.set_block(n, 0, off);
    return max_abs_diff(m.expanded, want);
}

}  // namespace gremban
