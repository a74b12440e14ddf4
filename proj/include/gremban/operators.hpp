#pragma once

// Dense matrices attached to a signed graph and to its Gremban expansion:
// adjacency splits, degree and Laplacian matrices, the involution matrix N,
// the projectors Pi_s / Pi_a and the orthogonal change of basis U.

#include <cmath>
#include <span>
#include <string>

#include "gremban/error.hpp"
#include "gremban/matrix.hpp"
#include "gremban/signed_graph.hpp"

namespace gremban {

struct MatrixBundle {
    SymMatrix A, A_plus, A_minus, A_bar, K, L, L_bar;
    SymMatrix gremban_A, gremban_L, gremban_K;
};

/// k(v): number of neighbours, signs ignored.
inline Vector degrees(const SignedGraph& g) {
    Vector k(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) k[v] = static_cast<double>(g.degree(v));
    return k;
}

/// Block matrix [[M+, M-], [M-, M+]].
inline SymMatrix gremban_expand_matrix(const SymMatrix& m_plus, const SymMatrix& m_minus) {
    if (m_plus.order() != m_minus.order()) {
        throw DimensionError("gremban_expand_matrix: orders " + std::to_string(m_plus.order()) + " and " +
                             std::to_string(m_minus.order()) + " differ");
    }
    const std::size_t n = m_plus.order();
    Matrix out(2 * n, 2 * n);
    out.set_block(0, 0, m_plus.matrix());
    out.set_block(n, n, m_plus.matrix());
    out.set_block(0, n, m_minus.matrix());
    out.set_block(n, 0, m_minus.matrix());
    return SymMatrix(std::move(out));
}

inline MatrixBundle build_bundle(const SignedGraph& g) {
    const std::size_t n = g.node_count();
    Matrix ap(n, n), am(n, n);
    for (const auto& e : g.edges()) {
        Matrix& target = e.sign > 0 ? ap : am;
        target(e.u, e.v) = target(e.v, e.u) = 1.0;
    }
    const Vector k = degrees(g);
    const Matrix K = Matrix::diagonal(std::span<const double>(k));

    MatrixBundle b;
    b.A_plus = SymMatrix(ap);
    b.A_minus = SymMatrix(am);
    b.A = SymMatrix(ap - am);
    b.A_bar = SymMatrix(ap + am);
    b.K = SymMatrix(K);
    b.L = SymMatrix(K - ap + am);
    b.L_bar = SymMatrix(K - ap - am);
    b.gremban_A = gremban_expand_matrix(b.A_plus, b.A_minus);
    b.gremban_K = gremban_expand_matrix(b.K, SymMatrix::zeros(n));
    b.gremban_L = SymMatrix(b.gremban_K.matrix() - b.gremban_A.matrix());
    return b;
}

/// N = [[0, I], [I, 0]] of order 2n.
inline SymMatrix involution_matrix(std::size_t n) {
    return gremban_expand_matrix(SymMatrix::zeros(n), SymMatrix::identity(n));
}

namespace detail {

inline std::size_t half_order(std::size_t order, const char* what) {
    if (order % 2 != 0) throw DimensionError(std::string(what) + ": order " + std::to_string(order) + " is odd");
    return order / 2;
}

}  // namespace detail

/// ||N m N - m||_max <= tol.
inline bool is_gremban_symmetric_matrix(const SymMatrix& m, double tolerance = tol::block_residual) {
    const std::size_t n = detail::half_order(m.order(), "is_gremban_symmetric_matrix");
    for (std::size_t i = 0; i < 2 * n; ++i) {
        const std::size_t ii = i < n ? i + n : i - n;
        for (std::size_t j = 0; j < 2 * n; ++j) {
            const std::size_t jj = j < n ? j + n : j - n;
            if (std::abs(m(ii, jj) - m(i, j)) > tolerance) return false;
        }
    }
    return true;
}

enum class LiftClass { symmetric, antisymmetric };

inline const char* to_string(LiftClass c) { return c == LiftClass::symmetric ? "symmetric" : "antisymmetric"; }

/// Pi_s = [I I]/sqrt(2) or Pi_a = [I -I]/sqrt(2), as an n x 2n matrix.
inline Matrix projector(std::size_t n, LiftClass mode) {
    const double h = 1.0 / std::sqrt(2.0);
    Matrix p(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        p(i, i) = h;
        p(i, i + n) = mode == LiftClass::symmetric ? h : -h;
    }
    return p;
}

/// U = [Pi_s; Pi_a], orthogonal of order 2n.
inline Matrix change_of_basis_matrix(std::size_t n) {
    Matrix u(2 * n, 2 * n);
    u.set_block(0, 0, projector(n, LiftClass::symmetric));
    u.set_block(n, 0, projector(n, LiftClass::antisymmetric));
    return u;
}

namespace detail {

inline SymMatrix symmetrized(const Matrix& m) {
    Matrix s = m + m.transpose();
    s *= 0.5;
    return SymMatrix(std::move(s));
}

}  // namespace detail

/// Pi m Pi^T. For m = [[M+, M-], [M-, M+]] this is M+ + M- (symmetric)
/// or M+ - M- (antisymmetric).
inline SymMatrix project_matrix(const SymMatrix& m, LiftClass mode) {
    const std::size_t n = detail::half_order(m.order(), "project_matrix");
    const Matrix p = projector(n, mode);
    return detail::symmetrized(p * m.matrix() * p.transpose());
}

/// U m U^T; for a Gremban-symmetric m this is block-diagonal, M_bar above M.
inline SymMatrix change_of_basis(const SymMatrix& m, double tolerance = tol::block_residual) {
    const std::size_t n = detail::half_order(m.order(), "change_of_basis");
    if (!is_gremban_symmetric_matrix(m, tolerance)) {
        throw SymmetryError("change_of_basis: matrix does not commute with the involution");
    }
    const Matrix u = change_of_basis_matrix(n);
    return detail::symmetrized(u * m.matrix() * u.transpose());
}

/// Largest entry of the off-diagonal n x n blocks.
inline double off_diagonal_block_norm(const SymMatrix& m) {
    const std::size_t n = detail::half_order(m.order(), "off_diagonal_block_norm");
    return max_abs(m.matrix().block(0, n, n, n));
}

/// K^{-1/2} m K^{-1/2}.
inline SymMatrix normalized_laplacian(const SymMatrix& m, std::span<const double> degrees) {
    detail::require_length(degrees.size(), m.order(), "degree vector");
    Vector inv(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (!(degrees[i] > 0.0)) {
            throw DegenerateDegreeError("normalized_laplacian: node " + std::to_string(i) + " has degree 0");
        }
        inv[i] = 1.0 / std::sqrt(degrees[i]);
    }
    Matrix out = m.matrix();
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= inv[i] * inv[j];
    return detail::symmetrized(out);
}

/// (k, k): degrees of the expansion.
inline Vector gremban_degrees(const SignedGraph& g) {
    Vector k = degrees(g);
    Vector out(k);
    out.insert(out.end(), k.begin(), k.end());
    return out;
}

}  // namespace gremban
