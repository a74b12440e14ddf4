#pragma once

// Deterministic dense symmetric eigensolver (cyclic Jacobi) and the lift
// classification of eigenvectors of Gremban-symmetric matrices.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gremban/error.hpp"
#include "gremban/matrix.hpp"
#include "gremban/operators.hpp"
#include "gremban/signed_graph.hpp"

namespace gremban {

struct SpectralDecomposition {
    Vector eigenvalues;   // nondecreasing
    Matrix eigenvectors;  // column i belongs to eigenvalues[i]
    double residual = 0.0;
    double scale = 1.0;   // max(1, max|m_ij|) of the input

    std::size_t size() const noexcept { return eigenvalues.size(); }
    Vector vector(std::size_t i) const { return eigenvectors.column(i); }
};

namespace detail {

/// Largest-magnitude entry positive; near-ties go to the lowest index.
inline void fix_sign(std::span<double> v) {
    const double m = norm_inf(v);
    if (m == 0.0) return;
    for (double x : v) {
        if (std::abs(x) >= m * (1.0 - 1e-9)) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

inline void fix_sign_column(Matrix& v, std::size_t j) {
    Vector c = v.column(j);
    fix_sign(c);
    v.set_column(j, c);
}

inline double residual_of(const Matrix& m, const Vector& values, const Matrix& vectors) {
    double worst = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        const Vector v = vectors.column(j);
        Vector mv = m * v;
        for (std::size_t i = 0; i < mv.size(); ++i) mv[i] -= values[j] * v[i];
        worst = std::max(worst, norm2(mv));
    }
    return worst;
}

}  // namespace detail

inline constexpr int kMaxJacobiSweeps = 100;

/// Cyclic Jacobi: sweeps over (p, q) in row order until the off-diagonal
/// Frobenius norm drops below 1e-12 ||M||_F.
inline SpectralDecomposition eig_sym(const SymMatrix& sm) {
    const std::size_t n = sm.order();
    Matrix a = sm.matrix();
    Matrix v = Matrix::identity(n);
    const double target = 1e-12 * frobenius(a);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > target) {
        if (++sweep > kMaxJacobiSweeps) throw NumericalError("eig_sym: Jacobi did not converge in 100 sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = a(p, k) = c * akp - s * akq;
                    a(k, q) = a(q, k) = s * akp + c * akq;
                }
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SpectralDecomposition d;
    d.eigenvalues.resize(n);
    d.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        d.eigenvalues[j] = a(order[j], order[j]);
        Vector col = v.column(order[j]);
        detail::fix_sign(col);
        d.eigenvectors.set_column(j, col);
    }
    d.scale = std::max(1.0, max_abs(sm.matrix()));
    d.residual = detail::residual_of(sm.matrix(), d.eigenvalues, d.eigenvectors);
    return d;
}

inline Vector eigenvalues(const SymMatrix& m) { return eig_sym(m).eigenvalues; }

enum class Lift { symmetric, antisymmetric, mixed };

inline const char* to_string(Lift l) {
    switch (l) {
        case Lift::symmetric: return "symmetric";
        case Lift::antisymmetric: return "antisymmetric";
        default: return "mixed";
    }
}

struct LiftTag {
    Lift tag = Lift::mixed;
    double symmetric_norm = 0.0;      // ||Pi_s psi||
    double antisymmetric_norm = 0.0;  // ||Pi_a psi||
};

inline constexpr double kLiftTol = 1e-6;

inline LiftTag lift_tag(std::span<const double> psi, double tolerance = kLiftTol) {
    const std::size_t n = detail::half_order(psi.size(), "lift_tag");
    double ss = 0.0, aa = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = psi[i] + psi[i + n], a = psi[i] - psi[i + n];
        ss += s * s;
        aa += a * a;
    }
    LiftTag t{Lift::mixed, std::sqrt(ss / 2.0), std::sqrt(aa / 2.0)};
    if (t.antisymmetric_norm <= tolerance) t.tag = Lift::symmetric;
    else if (t.symmetric_norm <= tolerance) t.tag = Lift::antisymmetric;
    return t;
}

/// Decomposition whose degenerate eigenspaces have been rotated into
/// symmetric and antisymmetric sub-bases (symmetric first within a cluster).
struct LiftedDecomposition {
    SpectralDecomposition decomposition;
    std::vector<LiftTag> tags;
    std::vector<std::size_t> cluster;  // eigenvalue-cluster id per index

    std::size_t size() const noexcept { return decomposition.size(); }
    double eigenvalue(std::size_t i) const { return decomposition.eigenvalues.at(i); }
    Vector vector(std::size_t i) const { return decomposition.vector(i); }
    Lift tag(std::size_t i) const { return tags.at(i).tag; }
};

namespace detail {

/// Index ranges [begin, end) of eigenvalues that agree within tol (chained).
inline std::vector<std::pair<std::size_t, std::size_t>> eigen_clusters(const Vector& values, double tolerance) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t b = 0;
    for (std::size_t i = 1; i <= values.size(); ++i) {
        if (i == values.size() || values[i] - values[i - 1] > tolerance) {
            out.emplace_back(b, i);
            b = i;
        }
    }
    return out;
}

/// Pivoted Gram-Schmidt: repeatedly accepts the candidate with the largest
/// residual after removing the accepted directions, while residual^2 >= floor.
inline std::vector<Vector> pivoted_gram_schmidt(std::vector<Vector> cand, double floor, std::size_t limit,
                                                const std::vector<Vector>& against = {}) {
    for (auto& c : cand)
        for (const auto& b : against) {
            const double p = dot(c, b);
            for (std::size_t i = 0; i < c.size(); ++i) c[i] -= p * b[i];
        }
    std::vector<Vector> basis;
    std::vector<bool> used(cand.size(), false);
    while (basis.size() < limit) {
        std::size_t best = cand.size();
        double best_n2 = floor;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (used[i]) continue;
            const double n2 = dot(cand[i], cand[i]);
            if (n2 >= best_n2 && (best == cand.size() || n2 > best_n2)) {
                best = i;
                best_n2 = n2;
            }
        }
        if (best == cand.size()) break;
        used[best] = true;
        Vector b = cand[best];
        const double nb = std::sqrt(best_n2);
        for (double& x : b) x /= nb;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (used[i]) continue;
            const double p = dot(cand[i], b);
            for (std::size_t k = 0; k < b.size(); ++k) cand[i][k] -= p * b[k];
        }
        basis.push_back(std::move(b));
    }
    return basis;
}

}  // namespace detail

/// Rotates each eigenvalue cluster into symmetric/antisymmetric vectors and
/// tags them. Clusters whose projections do not add up to the cluster
/// dimension keep their original vectors (and may carry mixed tags).
inline LiftedDecomposition classify_lift(const SpectralDecomposition& d, double tolerance = kLiftTol) {
    const std::size_t n2 = d.size();
    const std::size_t n = detail::half_order(n2, "classify_lift");
    LiftedDecomposition out{d, {}, std::vector<std::size_t>(n2, 0)};
    Matrix& vec = out.decomposition.eigenvectors;
    Vector& val = out.decomposition.eigenvalues;

    const auto clusters = detail::eigen_clusters(d.eigenvalues, tol::spectral * d.scale);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        const auto [b, e] = clusters[c];
        const std::size_t dim = e - b;
        std::vector<Vector> sym, anti;
        for (std::size_t j = b; j < e; ++j) {
            const Vector v = d.eigenvectors.column(j);
            Vector s(n2), a(n2);
            for (std::size_t i = 0; i < n; ++i) {
                const double hs = 0.5 * (v[i] + v[i + n]), ha = 0.5 * (v[i] - v[i + n]);
                s[i] = s[i + n] = hs;
                a[i] = ha;
                a[i + n] = -ha;
            }
            sym.push_back(std::move(s));
            anti.push_back(std::move(a));
        }
        const double floor = 0.5 / static_cast<double>(dim);
        auto bs = detail::pivoted_gram_schmidt(sym, floor, dim);
        auto ba = detail::pivoted_gram_schmidt(anti, floor, dim);
        if (bs.size() + ba.size() == dim) {
            double mean = 0.0;
            for (std::size_t j = b; j < e; ++j) mean += d.eigenvalues[j];
            mean /= static_cast<double>(dim);
            std::size_t j = b;
            for (auto* basis : {&bs, &ba})
                for (auto& v : *basis) {
                    detail::fix_sign(v);
                    vec.set_column(j, v);
                    val[j] = mean;
                    ++j;
                }
        }
        for (std::size_t j = b; j < e; ++j) out.cluster[j] = c;
    }
    out.tags.resize(n2);
    for (std::size_t j = 0; j < n2; ++j) out.tags[j] = lift_tag(vec.column(j), tolerance);
    return out;
}

/// Replaces the first vector of the lowest eigenvalue cluster by the
/// normalised trivial vector t (e.g. the constant vector or sqrt(k) for a
/// normalised Laplacian) and re-orthogonalises the rest of that cluster's
/// symmetry class against it. Does nothing when t is not in the cluster.
inline bool pin_trivial(LiftedDecomposition& ld, Vector t, double tolerance = 1e-6) {
    if (ld.size() == 0) return false;
    const double nt = norm2(t);
    if (nt == 0.0) return false;
    for (double& x : t) x /= nt;
    std::size_t e = 0;
    while (e < ld.size() && ld.cluster[e] == ld.cluster[0]) ++e;

    Matrix& vec = ld.decomposition.eigenvectors;
    Vector proj(t.size(), 0.0);
    for (std::size_t j = 0; j < e; ++j) {
        const Vector v = vec.column(j);
        const double p = dot(v, t);
        for (std::size_t i = 0; i < t.size(); ++i) proj[i] += p * v[i];
    }
    double miss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) miss = std::max(miss, std::abs(proj[i] - t[i]));
    if (miss > tolerance) return false;

    const Lift cls = ld.tags.empty() ? Lift::mixed : lift_tag(t).tag;
    std::vector<std::size_t> same, other;
    for (std::size_t j = 0; j < e; ++j) {
        const bool match = ld.tags.empty() || ld.tags[j].tag == cls;
        (match ? same : other).push_back(j);
    }
    if (same.empty()) return false;
    std::vector<Vector> cand;
    for (auto j : same) cand.push_back(vec.column(j));
    auto rest = detail::pivoted_gram_schmidt(cand, 0.5 / static_cast<double>(cand.size()), same.size() - 1, {t});

    std::vector<Vector> cols;
    detail::fix_sign(t);
    cols.push_back(t);
    for (auto& v : rest) {
        detail::fix_sign(v);
        cols.push_back(std::move(v));
    }
    if (cols.size() != same.size()) return false;
    for (auto j : other) cols.push_back(vec.column(j));
    for (std::size_t j = 0; j < e; ++j) vec.set_column(j, cols[j]);
    if (!ld.tags.empty())
        for (std::size_t j = 0; j < e; ++j) ld.tags[j] = lift_tag(vec.column(j));
    return true;
}

/// Plain (untagged) decomposition wrapped for pin_trivial / fiedler.
inline LiftedDecomposition untagged(const SpectralDecomposition& d) {
    LiftedDecomposition out{d, {}, std::vector<std::size_t>(d.size(), 0)};
    const auto clusters = detail::eigen_clusters(d.eigenvalues, tol::spectral * d.scale);
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (std::size_t j = clusters[c].first; j < clusters[c].second; ++j) out.cluster[j] = c;
    return out;
}

struct FiedlerResult {
    double lambda2 = 0.0;
    Vector psi2;
    std::size_t index = 1;
    std::optional<LiftTag> tag;  // set for Gremban-symmetric input
    /// lambda2 is shared by symmetric and antisymmetric eigenvectors.
    bool ambiguous = false;
    LiftedDecomposition spectrum;
};

/// Picks psi_2 from an already prepared decomposition: index 1, except that
/// when the lambda_2 cluster holds both symmetry classes at positions >= 1
/// the first antisymmetric vector is used and the result marked ambiguous.
inline FiedlerResult fiedler_from(LiftedDecomposition ld) {
    if (ld.size() < 2) throw DimensionError("fiedler: order must be at least 2");
    FiedlerResult r;
    r.index = 1;
    if (!ld.tags.empty()) {
        bool has_sym = false;
        std::size_t first_anti = ld.size();
        for (std::size_t j = 1; j < ld.size() && ld.cluster[j] == ld.cluster[1]; ++j) {
            if (ld.tags[j].tag == Lift::symmetric) has_sym = true;
            if (ld.tags[j].tag == Lift::antisymmetric && first_anti == ld.size()) first_anti = j;
        }
        if (has_sym && first_anti != ld.size()) {
            r.ambiguous = true;
            r.index = first_anti;
        }
        r.tag = ld.tags[r.index];
    }
    r.lambda2 = ld.eigenvalue(r.index);
    r.psi2 = ld.vector(r.index);
    r.spectrum = std::move(ld);
    return r;
}

/// Second-smallest eigenpair. Gremban-symmetric input of even order is lift
/// classified first. The trivial kernel vector (given, or the constant
/// vector when m 1 = 0) is pinned as psi_1.
inline FiedlerResult fiedler(const SymMatrix& m, std::optional<Vector> trivial = std::nullopt) {
    if (m.order() < 2) throw DimensionError("fiedler: order must be at least 2");
    const SpectralDecomposition d = eig_sym(m);
    LiftedDecomposition ld = (m.order() % 2 == 0 && is_gremban_symmetric_matrix(m)) ? classify_lift(d) : untagged(d);
    if (!trivial) {
        const Vector ones(m.order(), 1.0);
        if (norm_inf(m.matrix() * ones) <= tol::spectral * d.scale) trivial = ones;
    }
    if (trivial) pin_trivial(ld, *trivial);
    return fiedler_from(std::move(ld));
}

enum class SpectrumKind { adjacency, laplacian };

/// max |spec(expanded) - sort(spec(M_bar) u spec(M))|, elementwise.
inline double spectrum_union_check(const SignedGraph& g, SpectrumKind which) {
    const MatrixBundle b = build_bundle(g);
    const bool adj = which == SpectrumKind::adjacency;
    const Vector big = eigenvalues(adj ? b.gremban_A : b.gremban_L);
    Vector merged = eigenvalues(adj ? b.A_bar : b.L_bar);
    const Vector signed_part = eigenvalues(adj ? b.A : b.L);
    merged.insert(merged.end(), signed_part.begin(), signed_part.end());
    std::sort(merged.begin(), merged.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < big.size(); ++i) worst = std::max(worst, std::abs(big[i] - merged[i]));
    return worst;
}

}  // namespace gremban
