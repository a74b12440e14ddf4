#pragma once

// Signed random walks and diffusion on the Gremban expansion, projected
// net (x+ - x-) and total (x+ + x-) observables, and plateau diagnostics.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gremban/error.hpp"
#include "gremban/expansion.hpp"
#include "gremban/matrix.hpp"
#include "gremban/operators.hpp"
#include "gremban/signed_graph.hpp"
#include "gremban/spectral.hpp"

namespace gremban {

/// T = K^{-1} A of the expansion; row-stochastic.
inline Matrix gremban_transition(const SignedGraph& g) {
    const MatrixBundle b = build_bundle(g);
    const Vector k = gremban_degrees(g);
    Matrix t = b.gremban_A.matrix();
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (k[i] == 0.0) {
            throw DegenerateDegreeError("gremban_transition: node " + std::to_string(i % g.node_count()) + " is isolated");
        }
        for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) /= k[i];
    }
    return t;
}

/// K^{-1} M for an n x n matrix M and degrees k (the signed walk K^{-1} A or
/// the unsigned K^{-1} A_bar).
inline Matrix degree_normalized(const SymMatrix& m, std::span<const double> k) {
    detail::require_length(k.size(), m.order(), "degree vector");
    Matrix t = m.matrix();
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (k[i] == 0.0) throw DegenerateDegreeError("node " + std::to_string(i) + " is isolated");
        for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) /= k[i];
    }
    return t;
}

/// x+ - x- (= sqrt 2 Pi_a x).
inline Vector net(std::span<const double> x) {
    const std::size_t n = detail::half_order(x.size(), "net");
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - x[i + n];
    return out;
}

/// x+ + x- (= sqrt 2 Pi_s x).
inline Vector total(std::span<const double> x) {
    const std::size_t n = detail::half_order(x.size(), "total");
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + x[i + n];
    return out;
}

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;

    std::vector<Vector> net_series() const {
        std::vector<Vector> out;
        for (const auto& s : states) out.push_back(net(s));
        return out;
    }
    std::vector<Vector> total_series() const {
        std::vector<Vector> out;
        for (const auto& s : states) out.push_back(total(s));
        return out;
    }
};

/// x(t+1) = T x(t) for t = 0..steps; times are the step indices.
inline Trajectory step_walk(const Matrix& t_op, std::span<const double> x0, std::size_t steps) {
    if (!t_op.square() || t_op.cols() != x0.size()) throw DimensionError("step_walk: operator and state sizes differ");
    Trajectory tr;
    Vector x(x0.begin(), x0.end());
    tr.times.push_back(0.0);
    tr.states.push_back(x);
    for (std::size_t s = 1; s <= steps; ++s) {
        x = t_op * x;
        tr.times.push_back(static_cast<double>(s));
        tr.states.push_back(x);
    }
    return tr;
}

struct StationaryAnalysis {
    std::size_t unit_multiplicity = 0;
    /// Right eigenvectors of T for eigenvalue 1, scaled to max |entry| = 1:
    /// the constant vector first, then (theta, -theta) when balanced.
    std::vector<Vector> vectors;
};

inline constexpr double kUnitEigenvalueTol = 1e-8;

/// Eigenvalue-1 eigenspace of T via the similar symmetric matrix
/// K^{-1/2} A K^{-1/2}; eigenvectors are mapped back by K^{-1/2}.
inline StationaryAnalysis stationary_analysis(const SignedGraph& g) {
    if (g.node_count() == 0 || !is_connected(g)) throw DisconnectedGraphError("stationary_analysis: graph is disconnected");
    const MatrixBundle b = build_bundle(g);
    const Vector k = gremban_degrees(g);
    const SymMatrix s = normalized_laplacian(b.gremban_A, k);
    // Reverse order so eigenvalue 1 (the largest) leads: work with -S.
    LiftedDecomposition ld = classify_lift(eig_sym(SymMatrix(-1.0 * s.matrix())));
    Vector root(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) root[i] = std::sqrt(k[i]);
    pin_trivial(ld, root);

    StationaryAnalysis out;
    for (std::size_t j = 0; j < ld.size(); ++j) {
        if (std::abs(ld.eigenvalue(j) + 1.0) > kUnitEigenvalueTol) break;
        ++out.unit_multiplicity;
        Vector v = ld.vector(j);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] /= root[i];
        const double m = norm_inf(v);
        for (double& x : v) x /= m;
        detail::fix_sign(v);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

/// Exact solution of dx/dt = -L x on the expansion by spectral propagation.
class DiffusionPropagator {
public:
    explicit DiffusionPropagator(const SignedGraph& g) : n2_(2 * g.node_count()), d_(eig_sym(build_bundle(g).gremban_L)) {}

    const SpectralDecomposition& spectrum() const noexcept { return d_; }

    Vector at(std::span<const double> x0, double t) const {
        detail::require_length(x0.size(), n2_, "initial state");
        if (t == 0.0) return Vector(x0.begin(), x0.end());
        Vector x(n2_, 0.0);
        for (std::size_t j = 0; j < d_.size(); ++j) {
            double c = 0.0;
            for (std::size_t i = 0; i < n2_; ++i) c += d_.eigenvectors(i, j) * x0[i];
            c *= std::exp(-d_.eigenvalues[j] * t);
            for (std::size_t i = 0; i < n2_; ++i) x[i] += c * d_.eigenvectors(i, j);
        }
        return x;
    }

    Trajectory run(std::span<const double> x0, std::span<const double> times) const {
        Trajectory tr;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (times[i] < 0.0 || (i > 0 && times[i] <= times[i - 1])) {
                throw RangeError("diffuse: times must be nonnegative and increasing");
            }
            tr.times.push_back(times[i]);
            tr.states.push_back(at(x0, times[i]));
        }
        return tr;
    }

private:
    std::size_t n2_;
    SpectralDecomposition d_;
};

inline Trajectory diffuse(const SignedGraph& g, std::span<const double> x0, std::span<const double> times) {
    detail::require_length(x0.size(), 2 * g.node_count(), "initial state");
    return DiffusionPropagator(g).run(x0, times);
}

/// Plateau diagnostics per time step, m = mean of all 2n entries.
///   fiber_coherence:  max_v |x(v+) - x(v-)|; small when fibres move together
///   cross_coherence:  max_v |x(v+) + x(v-) - 2m|; small when each fibre sits
///                     symmetrically about m, so v+ tracks the negative copies
///                     of the opposite faction
///   spread:           max x - min x over all lifted nodes
/// With two groups (labels 0/1 per base node):
///   group_contrast:   |mean over group 0 - mean over group 1| of (x+ + x-)/2
///   faction_contrast: |mean of {x(v+) : g0} u {x(w-) : g1} - mean of its image|
struct MetastabilityProfile {
    std::vector<double> fiber_coherence;
    std::vector<double> cross_coherence;
    std::vector<double> spread;
    std::vector<double> group_contrast;
    std::vector<double> faction_contrast;
};

inline MetastabilityProfile metastability_profile(const Trajectory& traj, const GrembanGraph& gg,
                                                  const std::vector<std::size_t>* groups = nullptr) {
    const std::size_t n = gg.base_count();
    if (groups) detail::require_length(groups->size(), n, "group labels");
    MetastabilityProfile p;
    for (const auto& x : traj.states) {
        detail::require_length(x.size(), gg.node_count(), "trajectory state");
        double m = 0.0;
        for (double v : x) m += v;
        m /= static_cast<double>(x.size());
        double fc = 0.0, cc = 0.0;
        for (NodeId v = 0; v < gg.node_count(); ++v) {
            if (gg.polarity[v] != Polarity::positive) continue;
            const double a = x[v], b = x[gg.involution[v]];
            fc = std::max(fc, std::abs(a - b));
            cc = std::max(cc, std::abs(a + b - 2.0 * m));
        }
        p.fiber_coherence.push_back(fc);
        p.cross_coherence.push_back(cc);
        const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
        p.spread.push_back(*hi - *lo);
        if (!groups) continue;

        double group_sum[2] = {0, 0}, group_count[2] = {0, 0}, cross_sum[2] = {0, 0}, cross_count[2] = {0, 0};
        for (NodeId xi = 0; xi < gg.node_count(); ++xi) {
            const std::size_t grp = (*groups)[gg.base[xi]] ? 1 : 0;
            const bool plus = gg.polarity[xi] == Polarity::positive;
            group_sum[grp] += x[xi];
            group_count[grp] += 1.0;
            const std::size_t side = plus == (grp == 0) ? 0 : 1;
            cross_sum[side] += x[xi];
            cross_count[side] += 1.0;
        }
        auto contrast = [](const double* sum, const double* count) {
            return count[0] > 0 && count[1] > 0 ? std::abs(sum[0] / count[0] - sum[1] / count[1]) : 0.0;
        };
        p.group_contrast.push_back(contrast(group_sum, group_count));
        p.faction_contrast.push_back(contrast(cross_sum, cross_count));
    }
    return p;
}

}  // namespace gremban
