#pragma once

// Community / faction detection on the Gremban Laplacian: sign thresholding
// of lifted eigenvectors, two-way detection, spectral embedding of the
// expansion, symmetry-preserving k-means and multi-way detection.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gremban/error.hpp"
#include "gremban/expansion.hpp"
#include "gremban/matrix.hpp"
#include "gremban/operators.hpp"
#include "gremban/signed_graph.hpp"
#include "gremban/spectral.hpp"

namespace gremban {

/// Labels per node, 0..k-1.
using Labels = std::vector<std::size_t>;

/// Splits V(gg) by the signs of psi. Block 0 of the result is U1:
///   symmetric psi:      U1 = {psi >= 0}
///   antisymmetric psi:  U1 = {psi > 0} plus v+ for every zero fibre
/// Entries with |psi| <= 1e-8 ||psi||_inf count as zero. Each fibre is
/// decided from its symmetrised value, so the result is Gremban-symmetric by
/// construction. A result with an empty block is degenerate (proper() false).
inline Bipartition threshold_partition(const GrembanGraph& gg, std::span<const double> psi, const LiftTag& tag) {
    detail::require_length(psi.size(), gg.node_count(), "threshold vector");
    if (tag.tag == Lift::mixed) throw AmbiguityError("threshold_partition: vector has a mixed lift tag");
    const double zero_tol = 1e-8 * norm_inf(psi);
    Bipartition p{std::vector<std::uint8_t>(psi.size(), 1)};
    for (NodeId x = 0; x < psi.size(); ++x) {
        const NodeId y = gg.involution[x];
        if (tag.tag == Lift::symmetric) {
            const double s = 0.5 * (psi[x] + psi[y]);
            p.side[x] = s >= -zero_tol ? 0 : 1;
        } else {
            const double a = 0.5 * (psi[x] - psi[y]);
            if (std::abs(a) <= zero_tol) p.side[x] = gg.polarity[x] == Polarity::positive ? 0 : 1;
            else p.side[x] = a > 0.0 ? 0 : 1;
        }
    }
    for (NodeId x = 0; x < p.size(); ++x) {
        const bool same = p.side[x] == p.side[gg.involution[x]];
        if (same != (tag.tag == Lift::symmetric)) throw SymmetryError("threshold_partition: result is not Gremban-symmetric");
    }
    return p;
}

/// Gremban Laplacian (optionally K^{-1/2} L K^{-1/2}) with its trivial kernel
/// vector: the constant vector, or (sqrt k, sqrt k) when normalised.
struct GrembanOperator {
    SymMatrix laplacian;
    Vector trivial;
};

/// Degrees used for normalisation: an isolated node (whose Laplacian row is
/// zero) is given degree 1, so K^{-1/2} acts as a pseudo-inverse there.
inline Vector normalization_degrees(Vector k) {
    for (double& x : k) x = std::max(x, 1.0);
    return k;
}

inline GrembanOperator gremban_laplacian(const SignedGraph& g, bool normalized) {
    const MatrixBundle b = build_bundle(g);
    if (!normalized) return {b.gremban_L, Vector(2 * g.node_count(), 1.0)};
    const Vector k = normalization_degrees(gremban_degrees(g));
    Vector root(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) root[i] = std::sqrt(k[i]);
    return {normalized_laplacian(b.gremban_L, k), root};
}

/// Lift-classified spectrum of the (normalised) Gremban Laplacian with the
/// trivial vector pinned first.
inline LiftedDecomposition gremban_spectrum(const SignedGraph& g, bool normalized) {
    const GrembanOperator op = gremban_laplacian(g, normalized);
    LiftedDecomposition ld = classify_lift(eig_sym(op.laplacian));
    pin_trivial(ld, op.trivial);
    return ld;
}

enum class StructureKind { community, faction, ambiguous };

inline const char* to_string(StructureKind k) {
    switch (k) {
        case StructureKind::community: return "community";
        case StructureKind::faction: return "faction";
        default: return "ambiguous";
    }
}

struct DetectionResult {
    StructureKind kind = StructureKind::ambiguous;
    Labels labels;                 // over V(G): 0 iff v+ lies in U1
    Bipartition expanded;          // over V(expansion), block 0 = U1
    double lambda2 = 0.0;          // eigenvalue of the vector used
    double competitor_lambda = std::numeric_limits<double>::quiet_NaN();
    double lambda_gap = std::numeric_limits<double>::quiet_NaN();  // lambda2 - competitor_lambda
    LiftTag fiedler_tag;
    std::size_t fiedler_index = 1;
};

namespace detail {

inline std::optional<std::size_t> first_of_class(const LiftedDecomposition& ld, Lift cls, std::size_t from) {
    for (std::size_t j = from; j < ld.size(); ++j)
        if (ld.tag(j) == cls) return j;
    return std::nullopt;
}

}  // namespace detail

/// Two-way detection. The Fiedler vector of the (normalised) Gremban
/// Laplacian is thresholded; a symmetric vector gives a community split, an
/// antisymmetric one a faction split. When lambda_2 is shared by both
/// symmetry classes the antisymmetric vector is used and kind = ambiguous.
/// A disconnected graph is split along its components (community).
inline DetectionResult detect_two_way(const SignedGraph& g, bool normalized = false) {
    const std::size_t n = g.node_count();
    if (n < 2) throw InvalidGraphError("detect_two_way needs at least two nodes");
    const GrembanGraph gg = expand(g);
    const LiftedDecomposition ld = gremban_spectrum(g, normalized);

    DetectionResult r;
    if (!is_connected(g)) {
        const auto j = detail::first_of_class(ld, Lift::symmetric, 1);
        if (!j) throw NumericalError("detect_two_way: no symmetric kernel vector for a disconnected graph");
        r.fiedler_index = *j;
        r.kind = StructureKind::community;
    } else {
        FiedlerResult f = fiedler_from(ld);
        r.fiedler_index = f.index;
        if (f.ambiguous) r.kind = StructureKind::ambiguous;
        else if (f.tag->tag == Lift::symmetric) r.kind = StructureKind::community;
        else if (f.tag->tag == Lift::antisymmetric) r.kind = StructureKind::faction;
        else r.kind = StructureKind::ambiguous;
    }
    r.fiedler_tag = ld.tags[r.fiedler_index];
    r.lambda2 = ld.eigenvalue(r.fiedler_index);
    if (r.fiedler_tag.tag != Lift::mixed) {
        const Lift other = r.fiedler_tag.tag == Lift::symmetric ? Lift::antisymmetric : Lift::symmetric;
        if (const auto c = detail::first_of_class(ld, other, 1)) {
            r.competitor_lambda = ld.eigenvalue(*c);
            r.lambda_gap = r.lambda2 - r.competitor_lambda;
        }
    }
    if (r.fiedler_tag.tag == Lift::mixed) {
        r.kind = StructureKind::ambiguous;
        r.labels.assign(n, 0);
        r.expanded = Bipartition{std::vector<std::uint8_t>(2 * n, 0)};
        return r;
    }
    r.expanded = threshold_partition(gg, ld.vector(r.fiedler_index), r.fiedler_tag);
    r.labels.resize(n);
    for (NodeId v = 0; v < n; ++v) r.labels[v] = r.expanded.side[v];
    return r;
}

/// Rows: nodes of the expansion (v+ = v, v- = v + n); columns psi_2..psi_k.
inline Matrix embed(const SignedGraph& g, std::size_t k, bool normalized = false) {
    const std::size_t n2 = 2 * g.node_count();
    if (k < 2 || k > n2) throw RangeError("embed: k must lie in [2, 2n], got " + std::to_string(k));
    const LiftedDecomposition ld = gremban_spectrum(g, normalized);
    Matrix y(n2, k - 1);
    for (std::size_t c = 1; c < k; ++c) y.set_column(c - 1, ld.vector(c));
    return y;
}

struct KMeansResult {
    Labels labels;
    Matrix centers;
    std::size_t iterations = 0;
};

inline constexpr std::size_t kMaxLloydIterations = 300;

namespace detail {

inline double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

inline std::size_t nearest_center(const Matrix& centers, std::span<const double> p) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.rows(); ++c) {
        const double d = sq_dist(centers.row(c), p);
        if (d < bd) {
            bd = d;
            best = c;
        }
    }
    return best;
}

}  // namespace detail

/// Lloyd's algorithm from farthest-point initialisation: the first centre is
/// the point of largest norm, each further centre the point farthest from
/// the centres chosen so far (ties to the lowest index). The procedure is
/// fully deterministic; `seed` is accepted for interface stability only.
inline KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed = 0) {
    (void)seed;
    const std::size_t m = points.rows(), d = points.cols();
    if (k == 0 || k > m) throw RangeError("kmeans: k must lie in [1, " + std::to_string(m) + "]");

    KMeansResult r;
    r.centers = Matrix(k, d);
    std::vector<double> closest(m, std::numeric_limits<double>::infinity());
    {
        std::size_t first = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double nn = dot(points.row(i), points.row(i));
            if (nn > best) {
                best = nn;
                first = i;
            }
        }
        std::copy(points.row(first).begin(), points.row(first).end(), r.centers.row(0).begin());
    }
    for (std::size_t c = 1; c < k; ++c) {
        std::size_t far = 0;
        double fd = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            closest[i] = std::min(closest[i], detail::sq_dist(points.row(i), r.centers.row(c - 1)));
            if (closest[i] > fd) {
                fd = closest[i];
                far = i;
            }
        }
        std::copy(points.row(far).begin(), points.row(far).end(), r.centers.row(c).begin());
    }

    r.labels.assign(m, k);
    for (r.iterations = 1; r.iterations <= kMaxLloydIterations; ++r.iterations) {
        bool changed = false;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t c = detail::nearest_center(r.centers, points.row(i));
            changed = changed || c != r.labels[i];
            r.labels[i] = c;
        }
        Matrix sums(k, d);
        std::vector<std::size_t> count(k, 0);
        for (std::size_t i = 0; i < m; ++i) {
            ++count[r.labels[i]];
            auto row = sums.row(r.labels[i]);
            for (std::size_t j = 0; j < d; ++j) row[j] += points(i, j);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] == 0) {
                // Re-seed at the point farthest from its own centre.
                std::size_t far = 0;
                double fd = -1.0;
                for (std::size_t i = 0; i < m; ++i) {
                    if (count[r.labels[i]] <= 1) continue;
                    const double dd = detail::sq_dist(points.row(i), r.centers.row(r.labels[i]));
                    if (dd > fd) {
                        fd = dd;
                        far = i;
                    }
                }
                --count[r.labels[far]];
                r.labels[far] = c;
                count[c] = 1;
                std::copy(points.row(far).begin(), points.row(far).end(), r.centers.row(c).begin());
                changed = true;
                continue;
            }
            for (std::size_t j = 0; j < d; ++j) r.centers(c, j) = sums(c, j) / static_cast<double>(count[c]);
        }
        if (!changed) break;
    }
    r.iterations = std::min(r.iterations, kMaxLloydIterations);
    return r;
}

/// Makes a clustering of an expansion embedding Gremban-symmetric. Cluster a
/// is paired with the cluster b that most often holds the opposite polarity
/// of a's members (fibre counts in both orientations). The pairing must be an
/// involution. Each fibre that breaks the pairing is repaired by moving the
/// member that lands closer to its new cluster centre.
inline void symmetrize_labels(const Matrix& points, KMeansResult& km, const std::vector<NodeId>& involution) {
    const std::size_t k = km.centers.rows();
    detail::require_length(involution.size(), km.labels.size(), "involution");
    std::vector<std::vector<std::size_t>> count(k, std::vector<std::size_t>(k, 0));
    for (NodeId x = 0; x < involution.size(); ++x) ++count[km.labels[x]][km.labels[involution[x]]];
    std::vector<std::size_t> partner(k);
    for (std::size_t a = 0; a < k; ++a)
        partner[a] = static_cast<std::size_t>(std::max_element(count[a].begin(), count[a].end()) - count[a].begin());
    for (std::size_t a = 0; a < k; ++a) {
        if (partner[partner[a]] != a) {
            throw SymmetryError("k-means clusters cannot be paired symmetrically: cluster " + std::to_string(a) +
                                " pairs with " + std::to_string(partner[a]) + ", which pairs with " +
                                std::to_string(partner[partner[a]]));
        }
    }
    for (NodeId x = 0; x < involution.size(); ++x) {
        const NodeId y = involution[x];
        if (y < x) continue;
        const std::size_t a = km.labels[x], b = km.labels[y];
        if (partner[a] == b) continue;
        const double keep_x = detail::sq_dist(points.row(y), km.centers.row(partner[a]));
        const double keep_y = detail::sq_dist(points.row(x), km.centers.row(partner[b]));
        if (keep_x <= keep_y) km.labels[y] = partner[a];
        else km.labels[x] = partner[b];
    }
}

struct Structure {
    StructureKind kind = StructureKind::community;  // community or faction (pair)
    NodeSet community;                              // for a faction pair: the parent community
    NodeSet faction_a, faction_b;                   // faction pairs only
    std::size_t cluster_a = 0, cluster_b = 0;       // expanded cluster ids
};

struct MultiwayReport {
    Labels expanded_labels;  // over V(expansion)
    std::vector<Structure> structures;
};

/// Embeds the expansion with psi_2..psi_k, clusters the 2n points into k
/// Gremban-symmetric clusters and reads off communities (eta-invariant
/// clusters) and faction pairs (clusters swapped by eta).
inline MultiwayReport detect_multiway(const SignedGraph& g, std::size_t k, bool normalized = false,
                                      std::uint64_t seed = 0) {
    const std::size_t n = g.node_count();
    if (k < 2 || k > n) throw RangeError("detect_multiway: k must lie in [2, n], got " + std::to_string(k));
    if (!is_connected(g)) throw DisconnectedGraphError("detect_multiway: graph is disconnected");
    const GrembanGraph gg = expand(g);
    const Matrix y = embed(g, k, normalized);
    KMeansResult km = kmeans(y, k, seed);
    symmetrize_labels(y, km, gg.involution);

    MultiwayReport rep;
    rep.expanded_labels = km.labels;
    std::vector<NodeSet> clusters(k);
    for (NodeId x = 0; x < 2 * n; ++x) clusters[km.labels[x]].push_back(x);
    std::vector<bool> done(k, false);
    for (std::size_t a = 0; a < k; ++a) {
        if (done[a] || clusters[a].empty()) continue;
        const NodeSet image = involute(gg, clusters[a]);
        const std::size_t b = km.labels[image.front()];
        if (image != clusters[b]) throw SymmetryError("detect_multiway: clustering is not Gremban-symmetric");
        done[a] = done[b] = true;
        Structure s;
        s.cluster_a = a;
        s.cluster_b = b;
        if (a == b) {
            s.kind = StructureKind::community;
            s.community = one_sided_project(gg, clusters[a], Polarity::positive);
        } else {
            s.kind = StructureKind::faction;
            s.faction_a = one_sided_project(gg, clusters[a], Polarity::positive);
            s.faction_b = one_sided_project(gg, clusters[b], Polarity::positive);
            if (s.faction_b < s.faction_a && !s.faction_b.empty()) {
                std::swap(s.faction_a, s.faction_b);
                std::swap(s.cluster_a, s.cluster_b);
            }
            NodeSet u = s.faction_a;
            u.insert(u.end(), s.faction_b.begin(), s.faction_b.end());
            s.community = make_node_set(std::move(u));
        }
        rep.structures.push_back(std::move(s));
    }
    std::erase_if(rep.structures, [](const Structure& s) { return s.community.empty(); });
    std::sort(rep.structures.begin(), rep.structures.end(),
              [](const Structure& l, const Structure& r) { return l.community.front() < r.community.front(); });

    std::vector<int> seen(n, 0);
    for (const auto& s : rep.structures)
        for (NodeId v : s.community) ++seen[v];
    for (NodeId v = 0; v < n; ++v)
        if (seen[v] != 1) throw SymmetryError("detect_multiway: structures do not partition the node set");
    return rep;
}

}  // namespace gremban
