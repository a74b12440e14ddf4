#pragma once

// Combinatorial Gremban expansion of a signed graph: the unsigned double
// cover on 2n nodes, its polarity-swapping involution, projections back to
// the signed graph, recognition of Gremban graphs, switching as a node
// permutation and the symmetric cut / frustration correspondence.
//
// Lift convention: node v of the signed graph lifts to v+ = v and v- = v + n.

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gremban/error.hpp"
#include "gremban/signed_graph.hpp"

namespace gremban {

/// Sorted, duplicate-free node list.
using NodeSet = std::vector<NodeId>;

inline NodeSet make_node_set(std::vector<NodeId> nodes) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

inline EdgeSet make_edge_set(EdgeSet edges) {
    for (auto& e : edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

/// Simple undirected graph without signs.
class UnsignedGraph {
public:
    UnsignedGraph() = default;
    explicit UnsignedGraph(std::size_t n) : n_(n), adj_(n) {}
    UnsignedGraph(std::size_t n, EdgeSet edges) : n_(n), adj_(n) {
        for (const auto& e : edges) {
            if (e.u == e.v) throw InvalidGraphError("self-loop at node " + std::to_string(e.u));
            if (e.u >= n || e.v >= n) throw InvalidGraphError("edge endpoint out of range");
        }
        const std::size_t before = edges.size();
        edges_ = make_edge_set(std::move(edges));
        if (edges_.size() != before) throw InvalidGraphError("duplicate edge in unsigned graph");
        for (const auto& e : edges_) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const EdgeSet& edges() const noexcept { return edges_; }
    const std::vector<NodeId>& neighbors(NodeId v) const { return adj_.at(v); }

    bool has_edge(NodeId u, NodeId v) const {
        if (u >= n_ || v >= n_) return false;
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    std::size_t component_count() const {
        std::vector<bool> seen(n_, false);
        std::size_t count = 0;
        std::vector<NodeId> stack;
        for (NodeId r = 0; r < n_; ++r) {
            if (seen[r]) continue;
            ++count;
            seen[r] = true;
            stack.push_back(r);
            while (!stack.empty()) {
                NodeId x = stack.back();
                stack.pop_back();
                for (NodeId y : adj_[x])
                    if (!seen[y]) {
                        seen[y] = true;
                        stack.push_back(y);
                    }
            }
        }
        return count;
    }
    bool connected() const { return component_count() <= 1; }

    friend bool operator==(const UnsignedGraph& a, const UnsignedGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    EdgeSet edges_;
    std::vector<std::vector<NodeId>> adj_;
};

enum class Polarity : int { negative = -1, positive = 1 };

inline int to_int(Polarity p) { return static_cast<int>(p); }
inline Polarity opposite(Polarity p) { return p == Polarity::positive ? Polarity::negative : Polarity::positive; }

/// Lifted node v^chi.
struct PolarizedNode {
    NodeId base = 0;
    Polarity polarity = Polarity::positive;
    friend bool operator==(const PolarizedNode&, const PolarizedNode&) = default;
};

/// Unsigned graph on 2n nodes with a fixed-point-free involutive
/// automorphism, an antisymmetric polarity labelling and a base map.
struct GrembanGraph {
    UnsignedGraph graph;
    std::vector<NodeId> involution;
    std::vector<Polarity> polarity;
    std::vector<NodeId> base;

    std::size_t node_count() const noexcept { return graph.node_count(); }
    std::size_t base_count() const noexcept { return graph.node_count() / 2; }
    NodeId eta(NodeId x) const { return involution.at(x); }

    /// Index of v^chi.
    NodeId lift(NodeId v, Polarity chi) const {
        for (NodeId x = 0; x < base.size(); ++x)
            if (base[x] == v && polarity[x] == chi) return x;
        throw RangeError("no lift of base node " + std::to_string(v));
    }

    PolarizedNode label(NodeId x) const { return {base.at(x), polarity.at(x)}; }

    friend bool operator==(const GrembanGraph&, const GrembanGraph&) = default;
};

/// Positive edges lift to (u+,v+),(u-,v-); negative edges to (u+,v-),(u-,v+).
inline GrembanGraph expand(const SignedGraph& g) {
    const std::size_t n = g.node_count();
    EdgeSet edges;
    edges.reserve(2 * g.edge_count());
    for (const auto& e : g.edges()) {
        if (e.sign > 0) {
            edges.push_back({e.u, e.v});
            edges.push_back({e.u + n, e.v + n});
        } else {
            edges.push_back({e.u, e.v + n});
            edges.push_back({e.v, e.u + n});
        }
    }
    GrembanGraph gg;
    gg.graph = UnsignedGraph(2 * n, std::move(edges));
    gg.involution.resize(2 * n);
    gg.polarity.resize(2 * n);
    gg.base.resize(2 * n);
    for (NodeId v = 0; v < n; ++v) {
        gg.involution[v] = v + n;
        gg.involution[v + n] = v;
        gg.polarity[v] = Polarity::positive;
        gg.polarity[v + n] = Polarity::negative;
        gg.base[v] = gg.base[v + n] = v;
    }
    return gg;
}

namespace detail {

inline void check_involution(const UnsignedGraph& h, const std::vector<NodeId>& eta) {
    auto fail = [](const std::string& msg) { throw NotGrembanError(msg); };
    const std::size_t n2 = h.node_count();
    if (eta.size() != n2) fail("involution length " + std::to_string(eta.size()) + " != node count " + std::to_string(n2));
    std::vector<bool> hit(n2, false);
    for (NodeId x = 0; x < n2; ++x) {
        if (eta[x] >= n2) fail("involution maps " + std::to_string(x) + " out of range");
        if (hit[eta[x]]) fail("involution is not a permutation");
        hit[eta[x]] = true;
    }
    for (NodeId x = 0; x < n2; ++x) {
        if (eta[eta[x]] != x) fail("involution is not self-inverse at node " + std::to_string(x));
    }
    for (NodeId x = 0; x < n2; ++x) {
        if (eta[x] == x) fail("involution has a fixed point at node " + std::to_string(x));
    }
    for (const auto& e : h.edges()) {
        if (!h.has_edge(eta[e.u], eta[e.v])) {
            fail("involution is not an automorphism: image of edge (" + std::to_string(e.u) + "," +
                 std::to_string(e.v) + ") is missing");
        }
    }
    for (const auto& e : h.edges()) {
        if (eta[e.u] == e.v) {
            fail("edge between polarities of one node: (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        }
    }
    for (const auto& e : h.edges()) {
        if (h.has_edge(e.u, eta[e.v])) {
            fail("both (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") and (" + std::to_string(e.u) +
                 "," + std::to_string(eta[e.v]) + ") are edges");
        }
    }
}

}  // namespace detail

/// Throws NotGrembanError naming the first violated invariant.
inline void validate(const GrembanGraph& gg) {
    const std::size_t n2 = gg.node_count();
    if (n2 % 2 != 0) throw NotGrembanError("Gremban graph must have an even node count");
    if (gg.polarity.size() != n2 || gg.base.size() != n2) {
        throw NotGrembanError("polarity/base labels do not cover every node");
    }
    detail::check_involution(gg.graph, gg.involution);
    const std::size_t n = n2 / 2;
    std::vector<int> lifts(n, 0);
    for (NodeId x = 0; x < n2; ++x) {
        const NodeId y = gg.involution[x];
        if (gg.polarity[y] != opposite(gg.polarity[x])) {
            throw NotGrembanError("polarity is not antisymmetric under the involution at node " + std::to_string(x));
        }
        if (gg.base[x] >= n) throw NotGrembanError("base id out of range at node " + std::to_string(x));
        if (gg.base[y] != gg.base[x]) throw NotGrembanError("involution partners have different base ids");
        ++lifts[gg.base[x]];
    }
    for (NodeId v = 0; v < n; ++v) {
        if (lifts[v] != 2) throw NotGrembanError("base node " + std::to_string(v) + " does not have exactly two lifts");
    }
}

inline NodeSet involute(const GrembanGraph& gg, const NodeSet& nodes) {
    NodeSet out;
    out.reserve(nodes.size());
    for (NodeId x : nodes) {
        if (x >= gg.node_count()) throw RangeError("node " + std::to_string(x) + " out of range");
        out.push_back(gg.involution[x]);
    }
    return make_node_set(std::move(out));
}

inline EdgeSet involute(const GrembanGraph& gg, const EdgeSet& edges) {
    EdgeSet out;
    out.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.u >= gg.node_count() || e.v >= gg.node_count()) throw RangeError("edge endpoint out of range");
        out.push_back({gg.involution[e.u], gg.involution[e.v]});
    }
    return make_edge_set(std::move(out));
}

inline bool is_gremban_symmetric(const GrembanGraph& gg, const NodeSet& nodes) {
    return involute(gg, nodes) == make_node_set(nodes);
}

inline bool is_gremban_symmetric(const GrembanGraph& gg, const EdgeSet& edges) {
    return involute(gg, edges) == make_edge_set(edges);
}

/// Partition given as explicit blocks; must cover V exactly once.
/// Symmetric iff eta maps every block onto some block.
inline bool is_gremban_symmetric(const GrembanGraph& gg, const std::vector<NodeSet>& blocks) {
    const std::size_t n2 = gg.node_count();
    std::vector<std::size_t> owner(n2, blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw InvalidPartitionError("partition has an empty block");
        for (NodeId x : blocks[b]) {
            if (x >= n2) throw RangeError("node " + std::to_string(x) + " out of range");
            if (owner[x] != blocks.size()) throw InvalidPartitionError("partition blocks overlap at node " + std::to_string(x));
            owner[x] = b;
        }
    }
    for (NodeId x = 0; x < n2; ++x)
        if (owner[x] == blocks.size()) throw InvalidPartitionError("partition does not cover node " + std::to_string(x));
    for (const auto& block : blocks) {
        const auto image = involute(gg, block);
        const std::size_t target = owner[image.front()];
        if (image != make_node_set(blocks[target])) return false;
    }
    return true;
}

inline std::vector<NodeSet> blocks_from_labels(std::span<const std::size_t> labels) {
    std::size_t k = 0;
    for (auto l : labels) k = std::max(k, l + 1);
    std::vector<NodeSet> blocks(k);
    for (NodeId x = 0; x < labels.size(); ++x) blocks[labels[x]].push_back(x);
    std::erase_if(blocks, [](const NodeSet& b) { return b.empty(); });
    return blocks;
}

inline std::vector<NodeSet> blocks_from_bipartition(const Bipartition& p) {
    std::vector<NodeSet> blocks(2);
    for (NodeId x = 0; x < p.size(); ++x) blocks[p.side[x] ? 1 : 0].push_back(x);
    std::erase_if(blocks, [](const NodeSet& b) { return b.empty(); });
    return blocks;
}

/// The signed graph covered by gg: edge (u^chi, v^psi) maps to (u,v) with sign chi*psi.
inline SignedGraph project(const GrembanGraph& gg) {
    validate(gg);
    std::vector<SignedEdge> edges;
    for (const auto& e : gg.graph.edges()) {
        const NodeId u = gg.base[e.u], v = gg.base[e.v];
        const int s = to_int(gg.polarity[e.u]) * to_int(gg.polarity[e.v]);
        edges.push_back({std::min(u, v), std::max(u, v), s});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return SignedGraph(gg.base_count(), std::move(edges));
}

/// Signed subgraph whose expansion is the given (nodes, edges) subgraph.
/// Node ids of the result are the base ids of gg.
inline SignedGraph project_subgraph(const GrembanGraph& gg, const NodeSet& nodes, const EdgeSet& edges) {
    validate(gg);
    const NodeSet ns = make_node_set(nodes);
    const EdgeSet es = make_edge_set(edges);
    for (const auto& e : es) {
        if (!gg.graph.has_edge(e.u, e.v)) throw InvalidGraphError("edge is not part of the Gremban graph");
        if (!std::binary_search(ns.begin(), ns.end(), e.u) || !std::binary_search(ns.begin(), ns.end(), e.v)) {
            throw InvalidGraphError("subgraph edge has an endpoint outside the node set");
        }
    }
    if (!is_gremban_symmetric(gg, ns) || !is_gremban_symmetric(gg, es)) {
        throw SymmetryError("subgraph is not Gremban-symmetric; it is not the expansion of a signed subgraph");
    }
    std::vector<SignedEdge> out;
    for (const auto& e : es) {
        const NodeId u = gg.base[e.u], v = gg.base[e.v];
        out.push_back({std::min(u, v), std::max(u, v), to_int(gg.polarity[e.u]) * to_int(gg.polarity[e.v])});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return SignedGraph(gg.base_count(), std::move(out));
}

/// pi_chi: keeps nodes of polarity chi and maps them to their base ids.
inline NodeSet one_sided_project(const GrembanGraph& gg, const NodeSet& nodes, Polarity chi) {
    NodeSet out;
    for (NodeId x : nodes) {
        if (x >= gg.node_count()) throw RangeError("node " + std::to_string(x) + " out of range");
        if (gg.polarity[x] == chi) out.push_back(gg.base[x]);
    }
    return make_node_set(std::move(out));
}

/// Partition mode: blocks must form a Gremban-symmetric partition; the
/// images form a partition of V(G). Blocks with an empty image are dropped.
inline std::vector<NodeSet> one_sided_project(const GrembanGraph& gg, const std::vector<NodeSet>& blocks, Polarity chi) {
    if (!is_gremban_symmetric(gg, blocks)) throw SymmetryError("partition is not Gremban-symmetric");
    std::vector<NodeSet> out;
    for (const auto& b : blocks) {
        auto img = one_sided_project(gg, b, chi);
        if (!img.empty()) out.push_back(std::move(img));
    }
    return out;
}

/// Validates the Gremban-graph conditions for (h, eta) and builds an
/// antisymmetric polarisation greedily: scanning nodes in increasing order,
/// the first unlabelled node of each pair becomes + and takes the next base id.
inline GrembanGraph recognize(const UnsignedGraph& h, const std::vector<NodeId>& eta) {
    detail::check_involution(h, eta);
    const std::size_t n2 = h.node_count();
    GrembanGraph gg;
    gg.graph = h;
    gg.involution = eta;
    gg.polarity.assign(n2, Polarity::positive);
    gg.base.assign(n2, n2);
    NodeId next = 0;
    for (NodeId x = 0; x < n2; ++x) {
        if (gg.base[x] != n2) continue;
        gg.polarity[x] = Polarity::positive;
        gg.polarity[eta[x]] = Polarity::negative;
        gg.base[x] = gg.base[eta[x]] = next++;
    }
    return gg;
}

/// Swaps v+ and v- for every v with theta(v) = -1. Labels stay attached to
/// positions, so for gg = expand(g) the result equals expand(switch_graph(g, theta)).
inline GrembanGraph switching_as_permutation(const GrembanGraph& gg, const SwitchingFunction& theta) {
    detail::require_length(theta.size(), gg.base_count(), "switching function");
    std::vector<NodeId> tau(gg.node_count());
    for (NodeId x = 0; x < gg.node_count(); ++x) tau[x] = theta[gg.base[x]] < 0 ? gg.involution[x] : x;
    EdgeSet edges;
    edges.reserve(gg.graph.edge_count());
    for (const auto& e : gg.graph.edges()) edges.push_back({tau[e.u], tau[e.v]});
    GrembanGraph out = gg;
    out.graph = UnsignedGraph(gg.node_count(), std::move(edges));
    return out;
}

enum class SymmetricCutKind { cut, frustration };

inline const char* to_string(SymmetricCutKind k) { return k == SymmetricCutKind::cut ? "cut" : "frustration"; }

namespace detail {

/// Calls fn(side, kind) for every unordered Gremban-symmetric bipartition of
/// V(gg): first the eta-fixed family (fibres kept whole, block of base 0
/// listed first), then the eta-swapped family (one polarity of every fibre on
/// each side, theta(0) = +1).
inline void for_each_symmetric_bipartition(const GrembanGraph& gg,
                                           const std::function<void(const Bipartition&, SymmetricCutKind)>& fn) {
    const std::size_t n = gg.base_count();
    if (n == 0) return;
    std::vector<NodeId> plus(n), minus(n);
    for (NodeId x = 0; x < gg.node_count(); ++x)
        (gg.polarity[x] == Polarity::positive ? plus : minus)[gg.base[x]] = x;
    Bipartition p{std::vector<std::uint8_t>(gg.node_count(), 0)};
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        for (NodeId v = 0; v < n; ++v) {
            const std::uint8_t s = v == 0 ? 0 : static_cast<std::uint8_t>((mask >> (v - 1)) & 1u);
            p.side[plus[v]] = p.side[minus[v]] = s;
        }
        fn(p, SymmetricCutKind::cut);
    }
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (NodeId v = 0; v < n; ++v) {
            const std::uint8_t s = v == 0 ? 0 : static_cast<std::uint8_t>((mask >> (v - 1)) & 1u);
            p.side[plus[v]] = s;
            p.side[minus[v]] = static_cast<std::uint8_t>(1 - s);
        }
        fn(p, SymmetricCutKind::frustration);
    }
}

inline std::size_t cut_size(const UnsignedGraph& h, const Bipartition& p) {
    std::size_t c = 0;
    for (const auto& e : h.edges()) c += p.side[e.u] != p.side[e.v];
    return c;
}

}  // namespace detail

inline constexpr std::size_t kSymmetricCutCap = 14;

struct SymmetricConnectivity {
    std::size_t kappa = 0;
    /// The expansion itself is disconnected (for a connected source: the
    /// source is balanced); kappa is then reported as 0.
    bool expansion_disconnected = false;
};

/// Minimum cut over all Gremban-symmetric bipartitions, by enumeration.
inline SymmetricConnectivity symmetric_edge_connectivity(const GrembanGraph& gg, std::size_t cap = kSymmetricCutCap) {
    validate(gg);
    const std::size_t n = gg.base_count();
    if (n > cap) throw SizeLimitError("symmetric_edge_connectivity: " + std::to_string(n) + " base nodes exceeds cap", cap);
    if (!gg.graph.connected()) return {0, true};
    std::size_t best = gg.graph.edge_count();
    detail::for_each_symmetric_bipartition(gg, [&](const Bipartition& p, SymmetricCutKind) {
        best = std::min(best, detail::cut_size(gg.graph, p));
    });
    return {best, false};
}

struct SymmetricCutClass {
    SymmetricCutKind kind = SymmetricCutKind::cut;
    /// Projection of the cut-set of the expansion, as edges of G.
    EdgeSet projected_edges;
    /// Frustration kind only: theta(v) = -1 iff v- lies in block 0, normalised so theta(0) = +1.
    std::optional<SwitchingFunction> theta;
};

/// Projects the cut of a Gremban-symmetric bipartition of V(gg) to G and
/// reports whether it is a cut-set (eta fixes both blocks) or a frustration
/// set (eta swaps them).
inline SymmetricCutClass classify_symmetric_cut(const GrembanGraph& gg, const Bipartition& p) {
    validate(gg);
    if (p.size() != gg.node_count()) throw DimensionError("bipartition length does not match the expansion");
    if (!p.proper()) throw InvalidPartitionError("both blocks of the bipartition must be nonempty");
    bool fixed = true, swapped = true;
    for (NodeId x = 0; x < p.size(); ++x) {
        const bool same = p.side[x] == p.side[gg.involution[x]];
        fixed = fixed && same;
        swapped = swapped && !same;
    }
    if (!fixed && !swapped) throw SymmetryError("bipartition is not Gremban-symmetric");

    SymmetricCutClass out;
    out.kind = fixed ? SymmetricCutKind::cut : SymmetricCutKind::frustration;
    EdgeSet projected;
    for (const auto& e : gg.graph.edges())
        if (p.side[e.u] != p.side[e.v]) projected.push_back({gg.base[e.u], gg.base[e.v]});
    out.projected_edges = make_edge_set(std::move(projected));
    if (swapped) {
        SwitchingFunction theta(gg.base_count());
        for (NodeId x = 0; x < p.size(); ++x)
            if (gg.polarity[x] == Polarity::negative && p.side[x] == 0) theta.set(gg.base[x], -1);
        if (theta.size() > 0 && theta[0] < 0)
            for (NodeId v = 0; v < theta.size(); ++v) theta.flip(v);
        out.theta = std::move(theta);
    }
    return out;
}

}  // namespace gremban
