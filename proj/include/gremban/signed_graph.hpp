#pragma once

// Signed simple graphs: switching, balance, cut-sets, frustration sets and
// exact brute-force oracles for edge connectivity and the frustration index.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gremban/error.hpp"

namespace gremban {

using NodeId = std::size_t;

/// Unsigned undirected edge, stored with u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct SignedEdge {
    NodeId u = 0;
    NodeId v = 0;
    int sign = 1;

    Edge edge() const { return {u, v}; }
    friend auto operator<=>(const SignedEdge&, const SignedEdge&) = default;
};

using EdgeSet = std::vector<Edge>;

/// Default node cap for the exponential brute-force routines.
inline constexpr std::size_t kBruteForceCap = 20;

/// Simple undirected graph on nodes 0..n-1 with a +1/-1 sign on every edge.
///
/// Edges are canonicalised to u < v and kept sorted, so two graphs compare
/// equal exactly when they have the same node count, edges and signs.
class SignedGraph {
public:
    SignedGraph() = default;
    explicit SignedGraph(std::size_t node_count) : n_(node_count), adj_(node_count) {}

    SignedGraph(std::size_t node_count, std::vector<SignedEdge> edges)
        : n_(node_count), edges_(std::move(edges)), adj_(node_count) {
        for (auto& e : edges_) {
            if (e.u == e.v) {
                throw InvalidGraphError("self-loop at node " + std::to_string(e.u));
            }
            if (e.u >= n_ || e.v >= n_) {
                throw InvalidGraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                        ") has an endpoint >= node count " + std::to_string(n_));
            }
            if (e.sign != 1 && e.sign != -1) {
                throw InvalidGraphError("edge sign must be +1 or -1, got " + std::to_string(e.sign));
            }
            if (e.u > e.v) std::swap(e.u, e.v);
        }
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 1; i < edges_.size(); ++i) {
            if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
                throw InvalidGraphError("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                                        std::to_string(edges_[i].v) + ")");
            }
        }
        for (const auto& e : edges_) {
            adj_[e.u].push_back({e.v, e.sign});
            adj_[e.v].push_back({e.u, e.sign});
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const SignedEdge> edges() const noexcept { return edges_; }

    struct Neighbor {
        NodeId node;
        int sign;
        friend auto operator<=>(const Neighbor&, const Neighbor&) = default;
    };
    std::span<const Neighbor> neighbors(NodeId v) const { return adj_.at(v); }
    std::size_t degree(NodeId v) const { return adj_.at(v).size(); }

    /// Sign of edge uv, or nullopt when absent.
    std::optional<int> sign(NodeId u, NodeId v) const {
        for (const auto& nb : adj_.at(u)) {
            if (nb.node == v) return nb.sign;
        }
        return std::nullopt;
    }

    friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<SignedEdge> edges_;
    std::vector<std::vector<Neighbor>> adj_;
};

/// theta: V -> {+1,-1}.
class SwitchingFunction {
public:
    SwitchingFunction() = default;
    explicit SwitchingFunction(std::size_t n) : theta_(n, 1) {}
    explicit SwitchingFunction(std::vector<int> theta) : theta_(std::move(theta)) {
        for (int t : theta_) {
            if (t != 1 && t != -1) throw RangeError("switching values must be +1 or -1");
        }
    }

    std::size_t size() const noexcept { return theta_.size(); }
    int operator[](NodeId v) const { return theta_.at(v); }
    void set(NodeId v, int value) {
        if (value != 1 && value != -1) throw RangeError("switching values must be +1 or -1");
        theta_.at(v) = value;
    }
    void flip(NodeId v) { theta_.at(v) = -theta_.at(v); }
    const std::vector<int>& values() const noexcept { return theta_; }

    /// Nodes with theta = -1.
    std::vector<NodeId> negative_set() const {
        std::vector<NodeId> out;
        for (NodeId v = 0; v < theta_.size(); ++v)
            if (theta_[v] < 0) out.push_back(v);
        return out;
    }

    friend bool operator==(const SwitchingFunction&, const SwitchingFunction&) = default;

private:
    std::vector<int> theta_;
};

/// Two-sided partition of V, side[v] in {0,1}.
struct Bipartition {
    std::vector<std::uint8_t> side;

    std::size_t size() const noexcept { return side.size(); }
    bool proper() const {
        bool zero = false, one = false;
        for (auto s : side) (s ? one : zero) = true;
        return zero && one;
    }
    friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

namespace detail {

inline void require_length(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw DimensionError(std::string(what) + ": length " + std::to_string(got) +
                             " does not match node count " + std::to_string(want));
    }
}

}  // namespace detail

/// sigma_theta(u,v) = theta(u) theta(v) sigma(u,v).
inline SignedGraph switch_graph(const SignedGraph& g, const SwitchingFunction& theta) {
    detail::require_length(theta.size(), g.node_count(), "switching function");
    std::vector<SignedEdge> edges(g.edges().begin(), g.edges().end());
    for (auto& e : edges) e.sign *= theta[e.u] * theta[e.v];
    return SignedGraph(g.node_count(), std::move(edges));
}

inline SwitchingFunction elementary_switching(NodeId v, std::size_t n) {
    if (v >= n) throw RangeError("node " + std::to_string(v) + " out of range");
    SwitchingFunction theta(n);
    theta.flip(v);
    return theta;
}

/// Product of the elementary switchings at the listed nodes; a node listed an
/// even number of times cancels.
inline SwitchingFunction compose_elementary_switchings(std::span<const NodeId> nodes, std::size_t n) {
    SwitchingFunction theta(n);
    for (NodeId v : nodes) {
        if (v >= n) throw RangeError("node " + std::to_string(v) + " out of range");
        theta.flip(v);
    }
    return theta;
}

struct Components {
    std::vector<std::size_t> label;  // component id per node, ids ordered by lowest member
    std::size_t count = 0;
};

inline Components connected_components(const SignedGraph& g) {
    const std::size_t n = g.node_count();
    Components c{std::vector<std::size_t>(n, n), 0};
    std::vector<NodeId> stack;
    for (NodeId root = 0; root < n; ++root) {
        if (c.label[root] != n) continue;
        c.label[root] = c.count;
        stack.push_back(root);
        while (!stack.empty()) {
            NodeId x = stack.back();
            stack.pop_back();
            for (const auto& nb : g.neighbors(x)) {
                if (c.label[nb.node] == n) {
                    c.label[nb.node] = c.count;
                    stack.push_back(nb.node);
                }
            }
        }
        ++c.count;
    }
    return c;
}

inline bool is_connected(const SignedGraph& g) { return connected_components(g).count <= 1; }

struct BalanceResult {
    bool balanced = false;
    /// When balanced: switching that makes every edge positive. Each
    /// component's lowest node gets +1.
    std::optional<SwitchingFunction> witness;
};

/// Balance test by sign-propagating BFS, component by component.
inline BalanceResult is_balanced(const SignedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<int> theta(n, 0);
    std::queue<NodeId> q;
    for (NodeId root = 0; root < n; ++root) {
        if (theta[root] != 0) continue;
        theta[root] = 1;
        q.push(root);
        while (!q.empty()) {
            NodeId x = q.front();
            q.pop();
            for (const auto& nb : g.neighbors(x)) {
                const int want = theta[x] * nb.sign;
                if (theta[nb.node] == 0) {
                    theta[nb.node] = want;
                    q.push(nb.node);
                } else if (theta[nb.node] != want) {
                    return {false, std::nullopt};
                }
            }
        }
    }
    return {true, SwitchingFunction(std::move(theta))};
}

/// Edges with one endpoint on each side; signs are ignored.
inline EdgeSet cut_set(const SignedGraph& g, const Bipartition& p) {
    detail::require_length(p.size(), g.node_count(), "bipartition");
    if (!p.proper()) throw InvalidPartitionError("cut_set: both sides of the bipartition must be nonempty");
    EdgeSet out;
    for (const auto& e : g.edges())
        if (p.side[e.u] != p.side[e.v]) out.push_back(e.edge());
    return out;
}

/// Edges that are negative after switching by theta.
inline EdgeSet frustration_set(const SignedGraph& g, const SwitchingFunction& theta) {
    detail::require_length(theta.size(), g.node_count(), "switching function");
    EdgeSet out;
    for (const auto& e : g.edges())
        if (theta[e.u] * theta[e.v] * e.sign < 0) out.push_back(e.edge());
    return out;
}

struct FrustrationResult {
    std::size_t index = 0;
    SwitchingFunction argmin;
};

namespace detail {

// Subsets of nodes 1..n-1 are encoded so that ascending mask order is the
// lexicographic order of (b_1, ..., b_{n-1}); node v sits at bit n-1-v.
inline std::uint32_t node_bit(NodeId v, std::size_t n) {
    return v == 0 ? 0u : (std::uint32_t{1} << (n - 1 - v));
}

inline void check_cap(std::size_t n, std::size_t cap, const char* what) {
    if (n > cap) throw SizeLimitError(std::string(what) + ": " + std::to_string(n) + " nodes exceeds brute-force cap", cap);
    if (cap > 31) throw SizeLimitError(std::string(what) + ": cap above 31 nodes is not supported", 31);
}

}  // namespace detail

/// Exact frustration index by enumerating all 2^(n-1) switchings with
/// theta(0) = +1. Ties go to the lexicographically smallest switching
/// (reading +1 before -1).
inline FrustrationResult frustration_index(const SignedGraph& g, std::size_t cap = kBruteForceCap) {
    const std::size_t n = g.node_count();
    detail::check_cap(n, cap, "frustration_index");
    if (n == 0) return {0, SwitchingFunction(0)};

    struct Packed {
        std::uint32_t mask;
        bool negative;
    };
    std::vector<Packed> packed;
    packed.reserve(g.edge_count());
    for (const auto& e : g.edges())
        packed.push_back({detail::node_bit(e.u, n) | detail::node_bit(e.v, n), e.sign < 0});

    const std::uint32_t total = std::uint32_t{1} << (n - 1);
    std::size_t best = g.edge_count() + 1;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        std::size_t count = 0;
        for (const auto& e : packed) {
            // Edge frustrated iff exactly one endpoint switched XOR edge negative.
            const bool crosses = std::popcount(mask & e.mask) == 1;
            count += (crosses != e.negative);
        }
        if (count < best) {
            best = count;
            best_mask = mask;
            if (best == 0) break;
        }
    }
    SwitchingFunction theta(n);
    for (NodeId v = 1; v < n; ++v)
        if (best_mask & detail::node_bit(v, n)) theta.flip(v);
    return {best, theta};
}

/// Exact edge connectivity over all bipartitions (node 0 fixed on side 0).
inline std::size_t edge_connectivity(const SignedGraph& g, std::size_t cap = kBruteForceCap) {
    const std::size_t n = g.node_count();
    detail::check_cap(n, cap, "edge_connectivity");
    if (n < 2) throw InvalidGraphError("edge_connectivity needs at least two nodes");
    if (!is_connected(g)) throw DisconnectedGraphError("edge_connectivity: graph is disconnected");

    std::vector<std::uint32_t> masks;
    for (const auto& e : g.edges()) masks.push_back(detail::node_bit(e.u, n) | detail::node_bit(e.v, n));
    const std::uint32_t total = std::uint32_t{1} << (n - 1);
    std::size_t best = g.edge_count();
    for (std::uint32_t mask = 1; mask < total; ++mask) {
        std::size_t count = 0;
        for (auto m : masks) count += std::popcount(mask & m) == 1;
        best = std::min(best, count);
    }
    return best;
}

}  // namespace gremban
