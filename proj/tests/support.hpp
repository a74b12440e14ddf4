#pragma once

// Shared fixtures for the test suites: random signed graphs and small
// hand-built networks.

#include <cstdint>
#include <random>
#include <vector>

#include "gremban/signed_graph.hpp"

namespace testing_support {

using gremban::NodeId;
using gremban::SignedEdge;
using gremban::SignedGraph;

/// Erdos-Renyi G(n, p) with independent fair signs.
inline SignedGraph random_signed_graph(std::size_t n, double p, std::mt19937_64& rng, double p_negative = 0.5) {
    std::bernoulli_distribution edge(p), neg(p_negative);
    std::vector<SignedEdge> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (edge(rng)) edges.push_back({u, v, neg(rng) ? -1 : 1});
    return SignedGraph(n, std::move(edges));
}

/// Random graph that is connected: a random spanning tree plus G(n, p) extras.
inline SignedGraph random_connected_graph(std::size_t n, double p, std::mt19937_64& rng, double p_negative = 0.5) {
    std::bernoulli_distribution edge(p), neg(p_negative);
    std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
    std::vector<SignedEdge> edges;
    for (NodeId v = 1; v < n; ++v) {
        const NodeId u = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
        present[u][v] = true;
        edges.push_back({u, v, neg(rng) ? -1 : 1});
    }
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (!present[u][v] && edge(rng)) edges.push_back({u, v, neg(rng) ? -1 : 1});
    return SignedGraph(n, std::move(edges));
}

/// Connected balanced graph: signs come from a hidden random switching.
inline SignedGraph random_balanced_graph(std::size_t n, double p, std::mt19937_64& rng,
                                         std::vector<int>* factions = nullptr) {
    std::bernoulli_distribution coin(0.5);
    std::vector<int> theta(n);
    for (auto& t : theta) t = coin(rng) ? 1 : -1;
    const SignedGraph g = random_connected_graph(n, p, rng);
    std::vector<SignedEdge> edges;
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, theta[e.u] * theta[e.v]});
    if (factions) *factions = theta;
    return SignedGraph(n, std::move(edges));
}

/// The worked triangle: 0-1 positive, 0-2 and 1-2 negative.
inline SignedGraph triangle() { return SignedGraph(3, {{0, 1, 1}, {0, 2, -1}, {1, 2, -1}}); }

inline SignedGraph cycle(const std::vector<int>& signs) {
    const std::size_t n = signs.size();
    std::vector<SignedEdge> edges;
    for (NodeId v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, signs[v]});
    return SignedGraph(n, std::move(edges));
}

/// Two communities {0..5} and {6..11}, each made of two opposing triads
/// (positive inside, negative across). Edge 7-10 is a positive edge across
/// the second pair, so that community is not balanced. Two positive edges,
/// 2-6 and 5-9, link the communities.
inline SignedGraph four_cluster_network() {
    std::vector<SignedEdge> edges;
    for (NodeId base : {0u, 3u, 6u, 9u}) edges.insert(edges.end(), {{base, base + 1, 1}, {base, base + 2, 1}, {base + 1, base + 2, 1}});
    for (NodeId a : {0u, 6u})
        for (NodeId i = 0; i < 3; ++i) {
            edges.push_back({a + i, a + 3 + i, -1});
            edges.push_back({a + i, a + 3 + (i + 1) % 3, -1});
        }
    for (auto& e : edges)
        if (e.u == 7 && e.v == 10) e.sign = 1;
    edges.push_back({2, 6, 1});
    edges.push_back({5, 9, 1});
    return SignedGraph(12, std::move(edges));
}

/// Two groups of `half` nodes (group of v: v >= half). Within each group a
/// spanning path plus G(half, p_in) edges.
///   community: exactly two edges join the groups; every sign is positive
///              with probability 0.6
///   faction:   inter-group edges with probability p_out, all negative
///              except one positive edge; intra-group edges positive
/// Resampled until the graph is connected and unbalanced.
inline SignedGraph two_group_network(bool faction, std::size_t half, double p_in, double p_out, std::uint64_t seed,
                                     std::vector<std::size_t>* groups = nullptr) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution in(p_in), out(p_out), positive(0.6);
    const std::size_t n = 2 * half;
    for (;;) {
        std::vector<SignedEdge> edges;
        for (NodeId g : {NodeId{0}, NodeId(half)}) {
            for (NodeId i = 0; i < half; ++i)
                for (NodeId j = i + 1; j < half; ++j)
                    if (j == i + 1 || in(rng)) edges.push_back({g + i, g + j, 1});
        }
        if (faction) {
            for (NodeId i = 0; i < half; ++i)
                for (NodeId j = half; j < n; ++j)
                    if (out(rng)) edges.push_back({i, j, -1});
            if (edges.back().sign != -1) continue;
            edges.back().sign = 1;
        } else {
            std::uniform_int_distribution<NodeId> pick(0, half - 1);
            const NodeId a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
            if (a == c && b == d) continue;
            edges.push_back({a, half + b, 1});
            edges.push_back({c, half + d, 1});
            for (auto& e : edges) e.sign = positive(rng) ? 1 : -1;
        }
        SignedGraph g(n, std::move(edges));
        if (!gremban::is_connected(g) || gremban::is_balanced(g).balanced) continue;
        if (groups) {
            groups->assign(n, 0);
            for (NodeId v = half; v < n; ++v) (*groups)[v] = 1;
        }
        return g;
    }
}

}  // namespace testing_support
