#pragma once

// Signed degree-corrected stochastic block model.
//
// Random stream: std::mt19937_64 seeded with `seed`; a uniform double is
// (draw >> 11) * 2^-53. Draw order: group assignment (one draw per node, or
// a Fisher-Yates shuffle for balanced groups), then for each pair u < v in
// row order one edge draw and, only when the edge exists, one sign draw.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gremban/error.hpp"
#include "gremban/signed_graph.hpp"

namespace gremban {

struct SbmConfig {
    std::size_t n = 0;
    std::size_t groups = 2;
    double rho_plus_in = 0.0;
    double rho_plus_out = 0.0;
    double rho_minus_in = 0.0;
    double rho_minus_out = 0.0;
    std::vector<double> activities;  // empty: all 1
    std::uint64_t seed = 0;
    bool balanced_groups = false;    // exact ceil/floor group sizes instead of independent draws
};

struct SbmSample {
    SignedGraph graph;
    std::vector<std::size_t> ground_truth;
};

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline void validate(const SbmConfig& c) {
    if (c.groups == 0) throw RangeError("SSBM: groups must be positive");
    for (double r : {c.rho_plus_in, c.rho_plus_out, c.rho_minus_in, c.rho_minus_out}) {
        if (!(r >= 0.0) || !std::isfinite(r)) throw RangeError("SSBM: block probabilities must be finite and >= 0");
    }
    if (!c.activities.empty()) {
        detail::require_length(c.activities.size(), c.n, "activity vector");
        for (double a : c.activities)
            if (!(a > 0.0) || !std::isfinite(a)) throw RangeError("SSBM: activities must be positive");
    }
}

/// Group labels with sizes differing by at most one, in random order.
inline std::vector<std::size_t> balanced_assignment(std::size_t n, std::size_t groups, std::mt19937_64& rng) {
    std::vector<std::size_t> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = i * groups / n;
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
        std::swap(g[i - 1], g[std::min(j, i - 1)]);
    }
    return g;
}

inline SbmSample sample_ssbm(const SbmConfig& c) {
    validate(c);
    std::mt19937_64 rng(c.seed);
    SbmSample s;
    if (c.balanced_groups) {
        s.ground_truth = balanced_assignment(c.n, c.groups, rng);
    } else {
        s.ground_truth.resize(c.n);
        for (auto& g : s.ground_truth)
            g = std::min(c.groups - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(c.groups)));
    }
    auto activity = [&](NodeId v) { return c.activities.empty() ? 1.0 : c.activities[v]; };
    std::vector<SignedEdge> edges;
    for (NodeId u = 0; u < c.n; ++u) {
        for (NodeId v = u + 1; v < c.n; ++v) {
            const bool same = s.ground_truth[u] == s.ground_truth[v];
            const double rp = same ? c.rho_plus_in : c.rho_plus_out;
            const double rm = same ? c.rho_minus_in : c.rho_minus_out;
            const double lambda = activity(u) * activity(v) * (rp + rm);
            if (uniform01(rng) >= -std::expm1(-lambda)) continue;
            const bool positive = uniform01(rng) < rp / (rp + rm);
            edges.push_back({u, v, positive ? 1 : -1});
        }
    }
    s.graph = SignedGraph(c.n, std::move(edges));
    return s;
}

}  // namespace gremban
