#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gremban/dynamics.hpp"
#include "support.hpp"

using namespace gremban;
using namespace testing_support;

namespace {

Vector random_state(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vector x(n);
    for (auto& v : x) v = u(rng);
    return x;
}

SignedGraph connected_unbalanced(std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        SignedGraph g = random_connected_graph(n, 0.4, rng);
        if (!is_balanced(g).balanced) return g;
    }
}

}  // namespace

TEST(Transition, RowStochastic) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        const SignedGraph g = random_connected_graph(2 + rng() % 14, 0.3, rng);
        const Matrix m = gremban_transition(g);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < m.cols(); ++j) {
                EXPECT_GE(m(i, j), 0.0);
                s += m(i, j);
            }
            EXPECT_NEAR(s, 1.0, 1e-12);
        }
    }
    EXPECT_THROW(gremban_transition(SignedGraph(3, {{0, 1, 1}})), DegenerateDegreeError);
}

TEST(Transition, TriangleEntries) {
    const Matrix m = gremban_transition(triangle());
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) EXPECT_TRUE(m(i, j) == 0.0 || m(i, j) == 0.5);
    EXPECT_EQ(m(0, 1), 0.5);  // 0+ -> 1+
    EXPECT_EQ(m(0, 5), 0.5);  // 0+ -> 2-
}

TEST(Transition, AllPositiveRegularGraph) {
    const Matrix m = gremban_transition(cycle({1, 1, 1, 1, 1}));
    EXPECT_EQ(max_abs(m.block(0, 5, 5, 5)), 0.0);
    EXPECT_EQ(m(0, 1), 0.5);
}

TEST(Walk, ProjectionIdentities) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        const SignedGraph g = random_connected_graph(3 + rng() % 10, 0.4, rng);
        const MatrixBundle b = build_bundle(g);
        const Vector k = degrees(g);
        const Matrix ts = degree_normalized(b.A, k), tu = degree_normalized(b.A_bar, k);
        const Trajectory tr = step_walk(gremban_transition(g), random_state(2 * g.node_count(), rng), 100);
        ASSERT_EQ(tr.states.size(), 101u);
        const auto nets = tr.net_series(), tots = tr.total_series();
        for (std::size_t s = 0; s + 1 < tr.states.size(); ++s) {
            EXPECT_LT(max_abs_diff(nets[s + 1], ts * nets[s]), 1e-10);
            EXPECT_LT(max_abs_diff(tots[s + 1], tu * tots[s]), 1e-10);
        }
    }
}

TEST(Walk, NetVanishesOnUnbalancedGraph) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        SignedGraph g;
        // Odd cycles keep the walk aperiodic.
        do g = connected_unbalanced(4 + rng() % 12, rng);
        while (!is_connected(g));
        std::vector<SignedEdge> edges(g.edges().begin(), g.edges().end());
        const Trajectory tr = step_walk(gremban_transition(g), random_state(2 * g.node_count(), rng), 500);
        EXPECT_LT(norm_inf(tr.net_series().back()), 1e-6);
    }
}

TEST(Walk, StationaryLiftIsConstant) {
    std::mt19937_64 rng(4);
    const SignedGraph g = random_connected_graph(8, 0.4, rng);
    const Trajectory tr = step_walk(gremban_transition(g), Vector(16, 0.25), 20);
    for (const auto& s : tr.states) EXPECT_LT(max_abs_diff(s, Vector(16, 0.25)), 1e-14);
    EXPECT_THROW(step_walk(gremban_transition(g), Vector(5, 1.0), 2), DimensionError);
}

TEST(Walk, BalancedGraphPolarizes) {
    std::mt19937_64 rng(5);
    std::vector<int> theta;
    SignedGraph g;
    do g = random_balanced_graph(9, 0.5, rng, &theta);
    while (!is_balanced(g).balanced);
    // Make the walk aperiodic with an all-positive odd cycle inside a faction? Use laziness instead.
    Matrix t = gremban_transition(g);
    Matrix lazy = 0.5 * (t + Matrix::identity(t.rows()));
    Vector x0(18, 0.0);
    for (NodeId v = 0; v < 9; ++v)
        if (theta[v] == theta[0]) x0[v] = 1.0;
    const Vector net = step_walk(lazy, x0, 2000).net_series().back();
    for (NodeId v = 0; v < 9; ++v) EXPECT_NEAR(net[v] * theta[0] * theta[v], net[0], 1e-8);
    EXPECT_GT(std::abs(net[0]), 1e-3);
}

TEST(Stationary, MultiplicityTracksBalance) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 60; ++t) {
        const SignedGraph g = random_connected_graph(2 + rng() % 14, 0.3, rng);
        const StationaryAnalysis s = stationary_analysis(g);
        EXPECT_EQ(s.unit_multiplicity, is_balanced(g).balanced ? 2u : 1u);
        EXPECT_LT(max_abs_diff(s.vectors[0], Vector(2 * g.node_count(), 1.0)), 1e-9);
    }
}

TEST(Stationary, BalancedTriangleSecondVector) {
    const StationaryAnalysis s = stationary_analysis(triangle());
    ASSERT_EQ(s.unit_multiplicity, 2u);
    const Vector want{1, 1, -1, -1, -1, 1};
    EXPECT_LT(max_abs_diff(s.vectors[1], want), 1e-9);
    EXPECT_EQ(stationary_analysis(cycle({1, 1, 1, -1})).unit_multiplicity, 1u);
    EXPECT_EQ(stationary_analysis(cycle({1, 1, 1, 1, 1})).unit_multiplicity, 2u);
    EXPECT_THROW(stationary_analysis(SignedGraph(3, {{0, 1, 1}})), DisconnectedGraphError);
}

TEST(Diffusion, InitialStateAndKernel) {
    std::mt19937_64 rng(7);
    const SignedGraph g = random_connected_graph(10, 0.3, rng);
    const Vector x0 = random_state(20, rng);
    const std::vector<double> times{0.0, 0.5, 3.0};
    const Trajectory tr = diffuse(g, x0, times);
    EXPECT_LT(max_abs_diff(tr.states[0], x0), 1e-10);
    const Trajectory flat = diffuse(g, Vector(20, 2.0), times);
    for (const auto& s : flat.states) EXPECT_LT(max_abs_diff(s, Vector(20, 2.0)), 1e-10);
    for (const auto& tot : flat.total_series()) EXPECT_LT(max_abs_diff(tot, Vector(10, 4.0)), 1e-10);
    EXPECT_THROW(diffuse(g, Vector(5, 0.0), times), DimensionError);
    const std::vector<double> bad{1.0, 0.5};
    EXPECT_THROW(diffuse(g, x0, bad), RangeError);
}

TEST(Diffusion, MatchesFineTimeStepping) {
    std::mt19937_64 rng(8);
    const SignedGraph g = random_connected_graph(6, 0.5, rng);
    const Vector x0 = random_state(12, rng);
    const Matrix l = -1.0 * build_bundle(g).gremban_L.matrix();
    Vector x = x0;
    const int steps = 20000;
    const double h = 1.0 / steps;
    for (int s = 0; s < steps; ++s) {
        // Classical RK4.
        const Vector k1 = l * x;
        Vector y = x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += 0.5 * h * k1[i];
        const Vector k2 = l * y;
        y = x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += 0.5 * h * k2[i];
        const Vector k3 = l * y;
        y = x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += h * k3[i];
        const Vector k4 = l * y;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    const std::vector<double> one{1.0};
    EXPECT_LT(max_abs_diff(diffuse(g, x0, one).states[0], x), 1e-10);
}

TEST(Diffusion, LongTimeLimits) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t) {
        const SignedGraph g = connected_unbalanced(4 + rng() % 10, rng);
        const DiffusionPropagator prop(g);
        double lmin = 1e300;
        for (double l : prop.spectrum().eigenvalues)
            if (l > 1e-9) lmin = std::min(lmin, l);
        const Vector x0 = random_state(2 * g.node_count(), rng);
        const Vector x = prop.at(x0, 50.0 / lmin);
        EXPECT_LT(norm_inf(net(x)), 1e-8);
        double mean = 0.0;
        for (double v : x0) mean += v;
        mean /= static_cast<double>(x0.size());
        EXPECT_LT(max_abs_diff(total(x), Vector(g.node_count(), 2.0 * mean)), 1e-8);
    }
    std::vector<int> theta;
    const SignedGraph g = random_balanced_graph(8, 0.5, rng, &theta);
    const DiffusionPropagator prop(g);
    const Vector x = prop.at(random_state(16, rng), 1e4);
    const Vector nt = net(x);
    for (NodeId v = 0; v < 8; ++v) EXPECT_NEAR(nt[v] * theta[v] * theta[0], nt[0], 1e-8);
}

TEST(Profile, Definitions) {
    const GrembanGraph gg = expand(triangle());
    Trajectory tr;
    tr.times = {0.0, 1.0};
    tr.states = {Vector{1, 2, 3, 1, 2, 3}, Vector{1, 2, 3, -1, -2, -3}};
    const std::vector<std::size_t> groups{0, 0, 1};
    const MetastabilityProfile p = metastability_profile(tr, gg, &groups);
    EXPECT_EQ(p.fiber_coherence[0], 0.0);
    EXPECT_EQ(p.fiber_coherence[1], 6.0);  // 2 ||x+||_inf
    EXPECT_EQ(p.cross_coherence[1], 0.0);
    EXPECT_EQ(p.spread[0], 2.0);
    EXPECT_EQ(p.spread[1], 6.0);
    EXPECT_DOUBLE_EQ(p.group_contrast[0], 1.5);
    // {0+, 1+, 2-} vs {0-, 1-, 2+} at t = 1: (1 + 2 - 3)/3 vs (-1 - 2 + 3)/3.
    EXPECT_DOUBLE_EQ(p.faction_contrast[1], 0.0);
    EXPECT_TRUE(metastability_profile(tr, gg).group_contrast.empty());
}
