#include <gtest/gtest.h>

#include <random>

#include "gremban/walks.hpp"
#include "support.hpp"

using namespace gremban;
using namespace testing_support;

namespace {

Matrix taylor_exp(const Matrix& m, double t, int terms = 30) {
    Matrix out = Matrix::identity(m.rows()), term = Matrix::identity(m.rows());
    for (int k = 1; k <= terms; ++k) {
        term = term * m;
        term *= t / k;
        out = out + term;
    }
    return out;
}

}  // namespace

TEST(WalkCounts, BaseCases) {
    const SignedGraph g = triangle();
    const WalkCounts k0 = count_signed_walks(g, 0);
    EXPECT_EQ(k0.positive, IntMatrix::identity(3));
    EXPECT_EQ(k0.negative, IntMatrix(3, 3));
    const WalkCounts k1 = count_signed_walks(g, 1);
    const MatrixBundle b = build_bundle(g);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_EQ(k1.positive(i, j), static_cast<std::int64_t>(b.A_plus(i, j)));
            EXPECT_EQ(k1.negative(i, j), static_cast<std::int64_t>(b.A_minus(i, j)));
        }
    EXPECT_EQ(brute_force_walks(g, 1, 0, 1), (WalkPair{1, 0}));
    EXPECT_EQ(brute_force_walks(g, 1, 0, 2), (WalkPair{0, 1}));
    EXPECT_EQ(brute_force_walks(g, 2, 0, 1), (WalkPair{1, 0}));  // 0 -> 2 -> 1: (-)(-)
    EXPECT_EQ(brute_force_walks(g, 2, 1, 2), (WalkPair{0, 1}));  // 1 -> 0 -> 2: (+)(-)
    EXPECT_THROW(count_signed_walks(g, -1), RangeError);
}

TEST(WalkCounts, TriangleSquareEntry) {
    const WalkCounts w = count_signed_walks(triangle(), 2);
    const WalkPair dfs = brute_force_walks(triangle(), 2, 1, 1);
    EXPECT_EQ(w.positive(1, 1), dfs.positive);
    EXPECT_EQ(w.negative(1, 1), dfs.negative);
    EXPECT_EQ(dfs, (WalkPair{2, 0}));
}

TEST(WalkCounts, AgreeWithDfsEnumeration) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
        const SignedGraph g = random_signed_graph(2 + rng() % 7, 0.5, rng);
        const int k = static_cast<int>(rng() % 7);
        const NodeId v = rng() % g.node_count(), w = rng() % g.node_count();
        const WalkCounts c = count_signed_walks(g, k);
        const WalkPair b = brute_force_walks(g, k, v, w);
        EXPECT_EQ(c.positive(v, w), b.positive);
        EXPECT_EQ(c.negative(v, w), b.negative);
    }
}

TEST(WalkCounts, BlockIdentities) {
    std::mt19937_64 rng(18);
    for (int t = 0; t < 40; ++t) {
        const SignedGraph g = random_signed_graph(2 + rng() % 9, 0.4, rng);
        const IntAdjacency a = int_adjacency(g);
        for (int k = 0; k <= 6; ++k) {
            const WalkCounts c = count_signed_walks(g, k);
            EXPECT_EQ(c.positive - c.negative, int_power(a.signed_adj, k));
            EXPECT_EQ(c.positive + c.negative, int_power(a.unsigned_adj, k));
        }
    }
}

TEST(WalkCounts, LiftedWalksEndOnPredictedPolarity) {
    // Every walk of G lifts, from v+, to a walk of the expansion ending at w^{sign}.
    std::mt19937_64 rng(19);
    for (int t = 0; t < 20; ++t) {
        const SignedGraph g = random_signed_graph(3 + rng() % 4, 0.6, rng);
        const std::size_t n = g.node_count();
        const IntMatrix big = int_adjacency(g).expanded;
        auto dfs = [&](auto&& self, NodeId at, NodeId lifted, int left, int sign) -> void {
            EXPECT_EQ(lifted, sign > 0 ? at : at + n);
            if (left == 0) return;
            for (const auto& nb : g.neighbors(at)) {
                const NodeId next = nb.node + ((sign * nb.sign > 0) ? 0 : n);
                EXPECT_EQ(big(lifted, next), 1);
                self(self, nb.node, next, left - 1, sign * nb.sign);
            }
        };
        for (NodeId v = 0; v < n; ++v) dfs(dfs, v, v, 4, 1);
    }
}

TEST(WalkCounts, OverflowIsReported) {
    std::vector<SignedEdge> edges;
    for (NodeId u = 0; u < 12; ++u)
        for (NodeId v = u + 1; v < 12; ++v) edges.push_back({u, v, 1});
    const SignedGraph k12(12, edges);
    EXPECT_NO_THROW(count_signed_walks(k12, 10));
    EXPECT_THROW(count_signed_walks(k12, 40), OverflowError);
}

TEST(WalkCounts, BruteForceLimits) {
    EXPECT_THROW(brute_force_walks(triangle(), 9, 0, 0), SizeLimitError);
    EXPECT_THROW(brute_force_walks(SignedGraph(9), 1, 0, 0), SizeLimitError);
    EXPECT_THROW(brute_force_walks(triangle(), 1, 0, 3), RangeError);
    EXPECT_EQ(brute_force_walks(triangle(), 0, 2, 2), (WalkPair{1, 0}));
}

TEST(Resolvent, SinglePositiveEdge) {
    const MatrixTriple w = resolvent_generating(SignedGraph(2, {{0, 1, 1}}), 0.5);
    const Matrix want{{4.0 / 3.0, 2.0 / 3.0}, {2.0 / 3.0, 4.0 / 3.0}};
    EXPECT_LT(max_abs_diff(w.signed_part, want), 1e-14);
}

TEST(Resolvent, ZeroIsIdentity) {
    const MatrixTriple w = resolvent_generating(triangle(), 0.0);
    EXPECT_EQ(w.signed_part, Matrix::identity(3));
    EXPECT_EQ(w.expanded, Matrix::identity(6));
}

TEST(Resolvent, BlockIdentityAndSeries) {
    std::mt19937_64 rng(20);
    EXPECT_LT(block_identity_residual(resolvent_generating(triangle(), 0.3)), 1e-10);
    for (int t = 0; t < 30; ++t) {
        const SignedGraph g = random_signed_graph(2 + rng() % 9, 0.5, rng);
        const MatrixBundle b = build_bundle(g);
        const double rho = std::max(1.0, spectral_radius(b.A_bar));
        const double s = 0.5 / rho;
        const MatrixTriple w = resolvent_generating(g, s);
        EXPECT_LT(block_identity_residual(w), 1e-10);
        Matrix sum = Matrix::identity(g.node_count()), term = sum;
        for (int k = 1; k <= 60; ++k) {
            term = term * b.A.matrix();
            term *= s;
            sum = sum + term;
        }
        EXPECT_LT(max_abs_diff(sum, w.signed_part), 1e-12);
    }
}

TEST(Resolvent, DivergenceReportsRadius) {
    // Triangle: rho(A_bar) = 2, radius 1/2.
    try {
        resolvent_generating(triangle(), 0.5);
        FAIL() << "expected divergence";
    } catch (const DivergenceError& e) {
        EXPECT_NEAR(e.radius(), 0.5, 1e-12);
    }
    EXPECT_NO_THROW(resolvent_generating(triangle(), 0.49));
    EXPECT_THROW(resolvent_generating(triangle(), -0.6), DivergenceError);
}

TEST(Communicability, TaylorOracleAndBlockIdentity) {
    const MatrixTriple c = communicability(triangle(), 1.0);
    const MatrixBundle b = build_bundle(triangle());
    EXPECT_LT(max_abs_diff(c.signed_part, taylor_exp(b.A.matrix(), 1.0)), 1e-9);
    EXPECT_LT(max_abs_diff(c.expanded, taylor_exp(b.gremban_A.matrix(), 1.0)), 1e-9);
    EXPECT_LT(block_identity_residual(c), 1e-9);
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        const SignedGraph g = random_signed_graph(2 + rng() % 9, 0.5, rng);
        EXPECT_LT(block_identity_residual(communicability(g, 0.7)), 1e-9);
    }
    const MatrixTriple zero = communicability(triangle(), 0.0);
    EXPECT_LT(max_abs_diff(zero.expanded, Matrix::identity(6)), 1e-12);
    EXPECT_LT(max_abs_diff(communicability(SignedGraph(1), 2.0).signed_part, Matrix::identity(1)), 1e-15);
}

TEST(Inverse, RandomMatricesAndSingular) {
    std::mt19937_64 rng(22);
    std::normal_distribution<double> z;
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + rng() % 8;
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = z(rng);
        EXPECT_LT(max_abs_diff(m * inverse(m), Matrix::identity(n)), 1e-9);
    }
    EXPECT_THROW(inverse(Matrix(2, 2)), NumericalError);
    EXPECT_THROW(inverse(Matrix(2, 3)), DimensionError);
}
