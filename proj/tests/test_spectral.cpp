#include <gtest/gtest.h>

#include <random>

#include "gremban/operators.hpp"
#include "gremban/spectral.hpp"
#include "support.hpp"

using namespace gremban;
using testing_support::random_connected_graph;
using testing_support::random_signed_graph;
using testing_support::triangle;

namespace {

void expect_values(const Vector& got, const Vector& want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

void expect_decomposition_invariants(const SymMatrix& m, const SpectralDecomposition& d) {
    const double scale = std::max(1.0, max_abs(m.matrix()));
    EXPECT_LE(d.residual, 1e-9 * scale);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i > 0) {
            EXPECT_LE(d.eigenvalues[i - 1], d.eigenvalues[i]);
        }
        const Vector vi = d.vector(i);
        EXPECT_NEAR(norm2(vi), 1.0, 1e-12);
        for (std::size_t j = i + 1; j < d.size(); ++j) EXPECT_LE(std::abs(dot(vi, d.vector(j))), 1e-9);
    }
    Matrix rebuilt(m.order(), m.order());
    for (std::size_t k = 0; k < d.size(); ++k)
        for (std::size_t i = 0; i < m.order(); ++i)
            for (std::size_t j = 0; j < m.order(); ++j)
                rebuilt(i, j) += d.eigenvalues[k] * d.eigenvectors(i, k) * d.eigenvectors(j, k);
    EXPECT_LE(max_abs_diff(rebuilt, m.matrix()), 1e-8 * scale);
}

}  // namespace

TEST(EigSym, TriangleGoldenValues) {
    const auto b = build_bundle(triangle());
    expect_values(eigenvalues(b.A_bar), {-1, -1, 2}, 1e-12);
    expect_values(eigenvalues(b.A), {-1, -1, 2}, 1e-12);
    expect_values(eigenvalues(b.gremban_A), {-1, -1, -1, -1, 2, 2}, 1e-12);
    expect_values(eigenvalues(b.gremban_L), {0, 0, 3, 3, 3, 3}, 1e-12);
}

TEST(EigSym, IdentityAndDiagonal) {
    const auto d = eig_sym(SymMatrix::identity(4));
    expect_values(d.eigenvalues, {1, 1, 1, 1}, 0.0);
    EXPECT_EQ(d.eigenvectors, Matrix::identity(4));
    const auto e = eig_sym(SymMatrix(Matrix{{3, 0}, {0, -2}}));
    expect_values(e.eigenvalues, {-2, 3}, 0.0);
    EXPECT_EQ(e.eigenvectors, (Matrix{{0, 1}, {1, 0}}));
}

TEST(EigSym, SignConventionAndDeterminism) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const auto b = build_bundle(random_signed_graph(2 + rng() % 12, 0.5, rng));
        const auto d1 = eig_sym(b.gremban_L);
        const auto d2 = eig_sym(b.gremban_L);
        EXPECT_EQ(d1.eigenvalues, d2.eigenvalues);
        EXPECT_EQ(d1.eigenvectors, d2.eigenvectors);
        expect_decomposition_invariants(b.gremban_L, d1);
        for (std::size_t j = 0; j < d1.size(); ++j) {
            const Vector v = d1.vector(j);
            const double m = norm_inf(v);
            for (double x : v) {
                if (std::abs(x) >= m * (1 - 1e-9)) {
                    EXPECT_GT(x, 0.0);
                    break;
                }
            }
        }
    }
}

TEST(EigSym, RejectsAsymmetricInput) {
    EXPECT_THROW(SymMatrix(Matrix{{0, 1}, {0.5, 0}}), SymmetryError);
    EXPECT_THROW(SymMatrix(Matrix{{0, 1, 2}, {1, 0, 2}}), DimensionError);
}

TEST(EigSym, RandomDenseMatrices) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 30;
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = normal(rng) * 10.0;
        const SymMatrix s(m);
        expect_decomposition_invariants(s, eig_sym(s));
    }
}

TEST(ClassifyLift, TriangleKernelAndTopEigenspace) {
    const auto b = build_bundle(triangle());
    const auto ld = classify_lift(eig_sym(b.gremban_L));
    ASSERT_EQ(ld.size(), 6u);
    EXPECT_EQ(ld.tag(0), Lift::symmetric);
    EXPECT_EQ(ld.tag(1), Lift::antisymmetric);
    const Vector kernel_anti = ld.vector(1);
    const double s = 1.0 / std::sqrt(6.0);
    expect_values(kernel_anti, {s, s, -s, -s, -s, s}, 1e-12);
    expect_values(ld.vector(0), Vector(6, s), 1e-12);

    const auto la = classify_lift(eig_sym(b.gremban_A));
    EXPECT_EQ(la.tag(4), Lift::symmetric);
    EXPECT_EQ(la.tag(5), Lift::antisymmetric);
    expect_values(la.vector(4), Vector(6, s), 1e-12);
    expect_values(la.vector(5), {s, s, -s, -s, -s, s}, 1e-12);
    std::size_t sym = 0;
    for (std::size_t j = 0; j < 4; ++j) sym += la.tag(j) == Lift::symmetric;
    EXPECT_EQ(sym, 2u);
}

TEST(ClassifyLift, EveryExpansionSplitsCleanly) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const auto g = random_signed_graph(n, 0.5, rng);
        const auto b = build_bundle(g);
        for (const auto* m : {&b.gremban_L, &b.gremban_A}) {
            const auto ld = classify_lift(eig_sym(*m));
            std::size_t sym = 0;
            for (std::size_t j = 0; j < ld.size(); ++j) {
                ASSERT_NE(ld.tag(j), Lift::mixed);
                sym += ld.tag(j) == Lift::symmetric;
                // each rotated vector is still an eigenvector
                Vector r = m->matrix() * ld.vector(j);
                const Vector v = ld.vector(j);
                for (std::size_t i = 0; i < r.size(); ++i) r[i] -= ld.eigenvalue(j) * v[i];
                EXPECT_LE(norm2(r), 1e-9 * std::max(1.0, max_abs(m->matrix())));
            }
            EXPECT_EQ(sym, n);
        }
    }
    EXPECT_THROW(classify_lift(eig_sym(SymMatrix::identity(3))), DimensionError);
}

TEST(ClassifyLift, SignedEigenpairsLiftAntisymmetrically) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const auto b = build_bundle(random_signed_graph(n, 0.5, rng));
        for (bool anti : {true, false}) {
            const auto d = eig_sym(anti ? b.L : b.L_bar);
            for (std::size_t j = 0; j < n; ++j) {
                const Vector x = d.vector(j);
                Vector lifted(2 * n);
                for (std::size_t i = 0; i < n; ++i) {
                    lifted[i] = x[i] / std::sqrt(2.0);
                    lifted[i + n] = (anti ? -x[i] : x[i]) / std::sqrt(2.0);
                }
                Vector r = b.gremban_L.matrix() * lifted;
                for (std::size_t i = 0; i < 2 * n; ++i) r[i] -= d.eigenvalues[j] * lifted[i];
                EXPECT_LE(norm2(r), 1e-9);
                EXPECT_EQ(lift_tag(lifted).tag, anti ? Lift::antisymmetric : Lift::symmetric);
            }
        }
    }
}

TEST(Kernel, DimensionCountsComponentsAndBalancedComponents) {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const auto g = random_signed_graph(n, 0.25, rng, 0.4);
        const auto comps = connected_components(g);
        std::size_t balanced = 0;
        for (std::size_t c = 0; c < comps.count; ++c) {
            std::vector<NodeId> members;
            for (NodeId v = 0; v < n; ++v)
                if (comps.label[v] == c) members.push_back(v);
            std::vector<SignedEdge> edges;
            for (const auto& e : g.edges())
                if (comps.label[e.u] == c) edges.push_back(e);
            balanced += is_balanced(SignedGraph(n, edges)).balanced;
        }
        const Vector ev = eigenvalues(build_bundle(g).gremban_L);
        std::size_t zeros = 0;
        for (double x : ev) zeros += std::abs(x) < 1e-8;
        EXPECT_EQ(zeros, comps.count + balanced);
    }
}

TEST(SpectrumUnion, Triangle) {
    EXPECT_LE(spectrum_union_check(triangle(), SpectrumKind::adjacency), 1e-9);
    EXPECT_LE(spectrum_union_check(triangle(), SpectrumKind::laplacian), 1e-9);
    EXPECT_EQ(spectrum_union_check(SignedGraph(4), SpectrumKind::laplacian), 0.0);
}

TEST(SpectrumUnion, RandomGraphs) {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = random_signed_graph(1 + rng() % 15, 0.4, rng);
        EXPECT_LE(spectrum_union_check(g, SpectrumKind::adjacency), 1e-9);
        EXPECT_LE(spectrum_union_check(g, SpectrumKind::laplacian), 1e-9);
    }
}

TEST(Fiedler, PathP3) {
    const SignedGraph p3(3, {{0, 1, 1}, {1, 2, 1}});
    const auto f = fiedler(build_bundle(p3).L_bar);
    EXPECT_NEAR(f.lambda2, 1.0, 1e-12);
    const double h = 1.0 / std::sqrt(2.0);
    expect_values(f.psi2, {h, 0.0, -h}, 1e-12);
    EXPECT_FALSE(f.tag.has_value());
    EXPECT_FALSE(f.ambiguous);
}

TEST(Fiedler, TwoComponentsGivePiecewiseConstantVector) {
    const SignedGraph g(5, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}});
    const auto f = fiedler(build_bundle(g).L_bar);
    EXPECT_NEAR(f.lambda2, 0.0, 1e-12);
    EXPECT_NEAR(f.psi2[0], f.psi2[1], 1e-12);
    EXPECT_NEAR(f.psi2[1], f.psi2[2], 1e-12);
    EXPECT_NEAR(f.psi2[3], f.psi2[4], 1e-12);
    EXPECT_GT(std::abs(f.psi2[0] - f.psi2[3]), 0.1);
}

TEST(Fiedler, TriangleGrembanLaplacian) {
    const auto f = fiedler(build_bundle(triangle()).gremban_L);
    EXPECT_NEAR(f.lambda2, 0.0, 1e-12);
    const double s = 1.0 / std::sqrt(6.0);
    expect_values(f.psi2, {s, s, -s, -s, -s, s}, 1e-12);
    ASSERT_TRUE(f.tag.has_value());
    EXPECT_EQ(f.tag->tag, Lift::antisymmetric);
    EXPECT_FALSE(f.ambiguous);
    EXPECT_THROW(fiedler(SymMatrix::identity(1)), DimensionError);
}

TEST(Fiedler, SharedEigenvalueAcrossClassesIsAmbiguous) {
    // Two disjoint edges, one positive and one negative: L and L_bar share spectrum {0,0,2,2}.
    // Index 1 sits in the kernel cluster holding both classes.
    const SignedGraph g(4, {{0, 1, 1}, {2, 3, -1}});
    const auto f = fiedler(build_bundle(g).gremban_L);
    EXPECT_TRUE(f.ambiguous);
    ASSERT_TRUE(f.tag.has_value());
    EXPECT_EQ(f.tag->tag, Lift::antisymmetric);
}
