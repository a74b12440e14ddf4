#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "gremban/io.hpp"
#include "support.hpp"

using namespace gremban;
using namespace testing_support;

TEST(EdgeList, ParsesSignsCommentsAndHeader) {
    const auto f = io::read_edge_list_string(
        "# a triangle\n"
        "n 4\n"
        "0 1 +1\n"
        "0 2 -\n"
        "1 2 -1   # trailing comment\n"
        "\n"
        "# ground_truth: 0 0 1 1\n");
    EXPECT_EQ(f.graph.node_count(), 4u);
    EXPECT_EQ(f.graph.edge_count(), 3u);
    ASSERT_TRUE(f.ground_truth);
    EXPECT_EQ(*f.ground_truth, (std::vector<std::size_t>{0, 0, 1, 1}));
}

TEST(EdgeList, NodeCountInferredWithoutHeader) {
    EXPECT_EQ(io::read_edge_list_string("0 5 +\n").graph.node_count(), 6u);
}

TEST(EdgeList, ErrorsNameTheLine) {
    auto line_of = [](const std::string& text) {
        try {
            io::read_edge_list_string(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    EXPECT_EQ(line_of("0 1 +\n1 2 x\n"), 2u);
    EXPECT_EQ(line_of("0 1\n"), 1u);
    EXPECT_EQ(line_of("0 1 + 4\n"), 1u);
    EXPECT_EQ(line_of("# c\n1 1 +\n"), 2u);
    EXPECT_EQ(line_of("0 1 +\n1 0 -\n"), 2u);
    EXPECT_EQ(line_of("n 2\n0 3 +\n"), 2u);
    EXPECT_EQ(line_of("n two\n"), 1u);
    EXPECT_EQ(line_of("a 1 +\n"), 1u);
    try {
        io::read_edge_list_string("0 1 +\n1 2 x\n");
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(EdgeList, RoundTrip) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        const SignedGraph g = random_signed_graph(1 + rng() % 12, 0.4, rng);
        std::vector<std::size_t> truth(g.node_count());
        for (auto& l : truth) l = rng() % 3;
        std::ostringstream out;
        io::write_edge_list(out, g, &truth);
        const auto back = io::read_edge_list_string(out.str());
        EXPECT_EQ(back.graph.node_count(), g.node_count());
        ASSERT_EQ(back.graph.edge_count(), g.edge_count());
        for (std::size_t i = 0; i < g.edge_count(); ++i) {
            EXPECT_EQ(back.graph.edges()[i].u, g.edges()[i].u);
            EXPECT_EQ(back.graph.edges()[i].v, g.edges()[i].v);
            EXPECT_EQ(back.graph.edges()[i].sign, g.edges()[i].sign);
        }
        EXPECT_EQ(*back.ground_truth, truth);
        std::ostringstream again;
        io::write_edge_list(again, back.graph, &*back.ground_truth);
        EXPECT_EQ(again.str(), out.str());
    }
}

TEST(GrembanFile, RoundTripIsExact) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        const GrembanGraph gg = expand(random_signed_graph(1 + rng() % 10, 0.5, rng));
        std::ostringstream out;
        io::write_gremban(out, gg);
        std::istringstream in(out.str());
        const GrembanGraph back = io::read_gremban(in);
        EXPECT_EQ(back.involution, gg.involution);
        EXPECT_EQ(back.polarity, gg.polarity);
        EXPECT_EQ(back.base, gg.base);
        EXPECT_EQ(back.graph.edges(), gg.graph.edges());
        std::ostringstream again;
        io::write_gremban(again, back);
        EXPECT_EQ(again.str(), out.str());
    }
}

TEST(GrembanFile, AsciiArrowAndValidation) {
    std::istringstream ok("n 4\n# involution: 0<->2 1<->3\n# polarity: + + - -\n0 1\n2 3\n");
    const GrembanGraph gg = io::read_gremban(ok);
    EXPECT_EQ(gg.involution, (std::vector<NodeId>{2, 3, 0, 1}));
    std::istringstream bad("n 4\n# involution: 0<->2 1<->3\n# polarity: + + - -\n0 1\n");
    EXPECT_THROW(io::read_gremban(bad), NotGrembanError);
}

TEST(MatrixFile, RoundTripIsBitExact) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    Matrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = z(rng) * 1e-3;
    m(0, 0) = 0.1;
    std::ostringstream out;
    io::write_matrix(out, m);
    std::istringstream in(out.str());
    EXPECT_EQ(io::read_matrix(in), m);
    std::ostringstream rect;
    EXPECT_THROW(io::write_matrix(rect, Matrix(2, 3)), DimensionError);
    std::istringstream short_row("2\n1 2\n3\n");
    EXPECT_THROW(io::read_matrix(short_row), ParseError);
}

TEST(Format, ShortestRoundTrip) {
    EXPECT_EQ(io::format_real(0.1), "0.1");
    EXPECT_EQ(io::format_real(-2.0), "-2");
    EXPECT_EQ(std::stod(io::format_real(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(KeyValues, Parse) {
    std::istringstream in("# sweep\nn = 100\nruns=5 # inline\n\nmethods = gremban, signed\n");
    const io::KeyValues kv = io::read_key_values(in);
    EXPECT_EQ(kv.at("n"), "100");
    EXPECT_EQ(kv.at("runs"), "5");
    EXPECT_EQ(kv.at("methods"), "gremban, signed");
    std::istringstream dup("a = 1\na = 2\n");
    EXPECT_THROW(io::read_key_values(dup), ParseError);
    std::istringstream noeq("a 1\n");
    EXPECT_THROW(io::read_key_values(noeq), ParseError);
}

TEST(TrajectoryCsv, LongFormat) {
    Trajectory tr;
    tr.times = {0.0, 0.5};
    tr.states = {Vector{1, 0}, Vector{0.75, 0.25}};
    std::ostringstream out;
    io::write_trajectory_csv(out, tr);
    EXPECT_EQ(out.str(), "t,node,polarity,value\n0,0,+,1\n0,0,-,0\n0.5,0,+,0.75\n0.5,0,-,0.25\n");
}
