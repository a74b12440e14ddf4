#pragma once

// Text formats: signed edge lists, serialised Gremban graphs, matrix dumps,
// key=value configuration files and long-format trajectory CSV.

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gremban/dynamics.hpp"
#include "gremban/error.hpp"
#include "gremban/expansion.hpp"
#include "gremban/matrix.hpp"
#include "gremban/signed_graph.hpp"

namespace gremban::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

inline std::size_t parse_index(std::string_view tok, std::size_t line, const char* what) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(tok) + "'", line);
    }
    return v;
}

inline double parse_real(std::string_view tok, std::size_t line) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
        throw ParseError("invalid number '" + std::string(tok) + "'", line);
    }
    return v;
}

inline int parse_sign(std::string_view tok, std::size_t line) {
    if (tok == "+" || tok == "+1") return 1;
    if (tok == "-" || tok == "-1") return -1;
    throw ParseError("invalid edge sign '" + std::string(tok) + "' (expected +1, -1, + or -)", line);
}

/// Text after "# key:" on a comment line, if the line has that key.
inline std::optional<std::string_view> comment_field(std::string_view line, std::string_view key) {
    if (line.empty() || line.front() != '#') return std::nullopt;
    auto rest = trim(line.substr(1));
    if (rest.substr(0, key.size()) != key) return std::nullopt;
    rest = rest.substr(key.size());
    if (rest.empty() || rest.front() != ':') return std::nullopt;
    return trim(rest.substr(1));
}

}  // namespace detail

/// Shortest text that reads back to the same double; locale free.
inline std::string format_real(double x) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, p);
}

struct EdgeListFile {
    SignedGraph graph;
    std::optional<std::vector<std::size_t>> ground_truth;
};

/// One edge per line "u v s", s in {+1, -1, +, -}; '#' starts a comment;
/// optional header "n <count>"; optional "# ground_truth: l0 l1 ..." line.
inline EdgeListFile read_edge_list(std::istream& in) {
    std::optional<std::size_t> declared;
    std::optional<std::vector<std::size_t>> truth;
    std::vector<std::pair<SignedEdge, std::size_t>> edges;
    std::string raw;
    std::size_t line = 0, max_id = 0;
    bool any = false;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = detail::trim(raw);
        if (text.empty()) continue;
        if (text.front() == '#') {
            if (auto f = detail::comment_field(text, "ground_truth")) {
                std::vector<std::size_t> labels;
                for (auto tok : detail::split(*f)) labels.push_back(detail::parse_index(tok, line, "label"));
                truth = std::move(labels);
            }
            continue;
        }
        const auto tok = detail::split(detail::trim(text.substr(0, text.find('#'))));
        if (tok[0] == "n") {
            if (tok.size() != 2) throw ParseError("header must read 'n <count>'", line);
            if (declared || !edges.empty()) throw ParseError("node-count header must come first", line);
            declared = detail::parse_index(tok[1], line, "node count");
            continue;
        }
        if (tok.size() != 3) throw ParseError("expected 'u v sign', got " + std::to_string(tok.size()) + " fields", line);
        SignedEdge e{detail::parse_index(tok[0], line, "node id"), detail::parse_index(tok[1], line, "node id"),
                     detail::parse_sign(tok[2], line)};
        if (declared && (e.u >= *declared || e.v >= *declared)) {
            throw ParseError("node id exceeds declared count " + std::to_string(*declared), line);
        }
        if (e.u == e.v) throw ParseError("self-loop at node " + std::to_string(e.u), line);
        max_id = std::max({max_id, e.u, e.v});
        any = true;
        edges.emplace_back(e, line);
    }
    const std::size_t n = declared ? *declared : (any ? max_id + 1 : 0);
    // Report duplicates with the line of the second occurrence.
    std::map<std::pair<NodeId, NodeId>, std::size_t> seen;
    std::vector<SignedEdge> list;
    for (const auto& [e, l] : edges) {
        const auto key = std::minmax(e.u, e.v);
        if (!seen.emplace(key, l).second) {
            throw ParseError("duplicate edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                 "), first given on line " + std::to_string(seen[key]),
                             l);
        }
        list.push_back(e);
    }
    if (truth && truth->size() != n) {
        throw ParseError("ground_truth has " + std::to_string(truth->size()) + " labels for " + std::to_string(n) + " nodes", 0);
    }
    return {SignedGraph(n, std::move(list)), std::move(truth)};
}

inline EdgeListFile read_edge_list_string(const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const SignedGraph& g,
                            const std::vector<std::size_t>* ground_truth = nullptr) {
    out << "n " << g.node_count() << '\n';
    if (ground_truth) {
        out << "# ground_truth:";
        for (auto l : *ground_truth) out << ' ' << l;
        out << '\n';
    }
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << (e.sign > 0 ? "+1" : "-1") << '\n';
}

/// Unsigned edge list with "# involution:", "# polarity:" and "# base:" lines.
inline void write_gremban(std::ostream& out, const GrembanGraph& gg) {
    out << "n " << gg.node_count() << '\n';
    out << "# involution:";
    for (NodeId x = 0; x < gg.node_count(); ++x)
        if (x < gg.involution[x]) out << ' ' << x << "↔" << gg.involution[x];
    out << "\n# polarity:";
    for (auto p : gg.polarity) out << ' ' << (p == Polarity::positive ? '+' : '-');
    out << "\n# base:";
    for (auto b : gg.base) out << ' ' << b;
    out << '\n';
    for (const auto& e : gg.graph.edges()) out << e.u << ' ' << e.v << '\n';
}

inline GrembanGraph read_gremban(std::istream& in) {
    std::optional<std::size_t> declared;
    std::optional<std::vector<NodeId>> eta;
    std::optional<std::vector<Polarity>> polarity;
    std::optional<std::vector<NodeId>> base;
    std::size_t eta_line = 0;
    EdgeSet edges;
    std::string raw;
    std::size_t line = 0, max_id = 0;
    std::vector<std::pair<NodeId, NodeId>> pairs;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = detail::trim(raw);
        if (text.empty()) continue;
        if (text.front() == '#') {
            if (auto f = detail::comment_field(text, "involution")) {
                eta_line = line;
                for (auto tok : detail::split(*f)) {
                    std::string t(tok);
                    std::size_t sep = t.find("↔"), width = std::string("↔").size();
                    if (sep == std::string::npos) {
                        sep = t.find("<->");
                        width = 3;
                    }
                    if (sep == std::string::npos) throw ParseError("involution pair '" + t + "' lacks a separator", line);
                    pairs.emplace_back(detail::parse_index(std::string_view(t).substr(0, sep), line, "node id"),
                                       detail::parse_index(std::string_view(t).substr(sep + width), line, "node id"));
                }
                eta.emplace();
            } else if (auto p = detail::comment_field(text, "polarity")) {
                std::vector<Polarity> pol;
                for (auto tok : detail::split(*p)) {
                    if (tok == "+") pol.push_back(Polarity::positive);
                    else if (tok == "-") pol.push_back(Polarity::negative);
                    else throw ParseError("invalid polarity '" + std::string(tok) + "'", line);
                }
                polarity = std::move(pol);
            } else if (auto b = detail::comment_field(text, "base")) {
                std::vector<NodeId> ids;
                for (auto tok : detail::split(*b)) ids.push_back(detail::parse_index(tok, line, "base id"));
                base = std::move(ids);
            }
            continue;
        }
        const auto tok = detail::split(text);
        if (tok[0] == "n") {
            if (tok.size() != 2) throw ParseError("header must read 'n <count>'", line);
            declared = detail::parse_index(tok[1], line, "node count");
            continue;
        }
        if (tok.size() != 2) throw ParseError("expected 'u v' on an unsigned edge line", line);
        const Edge e{detail::parse_index(tok[0], line, "node id"), detail::parse_index(tok[1], line, "node id")};
        max_id = std::max({max_id, e.u, e.v});
        edges.push_back(e);
    }
    if (!eta) throw ParseError("missing '# involution:' line", 0);
    const std::size_t n2 = declared ? *declared : 2 * pairs.size();
    std::vector<NodeId> inv(n2, n2);
    for (const auto& [a, b] : pairs) {
        if (a >= n2 || b >= n2) throw ParseError("involution names a node outside 0.." + std::to_string(n2 - 1), eta_line);
        inv[a] = b;
        inv[b] = a;
    }
    for (NodeId x = 0; x < n2; ++x)
        if (inv[x] == n2) throw ParseError("involution does not cover node " + std::to_string(x), eta_line);
    if (!edges.empty() && max_id >= n2) throw ParseError("edge endpoint exceeds the node count", 0);

    GrembanGraph gg = recognize(UnsignedGraph(n2, std::move(edges)), inv);
    if (polarity) {
        if (polarity->size() != n2) throw ParseError("polarity line has the wrong length", 0);
        gg.polarity = *polarity;
        if (!base) {
            NodeId next = 0;
            std::vector<NodeId> b(n2, n2);
            for (NodeId x = 0; x < n2; ++x)
                if (b[x] == n2) b[x] = b[inv[x]] = next++;
            gg.base = std::move(b);
        }
    }
    if (base) {
        if (base->size() != n2) throw ParseError("base line has the wrong length", 0);
        gg.base = *base;
    }
    validate(gg);
    return gg;
}

/// First line: order; then one row per line in shortest round-trip form.
inline void write_matrix(std::ostream& out, const Matrix& m) {
    if (!m.square()) throw DimensionError("matrix dump requires a square matrix");
    out << m.rows() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_real(m(i, j));
        out << '\n';
    }
}

inline Matrix read_matrix(std::istream& in) {
    std::string raw;
    std::size_t line = 0;
    std::optional<std::size_t> order;
    Matrix m;
    std::size_t row = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = detail::trim(raw);
        if (text.empty()) continue;
        const auto tok = detail::split(text);
        if (!order) {
            if (tok.size() != 1) throw ParseError("first line must hold the matrix order", line);
            order = detail::parse_index(tok[0], line, "order");
            m = Matrix(*order, *order);
            continue;
        }
        if (row >= *order) throw ParseError("too many rows", line);
        if (tok.size() != *order) throw ParseError("row has " + std::to_string(tok.size()) + " entries", line);
        for (std::size_t j = 0; j < *order; ++j) m(row, j) = detail::parse_real(tok[j], line);
        ++row;
    }
    if (!order) throw ParseError("empty matrix file", 0);
    if (row != *order) throw ParseError("expected " + std::to_string(*order) + " rows, got " + std::to_string(row), line);
    return m;
}

/// Flat "key = value" lines; '#' starts a comment.
using KeyValues = std::map<std::string, std::string>;

inline KeyValues read_key_values(std::istream& in) {
    KeyValues kv;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto text = detail::trim(raw);
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = detail::trim(text.substr(0, hash));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line);
        const auto key = detail::trim(text.substr(0, eq));
        if (key.empty()) throw ParseError("empty key", line);
        if (!kv.emplace(std::string(key), std::string(detail::trim(text.substr(eq + 1)))).second) {
            throw ParseError("duplicate key '" + std::string(key) + "'", line);
        }
    }
    return kv;
}

/// Long format "t,node,polarity,value" with node the base id.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
    out << "t,node,polarity,value\n";
    for (std::size_t s = 0; s < tr.states.size(); ++s) {
        const auto& x = tr.states[s];
        const std::size_t n = x.size() / 2;
        for (std::size_t i = 0; i < x.size(); ++i) {
            out << format_real(tr.times[s]) << ',' << (i % n) << ',' << (i < n ? '+' : '-') << ','
                << format_real(x[i]) << '\n';
        }
    }
}

}  // namespace gremban::io
