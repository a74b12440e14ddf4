#pragma once

// Partition agreement: adjusted Rand index and normalised mutual information.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "gremban/error.hpp"

namespace gremban {

namespace detail {

struct Contingency {
    std::vector<std::vector<double>> table;
    std::vector<double> rows, cols;
    double n = 0.0;
};

inline std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& labels, std::size_t& k) {
    std::map<std::size_t, std::size_t> ids;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids.emplace(labels[i], ids.size()).first->second;
    k = ids.size();
    return out;
}

inline Contingency contingency(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) {
        throw DimensionError("labelings have different lengths " + std::to_string(a.size()) + " and " +
                             std::to_string(b.size()));
    }
    std::size_t ka = 0, kb = 0;
    const auto ca = canonical_labels(a, ka), cb = canonical_labels(b, kb);
    Contingency c;
    c.table.assign(ka, std::vector<double>(kb, 0.0));
    c.rows.assign(ka, 0.0);
    c.cols.assign(kb, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        c.table[ca[i]][cb[i]] += 1.0;
        c.rows[ca[i]] += 1.0;
        c.cols[cb[i]] += 1.0;
    }
    c.n = static_cast<double>(a.size());
    return c;
}

inline double choose2(double x) { return 0.5 * x * (x - 1.0); }

}  // namespace detail

/// Adjusted Rand index under the hypergeometric null model. When the
/// expected index equals its maximum (both partitions trivial in the same
/// way) the result is 1.
inline double ari(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() < 2 || b.size() < 2) throw RangeError("ari needs at least two items");
    const auto c = detail::contingency(a, b);
    double index = 0.0, sa = 0.0, sb = 0.0;
    for (const auto& row : c.table)
        for (double x : row) index += detail::choose2(x);
    for (double x : c.rows) sa += detail::choose2(x);
    for (double x : c.cols) sb += detail::choose2(x);
    const double expected = sa * sb / detail::choose2(c.n);
    const double max_index = 0.5 * (sa + sb);
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

/// 2 I(U,V) / (H(U) + H(V)), natural logarithms, 0 log 0 = 0. Two constant
/// labelings score 1; exactly one constant labeling scores 0.
inline double nmi(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    const auto c = detail::contingency(a, b);
    if (c.n == 0.0) throw RangeError("nmi needs at least one item");
    auto entropy = [&](const std::vector<double>& m) {
        double h = 0.0;
        for (double x : m)
            if (x > 0.0) h -= (x / c.n) * std::log(x / c.n);
        return h;
    };
    const double ha = entropy(c.rows), hb = entropy(c.cols);
    const bool const_a = c.rows.size() == 1, const_b = c.cols.size() == 1;
    if (const_a && const_b) return 1.0;
    if (const_a || const_b) return 0.0;
    double mi = 0.0;
    for (std::size_t i = 0; i < c.rows.size(); ++i)
        for (std::size_t j = 0; j < c.cols.size(); ++j) {
            const double x = c.table[i][j];
            if (x > 0.0) mi += (x / c.n) * std::log(x * c.n / (c.rows[i] * c.cols[j]));
        }
    return std::max(0.0, std::min(1.0, 2.0 * mi / (ha + hb)));
}

}  // namespace gremban
