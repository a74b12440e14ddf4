#pragma once

// SSBM sweep over the within-group negative density: per replica, the
// Gremban, signed and unsigned spectral bipartitions are scored against the
// planted groups, together with the gap lambda_2(L_bar) - lambda_1(L).

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "gremban/clustering.hpp"
#include "gremban/error.hpp"
#include "gremban/generators.hpp"
#include "gremban/io.hpp"
#include "gremban/metrics.hpp"
#include "gremban/operators.hpp"
#include "gremban/spectral.hpp"

namespace gremban {

namespace detail {

/// Rounds grid arithmetic (0.22 - 0.06, 3 * 0.02) back to the intended decimal.
inline double round12(double x) { return std::round(x * 1e12) / 1e12 + 0.0; }

}  // namespace detail

enum class SweepMethod { gremban, signed_laplacian, unsigned_laplacian };

inline const char* to_string(SweepMethod m) {
    switch (m) {
        case SweepMethod::gremban: return "gremban";
        case SweepMethod::signed_laplacian: return "signed";
        default: return "unsigned";
    }
}

struct SweepConfig {
    std::size_t n = 100;
    std::size_t runs = 20;
    std::size_t groups = 2;
    double rho_plus_in = 0.2;
    double rho_plus_out = 0.02;
    std::vector<double> rho_minus_in_grid;
    /// rho_minus_out = out_total - rho_minus_in, unless an explicit grid is given.
    double rho_minus_out_total = 0.22;
    std::vector<double> rho_minus_out_grid;
    std::uint64_t seed = 0;
    bool normalized = true;
    bool balanced_groups = true;
    std::vector<SweepMethod> methods{SweepMethod::gremban, SweepMethod::signed_laplacian,
                                     SweepMethod::unsigned_laplacian};
    std::size_t threads = 0;  // 0: hardware concurrency

    double rho_minus_out(std::size_t grid_index) const {
        if (!rho_minus_out_grid.empty()) return rho_minus_out_grid[grid_index];
        return std::max(0.0, detail::round12(rho_minus_out_total - rho_minus_in_grid[grid_index]));
    }
};

inline void validate(const SweepConfig& c) {
    if (c.rho_minus_in_grid.empty()) throw RangeError("sweep: rho_minus_in grid is empty");
    if (c.runs == 0) throw RangeError("sweep: runs must be at least 1");
    if (c.n < 2) throw RangeError("sweep: n must be at least 2");
    if (c.methods.empty()) throw RangeError("sweep: no methods selected");
    if (!c.rho_minus_out_grid.empty() && c.rho_minus_out_grid.size() != c.rho_minus_in_grid.size()) {
        throw DimensionError("sweep: rho_minus_out grid and rho_minus_in grid differ in length");
    }
}

namespace detail {

inline double config_real(const std::string& key, const std::string& value) {
    double x = 0.0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc() || p != value.data() + value.size()) {
        throw ParseError("config key '" + key + "': expected a number, got '" + value + "'", 0);
    }
    return x;
}

inline std::uint64_t config_unsigned(const std::string& key, const std::string& value) {
    std::uint64_t x = 0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
    if (ec != std::errc() || p != value.data() + value.size()) {
        throw ParseError("config key '" + key + "': expected a nonnegative integer, got '" + value + "'", 0);
    }
    return x;
}

inline bool config_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ParseError("config key '" + key + "': expected true or false, got '" + value + "'", 0);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = std::min(s.find(',', start), s.size());
        const auto tok = io::detail::trim(std::string_view(s).substr(start, comma - start));
        if (!tok.empty()) out.emplace_back(tok);
        start = comma + 1;
    }
    return out;
}

/// "a:b:step" (inclusive, rounded to 12 decimals) or "x, y, z".
inline std::vector<double> parse_grid(const std::string& key, const std::string& value) {
    std::vector<double> grid;
    if (value.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (std::size_t colon; (colon = value.find(':', start)) != std::string::npos; start = colon + 1) {
            parts.emplace_back(io::detail::trim(std::string_view(value).substr(start, colon - start)));
        }
        parts.emplace_back(io::detail::trim(std::string_view(value).substr(start)));
        if (parts.size() != 3) throw ParseError("config key '" + key + "': range must be start:stop:step", 0);
        const double a = config_real(key, parts[0]), b = config_real(key, parts[1]), step = config_real(key, parts[2]);
        if (!(step > 0.0) || b < a) throw ParseError("config key '" + key + "': need step > 0 and stop >= start", 0);
        const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) grid.push_back(round12(a + static_cast<double>(i) * step));
    } else {
        for (const auto& tok : split_list(value)) grid.push_back(config_real(key, tok));
    }
    if (grid.empty()) throw ParseError("config key '" + key + "': empty grid", 0);
    return grid;
}

}  // namespace detail

/// Keys: n, runs, groups, rho_plus_in, rho_plus_out, rho_minus_in (grid),
/// rho_minus_out ("<total> - rho_minus_in" or a grid), seed, normalized,
/// balanced_groups, methods (comma list), threads.
inline SweepConfig sweep_config_from(const io::KeyValues& kv) {
    SweepConfig c;
    for (const auto& [key, value] : kv) {
        if (key == "n") c.n = detail::config_unsigned(key, value);
        else if (key == "runs") c.runs = detail::config_unsigned(key, value);
        else if (key == "groups") c.groups = detail::config_unsigned(key, value);
        else if (key == "rho_plus_in") c.rho_plus_in = detail::config_real(key, value);
        else if (key == "rho_plus_out") c.rho_plus_out = detail::config_real(key, value);
        else if (key == "rho_minus_in") c.rho_minus_in_grid = detail::parse_grid(key, value);
        else if (key == "rho_minus_out") {
            const auto minus = value.find('-');
            if (value.find("rho_minus_in") != std::string::npos) {
                if (minus == std::string::npos) throw ParseError("rho_minus_out: expected '<total> - rho_minus_in'", 0);
                c.rho_minus_out_total = detail::config_real(key, std::string(io::detail::trim(value.substr(0, minus))));
                c.rho_minus_out_grid.clear();
            } else {
                c.rho_minus_out_grid = detail::parse_grid(key, value);
            }
        } else if (key == "seed") c.seed = detail::config_unsigned(key, value);
        else if (key == "normalized") c.normalized = detail::config_bool(key, value);
        else if (key == "balanced_groups") c.balanced_groups = detail::config_bool(key, value);
        else if (key == "threads") c.threads = detail::config_unsigned(key, value);
        else if (key == "methods") {
            c.methods.clear();
            for (const auto& m : detail::split_list(value)) {
                if (m == "gremban") c.methods.push_back(SweepMethod::gremban);
                else if (m == "signed") c.methods.push_back(SweepMethod::signed_laplacian);
                else if (m == "unsigned") c.methods.push_back(SweepMethod::unsigned_laplacian);
                else throw ParseError("methods: unknown method '" + m + "'", 0);
            }
            std::sort(c.methods.begin(), c.methods.end());
            c.methods.erase(std::unique(c.methods.begin(), c.methods.end()), c.methods.end());
        } else {
            throw ParseError("unknown config key '" + key + "'", 0);
        }
    }
    if (c.rho_minus_in_grid.empty()) c.rho_minus_in_grid = detail::parse_grid("rho_minus_in", "0:0.2:0.02");
    validate(c);
    return c;
}

struct SweepRow {
    std::size_t grid_index = 0;
    double rho_minus_in = 0.0;
    SweepMethod method = SweepMethod::gremban;
    std::size_t run = 0;
    double ari = 0.0;
    double nmi = 0.0;
    double lambda_gap = 0.0;
};

namespace detail {

/// K^{-1/2} L K^{-1/2}, or L itself.
inline SymMatrix maybe_normalized(const SymMatrix& l, const Vector& k, bool normalized) {
    return normalized ? normalized_laplacian(l, normalization_degrees(k)) : l;
}

inline Labels sign_labels(std::span<const double> psi) {
    const double zero_tol = 1e-8 * norm_inf(psi);
    Labels out(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) out[i] = psi[i] >= -zero_tol ? 0 : 1;
    return out;
}

}  // namespace detail

/// One replica: all requested methods on one sampled graph.
inline std::vector<SweepRow> sweep_replica(const SweepConfig& c, std::size_t grid_index, std::size_t run) {
    SbmConfig sc;
    sc.n = c.n;
    sc.groups = c.groups;
    sc.rho_plus_in = c.rho_plus_in;
    sc.rho_plus_out = c.rho_plus_out;
    sc.rho_minus_in = c.rho_minus_in_grid[grid_index];
    sc.rho_minus_out = c.rho_minus_out(grid_index);
    sc.seed = c.seed + grid_index * c.runs + run;
    sc.balanced_groups = c.balanced_groups;
    const SbmSample s = sample_ssbm(sc);

    const MatrixBundle b = build_bundle(s.graph);
    const Vector k = degrees(s.graph);
    const SpectralDecomposition signed_d = eig_sym(detail::maybe_normalized(b.L, k, c.normalized));
    Vector trivial(c.n, 1.0);
    if (c.normalized) {
        const Vector kn = normalization_degrees(k);
        for (std::size_t i = 0; i < c.n; ++i) trivial[i] = std::sqrt(kn[i]);
    }
    const FiedlerResult unsigned_f = fiedler(detail::maybe_normalized(b.L_bar, k, c.normalized), trivial);
    const double gap = unsigned_f.lambda2 - signed_d.eigenvalues[0];

    std::vector<SweepRow> rows;
    for (SweepMethod m : c.methods) {
        Labels pred;
        switch (m) {
            case SweepMethod::gremban: pred = detect_two_way(s.graph, c.normalized).labels; break;
            case SweepMethod::signed_laplacian: pred = detail::sign_labels(signed_d.vector(0)); break;
            case SweepMethod::unsigned_laplacian: pred = detail::sign_labels(unsigned_f.psi2); break;
        }
        rows.push_back({grid_index, c.rho_minus_in_grid[grid_index], m, run, ari(s.ground_truth, pred),
                        nmi(s.ground_truth, pred), gap});
    }
    return rows;
}

/// Replica (grid point g, run r) uses seed + g * runs + r. Rows are sorted by
/// (grid point, method, run) whatever the thread count.
inline std::vector<SweepRow> run_sweep(const SweepConfig& c) {
    validate(c);
    const std::size_t jobs = c.rho_minus_in_grid.size() * c.runs;
    std::size_t threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs);

    std::vector<SweepRow> rows;
    std::mutex lock;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < jobs;) {
            try {
                auto part = sweep_replica(c, j / c.runs, j % c.runs);
                const std::lock_guard<std::mutex> g(lock);
                rows.insert(rows.end(), part.begin(), part.end());
            } catch (...) {
                const std::lock_guard<std::mutex> g(lock);
                if (!failure) failure = std::current_exception();
                next = jobs;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.grid_index, a.method, a.run) < std::tie(b.grid_index, b.method, b.run);
    });
    return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "rho_minus_in,method,run,ari,nmi,lambda_gap\n";
    for (const auto& r : rows) {
        out << io::format_real(r.rho_minus_in) << ',' << to_string(r.method) << ',' << r.run << ','
            << io::format_real(r.ari) << ',' << io::format_real(r.nmi) << ',' << io::format_real(r.lambda_gap) << '\n';
    }
}

/// Mean of a column per (grid point, method).
struct SweepSummary {
    double rho_minus_in = 0.0;
    SweepMethod method = SweepMethod::gremban;
    double mean_ari = 0.0, mean_nmi = 0.0, mean_gap = 0.0;
    std::size_t runs = 0;
};

inline std::vector<SweepSummary> summarize(const std::vector<SweepRow>& rows) {
    std::vector<SweepSummary> out;
    for (std::size_t i = 0; i < rows.size();) {
        std::size_t j = i;
        SweepSummary s{rows[i].rho_minus_in, rows[i].method};
        while (j < rows.size() && rows[j].grid_index == rows[i].grid_index && rows[j].method == rows[i].method) {
            s.mean_ari += rows[j].ari;
            s.mean_nmi += rows[j].nmi;
            s.mean_gap += rows[j].lambda_gap;
            ++s.runs;
            ++j;
        }
        s.mean_ari /= static_cast<double>(s.runs);
        s.mean_nmi /= static_cast<double>(s.runs);
        s.mean_gap /= static_cast<double>(s.runs);
        out.push_back(s);
        i = j;
    }
    return out;
}

}  // namespace gremban
