// Command-line front end.
//
// Exit codes: 0 success (an ambiguous detection is a success), 2 usage or
// invalid arguments, 3 unreadable or malformed input, 4 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gremban.hpp"

namespace {

using namespace gremban;
using nlohmann::ordered_json;

enum Exit { ok = 0, usage = 2, parse = 3, numerical = 4 };

class IoError : public Error {
public:
    using Error::Error;
};

struct Globals {
    std::optional<std::uint64_t> seed;
    bool normalized = false;
    double tol = kLiftTol;
};

io::EdgeListFile load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return io::read_edge_list(in);
}

/// Output stream: the named file, or stdout for "" and "-".
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_.open(path, std::ios::binary);
        if (!file_) throw IoError("cannot write '" + path + "'");
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

ordered_json edges_json(const EdgeSet& edges) {
    ordered_json a = ordered_json::array();
    for (const auto& e : edges) a.push_back({e.u, e.v});
    return a;
}

// expand -----------------------------------------------------------------

struct ExpandArgs {
    std::string input, output;
};

int cmd_expand(const ExpandArgs& a) {
    const SignedGraph g = load_graph(a.input).graph;
    const GrembanGraph gg = expand(g);
    Sink out(a.output);
    io::write_gremban(out.stream(), gg);
    std::ostream& info = a.output.empty() || a.output == "-" ? std::cerr : std::cout;
    const bool balanced = is_balanced(g).balanced;
    info << "expansion: " << gg.node_count() << " nodes, " << gg.graph.edge_count() << " edges, "
         << (gg.graph.connected() ? "connected" : "disconnected") << " (source "
         << (balanced ? "balanced" : "unbalanced") << (is_connected(g) ? "" : ", source disconnected") << ")\n";
    return ok;
}

// detect -----------------------------------------------------------------

struct DetectArgs {
    std::string input;
    std::size_t k = 2;
};

ordered_json detect_json(const SignedGraph& g, const DetectionResult& r, const Globals& gl) {
    ordered_json j;
    j["kind"] = to_string(r.kind);
    j["labels"] = r.labels;
    j["normalized"] = gl.normalized;
    j["lambda2"] = detail::round12(r.lambda2);
    j["competitor_lambda"] = detail::round12(r.competitor_lambda);
    j["lambda_gap"] = detail::round12(r.lambda_gap);
    j["fiedler_index"] = r.fiedler_index;
    j["fiedler_lift"] = to_string(r.fiedler_tag.tag);
    j["symmetric_norm"] = detail::round12(r.fiedler_tag.symmetric_norm);
    j["antisymmetric_norm"] = detail::round12(r.fiedler_tag.antisymmetric_norm);
    if (r.fiedler_tag.tag != Lift::mixed && r.expanded.proper()) {
        const SymmetricCutClass c = classify_symmetric_cut(expand(g), r.expanded);
        j["projected_kind"] = c.kind == SymmetricCutKind::cut ? "cut-set" : "frustration-set";
        j["projected_edges"] = edges_json(c.projected_edges);
    }
    return j;
}

ordered_json multiway_json(const MultiwayReport& rep, std::size_t k, const Globals& gl) {
    ordered_json j;
    j["k"] = k;
    j["normalized"] = gl.normalized;
    std::size_t factions = 0, communities = 0;
    ordered_json list = ordered_json::array();
    for (const auto& s : rep.structures) {
        ordered_json e;
        e["kind"] = to_string(s.kind);
        e["community"] = s.community;
        if (s.kind == StructureKind::faction) {
            e["factions"] = {s.faction_a, s.faction_b};
            e["clusters"] = {s.cluster_a, s.cluster_b};
            ++factions;
        } else {
            e["clusters"] = {s.cluster_a};
        }
        ++communities;
        list.push_back(e);
    }
    j["faction_pairs"] = factions;
    j["communities"] = communities;
    j["structures"] = list;
    j["expanded_labels"] = rep.expanded_labels;
    return j;
}

int cmd_detect(const DetectArgs& a, const Globals& gl) {
    const SignedGraph g = load_graph(a.input).graph;
    ordered_json j;
    if (a.k <= 2) j = detect_json(g, detect_two_way(g, gl.normalized), gl);
    else j = multiway_json(detect_multiway(g, a.k, gl.normalized, gl.seed.value_or(0)), a.k, gl);
    std::cout << j.dump(2) << '\n';
    return ok;
}

// sweep ------------------------------------------------------------------

struct SweepArgs {
    std::string config, output;
    std::size_t threads = 0;
    bool summary = false;
};

int cmd_sweep(const SweepArgs& a, const Globals& gl) {
    std::ifstream in(a.config);
    if (!in) throw IoError("cannot open '" + a.config + "'");
    const io::KeyValues kv = io::read_key_values(in);
    SweepConfig c = sweep_config_from(kv);
    if (gl.seed) c.seed = *gl.seed;
    else if (!kv.count("seed")) throw RangeError("sweep needs a seed: pass --seed or set 'seed' in the config");
    if (gl.normalized) c.normalized = true;
    if (a.threads) c.threads = a.threads;
    const auto rows = run_sweep(c);
    Sink out(a.output);
    write_sweep_csv(out.stream(), rows);
    if (a.summary) {
        std::ostream& info = a.output.empty() || a.output == "-" ? std::cerr : std::cout;
        info << "rho_minus_in,method,mean_ari,mean_nmi,mean_lambda_gap\n";
        for (const auto& s : summarize(rows)) {
            info << io::format_real(s.rho_minus_in) << ',' << to_string(s.method) << ',' << io::format_real(s.mean_ari)
                 << ',' << io::format_real(s.mean_nmi) << ',' << io::format_real(s.mean_gap) << '\n';
        }
    }
    return ok;
}

// spectrum ---------------------------------------------------------------

struct SpectrumArgs {
    std::string input, which = "gremban-L";
};

int cmd_spectrum(const SpectrumArgs& a, const Globals& gl) {
    const SignedGraph g = load_graph(a.input).graph;
    const MatrixBundle b = build_bundle(g);
    std::string which = a.which;
    const bool prefixed = which.rfind("normalized-", 0) == 0;
    if (prefixed) which = which.substr(11);
    const SymMatrix* m = nullptr;
    bool laplacian = true, expanded = false;
    if (which == "A") m = &b.A, laplacian = false;
    else if (which == "A_bar") m = &b.A_bar, laplacian = false;
    else if (which == "L") m = &b.L;
    else if (which == "L_bar") m = &b.L_bar;
    else if (which == "gremban-A") m = &b.gremban_A, laplacian = false, expanded = true;
    else if (which == "gremban-L") m = &b.gremban_L, expanded = true;
    else throw RangeError("unknown operator '" + a.which + "'");
    if (prefixed && !laplacian) throw RangeError("normalisation applies to Laplacians only");
    const bool normalized = laplacian && (prefixed || gl.normalized);

    SymMatrix op = *m;
    Vector root;
    if (normalized) {
        const Vector k = normalization_degrees(expanded ? gremban_degrees(g) : degrees(g));
        op = normalized_laplacian(*m, k);
        for (double x : k) root.push_back(std::sqrt(x));
    }
    ordered_json j;
    j["operator"] = (normalized ? "normalized-" : "") + which;
    j["order"] = op.order();
    const SpectralDecomposition d = eig_sym(op);
    if (!expanded) {
        ordered_json ev = ordered_json::array();
        for (double x : d.eigenvalues) ev.push_back(detail::round12(x));
        j["eigenvalues"] = ev;
    } else {
        LiftedDecomposition ld = classify_lift(d, gl.tol);
        if (laplacian) pin_trivial(ld, normalized ? root : Vector(op.order(), 1.0));
        ordered_json ev = ordered_json::array(), tags = ordered_json::array(), sym = ordered_json::array(),
                     anti = ordered_json::array();
        for (std::size_t i = 0; i < ld.size(); ++i) {
            ev.push_back(detail::round12(ld.eigenvalue(i)));
            tags.push_back(to_string(ld.tag(i)));
            sym.push_back(detail::round12(ld.tags[i].symmetric_norm));
            anti.push_back(detail::round12(ld.tags[i].antisymmetric_norm));
        }
        j["eigenvalues"] = ev;
        j["lift"] = tags;
        j["symmetric_norm"] = sym;
        j["antisymmetric_norm"] = anti;
    }
    j["residual"] = d.residual;
    std::cout << j.dump(2) << '\n';
    return ok;
}

// diffuse ----------------------------------------------------------------

struct DiffuseArgs {
    std::string input, x0 = "delta:0", output;
    double t_max = 10.0;
    std::size_t samples = 101;
    bool log_times = false;
};

Vector initial_state(const std::string& spec, std::size_t n) {
    Vector x(2 * n, 0.0);
    if (spec == "uniform") {
        for (double& v : x) v = 1.0 / static_cast<double>(2 * n);
        return x;
    }
    if (spec.rfind("delta:", 0) == 0) {
        std::string node = spec.substr(6);
        bool minus = false;
        if (!node.empty() && (node.back() == '-' || node.back() == '+')) {
            minus = node.back() == '-';
            node.pop_back();
        }
        std::size_t v = 0;
        const auto [p, ec] = std::from_chars(node.data(), node.data() + node.size(), v);
        if (ec != std::errc() || p != node.data() + node.size() || node.empty()) {
            throw RangeError("bad x0 spec '" + spec + "'");
        }
        if (v >= n) throw RangeError("x0 node " + std::to_string(v) + " out of range");
        x[minus ? v + n : v] = 1.0;
        return x;
    }
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        std::ifstream in(path);
        if (!in) throw IoError("cannot open '" + path + "'");
        Vector vals;
        std::string tok;
        std::size_t line = 0;
        for (std::string raw; std::getline(in, raw);) {
            ++line;
            std::istringstream ss(raw.substr(0, raw.find('#')));
            while (ss >> tok) {
                double d = 0.0;
                const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
                if (ec != std::errc() || p != tok.data() + tok.size()) throw ParseError("invalid number '" + tok + "'", line);
                vals.push_back(d);
            }
        }
        detail::require_length(vals.size(), 2 * n, "initial state");
        return vals;
    }
    throw RangeError("bad x0 spec '" + spec + "' (expected delta:<node>[-], uniform or file:<path>)");
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    const std::string ext = p.extension().string();
    p.replace_extension();
    return p.string() + suffix + (ext.empty() ? ".csv" : ext);
}

int cmd_diffuse(const DiffuseArgs& a) {
    const io::EdgeListFile f = load_graph(a.input);
    const SignedGraph& g = f.graph;
    if (!(a.t_max > 0.0)) throw RangeError("--t-max must be positive");
    if (a.samples < 2) throw RangeError("--samples must be at least 2");
    const Vector x0 = initial_state(a.x0, g.node_count());
    std::vector<double> times;
    for (std::size_t i = 0; i < a.samples; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(a.samples - 1);
        times.push_back(a.log_times ? (i == 0 ? 0.0 : a.t_max * std::pow(1e-3, 1.0 - s)) : a.t_max * s);
    }
    const Trajectory tr = diffuse(g, x0, times);
    {
        Sink out(a.output);
        io::write_trajectory_csv(out.stream(), tr);
    }
    if (a.output.empty() || a.output == "-") return ok;

    Sink proj(with_suffix(a.output, ".projected"));
    proj.stream() << "t,node,net,total\n";
    const auto nets = tr.net_series(), tots = tr.total_series();
    for (std::size_t s = 0; s < tr.times.size(); ++s)
        for (NodeId v = 0; v < g.node_count(); ++v) {
            proj.stream() << io::format_real(tr.times[s]) << ',' << v << ',' << io::format_real(nets[s][v]) << ','
                          << io::format_real(tots[s][v]) << '\n';
        }

    const std::vector<std::size_t>* groups = f.ground_truth ? &*f.ground_truth : nullptr;
    const MetastabilityProfile p = metastability_profile(tr, expand(g), groups);
    Sink prof(with_suffix(a.output, ".profile"));
    prof.stream() << "t,fiber_coherence,cross_coherence,spread" << (groups ? ",group_contrast,faction_contrast" : "")
                  << '\n';
    for (std::size_t s = 0; s < tr.times.size(); ++s) {
        prof.stream() << io::format_real(tr.times[s]) << ',' << io::format_real(p.fiber_coherence[s]) << ','
                      << io::format_real(p.cross_coherence[s]) << ',' << io::format_real(p.spread[s]);
        if (groups) {
            prof.stream() << ',' << io::format_real(p.group_contrast[s]) << ','
                          << io::format_real(p.faction_contrast[s]);
        }
        prof.stream() << '\n';
    }
    return ok;
}

// walks ------------------------------------------------------------------

struct WalksArgs {
    std::string input;
    int k = 1;
    std::size_t v = 0, w = 0;
};

int cmd_walks(const WalksArgs& a) {
    const SignedGraph g = load_graph(a.input).graph;
    const std::size_t n = g.node_count();
    if (a.v >= n || a.w >= n) throw RangeError("node id out of range 0.." + std::to_string(n ? n - 1 : 0));
    const WalkCounts c = count_signed_walks(g, a.k);
    const IntAdjacency adj = int_adjacency(g);
    const std::int64_t sp = int_power(adj.signed_adj, a.k)(a.v, a.w);
    const std::int64_t up = int_power(adj.unsigned_adj, a.k)(a.v, a.w);
    const std::int64_t pos = c.positive(a.v, a.w), neg = c.negative(a.v, a.w);
    ordered_json j;
    j["k"] = a.k;
    j["v"] = a.v;
    j["w"] = a.w;
    j["positive"] = pos;
    j["negative"] = neg;
    j["signed_power"] = sp;
    j["unsigned_power"] = up;
    j["consistent"] = pos - neg == sp && pos + neg == up;
    std::cout << j.dump(2) << '\n';
    return ok;
}

// generate ---------------------------------------------------------------

struct GenerateArgs {
    std::string config, output;
    std::optional<std::size_t> n, groups;
    std::optional<double> rho_plus_in, rho_plus_out, rho_minus_in, rho_minus_out;
    bool balanced = false;
};

int cmd_generate(const GenerateArgs& a, const Globals& gl) {
    SbmConfig c;
    c.groups = 2;
    std::optional<std::uint64_t> seed = gl.seed;
    if (!a.config.empty()) {
        std::ifstream in(a.config);
        if (!in) throw IoError("cannot open '" + a.config + "'");
        for (const auto& [key, value] : io::read_key_values(in)) {
            if (key == "n") c.n = detail::config_unsigned(key, value);
            else if (key == "groups") c.groups = detail::config_unsigned(key, value);
            else if (key == "rho_plus_in") c.rho_plus_in = detail::config_real(key, value);
            else if (key == "rho_plus_out") c.rho_plus_out = detail::config_real(key, value);
            else if (key == "rho_minus_in") c.rho_minus_in = detail::config_real(key, value);
            else if (key == "rho_minus_out") c.rho_minus_out = detail::config_real(key, value);
            else if (key == "balanced_groups") c.balanced_groups = detail::config_bool(key, value);
            else if (key == "seed") {
                if (!seed) seed = detail::config_unsigned(key, value);
            } else if (key == "activities") {
                for (const auto& tok : detail::split_list(value)) c.activities.push_back(detail::config_real(key, tok));
            } else {
                throw ParseError("unknown config key '" + key + "'", 0);
            }
        }
    }
    if (!seed) throw RangeError("generate needs a seed: pass --seed or set 'seed' in the config");
    c.seed = *seed;
    if (a.n) c.n = *a.n;
    if (a.groups) c.groups = *a.groups;
    if (a.rho_plus_in) c.rho_plus_in = *a.rho_plus_in;
    if (a.rho_plus_out) c.rho_plus_out = *a.rho_plus_out;
    if (a.rho_minus_in) c.rho_minus_in = *a.rho_minus_in;
    if (a.rho_minus_out) c.rho_minus_out = *a.rho_minus_out;
    if (a.balanced) c.balanced_groups = true;
    const SbmSample s = sample_ssbm(c);
    Sink out(a.output);
    io::write_edge_list(out.stream(), s.graph, &s.ground_truth);
    return ok;
}

int exit_code_for(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const ParseError& x) {
        std::cerr << "parse error: " << x.what() << '\n';
        return parse;
    } catch (const IoError& x) {
        std::cerr << "i/o error: " << x.what() << '\n';
        return parse;
    } catch (const NotGrembanError& x) {
        std::cerr << "parse error: " << x.what() << '\n';
        return parse;
    } catch (const NumericalError& x) {
        std::cerr << "numerical error: " << x.what() << '\n';
        return numerical;
    } catch (const SymmetryError& x) {
        std::cerr << "numerical error: " << x.what() << '\n';
        return numerical;
    } catch (const Error& x) {
        std::cerr << "error: " << x.what() << '\n';
        return usage;
    } catch (const std::exception& x) {
        std::cerr << "error: " << x.what() << '\n';
        return numerical;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signed network analysis through the Gremban expansion", "gremban"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals gl;
    app.add_option("--seed", gl.seed, "Random seed (required by randomised commands)");
    app.add_flag("--normalized", gl.normalized, "Use degree-normalised Laplacians");
    app.add_option("--tol", gl.tol, "Lift classification tolerance")->check(CLI::PositiveNumber);

    ExpandArgs ea;
    auto* expand_cmd = app.add_subcommand("expand", "Write the Gremban expansion of a signed edge list");
    expand_cmd->add_option("input", ea.input, "Signed edge list")->required();
    expand_cmd->add_option("-o,--output", ea.output, "Output file (default stdout)");

    DetectArgs da;
    auto* detect_cmd = app.add_subcommand("detect", "Community / faction detection (JSON)");
    detect_cmd->add_option("input", da.input, "Signed edge list")->required();
    detect_cmd->add_option("-k", da.k, "Number of clusters (2: two-way detection)")->check(CLI::Range(2, 1 << 20));

    SweepArgs sa;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run the SSBM method comparison sweep (CSV)");
    sweep_cmd->add_option("config", sa.config, "key = value sweep configuration")->required();
    sweep_cmd->add_option("-o,--output", sa.output, "Output CSV (default stdout)");
    sweep_cmd->add_option("--threads", sa.threads, "Worker threads (default: config or all cores)");
    sweep_cmd->add_flag("--summary", sa.summary, "Also print per-point means");

    SpectrumArgs pa;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues, lift tags and projection norms (JSON)");
    spectrum_cmd->add_option("input", pa.input, "Signed edge list")->required();
    spectrum_cmd->add_option("--which", pa.which,
                             "A, A_bar, L, L_bar, gremban-A, gremban-L, or normalized-<Laplacian>");

    DiffuseArgs fa;
    auto* diffuse_cmd = app.add_subcommand("diffuse", "Diffusion on the expansion (trajectory CSV)");
    diffuse_cmd->add_option("input", fa.input, "Signed edge list")->required();
    diffuse_cmd->add_option("--x0", fa.x0, "delta:<node>[-], uniform or file:<path>");
    diffuse_cmd->add_option("--t-max", fa.t_max, "Final time");
    diffuse_cmd->add_option("--samples", fa.samples, "Number of sample times, including t = 0");
    diffuse_cmd->add_flag("--log-times", fa.log_times, "Log-spaced sample times from t_max/1000");
    diffuse_cmd->add_option("-o,--output", fa.output,
                            "Trajectory CSV; <stem>.projected.csv and <stem>.profile.csv are written alongside");

    WalksArgs wa;
    auto* walks_cmd = app.add_subcommand("walks", "Positive and negative walk counts between two nodes (JSON)");
    walks_cmd->add_option("input", wa.input, "Signed edge list")->required();
    walks_cmd->add_option("-k", wa.k, "Walk length")->required()->check(CLI::NonNegativeNumber);
    walks_cmd->add_option("-v", wa.v, "Start node")->required();
    walks_cmd->add_option("-w", wa.w, "End node")->required();

    GenerateArgs ga;
    auto* generate_cmd = app.add_subcommand("generate", "Sample a signed stochastic block model (edge list)");
    generate_cmd->add_option("--config", ga.config, "key = value generator configuration");
    generate_cmd->add_option("-n", ga.n, "Node count");
    generate_cmd->add_option("--groups", ga.groups, "Number of groups");
    generate_cmd->add_option("--rho-plus-in", ga.rho_plus_in);
    generate_cmd->add_option("--rho-plus-out", ga.rho_plus_out);
    generate_cmd->add_option("--rho-minus-in", ga.rho_minus_in);
    generate_cmd->add_option("--rho-minus-out", ga.rho_minus_out);
    generate_cmd->add_flag("--balanced", ga.balanced, "Exactly equal group sizes");
    generate_cmd->add_option("-o,--output", ga.output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*expand_cmd) return cmd_expand(ea);
        if (*detect_cmd) return cmd_detect(da, gl);
        if (*sweep_cmd) return cmd_sweep(sa, gl);
        if (*spectrum_cmd) return cmd_spectrum(pa, gl);
        if (*diffuse_cmd) return cmd_diffuse(fa);
        if (*walks_cmd) return cmd_walks(wa);
        if (*generate_cmd) return cmd_generate(ga, gl);
    } catch (...) {
        return exit_code_for(std::current_exception());
    }
    return usage;
}
