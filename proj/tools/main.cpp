#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "specgap/enumerate.hpp"
#include "specgap/graph_io.hpp"
#include "specgap/spectral.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace specgap;

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct GraphInput {
    std::string family;
    std::string edges_path;
    std::string graph6_path;
};

void add_graph_input(CLI::App* cmd, GraphInput& in) {
    cmd->add_option("--family", in.family,
                    "family name: petal:M, book:M, path:N, cycle:N, complete:N, "
                    "complete-bipartite:A,B");
    cmd->add_option("--edges", in.edges_path,
                    "edge-list file: first line n, then one 'u v' pair per line");
    cmd->add_option("--graph6", in.graph6_path, "file whose first non-blank line is graph6");
}

Graph load_graph(const GraphInput& in) {
    const int sources = int(!in.family.empty()) + int(!in.edges_path.empty()) +
                        int(!in.graph6_path.empty());
    if (sources != 1)
        throw std::invalid_argument("need exactly one of --family, --edges, --graph6");
    if (!in.family.empty()) return make_family(family_from_string(in.family));
    if (!in.edges_path.empty()) {
        std::ifstream f(in.edges_path);
        if (!f) throw std::invalid_argument("cannot open " + in.edges_path);
        return parse_edge_list(f);
    }
    std::ifstream f(in.graph6_path);
    if (!f) throw std::invalid_argument("cannot open " + in.graph6_path);
    std::string line;
    while (std::getline(f, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) return parse_graph6(line);
    throw ParseError("no graph6 line in " + in.graph6_path);
}

struct CommonOpts {
    std::string format = "text";
    std::string out;
    double tol_cluster = kDefaultClusterTol;
    double tol_half = kDefaultHalfTol;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", o.out, "write output to this file instead of stdout");
    cmd->add_option("--tol-cluster", o.tol_cluster, "eigenvalue clustering tolerance");
    cmd->add_option("--tol-half", o.tol_half, "tolerance for calling epsilon equal to 1/2");
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    f << content;
}

ordered_json groups_json(const std::vector<EigenGroup>& groups) {
    ordered_json arr = ordered_json::array();
    for (const EigenGroup& g : groups)
        arr.push_back({{"value", g.value}, {"multiplicity", g.multiplicity}});
    return arr;
}

std::string groups_text(const std::vector<EigenGroup>& groups) {
    std::string out = "eigenvalues (value x multiplicity):\n";
    for (const EigenGroup& g : groups)
        out += "  " + fmt_g(g.value) + " x" + std::to_string(g.multiplicity) + "\n";
    return out;
}

std::string tolerances_text(const CommonOpts& o) {
    return "tolerances: cluster=" + fmt_g(o.tol_cluster) + " half=" + fmt_g(o.tol_half) + "\n";
}

ordered_json tolerances_json(const CommonOpts& o) {
    return {{"cluster", o.tol_cluster}, {"half", o.tol_half}};
}

int cmd_spectrum(const GraphInput& in, const CommonOpts& o) {
    const Graph g = load_graph(in);
    const Spectrum s = spectrum_of(g, o.tol_cluster);
    const auto [eps, idx] = min_abs_deviation(s.values, 1.0);
    const FamilyTag fam = classify_family(g);
    const bool achieves = std::abs(eps - kHalf) <= o.tol_half;
    if (o.format == "json") {
        ordered_json j;
        j["schema_version"] = 1;
        j["kind"] = "spectrum";
        j["n"] = g.n;
        j["edges"] = g.edge_count();
        ordered_json vals = ordered_json::array();
        for (double v : s.values) vals.push_back(v);
        j["eigenvalues"] = vals;
        j["groups"] = groups_json(s.groups);
        j["epsilon"] = eps;
        j["nearest_eigenvalue"] = s.values[idx];
        j["family"] = family_spelling(fam);
        j["achieves_half"] = achieves;
        j["tolerances"] = tolerances_json(o);
        write_out(o.out, j.dump(2) + "\n");
    } else {
        std::string out = "n: " + std::to_string(g.n) +
                          "\nedges: " + std::to_string(g.edge_count()) + "\n";
        out += groups_text(s.groups);
        out += "epsilon: " + fmt_g(eps) + "\n";
        out += "nearest_eigenvalue: " + fmt_g(s.values[idx]) + "\n";
        out += "family: " + family_to_string(fam) + "\n";
        out += std::string("achieves_half: ") + (achieves ? "yes" : "no") + "\n";
        out += tolerances_text(o);
        write_out(o.out, out);
    }
    return 0;
}

int cmd_gap(const GraphInput& in, const CommonOpts& o) {
    const Graph g = load_graph(in);
    const GapReport r = epsilon_direct(g, o.tol_half);
    if (o.format == "json") {
        ordered_json j;
        j["schema_version"] = 1;
        j["kind"] = "gap";
        j["n"] = g.n;
        j["epsilon"] = r.epsilon;
        j["nearest_eigenvalue"] = r.nearest_eigenvalue;
        j["family"] = family_spelling(r.family);
        j["achieves_half"] = r.achieves_half;
        j["tolerances"] = tolerances_json(o);
        write_out(o.out, j.dump(2) + "\n");
    } else {
        std::string out = "epsilon: " + fmt_g(r.epsilon) + "\n";
        out += "nearest_eigenvalue: " + fmt_g(r.nearest_eigenvalue) + "\n";
        out += "family: " + family_to_string(r.family) + "\n";
        out += std::string("achieves_half: ") + (r.achieves_half ? "yes" : "no") + "\n";
        out += tolerances_text(o);
        write_out(o.out, out);
    }
    return 0;
}

int cmd_m_matrix(const GraphInput& in, const CommonOpts& o) {
    const Graph g = load_graph(in);
    const double eps = epsilon_via_M(g);  // also enforces connectivity up front
    const SymMatrix m = build_M(g);
    if (o.format == "json") {
        ordered_json j;
        j["schema_version"] = 1;
        j["kind"] = "m_matrix";
        j["n"] = g.n;
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < g.n; ++i) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < g.n; ++k) row.push_back(m(i, k));
            rows.push_back(row);
        }
        j["matrix"] = rows;
        j["epsilon_via_m"] = eps;
        write_out(o.out, j.dump(2) + "\n");
    } else {
        std::string out = "M (" + std::to_string(g.n) + " x " + std::to_string(g.n) + "):\n";
        for (int i = 0; i < g.n; ++i) {
            out += " ";
            for (int k = 0; k < g.n; ++k) out += " " + fmt_g(m(i, k));
            out += "\n";
        }
        out += "epsilon_via_m: " + fmt_g(eps) + "\n";
        write_out(o.out, out);
    }
    return 0;
}

int cmd_rayleigh(const GraphInput& in, const std::vector<double>& values, const CommonOpts& o) {
    const Graph g = load_graph(in);
    const double q = rayleigh_gap_quotient(g, values);
    const double eps = epsilon_direct(g, o.tol_half).epsilon;
    if (o.format == "json") {
        ordered_json j;
        j["schema_version"] = 1;
        j["kind"] = "rayleigh";
        j["n"] = g.n;
        j["quotient"] = q;
        j["sqrt_quotient"] = std::sqrt(q);
        j["epsilon"] = eps;
        write_out(o.out, j.dump(2) + "\n");
    } else {
        std::string out = "quotient: " + fmt_g(q) + "\n";
        out += "sqrt_quotient: " + fmt_g(std::sqrt(q)) + "\n";
        out += "epsilon: " + fmt_g(eps) + "\n";
        write_out(o.out, out);
    }
    return 0;
}

int cmd_neighborhood(const GraphInput& in, int ell, const CommonOpts& o) {
    const Graph g = load_graph(in);
    const NeighborhoodGapCheck chk = neighborhood_gap_check(g, ell);
    const Spectrum s = spectrum_from_values(eigenvalues_sym(neighborhood_laplacian(g, ell)),
                                            o.tol_cluster);
    const double bound = std::ldexp(1.0, -ell);
    if (o.format == "json") {
        ordered_json j;
        j["schema_version"] = 1;
        j["kind"] = "neighborhood";
        j["n"] = g.n;
        j["ell"] = ell;
        ordered_json vals = ordered_json::array();
        for (double v : s.values) vals.push_back(v);
        j["eigenvalues"] = vals;
        j["groups"] = groups_json(s.groups);
        j["min_dist"] = chk.min_dist;
        j["bound"] = bound;
        j["lambda_max"] = chk.lambda_max;
        j["holds"] = chk.holds;
        write_out(o.out, j.dump(2) + "\n");
    } else {
        std::string out = "ell: " + std::to_string(ell) + "\n";
        out += groups_text(s.groups);
        out += "min_dist: " + fmt_g(chk.min_dist) + "\n";
        out += "bound: " + fmt_g(bound) + "\n";
        out += "lambda_max: " + fmt_g(chk.lambda_max) + "\n";
        out += std::string("holds: ") + (chk.holds ? "yes" : "no") + "\n";
        write_out(o.out, out);
    }
    return chk.holds ? 0 : 1;
}

EnumMode mode_from(const std::string& s) {
    return s == "labeled" ? EnumMode::Labeled : EnumMode::IsomorphFree;
}

template <typename Report>
int write_report(const Report& r, const std::string& out) {
    write_out(out, report_to_json(r) + "\n");
    return r.violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normalized-Laplacian spectra and the spectral gap from 1"};
    app.footer(
        "exit codes: 0 ok, 1 verification found violations, 2 usage or parse error,\n"
        "            3 disconnected input, 4 internal numeric failure\n"
        "SPECGAP_THREADS sets the default thread count when --threads is absent.");
    app.require_subcommand(1);
    int exit_code = 0;

    GraphInput g_spectrum, g_gap, g_m, g_ray, g_nbr, g_enc, g_dec;
    CommonOpts o_spectrum, o_gap, o_m, o_ray, o_nbr;
    std::string out_enc, out_dec, out_verify, out_enum;
    std::vector<double> ray_values;
    int nbr_ell = 1;

    auto* sc_spectrum = app.add_subcommand("spectrum", "eigenvalues, multiplicities, epsilon");
    add_graph_input(sc_spectrum, g_spectrum);
    add_common(sc_spectrum, o_spectrum);
    sc_spectrum->callback([&] { exit_code = cmd_spectrum(g_spectrum, o_spectrum); });

    auto* sc_gap = app.add_subcommand("gap", "epsilon, the nearest eigenvalue, family");
    add_graph_input(sc_gap, g_gap);
    add_common(sc_gap, o_gap);
    sc_gap->callback([&] { exit_code = cmd_gap(g_gap, o_gap); });

    auto* sc_m = app.add_subcommand("m-matrix",
                                    "the squared-gap matrix and epsilon via its bottom eigenvalue");
    add_graph_input(sc_m, g_m);
    add_common(sc_m, o_m);
    sc_m->callback([&] { exit_code = cmd_m_matrix(g_m, o_m); });

    auto* sc_ray = app.add_subcommand("rayleigh", "Rayleigh quotient of a vertex function");
    add_graph_input(sc_ray, g_ray);
    add_common(sc_ray, o_ray);
    sc_ray->add_option("--values", ray_values, "comma-separated f(0),f(1),...")
        ->required()
        ->delimiter(',');
    sc_ray->callback([&] { exit_code = cmd_rayleigh(g_ray, ray_values, o_ray); });

    auto* sc_nbr = app.add_subcommand("neighborhood", "ell-step spectrum and the 1/2^ell bound");
    add_graph_input(sc_nbr, g_nbr);
    add_common(sc_nbr, o_nbr);
    sc_nbr->add_option("--ell", nbr_ell, "number of steps (default 1)")
        ->check(CLI::PositiveNumber);
    sc_nbr->callback([&] { exit_code = cmd_neighborhood(g_nbr, nbr_ell, o_nbr); });

    auto* sc_verify = app.add_subcommand("verify", "exhaustive verification suites");
    sc_verify->require_subcommand(1);
    int v_n = 0, v_threads = 0, v_ell = 10;
    bool v_prune = false;
    std::string v_mode = "labeled";

    auto* v_gap = sc_verify->add_subcommand("gap", "max epsilon, extremal witnesses");
    v_gap->add_option("--n", v_n, "vertex count")->required();
    v_gap->add_option("--out", out_verify, "write the JSON report here instead of stdout");
    v_gap->add_option("--threads", v_threads, "worker threads (0 = auto)");
    v_gap->add_flag("--prune", v_prune, "skip eigensolves certified below the half bound");
    v_gap->add_option("--mode", v_mode, "labeled or isomorph-free")
        ->check(CLI::IsMember({"labeled", "isomorph-free"}));
    v_gap->callback([&] {
        exit_code = write_report(
            verify_gap_theorem(v_n, mode_from(v_mode), v_prune, resolve_thread_count(v_threads)),
            out_verify);
    });

    auto* v_deg = sc_verify->add_subcommand("degree-bound", "epsilon vs sqrt(d-1)/d per min degree");
    v_deg->add_option("--n", v_n, "vertex count")->required();
    v_deg->add_option("--out", out_verify, "write the JSON report here instead of stdout");
    v_deg->add_option("--threads", v_threads, "worker threads (0 = auto)");
    v_deg->callback([&] {
        exit_code = write_report(verify_degree_bound(v_n, resolve_thread_count(v_threads)),
                                 out_verify);
    });

    auto* v_nbr = sc_verify->add_subcommand("neighborhood", "ell-step bound for ell = 1..ell_max");
    v_nbr->add_option("--n", v_n, "vertex count")->required();
    v_nbr->add_option("--out", out_verify, "write the JSON report here instead of stdout");
    v_nbr->add_option("--ell", v_ell, "largest step count checked (default 10)");
    v_nbr->add_option("--threads", v_threads, "worker threads (0 = auto)");
    v_nbr->callback([&] {
        exit_code = write_report(
            verify_neighborhood_theorem(v_n, v_ell, resolve_thread_count(v_threads)), out_verify);
    });

    auto* v_eq = sc_verify->add_subcommand("lemma1", "direct epsilon vs the matrix route");
    v_eq->add_option("--n", v_n, "vertex count")->required();
    v_eq->add_option("--out", out_verify, "write the JSON report here instead of stdout");
    v_eq->add_option("--threads", v_threads, "worker threads (0 = auto)");
    v_eq->callback([&] {
        exit_code = write_report(verify_gap_equivalence(v_n, resolve_thread_count(v_threads)),
                                 out_verify);
    });

    auto* sc_enum = app.add_subcommand("enumerate", "CSV of per-graph epsilon over a whole n");
    int e_n = 0;
    double eps_min = 0.0;
    std::string e_mode = "isomorph-free";
    sc_enum->add_option("--n", e_n, "vertex count")->required();
    sc_enum->add_option("--mode", e_mode, "labeled or isomorph-free")
        ->check(CLI::IsMember({"labeled", "isomorph-free"}));
    sc_enum->add_option("--eps-min", eps_min, "only rows with epsilon >= this");
    sc_enum->add_option("--out", out_enum, "write CSV here instead of stdout");
    sc_enum->callback([&] {
        if (out_enum.empty()) {
            enumerate_csv(e_n, mode_from(e_mode), eps_min, std::cout);
        } else {
            std::ofstream f(out_enum);
            if (!f) throw std::invalid_argument("cannot open " + out_enum);
            enumerate_csv(e_n, mode_from(e_mode), eps_min, f);
        }
        exit_code = 0;
    });

    auto* sc_enc = app.add_subcommand("encode", "print the graph6 line for a graph");
    add_graph_input(sc_enc, g_enc);
    sc_enc->add_option("--out", out_enc, "write here instead of stdout");
    sc_enc->callback([&] { write_out(out_enc, emit_graph6(load_graph(g_enc)) + "\n"); });

    auto* sc_dec = app.add_subcommand("decode", "print the edge list for a graph");
    add_graph_input(sc_dec, g_dec);
    sc_dec->add_option("--out", out_dec, "write here instead of stdout");
    sc_dec->callback([&] { write_out(out_dec, emit_edge_list(load_graph(g_dec))); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DisconnectedGraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return exit_code;
}
