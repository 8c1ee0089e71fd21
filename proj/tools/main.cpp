#include "cli_support.hpp"

#include "ctheta/apps.hpp"
#include "ctheta/errors.hpp"
#include "ctheta/theta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ctheta;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

constexpr const char* kFormats = R"(File formats:
  Cayley table (group spec table:FILE)
      <order>
      <order rows of <order> element indices; row a lists a*b for b = 0..order-1>
      element 0 must be the identity.
  Character table (JSON)
      {"format": "character-table", "group_order": N, "exact": true|false,
       "class_sizes": [...], "class_labels": [...], "irrep_labels": [...],
       "degrees": [...], "entries": [[e, ...], ...]}
      entries are "p/q" strings when exact, [re, im] pairs otherwise; rows are
      irreps, columns follow class_labels (matched by label, else by position).
  Irrep matrices (JSON)
      {"format": "irrep-matrices", "group_order": N,
       "irreps": [{"label": s, "degree": d, "matrices": [[[re, im] x d*d] x N]}]}
  Graph
      vertices <m> edges <k>
      <k lines "u v", 0-based>
  Action
      generators <points> <count>       or   table <group order> <points>
      <count lines of <points> images>       <order lines of <points> images>
  Function (bochner)
      class|element
      <one value per class or per element: p/q or decimal>
  Connection elements file (elements:FILE)
      whitespace- or comma-separated element indices.
  SDPA sparse (.dat-s) output
      '*' comment lines, m, block count, block sizes, c_1..c_m, then lines
      "matno block i j value" with i <= j; maximize F0.Y s.t. Fi.Y = ci, Y psd.
)";

struct Report {
    json doc;
    std::optional<std::string> path;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void input(const std::string& name, const std::string& file) { doc["inputs"][name] = {{"path", file}, {"fnv1a64", cli::file_digest(file)}}; }

    void write() {
        if (!path) return;
        doc["schema"] = 1;
        doc["version"] = "0.1.0";
        doc["runtime_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        std::ofstream out(*path);
        if (!out) throw IoError("cannot write report '" + *path + "'");
        out << doc.dump(2) << '\n';
    }
};

json scalar_json(const Scalar& s) {
    if (s.is_exact()) return s.to_string();
    return s.real();
}

std::string decimal(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::optional<std::chrono::duration<double>> budget_of(double seconds) {
    if (seconds <= 0) return std::nullopt;
    return std::chrono::duration<double>(seconds);
}

struct GroupArgs {
    std::string group;
    std::string connection;
    std::optional<std::string> chartable;
};

ConnectionSet load_connection(const GroupArgs& args, Report& report) {
    if (args.group.rfind("table:", 0) == 0) report.input("group", args.group.substr(6));
    if (args.connection.rfind("elements:", 0) == 0 && args.connection.size() > 9 && args.connection[9] != '{') {
        report.input("connection", args.connection.substr(9));
    }
    const FiniteGroup group = cli::parse_group_spec(args.group);
    return cli::parse_connection_spec(args.connection, group);
}

int run_theta(const GroupArgs& args, bool want_exact, bool want_float, Report& report) {
    const ConnectionSet x = load_connection(args, report);
    if (args.chartable) report.input("chartable", *args.chartable);
    auto table = cli::character_table_for(x.group(), args.chartable);
    if (!table) throw InvalidArgument("no built-in character table for this group; pass --chartable FILE");
    if (want_exact && !table->exact()) throw InvalidArgument("character table has non-rational entries; use --float");
    const bool exact = want_float ? false : table->exact();
    const CharacterTable used = exact ? *table : (table->exact() ? approximate_table(*table) : *table);
    const CayleyGraphSpec spec(x);
    const ThetaCertificate cert = solve_theta(spec, used);

    if (cert.exact) {
        std::cout << "theta = " << cert.objective.to_string() << " (exact)\n";
    } else {
        std::cout << "theta ≈ " << decimal(cert.objective.real(), 7) << " (float)\n";
    }
    std::cout << "lp: " << cert.lp_rows << " rows x " << cert.lp_cols << " columns\n";
    for (std::size_t pi = 0; pi < cert.a.size(); ++pi) {
        const std::string v = cert.exact ? cert.a[pi].to_string() : decimal(cert.a[pi].real(), 9);
        std::cout << "a[" << cert.irrep_labels[pi] << "] = " << v << '\n';
    }
    report.doc["mode"] = exact ? "exact" : "float";
    std::ostringstream certificate;
    write_certificate_json(certificate, spec, cert);
    report.doc["results"] = json::parse(certificate.str());
    return kExitOk;
}

int run_alpha(const GroupArgs& args, const std::optional<std::string>& graph_file, double budget, Report& report) {
    Graph graph;
    if (graph_file) {
        report.input("graph", *graph_file);
        std::ifstream in(*graph_file);
        if (!in) throw IoError("cannot open '" + *graph_file + "'");
        graph = read_graph(in);
    } else {
        if (args.group.empty() || args.connection.empty()) throw InvalidArgument("alpha needs --graph or --group with --connection");
        graph = build_cayley(load_connection(args, report));
    }
    const AlphaResult result = alpha(graph, budget_of(budget));
    report.doc["mode"] = "exact";
    report.doc["results"] = {{"exact", result.exact}, {"lower", result.lower}, {"upper", result.upper},
                             {"witness", result.witness}, {"vertices", graph.vertex_count()}};
    std::ostringstream witness;
    for (std::size_t i = 0; i < result.witness.size(); ++i) witness << (i ? " " : "") << result.witness[i];
    if (result.exact) {
        std::cout << "alpha = " << result.lower << '\n';
        std::cout << "witness: " << witness.str() << '\n';
        return kExitOk;
    }
    std::cout << "alpha in [" << result.lower << ", " << result.upper << "] (budget exhausted)\n";
    std::cout << "witness: " << witness.str() << '\n';
    return kExitBudget;
}

int run_efp_table(int n_max, const std::optional<std::string>& csv, int jobs, bool use_float, double budget, Report& report) {
    EfpTableOptions options;
    options.n_max = n_max;
    options.exact = !use_float;
    options.jobs = jobs;
    options.budget = budget_of(budget);
    options.on_cell = [](const EfpCell& cell) {
        std::cerr << "cell n=" << cell.n << " k=" << cell.k;
        if (cell.computed) {
            std::cerr << " theta=" << cell.theta->to_string() << " max=" << cell.conjectured_max
                      << (cell.checkmark ? " check" : "");
        } else {
            std::cerr << " gap: " << cell.error;
        }
        std::cerr << " (" << decimal(cell.runtime_ms, 1) << " ms)\n";
    };
    const auto cells = efp_table(options);
    write_efp_grid(std::cout, cells);
    if (csv) {
        std::ofstream out(*csv);
        if (!out) throw IoError("cannot write '" + *csv + "'");
        write_efp_csv(out, cells);
    }
    json rows = json::array();
    bool gaps = false;
    for (const auto& cell : cells) {
        gaps = gaps || !cell.computed;
        json row = {{"n", cell.n}, {"k", cell.k}, {"computed", cell.computed}};
        if (cell.computed) {
            row["theta"] = scalar_json(*cell.theta);
            row["conjectured_max"] = cell.conjectured_max;
            row["maximizing_i"] = cell.maximizing_i;
            row["checkmark"] = cell.checkmark;
            row["lp_rows"] = cell.lp_rows;
            row["lp_cols"] = cell.lp_cols;
        } else {
            row["error"] = cell.error;
        }
        rows.push_back(row);
    }
    report.doc["mode"] = use_float ? "float" : "exact";
    report.doc["results"] = {{"cells", rows}};
    return gaps ? kExitBudget : kExitOk;
}

int run_export_sdpa(const GroupArgs& args, const std::string& formulation, const std::string& out,
                    const std::optional<std::string>& irreps_file, Report& report) {
    const ConnectionSet x = load_connection(args, report);
    const CayleyGraphSpec spec(x);
    SdpInstance sdp;
    if (formulation == "A") {
        sdp = build_sdp_A(spec);
    } else if (formulation == "C") {
        if (irreps_file) report.input("irreps", *irreps_file);
        auto irreps = cli::irreps_for(x.group(), irreps_file);
        if (!irreps) throw InvalidArgument("formulation C needs --irreps FILE for this group");
        sdp = build_sdp_C(spec, *irreps);
    } else {
        throw InvalidArgument("formulation must be A or C");
    }
    export_sdpa(sdp, out);
    std::cout << "wrote " << out << ": " << sdp.block_sizes.size() << " block(s) of size";
    for (auto s : sdp.block_sizes) std::cout << ' ' << s;
    std::cout << ", " << sdp.constraints.size() << " constraints\n";
    report.doc["mode"] = "float";
    report.doc["results"] = {{"formulation", formulation}, {"block_sizes", sdp.block_sizes},
                             {"constraints", sdp.constraints.size()}, {"path", out}};
    return kExitOk;
}

int run_chartable(const std::string& group_spec, const std::optional<std::string>& out, Report& report) {
    const FiniteGroup group = cli::parse_group_spec(group_spec);
    auto table = cli::character_table_for(group, std::nullopt);
    if (!table) throw InvalidArgument("no built-in character table for '" + group_spec + "'");
    if (out) {
        std::ofstream file(*out);
        if (!file) throw IoError("cannot write '" + *out + "'");
        write_character_table(file, *table);
        std::cout << "wrote " << *out << ": " << table->irrep_count() << " irreps\n";
    } else {
        write_character_table(std::cout, *table);
    }
    report.doc["mode"] = table->exact() ? "exact" : "float";
    report.doc["results"] = {{"irreps", table->irrep_count()}, {"exact", table->exact()}};
    return kExitOk;
}

int run_chartable_validate(const std::string& file, const std::string& group_spec, Report& report) {
    report.input("chartable", file);
    const FiniteGroup group = cli::parse_group_spec(group_spec);
    const CharacterTable table = read_character_table_file(file, group);
    std::cout << "valid: " << table.irrep_count() << " irreps, " << (table.exact() ? "exact" : "floating-point")
              << " entries, orthogonality and class structure constants check out\n";
    report.doc["mode"] = table.exact() ? "exact" : "float";
    report.doc["results"] = {{"valid", true}, {"irreps", table.irrep_count()}};
    return kExitOk;
}

int run_bochner(const std::string& group_spec, const std::string& function_file, const std::optional<std::string>& chartable,
                const std::optional<std::string>& irreps_file, Report& report) {
    report.input("function", function_file);
    const FiniteGroup group = cli::parse_group_spec(group_spec);
    const GroupFunction f = cli::read_function_file(function_file, group);
    PositivityResult result;
    std::vector<std::string> labels;
    if (f.is_class_function() && !irreps_file) {
        auto table = cli::character_table_for(group, chartable);
        if (!table) throw InvalidArgument("no character table for this group; pass --chartable or --irreps");
        labels = table->irrep_labels();
        result = is_positive_type(f.to_class_function(), *table);
    } else {
        auto irreps = cli::irreps_for(group, irreps_file);
        if (!irreps) throw NeedsIrreps("function is not a class function; pass --irreps FILE");
        for (const auto& irrep : irreps->irreps) labels.push_back(irrep.label);
        result = is_positive_type(f, *irreps);
    }
    bool exact = true;
    for (const auto& v : f.values) exact = exact && v.is_exact();
    if (result.positive) {
        std::cout << "positive type: yes\n";
    } else {
        std::cout << "positive type: no (irrep " << labels[*result.irrep] << ", " << result.witness.to_string() << ")\n";
    }
    report.doc["mode"] = exact ? "exact" : "float";
    report.doc["results"] = {{"positive", result.positive}};
    if (!result.positive) {
        report.doc["results"]["irrep"] = labels[*result.irrep];
        report.doc["results"]["witness"] = result.witness.to_string();
    }
    return kExitOk;
}

int run_blowup(const std::string& graph_file, const std::string& action_file, const std::optional<std::string>& group_spec,
               unsigned base, bool with_alpha, double budget, Report& report) {
    report.input("graph", graph_file);
    report.input("action", action_file);
    std::ifstream graph_in(graph_file);
    if (!graph_in) throw IoError("cannot open '" + graph_file + "'");
    const Graph graph = read_graph(graph_in);
    std::ifstream action_in(action_file);
    if (!action_in) throw IoError("cannot open '" + action_file + "'");
    std::optional<FiniteGroup> group;
    if (group_spec) group = cli::parse_group_spec(*group_spec);
    const GroupAction action = read_action(action_in, group);
    const ConnectionSet x = blowup_connection(action, graph, base);

    std::cout << "group order " << action.group().order() << ", |X| = " << x.size() << '\n';
    std::cout << "X =";
    for (Element e : x.elements()) std::cout << ' ' << e;
    std::cout << '\n';
    report.doc["mode"] = "exact";
    report.doc["results"] = {{"group_order", action.group().order()}, {"connection", x.elements()}};
    if (!with_alpha) return kExitOk;

    const auto limit = budget_of(budget);
    const AlphaResult g = alpha(graph, limit);
    const AlphaResult cay = alpha(build_cayley(x), limit);
    report.doc["results"]["alpha_graph"] = {{"exact", g.exact}, {"lower", g.lower}, {"upper", g.upper}};
    report.doc["results"]["alpha_cayley"] = {{"exact", cay.exact}, {"lower", cay.lower}, {"upper", cay.upper}};
    if (!g.exact || !cay.exact) {
        std::cout << "alpha(graph) in [" << g.lower << ", " << g.upper << "], alpha(Cay) in [" << cay.lower << ", "
                  << cay.upper << "] (budget exhausted)\n";
        return kExitBudget;
    }
    const bool holds = g.lower * action.group().order() == graph.vertex_count() * cay.lower;
    std::cout << "alpha(graph) = " << g.lower << ", alpha(Cay) = " << cay.lower << ", alpha*|G| = |V|*alpha(Cay): "
              << (holds ? "holds" : "FAILS") << '\n';
    report.doc["results"]["blowup_identity"] = holds;
    return holds ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lovász theta of Cayley graphs: exact character LP, SDP export, independence numbers"};
    app.footer(kFormats);
    app.require_subcommand(1);
    std::optional<std::string> json_out;
    unsigned long seed = 0;
    app.add_option("--json", json_out, "write a JSON run report (schema 1) to this file");
    app.add_option("--seed", seed, "seed for randomized components (none in core paths)")->capture_default_str();

    GroupArgs group_args;
    auto add_group_options = [&](CLI::App* sub, bool required) {
        auto* g = sub->add_option("--group", group_args.group, "sym:n | cyclic:m1[,m2,...] | gl:q,n | table:FILE");
        auto* c = sub->add_option("--connection", group_args.connection,
                                  "efp:k | gl-rank:k | classes:i,j,... | elements:{a,b,...} | elements:FILE | empty");
        if (required) {
            g->required();
            c->required();
        }
    };

    auto* theta = app.add_subcommand("theta", "theta via the character LP (connection set must be conjugation-closed)");
    add_group_options(theta, true);
    bool want_exact = false, want_float = false;
    auto* exact_flag = theta->add_flag("--exact", want_exact, "exact rational arithmetic (default when the table is rational)");
    theta->add_flag("--float", want_float, "double precision")->excludes(exact_flag);
    theta->add_option("--chartable", group_args.chartable, "character table JSON for groups without a built-in table");

    auto* alpha_cmd = app.add_subcommand("alpha", "independence number by branch-and-bound");
    add_group_options(alpha_cmd, false);
    std::optional<std::string> graph_file;
    double budget = 0;
    alpha_cmd->add_option("--graph", graph_file, "graph file instead of --group/--connection");
    alpha_cmd->add_option("--budget", budget, "time budget in seconds (0 = none)");

    auto* efp = app.add_subcommand("efp-table", "theta of Cay(S_n, X_{n,k}) against the conjectured maximum");
    int n_max = 8, jobs = 1;
    std::optional<std::string> csv;
    bool efp_float = false;
    efp->add_option("--nmax", n_max, "largest n")->capture_default_str();
    efp->add_option("--csv", csv, "write CSV to this file");
    efp->add_option("--jobs", jobs, "cells computed in parallel")->capture_default_str();
    efp->add_flag("--float", efp_float, "double precision (never produces check marks)");
    efp->add_option("--budget", budget, "time budget in seconds (0 = none)");

    auto* sdpa = app.add_subcommand("export-sdpa", "write formulation A or C in SDPA sparse format");
    add_group_options(sdpa, true);
    std::string formulation, sdpa_out;
    std::optional<std::string> irreps_file;
    sdpa->add_option("--formulation", formulation, "A (matrix) or C (irrep blocks)")->required()->check(CLI::IsMember({"A", "C"}));
    sdpa->add_option("--out", sdpa_out, "output .dat-s path")->required();
    sdpa->add_option("--irreps", irreps_file, "irrep matrices JSON (built in for abelian groups and S_n, n <= 3)");

    auto* chartable = app.add_subcommand("chartable", "print or validate character tables");
    std::string chartable_group;
    std::optional<std::string> chartable_out;
    chartable->add_option("--group", chartable_group, "sym:n or cyclic:...");
    chartable->add_option("--out", chartable_out, "write JSON to this file");
    auto* validate = chartable->add_subcommand("validate", "check a character table file against a group");
    std::string validate_file, validate_group;
    validate->add_option("file", validate_file, "character table JSON")->required();
    validate->add_option("--group", validate_group, "group spec the table belongs to")->required();

    auto* bochner = app.add_subcommand("bochner", "decide whether a function is of positive type");
    std::string bochner_group, function_file;
    std::optional<std::string> bochner_table, bochner_irreps;
    bochner->add_option("--group", bochner_group, "group spec")->required();
    bochner->add_option("--function", function_file, "function file")->required();
    bochner->add_option("--chartable", bochner_table, "character table JSON");
    bochner->add_option("--irreps", bochner_irreps, "irrep matrices JSON");

    auto* blowup = app.add_subcommand("blowup", "Cayley graph blowup of a vertex-transitive graph");
    std::string blowup_graph, action_file;
    std::optional<std::string> blowup_group;
    unsigned base = 0;
    bool with_alpha = false;
    blowup->add_option("--graph", blowup_graph, "graph file")->required();
    blowup->add_option("--action", action_file, "action file")->required();
    blowup->add_option("--group", blowup_group, "group spec for table-form actions");
    blowup->add_option("--base", base, "base vertex")->capture_default_str();
    blowup->add_flag("--alpha", with_alpha, "also compute both independence numbers");
    blowup->add_option("--budget", budget, "time budget in seconds per alpha (0 = none)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    Report report;
    report.path = json_out;
    json command = json::array();
    for (int i = 1; i < argc; ++i) command.push_back(argv[i]);
    report.doc["command"] = command;
    report.doc["seed"] = seed;

    try {
        int code = kExitOk;
        if (theta->parsed()) {
            code = run_theta(group_args, want_exact, want_float, report);
        } else if (alpha_cmd->parsed()) {
            code = run_alpha(group_args, graph_file, budget, report);
        } else if (efp->parsed()) {
            code = run_efp_table(n_max, csv, jobs, efp_float, budget, report);
        } else if (sdpa->parsed()) {
            code = run_export_sdpa(group_args, formulation, sdpa_out, irreps_file, report);
        } else if (validate->parsed()) {
            code = run_chartable_validate(validate_file, validate_group, report);
        } else if (chartable->parsed()) {
            if (chartable_group.empty()) throw InvalidArgument("chartable needs --group (or the validate subcommand)");
            code = run_chartable(chartable_group, chartable_out, report);
        } else if (bochner->parsed()) {
            code = run_bochner(bochner_group, function_file, bochner_table, bochner_irreps, report);
        } else if (blowup->parsed()) {
            code = run_blowup(blowup_graph, action_file, blowup_group, base, with_alpha, budget, report);
        }
        report.doc["exit_code"] = code;
        report.write();
        return code;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}
