#include "kmgm/cli.hpp"

#include "json_io.hpp"
#include "kmgm/consistency.hpp"
#include "kmgm/errors.hpp"
#include "kmgm/graphs.hpp"
#include "kmgm/metrics.hpp"
#include "kmgm/parallel.hpp"
#include "kmgm/solver.hpp"
#include "kmgm/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>

namespace kmgm::cli {
namespace {

using json_io::Json;

struct SynthFlags {
    Index m = 50;
    double p = 0.05;
    Index d = 10;
    Index copies = 10;
    double sigma = 0.0;
    Index max_removed = 0;

    [[nodiscard]] SynthSpec spec(std::uint64_t seed) const {
        return {m, p, d, copies, sigma, max_removed, seed};
    }
};

struct SolverFlags {
    std::optional<Index> rank;
    std::string projector = "matcheig";
    double tol = 1e-2;
    int max_iter = 100;
    double proj_tol = 1e-3;
    int proj_max_iter = 100;
    std::string vertex_kernel = "linear";
    double vertex_gamma = 1.0;
    std::string edge_kernel = "linear";
    double edge_gamma = 1.0;
    Index rff_dim = 100;

    [[nodiscard]] SolverConfig config(Index default_rank) const {
        SolverConfig cfg;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.projector.kind = parse_projector_kind(projector);
        cfg.projector.rank = rank.value_or(default_rank);
        cfg.projector.tol = proj_tol;
        cfg.projector.max_iter = proj_max_iter;
        if (rank && *rank < 1) throw ValidationError("--rank must be >= 1");
        cfg.validate();
        return cfg;
    }

    [[nodiscard]] KernelSpec vertex(std::uint64_t seed) const {
        KernelSpec k{parse_kernel_kind(vertex_kernel), vertex_gamma, rff_dim, seed};
        k.validate();
        return k;
    }

    [[nodiscard]] KernelSpec edge(std::uint64_t seed) const {
        KernelSpec k{parse_kernel_kind(edge_kernel), edge_gamma, rff_dim, seed};
        k.validate();
        return k;
    }
};

struct CommonFlags {
    std::uint64_t seed = 0;
    std::size_t threads = 0;
};

void add_common(CLI::App& cmd, CommonFlags& flags, std::string& config) {
    cmd.add_option("--seed", flags.seed, "Random seed");
    cmd.add_option("--threads", flags.threads, "Worker thread cap (0 = all cores)");
    cmd.add_option("--config", config, "key=value file of default flags; command-line flags win");
}

bool names_flag(const std::string& arg, const std::string& name) {
    const std::string flag = "--" + name;
    return arg == flag || arg.rfind(flag + "=", 0) == 0;
}

// Turns the entries of a --config file into flags placed right after the
// subcommand, ahead of everything given on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args,
                                       const std::vector<std::string>& commands) {
    auto command = args.end();
    std::string path;
    for (auto it = args.begin() + 1; it != args.end(); ++it) {
        if (command == args.end() && std::find(commands.begin(), commands.end(), *it) != commands.end()) {
            command = it;
        } else if (*it == "--config" && it + 1 != args.end()) {
            path = *(it + 1);
        } else if (it->rfind("--config=", 0) == 0) {
            path = it->substr(9);
        }
    }
    if (path.empty() || command == args.end()) return args;

    std::vector<std::string> injected;
    for (const CLI::ConfigItem& item : CLI::ConfigINI().from_file(path)) {
        if (item.name == "++" || item.name == "--" || item.name == "config") continue;
        if (!item.parents.empty() && item.parents.front() != *command) continue;
        const bool given = std::any_of(args.begin(), args.end(),
                                       [&](const std::string& a) { return names_flag(a, item.name); });
        if (given) continue;
        std::string value;
        for (const auto& input : item.inputs) value += (value.empty() ? "" : ",") + input;
        injected.push_back("--" + item.name + "=" + value);
    }
    args.insert(command + 1, injected.begin(), injected.end());
    return args;
}

void add_synth(CLI::App& cmd, SynthFlags& flags) {
    cmd.add_option("--m", flags.m, "Vertices per graph")->capture_default_str();
    cmd.add_option("--p", flags.p, "Edge probability")->capture_default_str();
    cmd.add_option("--d", flags.d, "Attribute dimension")->capture_default_str();
    cmd.add_option("--copies", flags.copies, "Total number of graphs")->capture_default_str();
    cmd.add_option("--sigma", flags.sigma, "Attribute noise standard deviation")->capture_default_str();
    cmd.add_option("--max-removed", flags.max_removed, "Maximal removed vertices per copy")
        ->capture_default_str();
}

void add_solver(CLI::App& cmd, SolverFlags& flags) {
    cmd.add_option("--rank", flags.rank, "Universe rank (default: m)");
    cmd.add_option("--projector", flags.projector, "matcheig|gpow|msync")->capture_default_str();
    cmd.add_option("--tol", flags.tol, "Power iteration tolerance")->capture_default_str();
    cmd.add_option("--max-iter", flags.max_iter, "Power iteration cap")->capture_default_str();
    cmd.add_option("--proj-tol", flags.proj_tol, "GPow tolerance")->capture_default_str();
    cmd.add_option("--proj-max-iter", flags.proj_max_iter, "GPow iteration cap")->capture_default_str();
    cmd.add_option("--vertex-kernel", flags.vertex_kernel, "linear|gaussian")->capture_default_str();
    cmd.add_option("--vertex-gamma", flags.vertex_gamma, "Gaussian vertex bandwidth")
        ->capture_default_str();
    cmd.add_option("--edge-kernel", flags.edge_kernel, "linear|gaussian")->capture_default_str();
    cmd.add_option("--edge-gamma", flags.edge_gamma, "Gaussian edge bandwidth")->capture_default_str();
    cmd.add_option("--rff-dim", flags.rff_dim, "Random Fourier feature count")->capture_default_str();
}

struct LoadedBulk {
    BulkPermutation matrix;
    std::optional<GraphCollection> dataset;
};

// Reads `bulk_permutation` from a result document or `ground_truth` from a dataset.
LoadedBulk load_bulk(const std::string& path) {
    const Json doc = json_io::parse_document(json_io::read_text_file(path));
    if (!doc.is_object()) throw ParseError(path + ": expected a JSON object");
    if (doc.contains("graphs")) {
        GraphCollection c = collection_from_json(json_io::read_text_file(path));
        if (!c.ground_truth) throw ValidationError(path + ": dataset has no ground_truth");
        BulkPermutation truth = *c.ground_truth;
        return {std::move(truth), std::move(c)};
    }
    const BulkShape shape{json_io::require_count(doc, "n", ""), json_io::require_count(doc, "m", "")};
    if (shape.n < 1 || shape.m < 1) throw ValidationError(path + ": n and m must be >= 1");
    return {json_io::bulk_from_json(json_io::require(doc, "bulk_permutation", ""), shape,
                                    "bulk_permutation"),
            std::nullopt};
}

// Like load_bulk, but keeps malformed blocks so consistency can be reported.
BulkPermutation load_raw_bulk(const std::string& path) {
    const Json doc = json_io::parse_document(json_io::read_text_file(path));
    if (!doc.is_object()) throw ParseError(path + ": expected a JSON object");
    const BulkShape shape{json_io::require_count(doc, "n", ""), json_io::require_count(doc, "m", "")};
    const char* field = doc.contains("bulk_permutation") ? "bulk_permutation" : "ground_truth";
    const Json& rows = json_io::require(doc, field, "");
    BulkPermutation x(shape.n, shape.m);
    if (!rows.is_array() || static_cast<Index>(rows.size()) != x.size()) {
        throw ValidationError(path + ": field '" + field + "' must have " +
                              std::to_string(x.size()) + " rows");
    }
    for (Index r = 0; r < x.size(); ++r) {
        const Json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != x.size()) {
            throw ValidationError(path + ": row " + std::to_string(r) + " has the wrong length");
        }
        for (Index c = 0; c < x.size(); ++c) {
            const Json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number_integer() || (v != 0 && v != 1)) {
                throw ParseError(path + ": entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                 ") is not 0 or 1");
            }
            x.set(r, c, v == 1);
        }
    }
    return x;
}

Json scores_json(const Scores& s) {
    return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

int cmd_synth(const SynthFlags& flags, const CommonFlags& common, const std::string& output,
              std::ostream& out) {
    const GraphCollection c = generate(flags.spec(common.seed));
    save_collection(c, output);
    out << "wrote " << output << " (n=" << c.n() << ", m=" << c.m() << ")\n";
    return kExitOk;
}

int cmd_match(const SolverFlags& flags, const CommonFlags& common, const std::string& input,
              const std::string& output, std::ostream& out) {
    const GraphCollection c = load_collection(input);
    const SolverConfig config = flags.config(c.m());
    const KernelSpec vertex = flags.vertex(common.seed);
    const KernelSpec edge = flags.edge(common.seed);

    const auto start = std::chrono::steady_clock::now();
    const SolveResult result = solve(c, vertex, edge, config);
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

    Json summary;
    summary["spec_version"] = json_io::kSpecVersion;
    summary["iterations"] = result.trace.iterations_run;
    summary["converged"] = result.trace.converged;
    summary["objective_trace"] = result.trace.objective_values;
    summary["wall_time_ms"] = std::round(elapsed.count() * 1000.0) / 1000.0;
    summary["projector"] = to_string(config.projector.kind);
    summary["rank"] = config.projector.rank;
    if (c.ground_truth) {
        summary["scores"] = scores_json(score(strip_dummy_matches(result.matching, c), *c.ground_truth));
    }

    Json doc;
    doc["spec_version"] = json_io::kSpecVersion;
    doc["n"] = c.n();
    doc["m"] = c.m();
    doc["summary"] = summary;
    doc["bulk_permutation"] = json_io::bulk_to_json(result.matching);
    json_io::write_text_file(output, json_io::pretty(doc));

    out << summary.dump() << "\n";
    if (c.ground_truth) {
        char line[64];
        std::snprintf(line, sizeof line, "f1=%.6f\n", summary["scores"]["f1"].get<double>());
        out << line;
    }
    return kExitOk;
}

int cmd_score(const std::string& result_path, const std::string& truth_path, bool strip,
              std::ostream& out) {
    const LoadedBulk estimate = load_bulk(result_path);
    const LoadedBulk truth = load_bulk(truth_path);
    BulkPermutation x = estimate.matrix;
    if (strip && truth.dataset) x = strip_dummy_matches(x, *truth.dataset);
    const Scores s = score(x, truth.matrix);
    char line[128];
    std::snprintf(line, sizeof line, "%.6f,%.6f,%.6f\n", s.precision, s.recall, s.f1);
    out << "precision,recall,f1\n" << line;
    return kExitOk;
}

int cmd_check(const std::string& input, std::size_t samples, std::uint64_t seed, std::ostream& out) {
    const BulkPermutation x = load_raw_bulk(input);
    const ConsistencyReport report =
        samples > 0 ? is_cycle_consistent_sampled(x, samples, seed) : is_cycle_consistent(x);
    if (report.consistent) {
        out << "consistent\n";
        return kExitOk;
    }
    const Triple t = *report.violation;
    out << "inconsistent: triple (" << t.i << ", " << t.j << ", " << t.l << "): " << report.reason
        << "\n";
    return kExitValidation;
}

int cmd_sweep(const SynthFlags& synth, const SolverFlags& solver, const CommonFlags& common,
              std::vector<double> sigmas, const std::vector<double>& variances,
              const std::vector<Index>& removed_list, int repeats, const std::string& output,
              std::ostream& out) {
    for (double v : variances) {
        if (!(v >= 0.0)) throw ValidationError("--variances must be >= 0");
        sigmas.push_back(std::sqrt(v));
    }
    if (sigmas.empty()) sigmas.push_back(synth.sigma);

    SweepOptions options;
    options.repeats = repeats;
    options.vertex_kernel = solver.vertex(common.seed);
    options.edge_kernel = solver.edge(common.seed);
    options.solver = solver.config(synth.m);
    options.rank = options.solver.projector.rank;

    const SynthSpec spec = synth.spec(common.seed);
    const auto rows = removed_list.empty() ? noise_sweep(spec, sigmas, options)
                                           : removal_sweep(spec, removed_list, sigmas, options);
    const std::string csv = sweep_to_csv(rows);
    if (output.empty() || output == "-") {
        out << csv;
    } else {
        json_io::write_text_file(output, csv);
        out << "wrote " << output << " (" << rows.size() << " rows)\n";
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kernelized multigraph matching", "kmgm"};
    app.require_subcommand(1);
    // A flag repeated through --config and the command line keeps the later value.
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    CommonFlags common;
    std::string config;
    SynthFlags synth_flags;
    SolverFlags solver_flags;
    std::string input;
    std::string output;

    auto* synth = app.add_subcommand("synth", "Generate a synthetic Erdos-Renyi dataset");
    add_common(*synth, common, config);
    add_synth(*synth, synth_flags);
    synth->add_option("-o,--output", output, "Dataset file")->required();

    auto* match = app.add_subcommand("match", "Match every graph of a dataset");
    add_common(*match, common, config);
    add_solver(*match, solver_flags);
    match->add_option("-i,--input", input, "Dataset file")->required();
    match->add_option("-o,--output", output, "Result file")->required();

    std::string truth_path;
    bool no_strip = false;
    auto* score_cmd = app.add_subcommand("score", "Precision, recall and F1 against a reference");
    score_cmd->add_option("--config", config, "key=value file of default flags; command-line flags win");
    score_cmd->add_option("-r,--result", input, "Result (or dataset) file")->required();
    score_cmd->add_option("-t,--truth", truth_path, "Dataset or result file")->required();
    score_cmd->add_flag("--no-strip", no_strip, "Keep matches to dummy vertices");

    std::size_t samples = 0;
    auto* check = app.add_subcommand("check-consistency", "Check cycle consistency of a bulk permutation");
    add_common(*check, common, config);
    check->add_option("-i,--input", input, "Result or dataset file")->required();
    check->add_option("--samples", samples, "Check this many random triples (0 = all)");

    std::vector<double> sigmas;
    std::vector<double> variances;
    std::vector<Index> removed_list;
    int repeats = 20;
    auto* sweep = app.add_subcommand("sweep", "F1 of solver and vertex-only baseline over a noise grid");
    add_common(*sweep, common, config);
    add_synth(*sweep, synth_flags);
    add_solver(*sweep, solver_flags);
    sweep->add_option("--sigmas", sigmas, "Noise standard deviations")
        ->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sweep->add_option("--variances", variances, "Noise variances")
        ->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sweep->add_option("--max-removed-list", removed_list, "Removal budgets")
        ->delimiter(',')
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sweep->add_option("--repeats", repeats, "Repetitions per grid point")->capture_default_str();
    sweep->add_option("-o,--output", output, "CSV file (default: stdout)");

    try {
        std::vector<std::string> names;
        for (const CLI::App* sub : app.get_subcommands({})) names.push_back(sub->get_name());
        const std::vector<std::string> full = expand_config(args, names);
        app.parse(std::vector<std::string>(full.rbegin(), full.rend() - 1));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        set_num_threads(common.threads);
        if (*synth) return cmd_synth(synth_flags, common, output, out);
        if (*match) return cmd_match(solver_flags, common, input, output, out);
        if (*score_cmd) return cmd_score(input, truth_path, !no_strip, out);
        if (*check) return cmd_check(input, samples, common.seed, out);
        if (*sweep) {
            return cmd_sweep(synth_flags, solver_flags, common, sigmas, variances, removed_list,
                             repeats, output, out);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitRuntime;
}

}  // namespace kmgm::cli
