// hlouvain - command-line front end for hypergraph community detection
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hlouvain/bayesopt.hpp"
#include "hlouvain/habcd.hpp"
#include "hlouvain/hlouvain.hpp"
#include "hlouvain/io.hpp"
#include "hlouvain/metrics.hpp"
#include "hlouvain/modularity.hpp"
#include "hlouvain/parallel.hpp"

namespace {

using nlohmann::json;
using namespace hlouvain;

// %.9g with a guaranteed decimal point, so whole numbers read as reals.
std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    std::string s = buf;
    if (s.find_first_of(".einan") == std::string::npos) {
        s += ".0";
    }
    return s;
}

// Exposes JSON files to CLI11's config machinery. Top-level keys either name
// global options or hold one object per subcommand.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json data = json::parse(input);
        if (!data.is_object()) {
            throw CLI::FileError("config root must be a JSON object");
        }
        std::vector<CLI::ConfigItem> items;
        auto emit = [&](std::vector<std::string> parents, const std::string& name,
                        const json& value) {
            CLI::ConfigItem item;
            item.parents = std::move(parents);
            item.name = name;
            if (value.is_array()) {
                for (const auto& element : value) {
                    item.inputs.push_back(element.is_string() ? element.get<std::string>()
                                                              : element.dump());
                }
            } else if (value.is_string()) {
                item.inputs.push_back(value.get<std::string>());
            } else {
                item.inputs.push_back(value.dump());
            }
            items.push_back(std::move(item));
        };
        for (const auto& [key, value] : data.items()) {
            if (value.is_object()) {
                for (const auto& [inner_key, inner_value] : value.items()) {
                    emit({key}, inner_key, inner_value);
                }
            } else {
                emit({}, key, value);
            }
        }
        return items;
    }
};

struct EtaFlags {
    double tau = 2.0;
    bool strict = false;
    std::string eta_file;
    double resolution = 1.0;
    std::string scheme = "total";
};

void add_eta_flags(CLI::App* cmd, EtaFlags& flags) {
    auto* tau = cmd->add_option("--tau", flags.tau,
                                "Exponent of the homogeneity weights (c/d)^tau");
    auto* strict = cmd->add_flag("--strict", flags.strict,
                                 "Reward only fully homogeneous edges");
    auto* file = cmd->add_option("--eta-file", flags.eta_file,
                                 "JSON file with custom homogeneity weights per edge size");
    tau->excludes(strict);
    tau->excludes(file);
    strict->excludes(file);
    cmd->add_option("--resolution", flags.resolution, "Scale of the degree-tax term")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--scheme", flags.scheme, "2-section weighting: total or degree")
        ->check(CLI::IsMember({"total", "degree"}));
}

std::vector<std::vector<double>> load_weight_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    json data = json::parse(in, nullptr, false);
    if (data.is_discarded() || !data.is_object()) {
        throw ParseError(path + ": expected a JSON object mapping edge size to weights");
    }
    std::vector<std::vector<double>> table;
    for (const auto& [key, value] : data.items()) {
        std::size_t d = 0;
        try {
            d = static_cast<std::size_t>(std::stoul(key));
        } catch (...) {
            throw ParseError(path + ": key '" + key + "' is not an edge size");
        }
        if (d < 2 || !value.is_array()) {
            throw ParseError(path + ": entry '" + key + "' must map a size >= 2 to an array");
        }
        if (table.size() <= d) {
            table.resize(d + 1);
        }
        table[d] = value.get<std::vector<double>>();
    }
    return table;
}

ObjectiveConfig make_objective(const EtaFlags& flags, std::size_t max_edge_size) {
    ObjectiveConfig cfg;
    std::size_t d_max = std::max<std::size_t>(32, max_edge_size);
    if (!flags.eta_file.empty()) {
        cfg.eta = EtaWeights::custom(load_weight_table(flags.eta_file));
        if (cfg.eta.d_max() < max_edge_size) {
            throw std::invalid_argument("custom eta table does not cover the largest edge size");
        }
    } else if (flags.strict) {
        cfg.eta = EtaWeights::strict(d_max);
    } else {
        cfg.eta = EtaWeights::from_tau(flags.tau, d_max);
    }
    cfg.resolution = flags.resolution;
    cfg.scheme = flags.scheme == "degree" ? TwoSectionScheme::degree_preserving
                                          : TwoSectionScheme::total_weight;
    return cfg;
}

std::string default_output(const std::string& input, const char* suffix) {
    return input + suffix;
}

// ---------------------------------------------------------------- cluster --

struct ClusterArgs {
    std::string input;
    EtaFlags eta;
    double p_b = 0.5;
    double p_c = 0.5;
    std::size_t runs = 1;
    std::string ending = "supernode";
    std::string out;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
};

int run_cluster(const ClusterArgs& args) {
    HypergraphFile file = read_hypergraph_file(args.input);
    if (file.dropped_edges > 0) {
        std::cerr << "note: dropped " << file.dropped_edges << " edge(s) of size < 2\n";
    }
    RunConfig cfg;
    cfg.objective = make_objective(args.eta, file.graph.max_edge_size());
    cfg.policy = AlphaPolicy{args.p_b, args.p_c};
    cfg.ending =
        args.ending == "local" ? Ending::local_opt_original : Ending::supernode_default;

    std::vector<RunResult> results(args.runs);
    parallel_for(args.runs, args.threads, [&](std::size_t i) {
        RunConfig rc = cfg;
        rc.seed = args.seed + i;
        results[i] = h_louvain(file.graph, rc);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (results[i].q_h > results[best].q_h) {
            best = i;
        }
    }

    std::string out = args.out.empty() ? default_output(args.input, ".communities") : args.out;
    write_partition_file(out, file.tokens, results[best].partition);
    std::cout << "q_h=" << fmt_real(results[best].q_h) << " runs=" << args.runs << "\n";
    return 0;
}

// ------------------------------------------------------------------- tune --

struct TuneArgs {
    std::string input;
    EtaFlags eta;
    std::size_t init_points = 5;
    std::size_t min_evals = 10;
    std::size_t max_evals = 200;
    std::size_t patience = 5;
    double min_improvement = 1e-4;
    double pc_min = 0.01;
    double pc_max = 0.99;
    std::vector<std::uint64_t> objective_seeds;
    std::string out;
    std::string trace;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
};

int run_tune(const TuneArgs& args) {
    HypergraphFile file = read_hypergraph_file(args.input);
    ObjectiveConfig objective_cfg = make_objective(args.eta, file.graph.max_edge_size());

    TunerConfig tcfg;
    tcfg.init_points = args.init_points;
    tcfg.min_evaluations = args.min_evals;
    tcfg.max_evaluations = args.max_evals;
    tcfg.patience = args.patience;
    tcfg.min_improvement = args.min_improvement;
    tcfg.pc_min = args.pc_min;
    tcfg.pc_max = args.pc_max;
    tcfg.seeds = args.objective_seeds;
    tcfg.master_seed = args.seed;
    tcfg.threads = args.threads;

    TuneResult result = tune(file.graph, objective_cfg, tcfg);

    std::string out = args.out.empty() ? default_output(args.input, ".communities") : args.out;
    write_partition_file(out, file.tokens, result.best_partition);
    std::string trace_path =
        args.trace.empty() ? default_output(args.input, ".trace.csv") : args.trace;
    std::ofstream trace(trace_path);
    if (!trace) {
        throw std::runtime_error(trace_path + ": cannot open for writing");
    }
    trace << format_trace(result.evaluations);
    std::cout << "best_pb=" << fmt_real(result.best_p_b)
              << " best_pc=" << fmt_real(result.best_p_c)
              << " q_h=" << fmt_real(result.best_q_h) << "\n";
    return 0;
}

// -------------------------------------------------------------------- eda --

struct EdaArgs {
    std::string input;
    std::string partition;
    std::string scheme = "total";
    std::uint64_t seed = 0;
};

int run_eda(const EdaArgs& args) {
    HypergraphFile file = read_hypergraph_file(args.input);
    std::vector<CommunityId> assignment;
    if (!args.partition.empty()) {
        assignment = align_partition(read_partition_file(args.partition), file.tokens);
    } else {
        TwoSectionScheme scheme = args.scheme == "degree" ? TwoSectionScheme::degree_preserving
                                                          : TwoSectionScheme::total_weight;
        WeightedGraph g = two_section(file.graph, scheme);
        assignment = louvain_graph(g, args.seed).partition;
    }
    std::vector<CompositionRow> rows = edge_composition(file.graph, assignment);
    std::cout << format_composition(rows);
    TauRecommendation rec = suggest_tau(rows);
    std::cout << "purity_ratio=" << fmt_real(rec.purity_ratio) << "\n";
    if (rec.use_strict) {
        std::cout << "recommendation=strict\n";
    } else {
        std::cout << "recommendation=tau tau=" << fmt_real(rec.tau) << "\n";
    }
    std::cout << "rationale=" << rec.rationale << "\n";
    return 0;
}

// --------------------------------------------------------------- generate --

struct GenerateArgs {
    std::size_t n = 300;
    double degree_exponent = 2.5;
    std::size_t degree_min = 5;
    std::size_t degree_max = 30;
    double community_exponent = 1.5;
    std::size_t community_min = 80;
    std::size_t community_max = 120;
    double noise = 0.15;
    std::string size_dist = "2:0.1,3:0.4,4:0.4,5:0.1";
    std::string wcd = "linear";
    std::string wcd_file;
    std::string inject;
    std::string out_prefix;
    std::uint64_t seed = 0;
};

std::vector<double> parse_size_dist(const std::string& text) {
    std::vector<double> dist;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t comma = text.find(',', start);
        std::string part = text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t colon = part.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("--size-dist expects 'size:prob' pairs");
        }
        std::size_t d = 0;
        double q = 0.0;
        try {
            d = static_cast<std::size_t>(std::stoul(part.substr(0, colon)));
            q = std::stod(part.substr(colon + 1));
        } catch (...) {
            throw std::invalid_argument("--size-dist expects 'size:prob' pairs");
        }
        if (dist.size() <= d) {
            dist.resize(d + 1, 0.0);
        }
        dist[d] += q;
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return dist;
}

std::vector<std::string> node_tokens(std::size_t n) {
    int width = 1;
    for (std::size_t v = n > 0 ? n - 1 : 0; v >= 10; v /= 10) {
        ++width;
    }
    std::vector<std::string> tokens(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::string digits = std::to_string(v);
        tokens[v] = "n" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') +
                    digits;
    }
    return tokens;
}

int run_generate(const GenerateArgs& args) {
    GenParams params;
    params.n = args.n;
    params.degree_exponent = args.degree_exponent;
    params.degree_min = args.degree_min;
    params.degree_max = args.degree_max;
    params.community_exponent = args.community_exponent;
    params.community_min = args.community_min;
    params.community_max = args.community_max;
    params.noise = args.noise;
    params.size_distribution = parse_size_dist(args.size_dist);
    params.seed = args.seed;
    if (args.wcd == "majority") {
        params.model = WcdModel::majority;
    } else if (args.wcd == "linear") {
        params.model = WcdModel::linear;
    } else if (args.wcd == "strict") {
        params.model = WcdModel::strict_model;
    } else {
        if (args.wcd_file.empty()) {
            throw std::invalid_argument("--wcd custom requires --wcd-file");
        }
        params.model = WcdModel::custom;
        params.custom_wcd = load_weight_table(args.wcd_file);
    }

    GeneratedHypergraph generated = generate(params);
    const Hypergraph* graph = &generated.graph;
    std::optional<Hypergraph> injected;
    std::size_t inject_count = 0;
    std::size_t inject_size = 0;
    if (!args.inject.empty()) {
        std::size_t comma = args.inject.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("--inject-local-noise expects 'count,size'");
        }
        try {
            inject_count = static_cast<std::size_t>(std::stoul(args.inject.substr(0, comma)));
            inject_size = static_cast<std::size_t>(std::stoul(args.inject.substr(comma + 1)));
        } catch (...) {
            throw std::invalid_argument("--inject-local-noise expects 'count,size'");
        }
        injected = inject_local_noise(generated.graph, generated.truth, inject_count,
                                      inject_size, args.seed);
        graph = &*injected;
    }

    std::vector<std::string> tokens = node_tokens(params.n);
    write_hypergraph_file(args.out_prefix + ".hgr", *graph, tokens);

    // Ground truth restricted to nodes that actually appear in some edge.
    std::vector<std::string> used_tokens;
    std::vector<CommunityId> used_assignment;
    for (NodeId v = 0; v < graph->node_count(); ++v) {
        if (graph->degree(v) > 0.0) {
            used_tokens.push_back(tokens[v]);
            used_assignment.push_back(generated.truth.assignment[v]);
        }
    }
    write_partition_file(args.out_prefix + ".gt", used_tokens, used_assignment);

    std::size_t community_count = 0;
    for (CommunityId c : generated.truth.assignment) {
        community_count = std::max<std::size_t>(community_count, c + 1);
    }
    json sidecar;
    sidecar["n"] = params.n;
    sidecar["degree_exponent"] = params.degree_exponent;
    sidecar["degree_range"] = {params.degree_min, params.degree_max};
    sidecar["community_exponent"] = params.community_exponent;
    sidecar["community_range"] = {params.community_min, params.community_max};
    sidecar["noise"] = params.noise;
    sidecar["size_distribution"] = params.size_distribution;
    sidecar["wcd_model"] = args.wcd;
    sidecar["seed"] = params.seed;
    sidecar["realized_noise"] = generated.truth.realized_noise;
    sidecar["communities"] = community_count;
    sidecar["edges"] = graph->edge_count();
    if (inject_count > 0) {
        sidecar["injected_edges"] = inject_count;
        sidecar["injected_edge_size"] = inject_size;
    }
    std::ofstream side(args.out_prefix + ".json");
    if (!side) {
        throw std::runtime_error(args.out_prefix + ".json: cannot open for writing");
    }
    side << sidecar.dump(2) << "\n";

    std::cout << "n=" << params.n << " edges=" << graph->edge_count()
              << " communities=" << community_count
              << " realized_noise=" << fmt_real(generated.truth.realized_noise) << "\n";
    return 0;
}

// -------------------------------------------------------------------- score --

struct ScoreArgs {
    std::string partition_a;
    std::string partition_b;
    std::string normalization = "mean";
};

int run_score(const ScoreArgs& args) {
    PartitionFile a = read_partition_file(args.partition_a);
    PartitionFile b = read_partition_file(args.partition_b);
    if (a.tokens != b.tokens) {
        throw ParseError("partitions cover different node sets");
    }
    AmiNormalization norm = AmiNormalization::mean;
    if (args.normalization == "min") {
        norm = AmiNormalization::min;
    } else if (args.normalization == "max") {
        norm = AmiNormalization::max;
    }
    double value = ami(a.communities, b.communities, norm);
    std::cout << "ami=" << fmt_real(value) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypergraph community detection by direct modularity optimization"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file overriding flag defaults");

    ClusterArgs cluster_args;
    CLI::App* cluster = app.add_subcommand("cluster", "Detect communities in a hypergraph");
    cluster->add_option("input", cluster_args.input, "Hypergraph file")->required();
    add_eta_flags(cluster, cluster_args.eta);
    cluster->add_option("--pb", cluster_args.p_b, "Blend escalation probability")
        ->check(CLI::Range(0.0, 1.0));
    cluster->add_option("--pc", cluster_args.p_c, "Community-shrink factor of the schedule")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
    cluster->add_option("--runs", cluster_args.runs, "Independent restarts; best result kept")
        ->check(CLI::PositiveNumber);
    cluster->add_option("--ending", cluster_args.ending,
                        "supernode (stop at coarsest level) or local (re-sweep original nodes)")
        ->check(CLI::IsMember({"supernode", "local"}));
    cluster->add_option("--out", cluster_args.out, "Partition output path");
    cluster->add_option("--seed", cluster_args.seed, "Master seed");
    cluster->add_option("--threads", cluster_args.threads, "Worker threads for restarts")
        ->check(CLI::PositiveNumber);

    TuneArgs tune_args;
    CLI::App* tune_cmd = app.add_subcommand("tune", "Tune (p_b, p_c) by Bayesian optimization");
    tune_cmd->add_option("input", tune_args.input, "Hypergraph file")->required();
    add_eta_flags(tune_cmd, tune_args.eta);
    tune_cmd->add_option("--init", tune_args.init_points, "Random initial evaluations")
        ->check(CLI::PositiveNumber);
    tune_cmd->add_option("--min-evals", tune_args.min_evals, "Minimum total evaluations");
    tune_cmd->add_option("--max-evals", tune_args.max_evals, "Safety cap on evaluations");
    tune_cmd->add_option("--patience", tune_args.patience,
                         "Stop after this many non-improving proposals");
    tune_cmd->add_option("--min-improvement", tune_args.min_improvement,
                         "Improvement threshold for the patience rule");
    tune_cmd->add_option("--pc-min", tune_args.pc_min, "Lower bound of the p_c domain");
    tune_cmd->add_option("--pc-max", tune_args.pc_max, "Upper bound of the p_c domain");
    tune_cmd->add_option("--objective-seeds", tune_args.objective_seeds,
                         "Fixed seeds for the per-point seed batch");
    tune_cmd->add_option("--out", tune_args.out, "Partition output path");
    tune_cmd->add_option("--trace", tune_args.trace, "Trace table output path");
    tune_cmd->add_option("--seed", tune_args.seed, "Master seed");
    tune_cmd->add_option("--threads", tune_args.threads, "Worker threads for the seed batch")
        ->check(CLI::PositiveNumber);

    EdaArgs eda_args;
    CLI::App* eda = app.add_subcommand("eda", "Edge-composition overview and objective hint");
    eda->add_option("input", eda_args.input, "Hypergraph file")->required();
    eda->add_option("--partition", eda_args.partition,
                    "Partition file (default: quick 2-section clustering)");
    eda->add_option("--scheme", eda_args.scheme, "2-section weighting: total or degree")
        ->check(CLI::IsMember({"total", "degree"}));
    eda->add_option("--seed", eda_args.seed, "Master seed");

    GenerateArgs gen_args;
    CLI::App* gen = app.add_subcommand("generate", "Synthesize a hypergraph with known truth");
    gen->add_option("--n", gen_args.n, "Node count")->check(CLI::PositiveNumber);
    gen->add_option("--degree-exponent", gen_args.degree_exponent, "Degree power-law exponent");
    gen->add_option("--degree-min", gen_args.degree_min, "Smallest target degree");
    gen->add_option("--degree-max", gen_args.degree_max, "Largest target degree");
    gen->add_option("--community-exponent", gen_args.community_exponent,
                    "Community-size power-law exponent");
    gen->add_option("--community-min", gen_args.community_min, "Smallest community size");
    gen->add_option("--community-max", gen_args.community_max, "Largest community size");
    gen->add_option("--noise", gen_args.noise, "Background edge probability")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--size-dist", gen_args.size_dist,
                    "Edge-size distribution as 'size:prob,...'");
    gen->add_option("--wcd", gen_args.wcd,
                    "Home-community count model: majority, linear, strict, or custom")
        ->check(CLI::IsMember({"majority", "linear", "strict", "custom"}));
    gen->add_option("--wcd-file", gen_args.wcd_file, "JSON table for the custom model");
    gen->add_option("--inject-local-noise", gen_args.inject,
                    "Append 'count,size' extra edges over the two smallest communities");
    gen->add_option("--out-prefix", gen_args.out_prefix, "Prefix for .hgr/.gt/.json outputs")
        ->required();
    gen->add_option("--seed", gen_args.seed, "Master seed");

    ScoreArgs score_args;
    CLI::App* score = app.add_subcommand("score", "Adjusted mutual information of two partitions");
    score->add_option("partition_a", score_args.partition_a, "First partition file")->required();
    score->add_option("partition_b", score_args.partition_b, "Second partition file")->required();
    score->add_option("--normalization", score_args.normalization, "mean, min, or max")
        ->check(CLI::IsMember({"mean", "min", "max"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (cluster->parsed()) {
            return run_cluster(cluster_args);
        }
        if (tune_cmd->parsed()) {
            return run_tune(tune_args);
        }
        if (eda->parsed()) {
            return run_eda(eda_args);
        }
        if (gen->parsed()) {
            return run_generate(gen_args);
        }
        if (score->parsed()) {
            return run_score(score_args);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
