// Python bindings for the core operations.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

#include "hlouvain/bayesopt.hpp"
#include "hlouvain/habcd.hpp"
#include "hlouvain/hlouvain.hpp"
#include "hlouvain/metrics.hpp"
#include "hlouvain/modularity.hpp"

namespace py = pybind11;
using namespace hlouvain;

namespace {

using EtaTable = std::optional<std::vector<std::vector<double>>>;

ObjectiveConfig make_config(double tau, bool strict, const EtaTable& eta_table,
                            double resolution, const std::string& scheme,
                            std::size_t max_edge_size) {
    ObjectiveConfig cfg;
    std::size_t d_max = std::max<std::size_t>(32, max_edge_size);
    if (eta_table) {
        cfg.eta = EtaWeights::custom(*eta_table);
    } else if (strict) {
        cfg.eta = EtaWeights::strict(d_max);
    } else {
        cfg.eta = EtaWeights::from_tau(tau, d_max);
    }
    cfg.resolution = resolution;
    if (scheme == "degree") {
        cfg.scheme = TwoSectionScheme::degree_preserving;
    } else if (scheme == "total") {
        cfg.scheme = TwoSectionScheme::total_weight;
    } else {
        throw std::invalid_argument("scheme must be 'total' or 'degree'");
    }
    return cfg;
}

Hypergraph build(std::size_t node_count,
                 const std::vector<std::pair<std::vector<NodeId>, double>>& edges) {
    std::vector<Hyperedge> parsed;
    parsed.reserve(edges.size());
    for (const auto& [members, weight] : edges) {
        parsed.push_back(Hyperedge{members, weight});
    }
    return Hypergraph(node_count, std::move(parsed));
}

}  // namespace

PYBIND11_MODULE(_hlouvain, m) {
    m.doc() = "Community detection in hypergraphs by direct modularity optimization";
    m.attr("__version__") = "0.1.0";

    py::class_<Hypergraph>(m, "Hypergraph")
        .def(py::init(&build), py::arg("node_count"), py::arg("edges"),
             "Build from (members, weight) pairs; members are dense node indices.")
        .def_property_readonly("node_count", &Hypergraph::node_count)
        .def_property_readonly("edge_count", &Hypergraph::edge_count)
        .def_property_readonly("volume", &Hypergraph::volume)
        .def_property_readonly("total_edge_weight", &Hypergraph::total_edge_weight)
        .def_property_readonly("max_edge_size", &Hypergraph::max_edge_size)
        .def("degree", &Hypergraph::degree, py::arg("node"))
        .def("edges",
             [](const Hypergraph& h) {
                 std::vector<std::pair<std::vector<NodeId>, double>> out;
                 out.reserve(h.edge_count());
                 for (const auto& e : h.edges()) {
                     out.emplace_back(e.members, e.weight);
                 }
                 return out;
             })
        .def("__repr__", [](const Hypergraph& h) {
            return "Hypergraph(nodes=" + std::to_string(h.node_count()) +
                   ", edges=" + std::to_string(h.edge_count()) + ")";
        });

    m.def(
        "modularity",
        [](const Hypergraph& h, const std::vector<CommunityId>& assignment, double tau,
           bool strict, const EtaTable& eta_table, double resolution,
           const std::string& scheme) {
            return hypergraph_modularity(
                h, assignment,
                make_config(tau, strict, eta_table, resolution, scheme, h.max_edge_size()));
        },
        py::arg("hypergraph"), py::arg("assignment"), py::arg("tau") = 2.0,
        py::arg("strict") = false, py::arg("eta_table") = py::none(),
        py::arg("resolution") = 1.0, py::arg("scheme") = "total",
        "Hypergraph modularity of a node-to-community assignment.");

    m.def(
        "cluster",
        [](const Hypergraph& h, double p_b, double p_c, std::uint64_t seed, double tau,
           bool strict, const EtaTable& eta_table, double resolution, const std::string& scheme,
           const std::string& ending) {
            RunConfig cfg;
            cfg.objective =
                make_config(tau, strict, eta_table, resolution, scheme, h.max_edge_size());
            cfg.policy = AlphaPolicy{p_b, p_c};
            cfg.seed = seed;
            if (ending == "local") {
                cfg.ending = Ending::local_opt_original;
            } else if (ending != "supernode") {
                throw std::invalid_argument("ending must be 'supernode' or 'local'");
            }
            RunResult run = h_louvain(h, cfg);
            py::dict out;
            out["partition"] = run.partition;
            out["q_h"] = run.q_h;
            out["levels"] = run.level_count;
            return out;
        },
        py::arg("hypergraph"), py::arg("p_b") = 0.5, py::arg("p_c") = 0.5, py::arg("seed") = 0,
        py::arg("tau") = 2.0, py::arg("strict") = false, py::arg("eta_table") = py::none(),
        py::arg("resolution") = 1.0, py::arg("scheme") = "total",
        py::arg("ending") = "supernode",
        "One h-Louvain run; returns partition, q_h, and level count.");

    m.def(
        "tune",
        [](const Hypergraph& h, std::size_t init_points, std::size_t min_evaluations,
           std::uint64_t seed, double tau, bool strict, const EtaTable& eta_table,
           double resolution, const std::string& scheme, std::size_t threads) {
            TunerConfig tcfg;
            tcfg.init_points = init_points;
            tcfg.min_evaluations = min_evaluations;
            tcfg.master_seed = seed;
            tcfg.threads = threads;
            TuneResult result =
                tune(h, make_config(tau, strict, eta_table, resolution, scheme,
                                    h.max_edge_size()),
                     tcfg);
            py::list trace;
            for (const auto& ev : result.evaluations) {
                py::dict row;
                row["p_b"] = ev.p_b;
                row["p_c"] = ev.p_c;
                row["mean_q"] = ev.mean_q;
                row["per_seed_q"] = ev.per_seed_q;
                trace.append(row);
            }
            py::dict out;
            out["best_p_b"] = result.best_p_b;
            out["best_p_c"] = result.best_p_c;
            out["best_q_h"] = result.best_q_h;
            out["partition"] = result.best_partition;
            out["evaluations"] = trace;
            return out;
        },
        py::arg("hypergraph"), py::arg("init_points") = 5, py::arg("min_evaluations") = 10,
        py::arg("seed") = 0, py::arg("tau") = 2.0, py::arg("strict") = false,
        py::arg("eta_table") = py::none(), py::arg("resolution") = 1.0,
        py::arg("scheme") = "total", py::arg("threads") = 1,
        "Bayesian-optimization tuning of (p_b, p_c).");

    m.def(
        "generate",
        [](std::size_t n, double degree_exponent, std::size_t degree_min,
           std::size_t degree_max, double community_exponent, std::size_t community_min,
           std::size_t community_max, double noise, const std::vector<double>& size_distribution,
           const std::string& wcd_model, std::uint64_t seed) {
            GenParams params;
            params.n = n;
            params.degree_exponent = degree_exponent;
            params.degree_min = degree_min;
            params.degree_max = degree_max;
            params.community_exponent = community_exponent;
            params.community_min = community_min;
            params.community_max = community_max;
            params.noise = noise;
            params.size_distribution = size_distribution;
            params.seed = seed;
            if (wcd_model == "majority") {
                params.model = WcdModel::majority;
            } else if (wcd_model == "linear") {
                params.model = WcdModel::linear;
            } else if (wcd_model == "strict") {
                params.model = WcdModel::strict_model;
            } else {
                throw std::invalid_argument("wcd_model must be majority, linear, or strict");
            }
            GeneratedHypergraph generated = generate(params);
            py::dict out;
            out["hypergraph"] = std::move(generated.graph);
            out["truth"] = generated.truth.assignment;
            out["realized_noise"] = generated.truth.realized_noise;
            return out;
        },
        py::arg("n") = 300, py::arg("degree_exponent") = 2.5, py::arg("degree_min") = 5,
        py::arg("degree_max") = 30, py::arg("community_exponent") = 1.5,
        py::arg("community_min") = 80, py::arg("community_max") = 120, py::arg("noise") = 0.15,
        py::arg("size_distribution") = std::vector<double>{0.0, 0.0, 0.1, 0.4, 0.4, 0.1},
        py::arg("wcd_model") = "linear", py::arg("seed") = 0,
        "Synthetic hypergraph with planted communities.");

    m.def(
        "ami",
        [](const std::vector<CommunityId>& a, const std::vector<CommunityId>& b,
           const std::string& normalization) {
            AmiNormalization norm = AmiNormalization::mean;
            if (normalization == "min") {
                norm = AmiNormalization::min;
            } else if (normalization == "max") {
                norm = AmiNormalization::max;
            } else if (normalization != "mean") {
                throw std::invalid_argument("normalization must be mean, min, or max");
            }
            return ami(a, b, norm);
        },
        py::arg("a"), py::arg("b"), py::arg("normalization") = "mean",
        "Adjusted mutual information between two labelings.");

    m.def(
        "edge_composition",
        [](const Hypergraph& h, const std::vector<CommunityId>& assignment) {
            py::list rows;
            for (const auto& row : edge_composition(h, assignment)) {
                rows.append(py::make_tuple(row.d, row.c, row.weight));
            }
            return rows;
        },
        py::arg("hypergraph"), py::arg("assignment"),
        "(edge size, best-community count, weight) rows, heaviest first.");

    m.def(
        "suggest_tau",
        [](const Hypergraph& h, const std::vector<CommunityId>& assignment) {
            TauRecommendation rec = suggest_tau(edge_composition(h, assignment));
            py::dict out;
            out["purity_ratio"] = rec.purity_ratio;
            out["strict"] = rec.use_strict;
            out["tau"] = rec.tau;
            out["rationale"] = rec.rationale;
            return out;
        },
        py::arg("hypergraph"), py::arg("assignment"),
        "Recommend an objective shape from the edge composition.");

    m.def(
        "update_alpha",
        [](std::size_t community_count, std::size_t n_original, double current_alpha, double p_b,
           double p_c) {
            return update_alpha(community_count, n_original, current_alpha,
                                AlphaPolicy{p_b, p_c});
        },
        py::arg("community_count"), py::arg("n_original"), py::arg("current_alpha"),
        py::arg("p_b"), py::arg("p_c"), "Blend weight implied by the schedule.");
}
