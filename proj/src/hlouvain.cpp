#include "hlouvain/hlouvain.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "hlouvain/partition.hpp"

namespace hlouvain {

namespace {

void validate_policy(const AlphaPolicy& policy) {
    if (!(policy.p_b >= 0.0 && policy.p_b <= 1.0)) {
        throw std::invalid_argument("AlphaPolicy: p_b must lie in [0, 1]");
    }
    if (!(policy.p_c > 0.0 && policy.p_c < 1.0)) {
        throw std::invalid_argument("AlphaPolicy: p_c must lie in (0, 1)");
    }
}

}  // namespace

double update_alpha(std::size_t community_count, std::size_t n_original, double current_alpha,
                    const AlphaPolicy& policy) {
    validate_policy(policy);
    if (community_count == 0 || community_count > n_original) {
        throw std::invalid_argument("update_alpha: community count out of range");
    }
    if (current_alpha >= 1.0) {
        return 1.0;
    }
    double ratio = static_cast<double>(community_count) / static_cast<double>(n_original);
    // Largest j with ratio <= p_c^j, found by exact repeated multiplication.
    std::size_t j = 0;
    double threshold = policy.p_c;
    while (ratio <= threshold) {
        ++j;
        threshold *= policy.p_c;
    }
    return 1.0 - std::pow(1.0 - policy.p_b, static_cast<double>(j));
}

AlphaController::AlphaController(AlphaPolicy policy, std::size_t n_original)
    : policy_(policy), n_original_(n_original) {
    validate_policy(policy_);
    if (n_original_ == 0) {
        throw std::invalid_argument("AlphaController: empty node set");
    }
}

AlphaController AlphaController::fixed(double alpha) {
    AlphaController ctrl;
    ctrl.alpha_ = alpha;
    ctrl.pinned_ = true;
    return ctrl;
}

void AlphaController::on_move(std::size_t community_count) {
    if (!pinned_) {
        alpha_ = update_alpha(community_count, n_original_, alpha_, policy_);
    }
    trace_.emplace_back(community_count, alpha_);
}

void AlphaController::pin(double value) {
    alpha_ = value;
    pinned_ = true;
}

std::size_t local_move_sweep(ModularityState& state, AlphaController& alpha, Rng& rng) {
    std::size_t n = state.hypergraph().node_count();
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    rng.shuffle(order);

    std::size_t moves = 0;
    std::vector<CommunityId> candidates;
    for (NodeId v : order) {
        CommunityId current = state.partition().community_of(v);
        state.neighbouring_communities(v, candidates);
        CommunityId best = current;
        double best_delta = 0.0;
        for (CommunityId c : candidates) {
            if (c == current) {
                continue;
            }
            double delta = state.delta_move(v, c, alpha.alpha());
            if (delta > best_delta) {
                best_delta = delta;
                best = c;
            }
        }
        if (best != current) {
            state.apply_move(v, best);
            alpha.on_move(state.partition().community_count());
            ++moves;
        }
    }
    return moves;
}

SweepStats run_sweeps(ModularityState& state, AlphaController& alpha, Rng& rng,
                      std::size_t max_sweeps) {
    SweepStats stats;
    while (stats.sweeps < max_sweeps) {
        std::size_t moves = local_move_sweep(state, alpha, rng);
        ++stats.sweeps;
        stats.moves += moves;
        if (moves == 0) {
            return stats;
        }
    }
    stats.capped = true;
    return stats;
}

namespace {

// One level of the multi-level scheme; level 0 borrows the input hypergraph.
struct Level {
    std::unique_ptr<Hypergraph> owned;
    const Hypergraph* h = nullptr;
    std::unique_ptr<WeightedGraph> g;
    std::unique_ptr<ModularityState> state;
    std::vector<NodeId> origin_map;  // original node -> node at this level
};

Level make_level(const Hypergraph* h, std::unique_ptr<Hypergraph> owned,
                 std::vector<NodeId> origin_map, const ObjectiveConfig& cfg) {
    Level level;
    level.owned = std::move(owned);
    level.h = h;
    level.origin_map = std::move(origin_map);
    level.g = std::make_unique<WeightedGraph>(two_section(*h, cfg.scheme));
    level.state = std::make_unique<ModularityState>(*h, *level.g, Partition::singletons(*h), cfg);
    return level;
}

std::vector<CommunityId> project_to_original(const Level& level) {
    const Partition& p = level.state->partition();
    std::vector<CommunityId> assignment(level.origin_map.size());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        assignment[i] = p.community_of(level.origin_map[i]);
    }
    return canonical_labels(assignment);
}

}  // namespace

RunResult h_louvain(const Hypergraph& h, const RunConfig& cfg) {
    validate_policy(cfg.policy);
    if (cfg.max_sweeps_per_level == 0) {
        throw std::invalid_argument("h_louvain: max_sweeps_per_level must be positive");
    }

    std::vector<NodeId> identity(h.node_count());
    std::iota(identity.begin(), identity.end(), NodeId{0});
    Level current = make_level(&h, nullptr, std::move(identity), cfg.objective);

    AlphaController alpha(cfg.policy, h.node_count());
    Rng rng = Rng::stream(cfg.seed, "h-louvain-sweep");

    std::optional<Level> snapshot;
    bool reverted = false;
    std::size_t level_count = 0;

    while (true) {
        SweepStats stats = run_sweeps(*current.state, alpha, rng, cfg.max_sweeps_per_level);
        if (stats.moves > 0) {
            const Partition& p = current.state->partition();
            ContractResult contracted = contract(*current.h, p.assignment(), p.id_bound());
            std::vector<NodeId> origin_map(current.origin_map.size());
            for (std::size_t i = 0; i < origin_map.size(); ++i) {
                origin_map[i] =
                    contracted.supernode_of_community[p.community_of(current.origin_map[i])];
            }
            auto owned = std::make_unique<Hypergraph>(std::move(contracted.graph));
            const Hypergraph* raw = owned.get();
            Level next = make_level(raw, std::move(owned), std::move(origin_map), cfg.objective);
            snapshot = std::move(current);
            current = std::move(next);
            ++level_count;
        } else if (alpha.alpha() < 1.0) {
            alpha.pin(1.0);
            if (snapshot && !reverted) {
                current = std::move(*snapshot);
                snapshot.reset();
                reverted = true;
                if (level_count > 0) {
                    --level_count;
                }
            }
        } else {
            break;
        }
    }

    RunResult result;
    result.partition = project_to_original(current);
    result.level_count = level_count;
    result.alpha_trace = alpha.trace();

    if (cfg.ending == Ending::local_opt_original) {
        WeightedGraph g0 = two_section(h, cfg.objective.scheme);
        ModularityState state(h, g0, Partition(h, result.partition), cfg.objective);
        AlphaController pinned = AlphaController::fixed(1.0);
        run_sweeps(state, pinned, rng, cfg.max_sweeps_per_level);
        std::vector<CommunityId> refined(h.node_count());
        for (NodeId v = 0; v < h.node_count(); ++v) {
            refined[v] = state.partition().community_of(v);
        }
        result.partition = canonical_labels(refined);
        result.alpha_trace.insert(result.alpha_trace.end(), pinned.trace().begin(),
                                  pinned.trace().end());
    }

    result.q_h = hypergraph_modularity(h, result.partition, cfg.objective);
    return result;
}

GraphLouvainResult louvain_graph(const WeightedGraph& g, std::uint64_t seed, double resolution) {
    GraphLouvainResult result;
    if (g.total_weight() <= 0.0) {
        result.partition.resize(g.node_count());
        std::iota(result.partition.begin(), result.partition.end(), CommunityId{0});
        result.q_g = 0.0;
        return result;
    }

    // A graph is a hypergraph whose edges all have size 2 (loops become the
    // multiset {u, u}); on such inputs the hypergraph objective coincides
    // with graph modularity, so the blended engine optimizes q_G throughout.
    std::vector<Hyperedge> edges;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (const Neighbor& nb : g.neighbors(u)) {
            if (nb.node < u) {
                continue;
            }
            edges.push_back(Hyperedge{{u, nb.node}, nb.weight});
        }
    }
    Hypergraph h2(g.node_count(), std::move(edges));

    RunConfig cfg;
    cfg.objective.eta = EtaWeights::from_tau(0.0, 2);
    cfg.objective.resolution = resolution;
    cfg.objective.scheme = TwoSectionScheme::total_weight;
    cfg.policy = AlphaPolicy{0.0, 0.5};  // alpha stays 0: pure graph objective
    cfg.seed = seed;

    RunResult run = h_louvain(h2, cfg);
    result.partition = std::move(run.partition);
    result.q_g = graph_modularity(g, result.partition, resolution);
    return result;
}

}  // namespace hlouvain
