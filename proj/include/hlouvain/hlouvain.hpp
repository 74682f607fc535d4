// hlouvain.hpp - multi-level community detection on hypergraphs
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hlouvain/hypergraph.hpp"
#include "hlouvain/modularity.hpp"
#include "hlouvain/modularity_state.hpp"
#include "hlouvain/rng.hpp"

namespace hlouvain {

// Schedule for blending the 2-section graph objective into the hypergraph
// objective: alpha = 1 - (1 - p_b)^j, where j grows as the working partition
// shrinks past powers of p_c. p_b = 0 keeps alpha at 0 (pure graph phase);
// p_b = 1 jumps to the hypergraph objective as soon as the partition shrinks.
struct AlphaPolicy {
    double p_b = 0.5;
    double p_c = 0.5;
};

// Blend weight for a partition with `community_count` communities out of
// `n_original` starting nodes. Once alpha reaches 1 it stays there. With
// ratio = community_count / n_original, j is the largest integer such that
// ratio <= p_c^j.
double update_alpha(std::size_t community_count, std::size_t n_original, double current_alpha,
                    const AlphaPolicy& policy);

// Owns the current blend weight during optimization: either driven by an
// AlphaPolicy from accepted moves, or pinned to a fixed value.
class AlphaController {
public:
    AlphaController(AlphaPolicy policy, std::size_t n_original);
    static AlphaController fixed(double alpha);

    double alpha() const { return alpha_; }
    void on_move(std::size_t community_count);
    void pin(double value);

    // (community_count, alpha) after each accepted move.
    const std::vector<std::pair<std::size_t, double>>& trace() const { return trace_; }

private:
    AlphaController() = default;

    AlphaPolicy policy_{};
    std::size_t n_original_ = 0;
    double alpha_ = 0.0;
    bool pinned_ = false;
    std::vector<std::pair<std::size_t, double>> trace_;
};

// One pass over all nodes in random order. Each node moves to the
// neighbouring community with the best strictly positive blended gain (ties
// resolved toward the smallest community id); alpha is updated after every
// accepted move. Returns the number of accepted moves.
std::size_t local_move_sweep(ModularityState& state, AlphaController& alpha, Rng& rng);

struct SweepStats {
    std::size_t moves = 0;
    std::size_t sweeps = 0;
    bool capped = false;
};

// Repeats local_move_sweep until a sweep makes no move or `max_sweeps` is hit.
SweepStats run_sweeps(ModularityState& state, AlphaController& alpha, Rng& rng,
                      std::size_t max_sweeps);

enum class Ending {
    supernode_default,   // stop at the coarsest level; report its partition
    local_opt_original,  // afterwards re-sweep the original nodes at alpha = 1
};

struct RunConfig {
    ObjectiveConfig objective;
    AlphaPolicy policy;
    std::uint64_t seed = 0;
    Ending ending = Ending::supernode_default;
    std::size_t max_sweeps_per_level = 1000;
};

struct RunResult {
    std::vector<CommunityId> partition;  // canonical labels on original nodes
    double q_h = 0.0;                    // hypergraph modularity of `partition`
    std::vector<std::pair<std::size_t, double>> alpha_trace;
    std::size_t level_count = 0;         // contraction depth behind the result
};

// Multi-level optimization of the blended objective. Starts from singletons
// at alpha = 0, contracts whenever a level improves, and escalates alpha per
// the policy; when a level stalls with alpha < 1, alpha is pinned to 1 and
// the last contraction (if any) is undone once before continuing.
RunResult h_louvain(const Hypergraph& h, const RunConfig& cfg);

struct GraphLouvainResult {
    std::vector<CommunityId> partition;
    double q_g = 0.0;
};

// Classic multi-level modularity optimization on a weighted graph.
GraphLouvainResult louvain_graph(const WeightedGraph& g, std::uint64_t seed,
                                 double resolution = 1.0);

}  // namespace hlouvain
