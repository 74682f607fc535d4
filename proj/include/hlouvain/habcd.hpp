// habcd.hpp - synthetic hypergraphs with planted communities
#pragma once

#include <cstdint>
#include <vector>

#include "hlouvain/hypergraph.hpp"
#include "hlouvain/rng.hpp"

namespace hlouvain {

// Shape of w_{c,d}: how many members of a size-d community edge land inside
// its home community (c ranges over the majority counts (d/2, d]).
enum class WcdModel {
    majority,      // uniform over admissible c
    linear,        // proportional to c
    strict_model,  // all mass on c = d (fully homogeneous edges)
    custom,        // caller-provided table
};

struct GenParams {
    std::size_t n = 300;
    double degree_exponent = 2.5;
    std::size_t degree_min = 5;
    std::size_t degree_max = 30;
    double community_exponent = 1.5;
    std::size_t community_min = 80;
    std::size_t community_max = 120;
    double noise = 0.15;                    // probability an edge is background
    std::vector<double> size_distribution;  // index d -> q_d; entries below d=2 must be 0
    WcdModel model = WcdModel::linear;
    // custom model only: custom_wcd[d] lists weights for c = d/2+1 .. d
    std::vector<std::vector<double>> custom_wcd;
    std::uint64_t seed = 0;
};

struct GroundTruth {
    std::vector<CommunityId> assignment;
    double realized_noise = 0.0;  // fraction of generated edges that are background
};

struct GeneratedHypergraph {
    Hypergraph graph;
    GroundTruth truth;
};

// Distribution of the home-community member count for a size-d edge; returns
// probabilities for c = d/2+1 .. d (in that order), summing to 1.
std::vector<double> wcd_weights(WcdModel model, std::size_t d,
                                const std::vector<std::vector<double>>* custom = nullptr);

// Power-law draw: P(k) proportional to k^(-exponent) on [lo, hi].
std::size_t sample_powerlaw(double exponent, std::size_t lo, std::size_t hi, Rng& rng);

// Plants power-law communities over n nodes, then sprinkles hyperedges: each
// edge is background noise with probability `noise` (members drawn from all
// nodes, weighted by residual target degree) or a community edge (c members
// inside one community, d - c outside). Deterministic under a fixed seed.
GeneratedHypergraph generate(const GenParams& params);

// Appends `count` extra size-`edge_size` edges sampled uniformly (distinct
// members per edge) from the union of the two smallest ground-truth
// communities. The ground truth itself is unchanged.
Hypergraph inject_local_noise(const Hypergraph& h, const GroundTruth& truth, std::size_t count,
                              std::size_t edge_size, std::uint64_t seed);

}  // namespace hlouvain
