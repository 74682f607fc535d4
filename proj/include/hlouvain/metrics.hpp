// metrics.hpp - partition agreement scores and objective-shape suggestion
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hlouvain/hypergraph.hpp"
#include "hlouvain/modularity.hpp"

namespace hlouvain {

struct ContingencyTable {
    std::vector<std::vector<std::uint64_t>> counts;  // [cluster of a][cluster of b]
    std::vector<std::uint64_t> row_marginals;
    std::vector<std::uint64_t> col_marginals;
    std::uint64_t total = 0;

    static ContingencyTable build(std::span<const CommunityId> a,
                                  std::span<const CommunityId> b);
};

enum class AmiNormalization { mean, min, max };

// Adjusted mutual information: mutual information corrected by its expected
// value under random permutations (hypergeometric model) and normalized by
// the chosen entropy combination. Returns 1 for identical clusterings; a
// degenerate denominator yields 1 when the partitions agree up to relabeling
// and 0 otherwise.
double ami(std::span<const CommunityId> a, std::span<const CommunityId> b,
           AmiNormalization normalization = AmiNormalization::mean);

struct TauRecommendation {
    double purity_ratio = 0.0;  // homogeneous share of majority edges, sizes >= 3
    bool use_strict = false;
    double tau = 2.0;
    std::string rationale;
};

// Recommends an eta shape from an edge-composition table: mostly homogeneous
// majority edges call for the strict objective, mixed compositions for a
// gentler tau.
TauRecommendation suggest_tau(const std::vector<CompositionRow>& rows);

}  // namespace hlouvain
