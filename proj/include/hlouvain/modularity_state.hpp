// modularity_state.hpp - incremental gain evaluation for single-node moves
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hlouvain/hypergraph.hpp"
#include "hlouvain/modularity.hpp"
#include "hlouvain/partition.hpp"

namespace hlouvain {

// Caches everything needed to evaluate, in O(deg(v)), the change of the
// blended objective alpha * q_hyper + (1 - alpha) * q_graph when one node
// moves between communities. The graph must be the 2-section of the
// hypergraph under the configured scheme (volumes of the two differ, so both
// are tracked).
class ModularityState {
public:
    ModularityState(const Hypergraph& h, const WeightedGraph& g, Partition partition,
                    ObjectiveConfig cfg);

    const Hypergraph& hypergraph() const { return *h_; }
    const WeightedGraph& graph() const { return *g_; }
    const Partition& partition() const { return p_; }
    const ObjectiveConfig& config() const { return cfg_; }

    // Blended objective change if v moved to `target` (may be a fresh id).
    double delta_move(NodeId v, CommunityId target, double alpha) const;

    void apply_move(NodeId v, CommunityId target);

    // Communities sharing a hyperedge with v, plus v's own; ascending ids.
    void neighbouring_communities(NodeId v, std::vector<CommunityId>& out) const;

    // Objectives recomputed from the caches (used to validate cache state).
    double graph_objective() const;
    double hyper_objective() const;
    double blended_objective(double alpha) const {
        return alpha * hyper_objective() + (1.0 - alpha) * graph_objective();
    }

private:
    struct TaxSize {
        std::size_t d;
        double weight;                                       // total weight of size-d edges
        std::vector<std::pair<std::uint32_t, double>> terms; // (c, eta_{c,d} * C(d, c))
    };

    // Degree-tax mass at community volume fraction p, summed over edge sizes
    // (not yet divided by total edge weight).
    double community_tax(double p) const;
    double eta_majority(const std::vector<std::pair<CommunityId, std::uint32_t>>& counts,
                        std::size_t d) const;

    const Hypergraph* h_;
    const WeightedGraph* g_;
    ObjectiveConfig cfg_;
    Partition p_;
    std::vector<double> graph_vol_;       // 2-section degree mass per community
    std::vector<double> graph_internal_;  // intra-community pair weight (loops once)
    std::vector<std::vector<std::pair<CommunityId, std::uint32_t>>> edge_counts_;
    std::vector<TaxSize> tax_sizes_;
};

}  // namespace hlouvain
