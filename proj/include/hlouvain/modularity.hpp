// modularity.hpp - graph and hypergraph modularity objectives
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hlouvain/hypergraph.hpp"

namespace hlouvain {

enum class EtaKind { tau, strict_majority, custom };

// Per-edge homogeneity weights eta_{c,d} for edges of size d whose strongest
// community holds c > d/2 members. The tau family is eta_{c,d} = (c/d)^tau,
// normalized so the homogeneous case c = d gets weight 1; tau -> infinity
// degenerates to the strict variant that rewards only fully homogeneous
// edges. A custom table pins arbitrary non-negative weights per (c, d).
class EtaWeights {
public:
    static EtaWeights from_tau(double tau, std::size_t d_max = 32);
    static EtaWeights strict(std::size_t d_max = 32);
    // table[d] holds weights for c = d/2+1 .. d (that order); entries for
    // d < 2 must be empty. Values must be in [0, 1] with max per d equal 1.
    static EtaWeights custom(std::vector<std::vector<double>> table);

    // eta_{c,d}; zero outside the majority range c in (d/2, d].
    double value(std::size_t c, std::size_t d) const;

    EtaKind kind() const { return kind_; }
    double tau() const { return tau_; }
    std::size_t d_max() const { return table_.empty() ? 0 : table_.size() - 1; }

    static std::size_t c_min(std::size_t d) { return d / 2 + 1; }

private:
    EtaWeights() = default;
    void build_table(std::size_t d_max);

    EtaKind kind_ = EtaKind::tau;
    double tau_ = 0.0;
    std::vector<std::vector<double>> table_;  // table_[d][c - c_min(d)]
};

struct ObjectiveConfig {
    EtaWeights eta = EtaWeights::from_tau(0.0);
    double resolution = 1.0;
    TwoSectionScheme scheme = TwoSectionScheme::total_weight;
};

// P(Bin(d, p) = c) computed stably in the log domain.
double binom_pmf(std::size_t d, std::size_t c, double p);

// Newman modularity of a weighted graph (loops count once in the edge term
// and twice in degrees); `resolution` scales the degree-tax term.
double graph_modularity(const WeightedGraph& g, std::span<const CommunityId> assignment,
                        double resolution = 1.0);

// Degree-tax-corrected hypergraph modularity: for each edge size d and
// majority count c > d/2, the observed eta-weighted edge mass within
// communities minus the binomial null expectation, averaged over edge weight.
double hypergraph_modularity(const Hypergraph& h, std::span<const CommunityId> assignment,
                             const ObjectiveConfig& cfg);

struct CompositionRow {
    std::size_t d;   // edge size
    std::size_t c;   // largest single-community member count
    double weight;   // total weight of edges with this (d, c) profile
};

// Distribution of edge sizes vs. how concentrated each edge is in its best
// community; rows sorted by weight descending (ties: by d, then c).
std::vector<CompositionRow> edge_composition(const Hypergraph& h,
                                             std::span<const CommunityId> assignment);

// Renders rows as "d,c,purity,frequency" lines with a header; purity is
// round(100*c/d) with a percent sign.
std::string format_composition(const std::vector<CompositionRow>& rows);

}  // namespace hlouvain
