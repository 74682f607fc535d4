// hypergraph.hpp - weighted multiset hypergraphs and their 2-section graphs
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hlouvain {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using CommunityId = std::uint32_t;

inline constexpr NodeId kInvalidNode = static_cast<NodeId>(-1);

struct Hyperedge {
    std::vector<NodeId> members;  // kept sorted; repeats encode multiplicity
    double weight = 1.0;

    std::size_t size() const { return members.size(); }
};

// One incidence of a node: the edge id plus the node's multiplicity in it.
struct Incidence {
    EdgeId edge;
    std::uint32_t multiplicity;
};

// Immutable weighted hypergraph over a dense node index space. Hyperedges are
// multisets (repeats arise from contraction); edges with fewer than two
// members are dropped at construction and counted in dropped_edge_count().
class Hypergraph {
public:
    Hypergraph(std::size_t node_count, std::vector<Hyperedge> edges);

    std::size_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Hyperedge>& edges() const { return edges_; }
    const Hyperedge& edge(EdgeId e) const { return edges_[e]; }

    // Degree counts incidences with multiplicity, weighted by edge weight.
    double degree(NodeId v) const { return degree_[v]; }
    const std::vector<double>& degrees() const { return degree_; }
    double volume() const { return volume_; }

    double total_edge_weight() const { return total_edge_weight_; }
    // Indexed by edge size d; total weight of edges of that size.
    const std::vector<double>& size_weights() const { return size_weight_; }
    std::size_t max_edge_size() const { return max_edge_size_; }

    std::span<const Incidence> incident_edges(NodeId v) const;

    std::size_t dropped_edge_count() const { return dropped_; }

private:
    std::size_t node_count_ = 0;
    std::vector<Hyperedge> edges_;
    std::vector<double> degree_;
    double volume_ = 0.0;
    double total_edge_weight_ = 0.0;
    std::vector<double> size_weight_;
    std::size_t max_edge_size_ = 0;
    std::size_t dropped_ = 0;
    std::vector<std::size_t> inc_offset_;
    std::vector<Incidence> inc_;
};

struct Neighbor {
    NodeId node;
    double weight;
};

// Undirected weighted graph with self-loops. A loop is stored once under
// (u, u); its weight counts once in total_weight() and twice in degree(u).
class WeightedGraph {
public:
    // Pairs may repeat and may be given in either orientation; coincident
    // pairs are summed.
    WeightedGraph(std::size_t node_count,
                  std::span<const std::tuple<NodeId, NodeId, double>> pairs);

    std::size_t node_count() const { return degree_.size(); }
    std::span<const Neighbor> neighbors(NodeId u) const;
    double degree(NodeId u) const { return degree_[u]; }
    double volume() const { return volume_; }
    double total_weight() const { return total_weight_; }
    double loop_weight(NodeId u) const { return loop_[u]; }

private:
    std::vector<std::size_t> adj_offset_;
    std::vector<Neighbor> adj_;
    std::vector<double> degree_;
    std::vector<double> loop_;
    double volume_ = 0.0;
    double total_weight_ = 0.0;
};

// How a hyperedge of size d spreads its weight over its node pairs.
enum class TwoSectionScheme {
    total_weight,        // w(e) / C(d, 2) per pair: clique weight sums to w(e)
    degree_preserving,   // w(e) / (d - 1) per pair: graph degrees match hypergraph degrees
};

// Clique expansion. Every unordered member-index pair of every hyperedge
// contributes; pairs of equal nodes (possible for multiset edges) become
// loops. Weights of coincident pairs are summed.
WeightedGraph two_section(const Hypergraph& h, TwoSectionScheme scheme);

struct ContractResult {
    Hypergraph graph;
    // Indexed by community id; kInvalidNode for empty communities. Supernode
    // ids are assigned in increasing community-id order.
    std::vector<NodeId> supernode_of_community;
};

// Collapses each community to a supernode. Edge sizes and weights are kept;
// members map to supernodes, so an edge inside one community becomes a
// multiset edge over a single supernode repeated d times.
ContractResult contract(const Hypergraph& h, std::span<const CommunityId> assignment,
                        std::size_t id_bound);

}  // namespace hlouvain
