#include "hlouvain/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace hlouvain {

Hypergraph::Hypergraph(std::size_t node_count, std::vector<Hyperedge> edges)
    : node_count_(node_count) {
    if (edges.empty()) {
        throw std::invalid_argument("Hypergraph: edge list is empty");
    }
    edges_.reserve(edges.size());
    for (auto& e : edges) {
        if (e.members.empty()) {
            throw std::invalid_argument("Hypergraph: edge with no members");
        }
        if (!(e.weight > 0.0)) {
            throw std::invalid_argument("Hypergraph: edge weight must be positive");
        }
        for (NodeId v : e.members) {
            if (v >= node_count_) {
                throw std::invalid_argument("Hypergraph: node index out of range");
            }
        }
        if (e.size() < 2) {
            ++dropped_;
            continue;
        }
        std::sort(e.members.begin(), e.members.end());
        edges_.push_back(std::move(e));
    }
    if (edges_.empty()) {
        throw std::invalid_argument("Hypergraph: no edges of size >= 2");
    }

    degree_.assign(node_count_, 0.0);
    for (const auto& e : edges_) {
        std::size_t d = e.size();
        max_edge_size_ = std::max(max_edge_size_, d);
        total_edge_weight_ += e.weight;
        if (size_weight_.size() <= d) {
            size_weight_.resize(d + 1, 0.0);
        }
        size_weight_[d] += e.weight;
        for (NodeId v : e.members) {
            degree_[v] += e.weight;
        }
    }
    for (double deg : degree_) {
        volume_ += deg;
    }

    // Incidence lists in CSR form, one entry per distinct member of an edge.
    std::vector<std::size_t> counts(node_count_ + 1, 0);
    for (const auto& e : edges_) {
        for (std::size_t i = 0; i < e.members.size(); ++i) {
            if (i == 0 || e.members[i] != e.members[i - 1]) {
                ++counts[e.members[i] + 1];
            }
        }
    }
    inc_offset_.resize(node_count_ + 1, 0);
    for (std::size_t v = 0; v < node_count_; ++v) {
        inc_offset_[v + 1] = inc_offset_[v] + counts[v + 1];
    }
    inc_.resize(inc_offset_.back());
    std::vector<std::size_t> cursor(inc_offset_.begin(), inc_offset_.end() - 1);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const auto& members = edges_[e].members;
        std::size_t i = 0;
        while (i < members.size()) {
            std::size_t j = i;
            while (j < members.size() && members[j] == members[i]) {
                ++j;
            }
            inc_[cursor[members[i]]++] = Incidence{e, static_cast<std::uint32_t>(j - i)};
            i = j;
        }
    }
}

std::span<const Incidence> Hypergraph::incident_edges(NodeId v) const {
    return {inc_.data() + inc_offset_[v], inc_offset_[v + 1] - inc_offset_[v]};
}

WeightedGraph::WeightedGraph(std::size_t node_count,
                             std::span<const std::tuple<NodeId, NodeId, double>> pairs) {
    degree_.assign(node_count, 0.0);
    loop_.assign(node_count, 0.0);

    // Normalize orientation, then sort to merge coincident pairs.
    std::vector<std::tuple<NodeId, NodeId, double>> sorted;
    sorted.reserve(pairs.size());
    for (auto [u, v, w] : pairs) {
        if (u >= node_count || v >= node_count) {
            throw std::invalid_argument("WeightedGraph: node index out of range");
        }
        if (!(w > 0.0)) {
            throw std::invalid_argument("WeightedGraph: pair weight must be positive");
        }
        if (u > v) {
            std::swap(u, v);
        }
        sorted.emplace_back(u, v, w);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(std::get<0>(a), std::get<1>(a)) <
                         std::tie(std::get<0>(b), std::get<1>(b));
              });

    std::vector<std::tuple<NodeId, NodeId, double>> merged;
    merged.reserve(sorted.size());
    for (const auto& entry : sorted) {
        if (!merged.empty() && std::get<0>(merged.back()) == std::get<0>(entry) &&
            std::get<1>(merged.back()) == std::get<1>(entry)) {
            std::get<2>(merged.back()) += std::get<2>(entry);
        } else {
            merged.push_back(entry);
        }
    }

    std::vector<std::size_t> counts(node_count + 1, 0);
    for (const auto& [u, v, w] : merged) {
        ++counts[u + 1];
        if (u != v) {
            ++counts[v + 1];
        }
    }
    adj_offset_.resize(node_count + 1, 0);
    for (std::size_t i = 0; i < node_count; ++i) {
        adj_offset_[i + 1] = adj_offset_[i] + counts[i + 1];
    }
    adj_.resize(adj_offset_.back());
    std::vector<std::size_t> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
    for (const auto& [u, v, w] : merged) {
        adj_[cursor[u]++] = Neighbor{v, w};
        total_weight_ += w;
        if (u == v) {
            loop_[u] += w;
            degree_[u] += 2.0 * w;
        } else {
            adj_[cursor[v]++] = Neighbor{u, w};
            degree_[u] += w;
            degree_[v] += w;
        }
    }
    for (double deg : degree_) {
        volume_ += deg;
    }
}

std::span<const Neighbor> WeightedGraph::neighbors(NodeId u) const {
    return {adj_.data() + adj_offset_[u], adj_offset_[u + 1] - adj_offset_[u]};
}

WeightedGraph two_section(const Hypergraph& h, TwoSectionScheme scheme) {
    std::vector<std::tuple<NodeId, NodeId, double>> pairs;
    for (const auto& e : h.edges()) {
        std::size_t d = e.size();
        double denom = scheme == TwoSectionScheme::total_weight
                           ? static_cast<double>(d) * static_cast<double>(d - 1) / 2.0
                           : static_cast<double>(d - 1);
        double w = e.weight / denom;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                pairs.emplace_back(e.members[i], e.members[j], w);
            }
        }
    }
    return WeightedGraph(h.node_count(), pairs);
}

ContractResult contract(const Hypergraph& h, std::span<const CommunityId> assignment,
                        std::size_t id_bound) {
    if (assignment.size() != h.node_count()) {
        throw std::invalid_argument("contract: assignment size mismatch");
    }
    std::vector<NodeId> supernode(id_bound, kInvalidNode);
    for (CommunityId c : assignment) {
        if (c >= id_bound) {
            throw std::invalid_argument("contract: community id out of range");
        }
        supernode[c] = 0;
    }
    NodeId next = 0;
    for (auto& s : supernode) {
        if (s != kInvalidNode) {
            s = next++;
        }
    }

    std::vector<Hyperedge> edges;
    edges.reserve(h.edge_count());
    for (const auto& e : h.edges()) {
        Hyperedge mapped;
        mapped.weight = e.weight;
        mapped.members.reserve(e.size());
        for (NodeId v : e.members) {
            mapped.members.push_back(supernode[assignment[v]]);
        }
        edges.push_back(std::move(mapped));
    }
    return ContractResult{Hypergraph(next, std::move(edges)), std::move(supernode)};
}

}  // namespace hlouvain
