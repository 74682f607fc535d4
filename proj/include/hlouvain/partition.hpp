// partition.hpp - node-to-community assignment with cached community stats
#pragma once

#include <cstdint>
#include <vector>

#include "hlouvain/hypergraph.hpp"

namespace hlouvain {

// Mutable assignment of nodes to communities. Community volumes (hypergraph
// node degrees) and member counts are maintained incrementally. Ids live in a
// dense range [0, id_bound()); communities may be empty.
class Partition {
public:
    Partition(const Hypergraph& h, std::vector<CommunityId> assignment);

    static Partition singletons(const Hypergraph& h);

    CommunityId community_of(NodeId v) const { return assignment_[v]; }
    const std::vector<CommunityId>& assignment() const { return assignment_; }

    std::size_t node_count() const { return assignment_.size(); }
    std::size_t community_count() const { return nonempty_; }
    std::size_t id_bound() const { return volume_.size(); }

    double community_volume(CommunityId c) const { return c < volume_.size() ? volume_[c] : 0.0; }
    std::size_t community_size(CommunityId c) const { return c < size_.size() ? size_[c] : 0; }
    double node_volume(NodeId v) const { return node_volume_[v]; }
    double total_volume() const { return total_volume_; }

    // Moves v to `target`, which may be a fresh id beyond the current bound.
    void move_node(NodeId v, CommunityId target);

private:
    std::vector<CommunityId> assignment_;
    std::vector<double> node_volume_;
    std::vector<double> volume_;
    std::vector<std::uint32_t> size_;
    std::size_t nonempty_ = 0;
    double total_volume_ = 0.0;
};

// Relabels community ids to 0..k-1 in order of first appearance.
std::vector<CommunityId> canonical_labels(const std::vector<CommunityId>& assignment);

}  // namespace hlouvain
