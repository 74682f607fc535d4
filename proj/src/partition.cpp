#include "hlouvain/partition.hpp"

#include <numeric>
#include <stdexcept>

namespace hlouvain {

Partition::Partition(const Hypergraph& h, std::vector<CommunityId> assignment)
    : assignment_(std::move(assignment)), node_volume_(h.degrees()) {
    if (assignment_.size() != h.node_count()) {
        throw std::invalid_argument("Partition: assignment size mismatch");
    }
    CommunityId max_id = 0;
    for (CommunityId c : assignment_) {
        max_id = std::max(max_id, c);
    }
    volume_.assign(static_cast<std::size_t>(max_id) + 1, 0.0);
    size_.assign(volume_.size(), 0);
    for (NodeId v = 0; v < assignment_.size(); ++v) {
        CommunityId c = assignment_[v];
        if (size_[c] == 0) {
            ++nonempty_;
        }
        ++size_[c];
        volume_[c] += node_volume_[v];
    }
    total_volume_ = h.volume();
}

Partition Partition::singletons(const Hypergraph& h) {
    std::vector<CommunityId> ids(h.node_count());
    std::iota(ids.begin(), ids.end(), CommunityId{0});
    return Partition(h, std::move(ids));
}

void Partition::move_node(NodeId v, CommunityId target) {
    CommunityId from = assignment_[v];
    if (from == target) {
        return;
    }
    if (target >= volume_.size()) {
        volume_.resize(target + 1, 0.0);
        size_.resize(target + 1, 0);
    }
    if (--size_[from] == 0) {
        --nonempty_;
    }
    volume_[from] -= node_volume_[v];
    if (size_[target]++ == 0) {
        ++nonempty_;
    }
    volume_[target] += node_volume_[v];
    assignment_[v] = target;
}

std::vector<CommunityId> canonical_labels(const std::vector<CommunityId>& assignment) {
    std::vector<CommunityId> relabel;
    std::vector<CommunityId> out(assignment.size());
    CommunityId next = 0;
    for (std::size_t v = 0; v < assignment.size(); ++v) {
        CommunityId c = assignment[v];
        if (c >= relabel.size()) {
            relabel.resize(c + 1, kInvalidNode);
        }
        if (relabel[c] == kInvalidNode) {
            relabel[c] = next++;
        }
        out[v] = relabel[c];
    }
    return out;
}

}  // namespace hlouvain
