#include "hlouvain/modularity_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hlouvain {

namespace {

double choose(std::size_t n, std::size_t k) {
    double result = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        result *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return result;
}

}  // namespace

ModularityState::ModularityState(const Hypergraph& h, const WeightedGraph& g,
                                 Partition partition, ObjectiveConfig cfg)
    : h_(&h), g_(&g), cfg_(std::move(cfg)), p_(std::move(partition)) {
    if (p_.node_count() != h.node_count() || g.node_count() != h.node_count()) {
        throw std::invalid_argument("ModularityState: node counts disagree");
    }

    graph_vol_.assign(p_.id_bound(), 0.0);
    for (NodeId v = 0; v < h.node_count(); ++v) {
        graph_vol_[p_.community_of(v)] += g.degree(v);
    }

    graph_internal_.assign(p_.id_bound(), 0.0);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        CommunityId cu = p_.community_of(u);
        for (const Neighbor& nb : g.neighbors(u)) {
            if (nb.node < u) {
                continue;
            }
            if (cu == p_.community_of(nb.node)) {
                graph_internal_[cu] += nb.weight;
            }
        }
    }

    edge_counts_.resize(h.edge_count());
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        auto& counts = edge_counts_[e];
        for (NodeId v : h.edge(e).members) {
            CommunityId c = p_.community_of(v);
            bool found = false;
            for (auto& [cc, n] : counts) {
                if (cc == c) {
                    ++n;
                    found = true;
                    break;
                }
            }
            if (!found) {
                counts.emplace_back(c, 1);
            }
        }
    }

    const auto& size_weight = h.size_weights();
    for (std::size_t d = 2; d < size_weight.size(); ++d) {
        if (size_weight[d] <= 0.0) {
            continue;
        }
        TaxSize ts;
        ts.d = d;
        ts.weight = size_weight[d];
        for (std::size_t c = EtaWeights::c_min(d); c <= d; ++c) {
            double eta = cfg_.eta.value(c, d);
            if (eta > 0.0) {
                ts.terms.emplace_back(static_cast<std::uint32_t>(c), eta * choose(d, c));
            }
        }
        tax_sizes_.push_back(std::move(ts));
    }
}

double ModularityState::community_tax(double p) const {
    if (p <= 0.0) {
        return 0.0;
    }
    double total = 0.0;
    for (const TaxSize& ts : tax_sizes_) {
        double q = 1.0 - p;
        double sum = 0.0;
        for (const auto& [c, coeff] : ts.terms) {
            sum += coeff * std::pow(p, static_cast<double>(c)) *
                   std::pow(q, static_cast<double>(ts.d - c));
        }
        total += ts.weight * sum;
    }
    return total;
}

double ModularityState::eta_majority(
    const std::vector<std::pair<CommunityId, std::uint32_t>>& counts, std::size_t d) const {
    for (const auto& [c, n] : counts) {
        if (2 * static_cast<std::size_t>(n) > d) {
            return cfg_.eta.value(n, d);
        }
    }
    return 0.0;
}

double ModularityState::delta_move(NodeId v, CommunityId target, double alpha) const {
    CommunityId from = p_.community_of(v);
    if (from == target) {
        return 0.0;
    }

    // Graph part.
    double k_from = 0.0;
    double k_target = 0.0;
    for (const Neighbor& nb : g_->neighbors(v)) {
        if (nb.node == v) {
            continue;  // the loop moves with v and cancels
        }
        CommunityId c = p_.community_of(nb.node);
        if (c == from) {
            k_from += nb.weight;
        } else if (c == target) {
            k_target += nb.weight;
        }
    }
    double deg = g_->degree(v);
    double vol_from = graph_vol_[from];
    double vol_target = target < graph_vol_.size() ? graph_vol_[target] : 0.0;
    double graph_volume = g_->volume();
    double delta_graph =
        (k_target - k_from) / g_->total_weight() -
        cfg_.resolution * 2.0 * deg * (vol_target - vol_from + deg) / (graph_volume * graph_volume);

    // Hypergraph edge-coverage part.
    double delta_covered = 0.0;
    for (const Incidence& inc : h_->incident_edges(v)) {
        const Hyperedge& e = h_->edge(inc.edge);
        std::size_t d = e.size();
        const auto& counts = edge_counts_[inc.edge];
        double before = eta_majority(counts, d);
        double after = 0.0;
        bool target_seen = false;
        for (const auto& [c, n] : counts) {
            std::size_t adjusted = n;
            if (c == from) {
                adjusted = n - inc.multiplicity;
            } else if (c == target) {
                adjusted = n + inc.multiplicity;
                target_seen = true;
            }
            if (2 * adjusted > d) {
                after = cfg_.eta.value(adjusted, d);
                break;
            }
        }
        if (!target_seen && after == 0.0 && 2 * static_cast<std::size_t>(inc.multiplicity) > d) {
            after = cfg_.eta.value(inc.multiplicity, d);
        }
        if (after != before) {
            delta_covered += e.weight * (after - before);
        }
    }

    // Hypergraph degree-tax part.
    double hvol = p_.total_volume();
    double hdeg = p_.node_volume(v);
    double p_from = p_.community_volume(from) / hvol;
    double p_target = p_.community_volume(target) / hvol;
    double shift = hdeg / hvol;
    double delta_tax = community_tax(p_from - shift) + community_tax(p_target + shift) -
                       community_tax(p_from) - community_tax(p_target);

    double edge_weight = h_->total_edge_weight();
    double delta_hyper = (delta_covered - cfg_.resolution * delta_tax) / edge_weight;

    return alpha * delta_hyper + (1.0 - alpha) * delta_graph;
}

void ModularityState::apply_move(NodeId v, CommunityId target) {
    CommunityId from = p_.community_of(v);
    if (from == target) {
        return;
    }
    if (target >= graph_vol_.size()) {
        graph_vol_.resize(target + 1, 0.0);
        graph_internal_.resize(target + 1, 0.0);
    }

    double k_from = 0.0;
    double k_target = 0.0;
    for (const Neighbor& nb : g_->neighbors(v)) {
        if (nb.node == v) {
            continue;
        }
        CommunityId c = p_.community_of(nb.node);
        if (c == from) {
            k_from += nb.weight;
        } else if (c == target) {
            k_target += nb.weight;
        }
    }
    double loop = g_->loop_weight(v);
    double deg = g_->degree(v);
    graph_internal_[from] -= k_from + loop;
    graph_internal_[target] += k_target + loop;
    graph_vol_[from] -= deg;
    graph_vol_[target] += deg;

    for (const Incidence& inc : h_->incident_edges(v)) {
        auto& counts = edge_counts_[inc.edge];
        bool target_seen = false;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (counts[i].first == from) {
                counts[i].second -= inc.multiplicity;
                if (counts[i].second == 0) {
                    counts[i] = counts.back();
                    counts.pop_back();
                    --i;
                }
            } else if (counts[i].first == target) {
                counts[i].second += inc.multiplicity;
                target_seen = true;
            }
        }
        if (!target_seen) {
            counts.emplace_back(target, inc.multiplicity);
        }
    }

    p_.move_node(v, target);
}

void ModularityState::neighbouring_communities(NodeId v, std::vector<CommunityId>& out) const {
    out.clear();
    out.push_back(p_.community_of(v));
    for (const Incidence& inc : h_->incident_edges(v)) {
        for (const auto& [c, n] : edge_counts_[inc.edge]) {
            out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

double ModularityState::graph_objective() const {
    double internal = 0.0;
    for (double w : graph_internal_) {
        internal += w;
    }
    double tax = 0.0;
    double volume = g_->volume();
    for (double vol : graph_vol_) {
        double p = vol / volume;
        tax += p * p;
    }
    return internal / g_->total_weight() - cfg_.resolution * tax;
}

double ModularityState::hyper_objective() const {
    double covered = 0.0;
    for (EdgeId e = 0; e < h_->edge_count(); ++e) {
        double eta = eta_majority(edge_counts_[e], h_->edge(e).size());
        if (eta > 0.0) {
            covered += h_->edge(e).weight * eta;
        }
    }
    double tax = 0.0;
    double hvol = p_.total_volume();
    for (CommunityId c = 0; c < p_.id_bound(); ++c) {
        if (p_.community_size(c) > 0) {
            tax += community_tax(p_.community_volume(c) / hvol);
        }
    }
    double edge_weight = h_->total_edge_weight();
    return covered / edge_weight - cfg_.resolution * tax / edge_weight;
}

}  // namespace hlouvain
