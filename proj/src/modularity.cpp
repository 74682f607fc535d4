#include "hlouvain/modularity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace hlouvain {

EtaWeights EtaWeights::from_tau(double tau, std::size_t d_max) {
    if (tau < 0.0) {
        throw std::invalid_argument("EtaWeights: tau must be non-negative");
    }
    EtaWeights eta;
    eta.kind_ = EtaKind::tau;
    eta.tau_ = tau;
    eta.build_table(d_max);
    return eta;
}

EtaWeights EtaWeights::strict(std::size_t d_max) {
    EtaWeights eta;
    eta.kind_ = EtaKind::strict_majority;
    eta.build_table(d_max);
    return eta;
}

EtaWeights EtaWeights::custom(std::vector<std::vector<double>> table) {
    for (std::size_t d = 0; d < table.size(); ++d) {
        std::size_t want = d < 2 ? 0 : d - c_min(d) + 1;
        if (table[d].size() != want) {
            throw std::invalid_argument("EtaWeights: custom table has wrong row length");
        }
        if (d < 2) {
            continue;
        }
        double top = 0.0;
        for (double w : table[d]) {
            if (w < 0.0 || w > 1.0) {
                throw std::invalid_argument("EtaWeights: custom weights must lie in [0, 1]");
            }
            top = std::max(top, w);
        }
        if (std::abs(top - 1.0) > 1e-12) {
            throw std::invalid_argument("EtaWeights: each custom row must have max weight 1");
        }
    }
    EtaWeights eta;
    eta.kind_ = EtaKind::custom;
    eta.table_ = std::move(table);
    return eta;
}

void EtaWeights::build_table(std::size_t d_max) {
    table_.assign(d_max + 1, {});
    for (std::size_t d = 2; d <= d_max; ++d) {
        std::size_t lo = c_min(d);
        table_[d].resize(d - lo + 1);
        for (std::size_t c = lo; c <= d; ++c) {
            double w;
            if (kind_ == EtaKind::strict_majority) {
                w = c == d ? 1.0 : 0.0;
            } else {
                w = std::pow(static_cast<double>(c) / static_cast<double>(d), tau_);
            }
            table_[d][c - lo] = w;
        }
    }
}

double EtaWeights::value(std::size_t c, std::size_t d) const {
    if (d < 2 || 2 * c <= d || c > d) {
        return 0.0;
    }
    if (d < table_.size()) {
        return table_[d][c - c_min(d)];
    }
    switch (kind_) {
        case EtaKind::tau:
            return std::pow(static_cast<double>(c) / static_cast<double>(d), tau_);
        case EtaKind::strict_majority:
            return c == d ? 1.0 : 0.0;
        case EtaKind::custom:
            throw std::out_of_range("EtaWeights: custom table does not cover edge size");
    }
    return 0.0;
}

double binom_pmf(std::size_t d, std::size_t c, double p) {
    if (c > d) {
        return 0.0;
    }
    if (p <= 0.0) {
        return c == 0 ? 1.0 : 0.0;
    }
    if (p >= 1.0) {
        return c == d ? 1.0 : 0.0;
    }
    double log_choose = std::lgamma(static_cast<double>(d) + 1.0) -
                        std::lgamma(static_cast<double>(c) + 1.0) -
                        std::lgamma(static_cast<double>(d - c) + 1.0);
    double log_pmf = log_choose + static_cast<double>(c) * std::log(p) +
                     static_cast<double>(d - c) * std::log1p(-p);
    return std::exp(log_pmf);
}

namespace {

CommunityId max_community_id(std::span<const CommunityId> assignment) {
    CommunityId max_id = 0;
    for (CommunityId c : assignment) {
        max_id = std::max(max_id, c);
    }
    return max_id;
}

// Community volumes of a hypergraph partition, indexed by community id.
std::vector<double> community_volumes(const Hypergraph& h,
                                      std::span<const CommunityId> assignment) {
    std::vector<double> vols(static_cast<std::size_t>(max_community_id(assignment)) + 1, 0.0);
    for (NodeId v = 0; v < assignment.size(); ++v) {
        vols[assignment[v]] += h.degree(v);
    }
    return vols;
}

// Count of members per community within one edge; small linear-scan map.
void count_edge_communities(const Hyperedge& e, std::span<const CommunityId> assignment,
                            std::vector<std::pair<CommunityId, std::uint32_t>>& out) {
    out.clear();
    for (NodeId v : e.members) {
        CommunityId c = assignment[v];
        bool found = false;
        for (auto& [cc, count] : out) {
            if (cc == c) {
                ++count;
                found = true;
                break;
            }
        }
        if (!found) {
            out.emplace_back(c, 1);
        }
    }
}

}  // namespace

double graph_modularity(const WeightedGraph& g, std::span<const CommunityId> assignment,
                        double resolution) {
    if (assignment.size() != g.node_count()) {
        throw std::invalid_argument("graph_modularity: assignment size mismatch");
    }
    double total = g.total_weight();
    if (total <= 0.0) {
        return 0.0;
    }
    double internal = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (const Neighbor& nb : g.neighbors(u)) {
            if (nb.node < u) {
                continue;  // count each pair once; loops appear once already
            }
            if (assignment[u] == assignment[nb.node]) {
                internal += nb.weight;
            }
        }
    }
    std::vector<double> vols(static_cast<std::size_t>(max_community_id(assignment)) + 1, 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        vols[assignment[v]] += g.degree(v);
    }
    double tax = 0.0;
    double volume = g.volume();
    for (double vol : vols) {
        double p = vol / volume;
        tax += p * p;
    }
    return internal / total - resolution * tax;
}

double hypergraph_modularity(const Hypergraph& h, std::span<const CommunityId> assignment,
                             const ObjectiveConfig& cfg) {
    if (assignment.size() != h.node_count()) {
        throw std::invalid_argument("hypergraph_modularity: assignment size mismatch");
    }
    const EtaWeights& eta = cfg.eta;
    double edge_weight = h.total_edge_weight();

    double covered = 0.0;
    std::vector<std::pair<CommunityId, std::uint32_t>> counts;
    for (const auto& e : h.edges()) {
        count_edge_communities(e, assignment, counts);
        std::size_t d = e.size();
        for (const auto& [c, count] : counts) {
            if (2 * static_cast<std::size_t>(count) > d) {
                covered += e.weight * eta.value(count, d);
                break;  // at most one strict majority
            }
        }
    }

    const std::vector<double>& size_weight = h.size_weights();
    double volume = h.volume();
    double tax = 0.0;
    for (double vol : community_volumes(h, assignment)) {
        if (vol <= 0.0) {
            continue;
        }
        double p = vol / volume;
        for (std::size_t d = 2; d < size_weight.size(); ++d) {
            if (size_weight[d] <= 0.0) {
                continue;
            }
            double expected = 0.0;
            for (std::size_t c = EtaWeights::c_min(d); c <= d; ++c) {
                expected += eta.value(c, d) * binom_pmf(d, c, p);
            }
            tax += size_weight[d] * expected;
        }
    }
    return covered / edge_weight - cfg.resolution * tax / edge_weight;
}

std::vector<CompositionRow> edge_composition(const Hypergraph& h,
                                             std::span<const CommunityId> assignment) {
    if (assignment.size() != h.node_count()) {
        throw std::invalid_argument("edge_composition: assignment size mismatch");
    }
    std::map<std::pair<std::size_t, std::size_t>, double> cells;
    std::vector<std::pair<CommunityId, std::uint32_t>> counts;
    for (const auto& e : h.edges()) {
        count_edge_communities(e, assignment, counts);
        std::uint32_t best = 0;
        for (const auto& [c, count] : counts) {
            best = std::max(best, count);
        }
        cells[{e.size(), best}] += e.weight;
    }
    std::vector<CompositionRow> rows;
    rows.reserve(cells.size());
    for (const auto& [key, weight] : cells) {
        rows.push_back(CompositionRow{key.first, key.second, weight});
    }
    std::sort(rows.begin(), rows.end(), [](const CompositionRow& a, const CompositionRow& b) {
        if (a.weight != b.weight) {
            return a.weight > b.weight;
        }
        if (a.d != b.d) {
            return a.d < b.d;
        }
        return a.c < b.c;
    });
    return rows;
}

std::string format_composition(const std::vector<CompositionRow>& rows) {
    std::string out = "d,c,purity,frequency\n";
    char buf[128];
    for (const auto& row : rows) {
        long purity = std::lround(100.0 * static_cast<double>(row.c) / static_cast<double>(row.d));
        double rounded = std::round(row.weight);
        if (std::abs(row.weight - rounded) < 1e-9) {
            std::snprintf(buf, sizeof(buf), "%zu,%zu,%ld%%,%lld\n", row.d, row.c, purity,
                          static_cast<long long>(rounded));
        } else {
            std::snprintf(buf, sizeof(buf), "%zu,%zu,%ld%%,%.6g\n", row.d, row.c, purity,
                          row.weight);
        }
        out += buf;
    }
    return out;
}

}  // namespace hlouvain
