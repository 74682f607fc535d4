#include "hlouvain/habcd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hlouvain/modularity.hpp"

namespace hlouvain {

std::vector<double> wcd_weights(WcdModel model, std::size_t d,
                                const std::vector<std::vector<double>>* custom) {
    if (d < 2) {
        throw std::invalid_argument("wcd_weights: edge size must be >= 2");
    }
    std::size_t lo = EtaWeights::c_min(d);
    std::size_t count = d - lo + 1;
    std::vector<double> weights(count);
    switch (model) {
        case WcdModel::majority: {
            double w = 1.0 / static_cast<double>(count);
            std::fill(weights.begin(), weights.end(), w);
            break;
        }
        case WcdModel::linear: {
            // proportional to c; the closed form divides by sum_{c} c
            double denom = static_cast<double>(d + d / 2 + 1) * std::ceil(d / 2.0);
            for (std::size_t c = lo; c <= d; ++c) {
                weights[c - lo] = 2.0 * static_cast<double>(c) / denom;
            }
            break;
        }
        case WcdModel::strict_model: {
            std::fill(weights.begin(), weights.end(), 0.0);
            weights.back() = 1.0;
            break;
        }
        case WcdModel::custom: {
            if (custom == nullptr || d >= custom->size() || (*custom)[d].size() != count) {
                throw std::invalid_argument("wcd_weights: custom table missing for edge size");
            }
            weights = (*custom)[d];
            double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
            if (sum <= 0.0) {
                throw std::invalid_argument("wcd_weights: custom weights must have positive sum");
            }
            for (double& w : weights) {
                if (w < 0.0) {
                    throw std::invalid_argument("wcd_weights: custom weights must be >= 0");
                }
                w /= sum;
            }
            break;
        }
    }
    return weights;
}

std::size_t sample_powerlaw(double exponent, std::size_t lo, std::size_t hi, Rng& rng) {
    if (lo > hi) {
        throw std::invalid_argument("sample_powerlaw: empty range");
    }
    if (!(exponent > 1.0)) {
        throw std::invalid_argument("sample_powerlaw: exponent must exceed 1");
    }
    if (lo == hi) {
        return lo;
    }
    double total = 0.0;
    std::vector<double> cumulative(hi - lo + 1);
    for (std::size_t k = lo; k <= hi; ++k) {
        total += std::pow(static_cast<double>(k), -exponent);
        cumulative[k - lo] = total;
    }
    double u = rng.uniform() * total;
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    return lo + static_cast<std::size_t>(it - cumulative.begin());
}

namespace {

void validate_params(const GenParams& p) {
    if (p.n == 0) {
        throw std::invalid_argument("generate: n must be positive");
    }
    if (p.degree_min < 2 || p.degree_min > p.degree_max) {
        throw std::invalid_argument("generate: degree range must satisfy 2 <= min <= max");
    }
    if (p.community_min == 0 || p.community_min > p.community_max || p.community_max > p.n) {
        throw std::invalid_argument("generate: community range must satisfy 1 <= min <= max <= n");
    }
    if (!(p.noise >= 0.0 && p.noise <= 1.0)) {
        throw std::invalid_argument("generate: noise must lie in [0, 1]");
    }
    if (!(p.degree_exponent > 1.0) || !(p.community_exponent > 1.0)) {
        throw std::invalid_argument("generate: power-law exponents must exceed 1");
    }
    double total = 0.0;
    for (std::size_t d = 0; d < p.size_distribution.size(); ++d) {
        double q = p.size_distribution[d];
        if (q < 0.0) {
            throw std::invalid_argument("generate: size distribution entries must be >= 0");
        }
        if (d < 2 && q > 0.0) {
            throw std::invalid_argument("generate: sizes below 2 must have probability 0");
        }
        if (q > 0.0 && d > p.n) {
            throw std::invalid_argument("generate: edge size exceeds node count");
        }
        total += q;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("generate: size distribution must sum to 1");
    }
}

// Community sizes: power-law draws until they cover n, the last draw
// truncated to fit; redraw when truncation leaves it more than 1 below the
// allowed minimum.
std::vector<std::size_t> sample_community_sizes(const GenParams& p, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::size_t> sizes;
        std::size_t sum = 0;
        while (sum < p.n) {
            sizes.push_back(
                sample_powerlaw(p.community_exponent, p.community_min, p.community_max, rng));
            sum += sizes.back();
        }
        std::size_t excess = sum - p.n;
        if (sizes.back() <= excess) {
            continue;  // the last community would vanish entirely
        }
        std::size_t truncated = sizes.back() - excess;
        if (truncated + 1 < p.community_min) {
            continue;
        }
        sizes.back() = truncated;
        return sizes;
    }
    throw std::invalid_argument("generate: infeasible community-size parameters");
}

// Weighted draw of one index from `prefix` (inclusive prefix sums).
std::size_t draw_from_prefix(const std::vector<double>& prefix, Rng& rng) {
    double total = prefix.back();
    double u = rng.uniform() * total;
    auto it = std::upper_bound(prefix.begin(), prefix.end(), u);
    if (it == prefix.end()) {
        --it;
    }
    return static_cast<std::size_t>(it - prefix.begin());
}

// Samples `want` distinct nodes from `pool`, weighted by residual target
// degree (uniform once every residual in the pool is exhausted). Appends to
// `edge`, which may already contain nodes outside the pool.
void sample_members(const std::vector<NodeId>& pool, const std::vector<double>& residual,
                    std::size_t want, Rng& rng, std::vector<NodeId>& edge) {
    if (want == 0) {
        return;
    }
    if (pool.size() < want) {
        throw std::invalid_argument("generate: node pool smaller than edge side");
    }
    std::vector<double> prefix(pool.size());
    double total = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        total += std::max(residual[pool[i]], 0.0);
        prefix[i] = total;
    }
    if (total <= 0.0) {
        for (std::size_t i = 0; i < pool.size(); ++i) {
            prefix[i] = static_cast<double>(i + 1);
        }
    }
    std::size_t picked = 0;
    int stale = 0;
    while (picked < want) {
        NodeId candidate = pool[draw_from_prefix(prefix, rng)];
        if (std::find(edge.begin(), edge.end(), candidate) == edge.end()) {
            edge.push_back(candidate);
            ++picked;
            stale = 0;
        } else if (++stale > 200) {
            // Degenerate weights: fall back to a uniform pass over the pool.
            for (NodeId v : pool) {
                if (picked == want) {
                    break;
                }
                if (std::find(edge.begin(), edge.end(), v) == edge.end()) {
                    edge.push_back(v);
                    ++picked;
                }
            }
            break;
        }
    }
}

}  // namespace

GeneratedHypergraph generate(const GenParams& params) {
    validate_params(params);

    Rng degree_rng = Rng::stream(params.seed, "habcd-degrees");
    Rng community_rng = Rng::stream(params.seed, "habcd-communities");
    Rng edge_rng = Rng::stream(params.seed, "habcd-edges");

    std::vector<double> target(params.n);
    for (auto& t : target) {
        t = static_cast<double>(
            sample_powerlaw(params.degree_exponent, params.degree_min, params.degree_max,
                            degree_rng));
    }
    double target_volume = std::accumulate(target.begin(), target.end(), 0.0);

    std::vector<std::size_t> community_sizes = sample_community_sizes(params, community_rng);
    std::size_t community_count = community_sizes.size();
    std::vector<CommunityId> assignment(params.n);
    std::vector<std::vector<NodeId>> members(community_count);
    {
        NodeId v = 0;
        for (std::size_t c = 0; c < community_count; ++c) {
            members[c].reserve(community_sizes[c]);
            for (std::size_t i = 0; i < community_sizes[c]; ++i, ++v) {
                assignment[v] = static_cast<CommunityId>(c);
                members[c].push_back(v);
            }
        }
    }
    std::vector<double> community_volume(community_count, 0.0);
    for (NodeId v = 0; v < params.n; ++v) {
        community_volume[assignment[v]] += target[v];
    }
    std::vector<double> community_prefix(community_count);
    {
        double total = 0.0;
        for (std::size_t c = 0; c < community_count; ++c) {
            total += community_volume[c];
            community_prefix[c] = total;
        }
    }

    // Mean edge size fixes the edge count that spends the degree budget.
    double mean_size = 0.0;
    for (std::size_t d = 2; d < params.size_distribution.size(); ++d) {
        mean_size += static_cast<double>(d) * params.size_distribution[d];
    }
    std::size_t edge_count =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(target_volume / mean_size)));

    std::vector<NodeId> all_nodes(params.n);
    std::iota(all_nodes.begin(), all_nodes.end(), NodeId{0});

    std::vector<double> residual = target;
    std::vector<Hyperedge> edges;
    edges.reserve(edge_count);
    std::size_t background_count = 0;
    std::vector<NodeId> outside_pool;

    for (std::size_t i = 0; i < edge_count; ++i) {
        // Edge size d ~ q.
        double u = edge_rng.uniform();
        std::size_t d = 0;
        double acc = 0.0;
        for (std::size_t k = 2; k < params.size_distribution.size(); ++k) {
            acc += params.size_distribution[k];
            if (u < acc || k + 1 == params.size_distribution.size()) {
                d = k;
                break;
            }
        }
        while (params.size_distribution[d] <= 0.0) {
            --d;  // guard against trailing zero-probability sizes
        }

        Hyperedge edge;
        edge.weight = 1.0;
        bool background = edge_rng.uniform() < params.noise;
        if (!background) {
            std::size_t community = draw_from_prefix(community_prefix, edge_rng);
            std::size_t size = community_sizes[community];
            std::size_t c_lo = EtaWeights::c_min(d);
            std::size_t c_hi = std::min(d, size);
            if (d > params.n - size + c_lo) {
                c_lo = d - (params.n - size);  // outside pool must cover d - c nodes
            }
            if (c_lo > c_hi) {
                background = true;  // community too small for a majority edge
            } else {
                std::vector<double> w = wcd_weights(
                    params.model, d,
                    params.model == WcdModel::custom ? &params.custom_wcd : nullptr);
                std::size_t base = EtaWeights::c_min(d);
                std::vector<double> prefix;
                prefix.reserve(c_hi - c_lo + 1);
                double total = 0.0;
                for (std::size_t c = c_lo; c <= c_hi; ++c) {
                    total += w[c - base];
                    prefix.push_back(total);
                }
                std::size_t c = total > 0.0 ? c_lo + draw_from_prefix(prefix, edge_rng)
                                            : c_hi;  // truncated mass: most homogeneous option
                sample_members(members[community], residual, c, edge_rng, edge.members);
                if (d > c) {
                    outside_pool.clear();
                    outside_pool.reserve(params.n - size);
                    for (NodeId v : all_nodes) {
                        if (assignment[v] != community) {
                            outside_pool.push_back(v);
                        }
                    }
                    sample_members(outside_pool, residual, d - c, edge_rng, edge.members);
                }
            }
        }
        if (background) {
            sample_members(all_nodes, residual, d, edge_rng, edge.members);
            ++background_count;
        }
        for (NodeId v : edge.members) {
            residual[v] -= 1.0;
        }
        edges.push_back(std::move(edge));
    }

    GroundTruth truth;
    truth.assignment = std::move(assignment);
    truth.realized_noise =
        static_cast<double>(background_count) / static_cast<double>(edge_count);
    return GeneratedHypergraph{Hypergraph(params.n, std::move(edges)), std::move(truth)};
}

Hypergraph inject_local_noise(const Hypergraph& h, const GroundTruth& truth, std::size_t count,
                              std::size_t edge_size, std::uint64_t seed) {
    if (edge_size < 2) {
        throw std::invalid_argument("inject_local_noise: edge size must be >= 2");
    }
    if (truth.assignment.size() != h.node_count()) {
        throw std::invalid_argument("inject_local_noise: ground truth size mismatch");
    }
    CommunityId max_id = 0;
    for (CommunityId c : truth.assignment) {
        max_id = std::max(max_id, c);
    }
    std::vector<std::size_t> sizes(static_cast<std::size_t>(max_id) + 1, 0);
    for (CommunityId c : truth.assignment) {
        ++sizes[c];
    }
    // Two smallest non-empty communities; ties resolved toward smaller ids.
    CommunityId first = kInvalidNode;
    CommunityId second = kInvalidNode;
    for (CommunityId c = 0; c < sizes.size(); ++c) {
        if (sizes[c] == 0) {
            continue;
        }
        if (first == kInvalidNode || sizes[c] < sizes[first]) {
            second = first;
            first = c;
        } else if (second == kInvalidNode || sizes[c] < sizes[second]) {
            second = c;
        }
    }
    if (second == kInvalidNode) {
        throw std::invalid_argument("inject_local_noise: need at least two communities");
    }
    std::vector<NodeId> pool;
    for (NodeId v = 0; v < truth.assignment.size(); ++v) {
        if (truth.assignment[v] == first || truth.assignment[v] == second) {
            pool.push_back(v);
        }
    }
    if (pool.size() < edge_size) {
        throw std::invalid_argument("inject_local_noise: pool smaller than edge size");
    }

    Rng rng = Rng::stream(seed, "local-noise");
    std::vector<Hyperedge> edges = h.edges();
    edges.reserve(edges.size() + count);
    for (std::size_t i = 0; i < count; ++i) {
        Hyperedge edge;
        edge.weight = 1.0;
        std::vector<NodeId> scratch = pool;
        for (std::size_t k = 0; k < edge_size; ++k) {
            std::size_t j = rng.uniform_below(scratch.size() - k);
            edge.members.push_back(scratch[j]);
            std::swap(scratch[j], scratch[scratch.size() - 1 - k]);
        }
        edges.push_back(std::move(edge));
    }
    return Hypergraph(h.node_count(), std::move(edges));
}

}  // namespace hlouvain
