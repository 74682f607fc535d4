#include "hlouvain/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hlouvain/partition.hpp"

namespace hlouvain {

ContingencyTable ContingencyTable::build(std::span<const CommunityId> a,
                                         std::span<const CommunityId> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("ContingencyTable: length mismatch");
    }
    if (a.empty()) {
        throw std::invalid_argument("ContingencyTable: empty labelings");
    }
    std::vector<CommunityId> ra = canonical_labels({a.begin(), a.end()});
    std::vector<CommunityId> rb = canonical_labels({b.begin(), b.end()});
    std::size_t ka = *std::max_element(ra.begin(), ra.end()) + 1;
    std::size_t kb = *std::max_element(rb.begin(), rb.end()) + 1;

    ContingencyTable table;
    table.counts.assign(ka, std::vector<std::uint64_t>(kb, 0));
    table.row_marginals.assign(ka, 0);
    table.col_marginals.assign(kb, 0);
    table.total = a.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++table.counts[ra[i]][rb[i]];
        ++table.row_marginals[ra[i]];
        ++table.col_marginals[rb[i]];
    }
    return table;
}

namespace {

double entropy(const std::vector<std::uint64_t>& marginals, double n) {
    double h = 0.0;
    for (std::uint64_t m : marginals) {
        if (m > 0) {
            double p = static_cast<double>(m) / n;
            h -= p * std::log(p);
        }
    }
    return h;
}

double mutual_information(const ContingencyTable& t) {
    double n = static_cast<double>(t.total);
    double mi = 0.0;
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
            std::uint64_t nij = t.counts[i][j];
            if (nij == 0) {
                continue;
            }
            double pij = static_cast<double>(nij) / n;
            mi += pij * std::log(n * static_cast<double>(nij) /
                                 (static_cast<double>(t.row_marginals[i]) *
                                  static_cast<double>(t.col_marginals[j])));
        }
    }
    return std::max(mi, 0.0);
}

// Expected mutual information under the permutation (hypergeometric) model.
double expected_mutual_information(const ContingencyTable& t) {
    double n = static_cast<double>(t.total);
    std::uint64_t total = t.total;
    double emi = 0.0;
    for (std::uint64_t ai : t.row_marginals) {
        for (std::uint64_t bj : t.col_marginals) {
            std::uint64_t lo = ai + bj > total ? ai + bj - total : 0;
            lo = std::max<std::uint64_t>(lo, 1);
            std::uint64_t hi = std::min(ai, bj);
            for (std::uint64_t nij = lo; nij <= hi; ++nij) {
                double term = (static_cast<double>(nij) / n) *
                              std::log(n * static_cast<double>(nij) /
                                       (static_cast<double>(ai) * static_cast<double>(bj)));
                double log_prob =
                    std::lgamma(static_cast<double>(ai) + 1.0) +
                    std::lgamma(static_cast<double>(bj) + 1.0) +
                    std::lgamma(n - static_cast<double>(ai) + 1.0) +
                    std::lgamma(n - static_cast<double>(bj) + 1.0) -
                    std::lgamma(n + 1.0) -
                    std::lgamma(static_cast<double>(nij) + 1.0) -
                    std::lgamma(static_cast<double>(ai - nij) + 1.0) -
                    std::lgamma(static_cast<double>(bj - nij) + 1.0) -
                    std::lgamma(n - static_cast<double>(ai) - static_cast<double>(bj) +
                                static_cast<double>(nij) + 1.0);
                emi += term * std::exp(log_prob);
            }
        }
    }
    return emi;
}

bool same_up_to_relabel(std::span<const CommunityId> a, std::span<const CommunityId> b) {
    return canonical_labels({a.begin(), a.end()}) == canonical_labels({b.begin(), b.end()});
}

}  // namespace

double ami(std::span<const CommunityId> a, std::span<const CommunityId> b,
           AmiNormalization normalization) {
    ContingencyTable t = ContingencyTable::build(a, b);
    if (same_up_to_relabel(a, b)) {
        return 1.0;  // exact by definition; the ratio below only approaches it
    }
    double n = static_cast<double>(t.total);
    double h1 = entropy(t.row_marginals, n);
    double h2 = entropy(t.col_marginals, n);
    double mi = mutual_information(t);
    double emi = expected_mutual_information(t);

    double norm;
    switch (normalization) {
        case AmiNormalization::min:
            norm = std::min(h1, h2);
            break;
        case AmiNormalization::max:
            norm = std::max(h1, h2);
            break;
        default:
            norm = 0.5 * (h1 + h2);
    }
    double denom = norm - emi;
    if (std::abs(denom) < 1e-12) {
        return same_up_to_relabel(a, b) ? 1.0 : 0.0;
    }
    return (mi - emi) / denom;
}

TauRecommendation suggest_tau(const std::vector<CompositionRow>& rows) {
    double majority_weight = 0.0;
    double homogeneous_weight = 0.0;
    for (const auto& row : rows) {
        if (row.d < 3 || 2 * row.c <= row.d) {
            continue;  // pairs carry no shape signal; non-majority edges are noise
        }
        majority_weight += row.weight;
        if (row.c == row.d) {
            homogeneous_weight += row.weight;
        }
    }

    TauRecommendation rec;
    if (majority_weight <= 0.0) {
        rec.purity_ratio = 0.0;
        rec.use_strict = false;
        rec.tau = 2.0;
        rec.rationale = "insufficient signal: no majority edges of size >= 3";
        return rec;
    }
    rec.purity_ratio = homogeneous_weight / majority_weight;
    if (rec.purity_ratio >= 0.8) {
        rec.use_strict = true;
        rec.tau = 0.0;
        rec.rationale = "mostly homogeneous majority edges: strict objective";
    } else if (rec.purity_ratio >= 0.5) {
        rec.use_strict = false;
        rec.tau = 3.0;
        rec.rationale = "homogeneous-leaning composition: tau = 3";
    } else {
        rec.use_strict = false;
        rec.tau = 2.0;
        rec.rationale = "mixed composition: tau = 2";
    }
    return rec;
}

}  // namespace hlouvain
