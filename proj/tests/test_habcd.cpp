#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hlouvain/habcd.hpp"
#include "hlouvain/modularity.hpp"
#include "testutil.hpp"

using namespace hlouvain;

namespace {

GenParams small_params() {
    GenParams p;
    p.n = 60;
    p.degree_exponent = 2.5;
    p.degree_min = 3;
    p.degree_max = 8;
    p.community_exponent = 1.5;
    p.community_min = 15;
    p.community_max = 30;
    p.noise = 0.2;
    p.size_distribution = {0.0, 0.0, 0.0, 0.5, 0.5};  // sizes 3 and 4
    p.model = WcdModel::linear;
    p.seed = 99;
    return p;
}

}  // namespace

TEST_CASE("wcd weights: closed forms and normalization") {
    // uniform over admissible majority counts
    auto maj5 = wcd_weights(WcdModel::majority, 5);
    REQUIRE(maj5.size() == 3);
    for (double w : maj5) {
        CHECK(w == doctest::Approx(1.0 / 3.0));
    }

    // linear in c: for d=5 the weights are c/12 for c = 3,4,5
    auto lin5 = wcd_weights(WcdModel::linear, 5);
    REQUIRE(lin5.size() == 3);
    CHECK(lin5[0] == doctest::Approx(0.25));
    CHECK(lin5[1] == doctest::Approx(1.0 / 3.0));
    CHECK(lin5[2] == doctest::Approx(5.0 / 12.0));

    auto lin4 = wcd_weights(WcdModel::linear, 4);
    REQUIRE(lin4.size() == 2);
    CHECK(lin4[0] == doctest::Approx(3.0 / 7.0));
    CHECK(lin4[1] == doctest::Approx(4.0 / 7.0));

    auto strict6 = wcd_weights(WcdModel::strict_model, 6);
    REQUIRE(strict6.size() == 3);
    CHECK(strict6[0] == 0.0);
    CHECK(strict6[1] == 0.0);
    CHECK(strict6[2] == 1.0);

    // every family is a probability distribution
    for (std::size_t d = 2; d <= 10; ++d) {
        for (auto model : {WcdModel::majority, WcdModel::linear, WcdModel::strict_model}) {
            auto w = wcd_weights(model, d);
            CHECK(w.size() == d - (d / 2 + 1) + 1);
            CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("wcd custom tables normalize and validate") {
    std::vector<std::vector<double>> table(6);
    table[5] = {2.0, 1.0, 1.0};
    auto w = wcd_weights(WcdModel::custom, 5, &table);
    CHECK(w[0] == doctest::Approx(0.5));
    CHECK(w[1] == doctest::Approx(0.25));
    CHECK(w[2] == doctest::Approx(0.25));

    CHECK_THROWS_AS(wcd_weights(WcdModel::custom, 5, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(wcd_weights(WcdModel::custom, 4, &table), std::invalid_argument);
    std::vector<std::vector<double>> bad(6);
    bad[5] = {1.0, -0.5, 0.5};
    CHECK_THROWS_AS(wcd_weights(WcdModel::custom, 5, &bad), std::invalid_argument);
    std::vector<std::vector<double>> zeros(6);
    zeros[5] = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(wcd_weights(WcdModel::custom, 5, &zeros), std::invalid_argument);
    CHECK_THROWS_AS(wcd_weights(WcdModel::majority, 1), std::invalid_argument);
}

TEST_CASE("power-law sampling: bounds, degenerate range, frequencies") {
    Rng rng = Rng::stream(500, "test-powerlaw");
    CHECK(sample_powerlaw(2.5, 7, 7, rng) == 7);

    std::map<std::size_t, std::size_t> freq;
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) {
        std::size_t k = sample_powerlaw(2.0, 2, 4, rng);
        CHECK(k >= 2);
        CHECK(k <= 4);
        ++freq[k];
    }
    // P(2)/P(4) = (2/4)^-2 = 4; at 200k draws the ratio is tight
    double ratio = static_cast<double>(freq[2]) / static_cast<double>(freq[4]);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));

    CHECK_THROWS_AS(sample_powerlaw(1.0, 2, 4, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_powerlaw(2.0, 5, 4, rng), std::invalid_argument);
}

TEST_CASE("generate is deterministic and structurally sound") {
    GenParams p = small_params();
    GeneratedHypergraph a = generate(p);
    GeneratedHypergraph b = generate(p);

    CHECK(a.truth.assignment == b.truth.assignment);
    CHECK(a.truth.realized_noise == b.truth.realized_noise);
    REQUIRE(a.graph.edge_count() == b.graph.edge_count());
    for (EdgeId e = 0; e < a.graph.edge_count(); ++e) {
        CHECK(a.graph.edge(e).members == b.graph.edge(e).members);
        CHECK(a.graph.edge(e).weight == b.graph.edge(e).weight);
    }

    const Hypergraph& h = a.graph;
    CHECK(h.node_count() == p.n);
    CHECK(a.truth.assignment.size() == p.n);
    CHECK(a.truth.realized_noise >= 0.0);
    CHECK(a.truth.realized_noise <= 1.0);

    for (const auto& e : h.edges()) {
        CHECK(e.size() >= 3);
        CHECK(e.size() <= 4);
        // members are distinct
        auto sorted = e.members;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }

    // ground truth is a contiguous block labeling with in-range sizes
    std::map<CommunityId, std::size_t> sizes;
    for (std::size_t v = 0; v < p.n; ++v) {
        ++sizes[a.truth.assignment[v]];
        if (v > 0) {
            CHECK(a.truth.assignment[v] >= a.truth.assignment[v - 1]);
        }
    }
    CHECK(sizes.size() >= 2);
    for (const auto& [c, s] : sizes) {
        CHECK(s >= p.community_min - 1);  // truncation may undershoot by one
        CHECK(s <= p.community_max);
    }

    // a fresh seed changes the outcome
    p.seed = 100;
    GeneratedHypergraph other = generate(p);
    bool differs = other.graph.edge_count() != h.edge_count();
    if (!differs) {
        for (EdgeId e = 0; e < h.edge_count(); ++e) {
            if (other.graph.edge(e).members != h.edge(e).members) {
                differs = true;
                break;
            }
        }
    }
    CHECK(differs);
}

TEST_CASE("pure noise and pure signal extremes") {
    GenParams p = small_params();
    p.noise = 1.0;
    GeneratedHypergraph noisy = generate(p);
    CHECK(noisy.truth.realized_noise == 1.0);

    p.noise = 0.0;
    p.model = WcdModel::strict_model;
    GeneratedHypergraph clean = generate(p);
    CHECK(clean.truth.realized_noise == 0.0);
    // strict model with zero noise: every edge lies inside one community
    for (const auto& e : clean.graph.edges()) {
        CommunityId c = clean.truth.assignment[e.members.front()];
        for (NodeId v : e.members) {
            CHECK(clean.truth.assignment[v] == c);
        }
    }
    // the planted partition scores clearly above zero under the strict objective
    ObjectiveConfig cfg;
    cfg.eta = EtaWeights::strict();
    CHECK(hypergraph_modularity(clean.graph, clean.truth.assignment, cfg) > 0.1);
}

TEST_CASE("generate validates parameters") {
    GenParams p = small_params();
    p.noise = 1.5;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);

    p = small_params();
    p.size_distribution = {0.0, 0.0, 0.5, 0.4};  // sums to 0.9
    CHECK_THROWS_AS(generate(p), std::invalid_argument);

    p = small_params();
    p.size_distribution = {0.0, 0.5, 0.5};  // mass on size 1
    CHECK_THROWS_AS(generate(p), std::invalid_argument);

    p = small_params();
    p.size_distribution.assign(70, 0.0);
    p.size_distribution[65] = 1.0;  // size above n
    CHECK_THROWS_AS(generate(p), std::invalid_argument);

    p = small_params();
    p.degree_min = 1;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);

    p = small_params();
    p.community_max = p.n + 1;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);

    p = small_params();
    p.degree_exponent = 1.0;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);

    // feasibility loop: min=max=7 can never tile 10 nodes within tolerance 1
    p = small_params();
    p.n = 10;
    p.community_min = 7;
    p.community_max = 7;
    p.degree_min = 3;
    p.degree_max = 5;
    p.size_distribution = {0.0, 0.0, 1.0};
    CHECK_THROWS_AS(generate(p), std::invalid_argument);
}

TEST_CASE("local noise injection targets the two smallest communities") {
    // communities: 0 -> nodes 0..2 (size 3), 1 -> 3..6 (size 4), 2 -> 7..11 (size 5)
    std::vector<Hyperedge> edges;
    edges.push_back(Hyperedge{{0, 1, 2}, 1.0});
    edges.push_back(Hyperedge{{3, 4, 5, 6}, 1.0});
    edges.push_back(Hyperedge{{7, 8, 9, 10, 11}, 1.0});
    Hypergraph h(12, std::move(edges));
    GroundTruth truth;
    truth.assignment = {0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 2};

    Hypergraph spiked = inject_local_noise(h, truth, 5, 3, 42);
    CHECK(spiked.edge_count() == 8);
    CHECK(spiked.node_count() == 12);
    for (EdgeId e = 3; e < 8; ++e) {
        const auto& members = spiked.edge(e).members;
        CHECK(members.size() == 3);
        auto sorted = members;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        for (NodeId v : members) {
            CHECK(v <= 6);  // union of communities 0 and 1
        }
        CHECK(spiked.edge(e).weight == 1.0);
    }

    Hypergraph again = inject_local_noise(h, truth, 5, 3, 42);
    for (EdgeId e = 0; e < 8; ++e) {
        CHECK(again.edge(e).members == spiked.edge(e).members);
    }

    CHECK_THROWS_AS(inject_local_noise(h, truth, 2, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(inject_local_noise(h, truth, 2, 8, 0), std::invalid_argument);
    GroundTruth single;
    single.assignment.assign(12, 0);
    CHECK_THROWS_AS(inject_local_noise(h, single, 2, 3, 0), std::invalid_argument);
}
