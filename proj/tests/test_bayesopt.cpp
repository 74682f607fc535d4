#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hlouvain/bayesopt.hpp"
#include "hlouvain/hlouvain.hpp"
#include "hlouvain/modularity.hpp"
#include "testutil.hpp"

using namespace hlouvain;

TEST_CASE("gp with one observation falls back to a unit-variance prior") {
    GaussianProcess gp = GaussianProcess::fit({{0.4, 0.6}}, {1.25}, 1);
    CHECK(gp.degenerate());
    auto at = gp.predict({0.4, 0.6});
    CHECK(at.mean == doctest::Approx(1.25));
    CHECK(at.variance == doctest::Approx(1.0));
    auto far = gp.predict({0.0, 0.0});
    CHECK(far.mean == doctest::Approx(1.25));
    CHECK(far.variance == doctest::Approx(1.0));
}

TEST_CASE("gp fit validates inputs") {
    CHECK_THROWS_AS(GaussianProcess::fit({}, {}, 0), std::invalid_argument);
    CHECK_THROWS_AS(GaussianProcess::fit({{0.1, 0.2}}, {1.0, 2.0}, 0), std::invalid_argument);
}

TEST_CASE("gp with equal observations predicts the common value everywhere") {
    std::vector<std::array<double, 2>> pts = {{0.1, 0.1}, {0.5, 0.9}, {0.8, 0.3}};
    GaussianProcess gp = GaussianProcess::fit(pts, {0.7, 0.7, 0.7}, 5);
    CHECK(gp.degenerate());
    auto pred = gp.predict({0.23, 0.77});
    CHECK(pred.mean == doctest::Approx(0.7));
    CHECK(pred.variance == doctest::Approx(1.0));
}

TEST_CASE("gp interpolates training data and is more certain near it") {
    std::vector<std::array<double, 2>> pts = {
        {0.1, 0.2}, {0.3, 0.8}, {0.6, 0.4}, {0.9, 0.9}, {0.5, 0.1}};
    std::vector<double> vals = {0.2, 0.45, 0.6, 0.95, 0.5};
    GaussianProcess gp = GaussianProcess::fit(pts, vals, 11);

    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto pred = gp.predict(pts[i]);
        // within a few noise standard deviations of the observation
        CHECK(std::abs(pred.mean - vals[i]) < 0.15);
        CHECK(pred.variance >= 0.0);
    }
    double var_at_data = gp.predict(pts[2]).variance;
    double var_far = gp.predict({0.05, 0.95}).variance;
    CHECK(var_at_data <= var_far + 1e-12);
}

TEST_CASE("gp predictions do not depend on observation order") {
    std::vector<std::array<double, 2>> pts = {
        {0.1, 0.2}, {0.3, 0.8}, {0.6, 0.4}, {0.9, 0.9}, {0.5, 0.1}};
    std::vector<double> vals = {0.2, 0.45, 0.6, 0.95, 0.5};
    GaussianProcess a = GaussianProcess::fit(pts, vals, 3);

    std::vector<std::array<double, 2>> shuffled = {pts[3], pts[0], pts[4], pts[2], pts[1]};
    std::vector<double> shuffled_vals = {vals[3], vals[0], vals[4], vals[2], vals[1]};
    GaussianProcess b = GaussianProcess::fit(shuffled, shuffled_vals, 3);

    for (double x = 0.05; x < 1.0; x += 0.3) {
        for (double y = 0.05; y < 1.0; y += 0.3) {
            auto pa = a.predict({x, y});
            auto pb = b.predict({x, y});
            CHECK(pa.mean == doctest::Approx(pb.mean).epsilon(1e-9));
            CHECK(pa.variance == doctest::Approx(pb.variance).epsilon(1e-7).scale(1.0));
        }
    }
}

TEST_CASE("expected improvement is non-negative and vanishes for hopeless incumbents") {
    std::vector<std::array<double, 2>> pts = {
        {0.2, 0.2}, {0.8, 0.8}, {0.2, 0.8}, {0.8, 0.2}};
    std::vector<double> vals = {0.1, 0.9, 0.4, 0.6};
    GaussianProcess gp = GaussianProcess::fit(pts, vals, 17);

    for (int i = 1; i <= 50; ++i) {
        std::array<double, 2> x{(i % 7) / 7.0, (i % 11) / 11.0};
        CHECK(expected_improvement(gp, x, 0.9) >= 0.0);
    }
    // incumbent far above anything the surrogate can reach
    CHECK(expected_improvement(gp, {0.5, 0.5}, 50.0) < 1e-6);
}

TEST_CASE("propose_next avoids duplicates and stays in the box") {
    std::vector<std::array<double, 2>> pts = {{0.25, 0.25}, {0.75, 0.75}};
    std::vector<double> vals = {0.3, 0.7};
    GaussianProcess gp = GaussianProcess::fit(pts, vals, 23);

    Rng rng = Rng::stream(23, "test-propose");
    std::vector<std::array<double, 2>> evaluated = pts;
    for (int round = 0; round < 5; ++round) {
        auto x = propose_next(gp, 0.7, evaluated, rng);
        CHECK(x[0] >= 0.0);
        CHECK(x[0] <= 1.0);
        CHECK(x[1] >= 0.0);
        CHECK(x[1] <= 1.0);
        for (const auto& p : evaluated) {
            double dist = std::hypot(x[0] - p[0], x[1] - p[1]);
            CHECK(dist >= 1e-9);
        }
        evaluated.push_back(x);
    }
}

TEST_CASE("objective averages deterministic per-seed runs") {
    Hypergraph h = testutil::two_triples();
    ObjectiveConfig cfg;
    cfg.eta = EtaWeights::strict();
    std::vector<std::uint64_t> seeds = {11, 22, 33, 44};

    ObjectiveOutcome a = objective(h, cfg, 0.5, 0.5, seeds, 1);
    REQUIRE(a.runs.size() == 4);
    double mean = 0.0;
    for (const auto& run : a.runs) {
        mean += run.q_h;
    }
    CHECK(a.mean_q == doctest::Approx(mean / 4.0).epsilon(1e-12));

    // identical results regardless of the thread count
    ObjectiveOutcome b = objective(h, cfg, 0.5, 0.5, seeds, 3);
    CHECK(b.mean_q == a.mean_q);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        CHECK(b.runs[i].partition == a.runs[i].partition);
        CHECK(b.runs[i].q_h == a.runs[i].q_h);
    }

    CHECK_THROWS_AS(objective(h, cfg, 0.5, 0.5, {}, 1), std::invalid_argument);
}

TEST_CASE("tune finds the toy optimum and reports a coherent result") {
    Hypergraph h = testutil::two_triples();
    ObjectiveConfig cfg;
    cfg.eta = EtaWeights::strict();
    TunerConfig tcfg;
    tcfg.init_points = 3;
    tcfg.min_evaluations = 6;
    tcfg.patience = 2;
    tcfg.seeds = {1, 2, 3, 4};
    tcfg.master_seed = 7;

    TuneResult result = tune(h, cfg, tcfg);
    CHECK(result.evaluations.size() >= 6);
    CHECK(result.best_q_h == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(result.best_partition == std::vector<CommunityId>{0, 0, 0, 1, 1, 1});

    // reported best never falls below any observed single run
    double best_seen = -1e9;
    for (const auto& ev : result.evaluations) {
        CHECK(ev.per_seed_q.size() == 4);
        double mean = 0.0;
        for (double q : ev.per_seed_q) {
            best_seen = std::max(best_seen, q);
            mean += q;
        }
        CHECK(ev.mean_q == doctest::Approx(mean / 4.0).epsilon(1e-12));
        CHECK(ev.p_c > 0.0);
        CHECK(ev.p_c < 1.0);
        CHECK(ev.p_b >= 0.0);
        CHECK(ev.p_b <= 1.0);
    }
    CHECK(result.best_q_h >= best_seen - 1e-12);

    // rerunning the tuner reproduces the whole trace
    TuneResult again = tune(h, cfg, tcfg);
    REQUIRE(again.evaluations.size() == result.evaluations.size());
    for (std::size_t i = 0; i < result.evaluations.size(); ++i) {
        CHECK(again.evaluations[i].p_b == result.evaluations[i].p_b);
        CHECK(again.evaluations[i].p_c == result.evaluations[i].p_c);
        CHECK(again.evaluations[i].mean_q == result.evaluations[i].mean_q);
    }
    CHECK(again.best_q_h == result.best_q_h);
}

TEST_CASE("tune with init_points == min_evaluations is pure random search") {
    Hypergraph h = testutil::two_triples();
    ObjectiveConfig cfg;
    cfg.eta = EtaWeights::strict();
    TunerConfig tcfg;
    tcfg.init_points = 5;
    tcfg.min_evaluations = 5;
    tcfg.seeds = {1, 2};
    tcfg.master_seed = 9;

    TuneResult result = tune(h, cfg, tcfg);
    CHECK(result.evaluations.size() == 5);
}

TEST_CASE("longer tuning budgets extend shorter ones without changing the prefix") {
    Hypergraph h = testutil::two_triples();
    ObjectiveConfig cfg;
    cfg.eta = EtaWeights::from_tau(2.0);
    TunerConfig base;
    base.init_points = 3;
    base.patience = 2;
    base.seeds = {5, 6};
    base.master_seed = 31;

    base.min_evaluations = 5;
    TuneResult small = tune(h, cfg, base);
    base.min_evaluations = 8;
    TuneResult large = tune(h, cfg, base);

    CHECK(large.evaluations.size() >= 8);
    std::size_t overlap = std::min(small.evaluations.size(), large.evaluations.size());
    for (std::size_t i = 0; i < overlap; ++i) {
        CHECK(small.evaluations[i].p_b == large.evaluations[i].p_b);
        CHECK(small.evaluations[i].p_c == large.evaluations[i].p_c);
        CHECK(small.evaluations[i].mean_q == large.evaluations[i].mean_q);
    }
}

TEST_CASE("tune validates its configuration") {
    Hypergraph h = testutil::two_triples();
    ObjectiveConfig cfg;
    TunerConfig tcfg;
    tcfg.seeds = {1, 2};

    tcfg.init_points = 0;
    CHECK_THROWS_AS(tune(h, cfg, tcfg), std::invalid_argument);

    tcfg.init_points = 5;
    tcfg.min_evaluations = 3;
    CHECK_THROWS_AS(tune(h, cfg, tcfg), std::invalid_argument);

    tcfg = TunerConfig{};
    tcfg.seeds = {1, 1};
    CHECK_THROWS_AS(tune(h, cfg, tcfg), std::invalid_argument);

    tcfg = TunerConfig{};
    tcfg.seeds = {1, 2};
    tcfg.pc_min = 0.0;
    CHECK_THROWS_AS(tune(h, cfg, tcfg), std::invalid_argument);
    tcfg.pc_min = 0.6;
    tcfg.pc_max = 0.4;
    CHECK_THROWS_AS(tune(h, cfg, tcfg), std::invalid_argument);
}

TEST_CASE("trace table lists one row per evaluation with a running best") {
    std::vector<Evaluation> evals;
    evals.push_back(Evaluation{0.5, 0.25, 0.31, {0.31}});
    evals.push_back(Evaluation{0.75, 0.5, 0.28, {0.28}});
    evals.push_back(Evaluation{0.25, 0.75, 0.4, {0.4}});
    std::string text = format_trace(evals);
    CHECK(text ==
          "eval_index,p_b,p_c,mean_q,best_so_far\n"
          "0,0.5,0.25,0.31,0.31\n"
          "1,0.75,0.5,0.28,0.31\n"
          "2,0.25,0.75,0.4,0.4\n");
}
