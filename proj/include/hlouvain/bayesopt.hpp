// bayesopt.hpp - Gaussian-process tuning of the (p_b, p_c) schedule
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hlouvain/hlouvain.hpp"
#include "hlouvain/hypergraph.hpp"
#include "hlouvain/modularity.hpp"

namespace hlouvain {

struct GpHyperparams {
    double length_pb = 0.3;  // Matern length-scales in unit-square coordinates
    double length_pc = 0.3;
    double signal_sd = 1.0;  // in standardized-output units
    double noise_sd = 0.1;
};

// Gaussian-process regression with a Matern-5/2 ARD kernel on the unit
// square. Outputs are standardized internally; predictions are reported in
// the original units. Hyperparameters maximize the log marginal likelihood
// (multi-start Nelder-Mead with deterministic sub-seeds; noise variance is
// floored at 1e-6). All-equal observations fall back to a prior with unit
// variance around the common value.
class GaussianProcess {
public:
    struct Prediction {
        double mean;
        double variance;
    };

    static GaussianProcess fit(std::vector<std::array<double, 2>> points,
                               std::vector<double> values, std::uint64_t seed);

    Prediction predict(const std::array<double, 2>& x) const;

    const GpHyperparams& hyperparams() const { return params_; }
    double log_marginal_likelihood() const { return lml_; }
    bool degenerate() const { return degenerate_; }

private:
    GaussianProcess() = default;

    std::vector<std::array<double, 2>> x_;
    std::vector<double> chol_;   // row-major lower Cholesky factor of K
    std::vector<double> alpha_;  // K^{-1} (y - mean) / scale
    double y_mean_ = 0.0;
    double y_scale_ = 1.0;
    GpHyperparams params_;
    double lml_ = 0.0;
    bool degenerate_ = false;
};

// Expected improvement of maximizing beyond `incumbent` at x.
double expected_improvement(const GaussianProcess& gp, const std::array<double, 2>& x,
                            double incumbent);

// EI maximizer over the unit square: 2048-point Halton scan plus local
// refinement. Returns a point at distance > 1e-9 from every evaluated point
// (duplicates are nudged by 1e-3).
std::array<double, 2> propose_next(const GaussianProcess& gp, double incumbent,
                                   std::span<const std::array<double, 2>> evaluated, Rng& rng);

struct TunerConfig {
    std::size_t init_points = 5;
    std::size_t min_evaluations = 10;
    std::size_t max_evaluations = 200;      // safety cap; never binding by default
    std::vector<std::uint64_t> seeds;       // empty: derive 10 from master_seed
    double pc_min = 0.01;
    double pc_max = 0.99;
    std::size_t patience = 5;
    double min_improvement = 1e-4;
    std::uint64_t master_seed = 0;
    std::size_t threads = 1;                // concurrency of the per-seed batch
};

struct Evaluation {
    double p_b;
    double p_c;
    double mean_q;
    std::vector<double> per_seed_q;
};

struct TuneResult {
    std::vector<Evaluation> evaluations;
    double best_p_b = 0.0;
    double best_p_c = 0.0;
    std::vector<CommunityId> best_partition;
    double best_q_h = 0.0;  // after the final local-optimization rerun
    GpHyperparams surrogate_snapshot;
};

struct ObjectiveOutcome {
    double mean_q;
    std::vector<RunResult> runs;  // one per seed, in seed order
};

// Seed-averaged target: h_louvain once per seed at (p_b, p_c) with the
// default ending. Deterministic for fixed seeds and any thread count.
ObjectiveOutcome objective(const Hypergraph& h, const ObjectiveConfig& cfg, double p_b,
                           double p_c, std::span<const std::uint64_t> seeds,
                           std::size_t threads = 1);

// Full tuning loop: random initialization, EI-driven proposals until the
// evaluation minimum is met and `patience` proposals bring no improvement,
// then one local-optimization rerun of the best observed (point, seed). The
// whole trace is reproducible from master_seed, and longer budgets extend
// shorter ones without changing their prefix.
TuneResult tune(const Hypergraph& h, const ObjectiveConfig& cfg, const TunerConfig& tcfg);

// Renders the trace table: eval_index,p_b,p_c,mean_q,best_so_far.
std::string format_trace(const std::vector<Evaluation>& evaluations);

}  // namespace hlouvain
