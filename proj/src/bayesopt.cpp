#include "hlouvain/bayesopt.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hlouvain/parallel.hpp"

namespace hlouvain {

namespace {

constexpr double kNoiseSdFloor = 1e-3;  // variance floor 1e-6

double matern52(const std::array<double, 2>& a, const std::array<double, 2>& b,
                double len0, double len1, double signal_var) {
    double d0 = (a[0] - b[0]) / len0;
    double d1 = (a[1] - b[1]) / len1;
    double r = std::sqrt(d0 * d0 + d1 * d1);
    double s = std::sqrt(5.0) * r;
    return signal_var * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

struct NmResult {
    std::vector<double> x;
    double value;
};

// Minimizes f with a standard Nelder-Mead simplex; fully deterministic.
template <typename F>
NmResult nelder_mead(const F& f, std::vector<double> start, double step, std::size_t iterations) {
    std::size_t n = start.size();
    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += step;
    }
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = f(simplex[i]);
    }

    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> v2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = simplex[idx[i]];
            v2[i] = values[idx[i]];
        }
        simplex.swap(s2);
        values.swap(v2);
    };

    for (std::size_t iter = 0; iter < iterations; ++iter) {
        order();
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                centroid[j] += simplex[i][j] / static_cast<double>(n);
            }
        }
        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) {
                p[j] = centroid[j] + coeff * (simplex[n][j] - centroid[j]);
            }
            return p;
        };

        std::vector<double> reflected = blend(-1.0);
        double fr = f(reflected);
        if (fr < values[0]) {
            std::vector<double> expanded = blend(-2.0);
            double fe = f(expanded);
            if (fe < fr) {
                simplex[n] = std::move(expanded);
                values[n] = fe;
            } else {
                simplex[n] = std::move(reflected);
                values[n] = fr;
            }
        } else if (fr < values[n - 1]) {
            simplex[n] = std::move(reflected);
            values[n] = fr;
        } else {
            std::vector<double> contracted = blend(fr < values[n] ? -0.5 : 0.5);
            double fc = f(contracted);
            if (fc < std::min(fr, values[n])) {
                simplex[n] = std::move(contracted);
                values[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    }
                    values[i] = f(simplex[i]);
                }
            }
        }
    }
    order();
    return NmResult{simplex[0], values[0]};
}

double halton(std::size_t index, std::size_t base) {
    double f = 1.0;
    double result = 0.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        result += f * static_cast<double>(index % base);
        index /= base;
    }
    return result;
}

double standard_normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double standard_normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

struct LmlContext {
    const std::vector<std::array<double, 2>>* points;
    Eigen::VectorXd y;  // standardized
};

// theta = (log len0, log len1, log signal_sd, log noise_sd), clamped to a box.
GpHyperparams theta_to_params(const std::vector<double>& theta) {
    auto clamp_exp = [](double t, double lo, double hi) {
        return std::clamp(std::exp(t), lo, hi);
    };
    GpHyperparams p;
    p.length_pb = clamp_exp(theta[0], 0.03, 10.0);
    p.length_pc = clamp_exp(theta[1], 0.03, 10.0);
    p.signal_sd = clamp_exp(theta[2], 0.01, 10.0);
    p.noise_sd = clamp_exp(theta[3], kNoiseSdFloor, 1.0);
    return p;
}

double negative_lml(const LmlContext& ctx, const GpHyperparams& p) {
    std::size_t n = ctx.points->size();
    Eigen::MatrixXd k(n, n);
    double signal_var = p.signal_sd * p.signal_sd;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double v = matern52((*ctx.points)[i], (*ctx.points)[j], p.length_pb, p.length_pc,
                                signal_var);
            k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
        k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) +=
            p.noise_sd * p.noise_sd;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) {
        return std::numeric_limits<double>::infinity();
    }
    Eigen::VectorXd alpha = llt.solve(ctx.y);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
        log_det += std::log(llt.matrixL()(i, i));
    }
    double lml = -0.5 * ctx.y.dot(alpha) - log_det -
                 0.5 * static_cast<double>(n) * std::log(2.0 * M_PI);
    return -lml;
}

}  // namespace

GaussianProcess GaussianProcess::fit(std::vector<std::array<double, 2>> points,
                                     std::vector<double> values, std::uint64_t seed) {
    if (points.empty() || points.size() != values.size()) {
        throw std::invalid_argument("GaussianProcess: need matching, non-empty observations");
    }
    GaussianProcess gp;
    gp.x_ = std::move(points);
    std::size_t n = gp.x_.size();

    double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(n);
    gp.y_mean_ = mean;

    if (var < 1e-24) {
        // All observations equal: prior fallback with unit variance.
        gp.degenerate_ = true;
        gp.y_scale_ = 1.0;
        gp.lml_ = 0.0;
        return gp;
    }
    gp.y_scale_ = std::sqrt(var);

    LmlContext ctx;
    ctx.points = &gp.x_;
    ctx.y.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        ctx.y(static_cast<Eigen::Index>(i)) = (values[i] - mean) / gp.y_scale_;
    }

    auto objective = [&](const std::vector<double>& theta) {
        return negative_lml(ctx, theta_to_params(theta));
    };

    std::vector<double> best_theta = {std::log(0.3), std::log(0.3), std::log(1.0),
                                      std::log(0.1)};
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t restart = 0; restart < 8; ++restart) {
        std::vector<double> start(4);
        if (restart == 0) {
            start = {std::log(0.3), std::log(0.3), std::log(1.0), std::log(0.1)};
        } else {
            Rng rng = Rng::stream(seed, "gp-restart", restart);
            start[0] = std::log(0.03) + rng.uniform() * (std::log(10.0) - std::log(0.03));
            start[1] = std::log(0.03) + rng.uniform() * (std::log(10.0) - std::log(0.03));
            start[2] = std::log(0.05) + rng.uniform() * (std::log(5.0) - std::log(0.05));
            start[3] = std::log(kNoiseSdFloor) +
                       rng.uniform() * (std::log(1.0) - std::log(kNoiseSdFloor));
        }
        NmResult result = nelder_mead(objective, start, 0.4, 150);
        if (result.value < best_value) {
            best_value = result.value;
            best_theta = result.x;
        }
    }

    gp.params_ = theta_to_params(best_theta);
    gp.lml_ = -best_value;

    // Final factorization at the chosen hyperparameters.
    double signal_var = gp.params_.signal_sd * gp.params_.signal_sd;
    Eigen::MatrixXd k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double v = matern52(gp.x_[i], gp.x_[j], gp.params_.length_pb, gp.params_.length_pc,
                                signal_var);
            k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
        k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) +=
            gp.params_.noise_sd * gp.params_.noise_sd;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("GaussianProcess: kernel matrix not positive definite");
    }
    Eigen::VectorXd alpha = llt.solve(ctx.y);
    Eigen::MatrixXd lower = llt.matrixL();
    gp.alpha_.resize(n);
    gp.chol_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        gp.alpha_[i] = alpha(static_cast<Eigen::Index>(i));
        for (std::size_t j = 0; j <= i; ++j) {
            gp.chol_[i * n + j] =
                lower(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return gp;
}

GaussianProcess::Prediction GaussianProcess::predict(const std::array<double, 2>& x) const {
    if (degenerate_) {
        return Prediction{y_mean_, 1.0};
    }
    std::size_t n = x_.size();
    double signal_var = params_.signal_sd * params_.signal_sd;
    std::vector<double> kstar(n);
    for (std::size_t i = 0; i < n; ++i) {
        kstar[i] = matern52(x, x_[i], params_.length_pb, params_.length_pc, signal_var);
    }
    double mean_std = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_std += kstar[i] * alpha_[i];
    }
    // v = L^{-1} k*; latent variance = k(x,x) - v'v.
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = kstar[i];
        for (std::size_t j = 0; j < i; ++j) {
            s -= chol_[i * n + j] * v[j];
        }
        v[i] = s / chol_[i * n + i];
    }
    double reduction = 0.0;
    for (double vi : v) {
        reduction += vi * vi;
    }
    double var_std = std::max(signal_var - reduction, 0.0);
    return Prediction{y_mean_ + y_scale_ * mean_std, y_scale_ * y_scale_ * var_std};
}

double expected_improvement(const GaussianProcess& gp, const std::array<double, 2>& x,
                            double incumbent) {
    GaussianProcess::Prediction pred = gp.predict(x);
    double sd = std::sqrt(std::max(pred.variance, 0.0));
    double gain = pred.mean - incumbent;
    if (sd < 1e-12) {
        return std::max(gain, 0.0);
    }
    double z = gain / sd;
    return gain * standard_normal_cdf(z) + sd * standard_normal_pdf(z);
}

std::array<double, 2> propose_next(const GaussianProcess& gp, double incumbent,
                                   std::span<const std::array<double, 2>> evaluated, Rng& rng) {
    std::array<double, 2> best{0.5, 0.5};
    double best_ei = -1.0;
    for (std::size_t i = 1; i <= 2048; ++i) {
        std::array<double, 2> x{halton(i, 2), halton(i, 3)};
        double ei = expected_improvement(gp, x, incumbent);
        if (ei > best_ei) {
            best_ei = ei;
            best = x;
        }
    }

    auto clamped_neg_ei = [&](const std::vector<double>& t) {
        std::array<double, 2> x{std::clamp(t[0], 0.0, 1.0), std::clamp(t[1], 0.0, 1.0)};
        return -expected_improvement(gp, x, incumbent);
    };
    NmResult refined = nelder_mead(clamped_neg_ei, {best[0], best[1]}, 0.05, 80);
    if (-refined.value >= best_ei) {
        best = {std::clamp(refined.x[0], 0.0, 1.0), std::clamp(refined.x[1], 0.0, 1.0)};
    }

    auto is_duplicate = [&](const std::array<double, 2>& x) {
        for (const auto& p : evaluated) {
            double d0 = x[0] - p[0];
            double d1 = x[1] - p[1];
            if (std::sqrt(d0 * d0 + d1 * d1) < 1e-9) {
                return true;
            }
        }
        return false;
    };
    int tries = 0;
    while (is_duplicate(best)) {
        double step = 1e-3;
        if (++tries > 4) {
            best[0] = rng.uniform();
            best[1] = rng.uniform();
            continue;
        }
        for (int dim = 0; dim < 2; ++dim) {
            double moved = best[dim] + step;
            if (moved > 1.0) {
                moved = best[dim] - step;
            }
            best[dim] = std::clamp(moved, 0.0, 1.0);
        }
    }
    return best;
}

ObjectiveOutcome objective(const Hypergraph& h, const ObjectiveConfig& cfg, double p_b,
                           double p_c, std::span<const std::uint64_t> seeds,
                           std::size_t threads) {
    if (seeds.empty()) {
        throw std::invalid_argument("objective: need at least one seed");
    }
    ObjectiveOutcome out;
    out.runs.resize(seeds.size());
    parallel_for(seeds.size(), threads, [&](std::size_t i) {
        RunConfig rc;
        rc.objective = cfg;
        rc.policy = AlphaPolicy{p_b, p_c};
        rc.seed = seeds[i];
        rc.ending = Ending::supernode_default;
        out.runs[i] = h_louvain(h, rc);
    });
    double sum = 0.0;
    for (const auto& run : out.runs) {
        sum += run.q_h;
    }
    out.mean_q = sum / static_cast<double>(seeds.size());
    return out;
}

TuneResult tune(const Hypergraph& h, const ObjectiveConfig& cfg, const TunerConfig& tcfg) {
    if (tcfg.init_points == 0) {
        throw std::invalid_argument("tune: init_points must be >= 1");
    }
    if (tcfg.min_evaluations < tcfg.init_points) {
        throw std::invalid_argument("tune: min_evaluations must be >= init_points");
    }
    if (!(tcfg.pc_min > 0.0 && tcfg.pc_min <= tcfg.pc_max && tcfg.pc_max < 1.0)) {
        throw std::invalid_argument("tune: p_c domain must satisfy 0 < min <= max < 1");
    }

    std::vector<std::uint64_t> seeds = tcfg.seeds;
    if (seeds.empty()) {
        Rng rng = Rng::stream(tcfg.master_seed, "objective-seeds");
        while (seeds.size() < 10) {
            std::uint64_t s = rng.next_u64();
            if (std::find(seeds.begin(), seeds.end(), s) == seeds.end()) {
                seeds.push_back(s);
            }
        }
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        for (std::size_t j = i + 1; j < seeds.size(); ++j) {
            if (seeds[i] == seeds[j]) {
                throw std::invalid_argument("tune: seeds must be distinct");
            }
        }
    }

    double pc_span = tcfg.pc_max - tcfg.pc_min;
    auto to_unit = [&](double p_b, double p_c) {
        double u1 = pc_span > 0.0 ? (p_c - tcfg.pc_min) / pc_span : 0.5;
        return std::array<double, 2>{p_b, u1};
    };
    auto from_unit = [&](const std::array<double, 2>& x) {
        return std::pair<double, double>{x[0], tcfg.pc_min + x[1] * pc_span};
    };

    TuneResult result;
    std::vector<std::array<double, 2>> unit_points;
    std::vector<double> means;
    double best_partition_q = -std::numeric_limits<double>::infinity();
    std::size_t best_seed_index = 0;

    auto evaluate = [&](double p_b, double p_c) {
        ObjectiveOutcome out = objective(h, cfg, p_b, p_c, seeds, tcfg.threads);
        Evaluation ev;
        ev.p_b = p_b;
        ev.p_c = p_c;
        ev.mean_q = out.mean_q;
        ev.per_seed_q.reserve(out.runs.size());
        for (std::size_t i = 0; i < out.runs.size(); ++i) {
            ev.per_seed_q.push_back(out.runs[i].q_h);
            if (out.runs[i].q_h > best_partition_q) {
                best_partition_q = out.runs[i].q_h;
                best_seed_index = i;
                result.best_partition = out.runs[i].partition;
                result.best_p_b = p_b;
                result.best_p_c = p_c;
            }
        }
        unit_points.push_back(to_unit(p_b, p_c));
        means.push_back(out.mean_q);
        result.evaluations.push_back(std::move(ev));
    };

    for (std::size_t i = 0; i < tcfg.init_points; ++i) {
        Rng rng = Rng::stream(tcfg.master_seed, "init-point", i);
        double p_b = rng.uniform();
        double p_c = tcfg.pc_min + rng.uniform() * pc_span;
        evaluate(p_b, p_c);
    }

    double best_mean = *std::max_element(means.begin(), means.end());
    std::size_t proposals = 0;
    std::size_t stale = 0;
    while (result.evaluations.size() < tcfg.min_evaluations ||
           (proposals > 0 && stale < tcfg.patience)) {
        if (result.evaluations.size() >= tcfg.max_evaluations) {
            break;
        }
        std::uint64_t round = result.evaluations.size();
        GaussianProcess gp = GaussianProcess::fit(unit_points, means,
                                                  Rng::stream(tcfg.master_seed, "gp-fit", round)
                                                      .next_u64());
        Rng proposal_rng = Rng::stream(tcfg.master_seed, "proposal", round);
        std::array<double, 2> x = propose_next(gp, best_mean, unit_points, proposal_rng);
        auto [p_b, p_c] = from_unit(x);
        evaluate(p_b, p_c);
        ++proposals;
        double latest = means.back();
        if (latest > best_mean + tcfg.min_improvement) {
            stale = 0;
        } else {
            ++stale;
        }
        best_mean = std::max(best_mean, latest);
    }

    // Surrogate snapshot at termination.
    GaussianProcess final_gp = GaussianProcess::fit(
        unit_points, means,
        Rng::stream(tcfg.master_seed, "gp-fit", result.evaluations.size()).next_u64());
    result.surrogate_snapshot = final_gp.hyperparams();

    // Local-optimization rerun of the best observed (point, seed).
    RunConfig rerun;
    rerun.objective = cfg;
    rerun.policy = AlphaPolicy{result.best_p_b, result.best_p_c};
    rerun.seed = seeds[best_seed_index];
    rerun.ending = Ending::local_opt_original;
    RunResult refined = h_louvain(h, rerun);
    if (refined.q_h >= best_partition_q) {
        result.best_partition = refined.partition;
        result.best_q_h = refined.q_h;
    } else {
        result.best_q_h = best_partition_q;
    }
    return result;
}

std::string format_trace(const std::vector<Evaluation>& evaluations) {
    std::string out = "eval_index,p_b,p_c,mean_q,best_so_far\n";
    char buf[160];
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < evaluations.size(); ++i) {
        const Evaluation& ev = evaluations[i];
        best = std::max(best, ev.mean_q);
        std::snprintf(buf, sizeof(buf), "%zu,%.9g,%.9g,%.9g,%.9g\n", i, ev.p_b, ev.p_c,
                      ev.mean_q, best);
        out += buf;
    }
    return out;
}

}  // namespace hlouvain
