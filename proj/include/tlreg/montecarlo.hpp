#pragma once

#include "analytic.hpp"
#include "estimators.hpp"

#include <optional>
#include <thread>
#include <vector>

namespace tlreg {

struct EmpiricalEstimate {
    double mean = 0;
    double stderr_ = 0;  // sample std / sqrt(trials)
    int trials = 0;
    std::uint64_t master_seed = 0;
};

// one cell of a sweep grid; layout set means specific mode
struct SweepPoint {
    int p_tilde = 0, p = 0, t = 0;
    std::optional<CoordinateLayout> layout;
    std::optional<double> sigma_eta_sq;
    std::uint64_t point_index = 0;
};

struct TrialResult {
    double src_risk = 0, tgt_risk = 0;
};

enum class RiskKind { Source, Target };

namespace detail {

// chunked parallel map into a preallocated buffer; results are later reduced
// by index, so the numbers are identical at any thread count
template <class F>
void parallel_fill(int n, int threads, std::vector<double>& out, F f) {
    out.assign(static_cast<size_t>(n), 0.0);
    if (threads < 2 || n < 2) {
        for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = f(i);
        return;
    }
    if (threads > n) threads = n;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += threads) out[static_cast<size_t>(i)] = f(i);
        });
    for (auto& th : pool) th.join();
}

inline EmpiricalEstimate summarize(const std::vector<double>& xs, std::uint64_t master_seed) {
    int n = static_cast<int>(xs.size());
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    EmpiricalEstimate e;
    e.mean = mean;
    e.stderr_ = n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
    e.trials = n;
    e.master_seed = master_seed;
    return e;
}

} // namespace detail

inline TrialResult run_trial_on_layout(const ProblemConfig& cfg, const Vector& beta_h,
                                       const CoordinateLayout& layout, Rng& rng) {
    SourceInstance src = sample_source_instance(cfg, beta_h, rng);
    SourceFit sf = fit_source(src.Z, src.v, layout.S);
    TargetInstance tgt = sample_target_instance(cfg, rng);
    TargetFit tf = fit_target(tgt.X, tgt.y, sf.theta_hat, layout);
    return TrialResult{source_risk(sf.theta_hat, src.theta, cfg.sigma_xi_sq),
                       target_risk(tf.beta_hat, cfg.beta, cfg.sigma_eps_sq)};
}

inline TrialResult run_trial_uniform(const ProblemConfig& cfg, const Vector& beta_h, int p_tilde,
                                     int p, int t, Rng& rng) {
    CoordinateLayout layout = sample_uniform_layout(cfg.d, p_tilde, p, t, rng);
    return run_trial_on_layout(cfg, beta_h, layout, rng);
}

inline TrialResult run_trial_uniform(const ProblemConfig& cfg, int p_tilde, int p, int t,
                                     Rng& rng) {
    cfg.validate();
    return run_trial_uniform(cfg, cfg.beta_h(), p_tilde, p, t, rng);
}

inline TrialResult run_trial_specific(const ProblemConfig& cfg, const CoordinateLayout& layout,
                                      Rng& rng) {
    cfg.validate();
    return run_trial_on_layout(cfg, cfg.beta_h(), layout, rng);
}

inline EmpiricalEstimate estimate_mean_risk(const ProblemConfig& config, const SweepPoint& point,
                                            int trials, std::uint64_t master_seed,
                                            int parallelism = 1,
                                            RiskKind kind = RiskKind::Target) {
    if (trials < 2) throw std::invalid_argument("estimate_mean_risk: need trials >= 2");
    ProblemConfig cfg = config;
    if (point.sigma_eta_sq) cfg.sigma_eta_sq = *point.sigma_eta_sq;
    cfg.validate();
    if (!point.layout) check_layout_feasible(cfg.d, point.p_tilde, point.p, point.t);
    Vector beta_h = cfg.beta_h();
    std::vector<double> risks;
    detail::parallel_fill(trials, parallelism, risks, [&](int i) {
        Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(i), point.point_index));
        TrialResult r = point.layout
                            ? run_trial_on_layout(cfg, beta_h, *point.layout, rng)
                            : run_trial_uniform(cfg, beta_h, point.p_tilde, point.p, point.t, rng);
        return kind == RiskKind::Target ? r.tgt_risk : r.src_risk;
    });
    return detail::summarize(risks, master_seed);
}

// normalization that converts a raw target-error difference at a given p into
// a per-parameter transfer effect
inline double delta_normalizer(const ProblemConfig& cfg, int p) {
    double bsq_d = cfg.beta.squaredNorm() / cfg.d;
    int n = cfg.n_tgt;
    double pp = p;
    if (p <= n - 2) return bsq_d * (1.0 + pp / (n - pp - 1.0));
    if (p >= n + 2) return bsq_d * (1.0 + n / (pp - n - 1.0));
    throw std::invalid_argument("delta_normalizer: p in the target band");
}

// empirical per-transferred-parameter error difference: averages the
// normalized difference between t=m and t=0 runs over all feasible p.
// The two runs share data per trial (common random numbers), which makes the
// difference far less noisy without biasing it.
inline EmpiricalEstimate empirical_delta_transfer(const ProblemConfig& config, int p_tilde, int m,
                                                  int trials, std::uint64_t master_seed,
                                                  int parallelism = 1) {
    if (m < 1) throw std::invalid_argument("empirical_delta_transfer: need m >= 1");
    if (p_tilde < m) throw std::invalid_argument("empirical_delta_transfer: need p_tilde >= m");
    if (trials < 2) throw std::invalid_argument("empirical_delta_transfer: need trials >= 2");
    ProblemConfig cfg = config;
    cfg.validate();
    check_layout_feasible(cfg.d, p_tilde, 0, m);
    Vector beta_h = cfg.beta_h();

    double sum_means = 0, sum_vars = 0;
    int count = 0;
    std::vector<double> diffs;
    for (int p = 1; p <= cfg.d; ++p) {
        if (regime(p, cfg.n_tgt) == Regime::Band) continue;
        if (p + m > cfg.d) continue;  // infeasible with t=m; divisor adjusts below
        double norm = m * delta_normalizer(cfg, p);
        std::uint64_t point_master =
            splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(p)));
        detail::parallel_fill(trials, parallelism, diffs, [&](int i) {
            Rng rng(derive_seed(point_master, static_cast<std::uint64_t>(i)));
            CoordinateLayout with = sample_uniform_layout(cfg.d, p_tilde, p, m, rng);
            CoordinateLayout without =
                make_layout(cfg.d, with.S.coords(), with.F.coords(), {});
            SourceInstance src = sample_source_instance(cfg, beta_h, rng);
            SourceFit sf = fit_source(src.Z, src.v, with.S);
            TargetInstance tgt = sample_target_instance(cfg, rng);
            TargetFit tf_with = fit_target(tgt.X, tgt.y, sf.theta_hat, with);
            TargetFit tf_without = fit_target(tgt.X, tgt.y, sf.theta_hat, without);
            return (target_risk(tf_with.beta_hat, cfg.beta, cfg.sigma_eps_sq) -
                    target_risk(tf_without.beta_hat, cfg.beta, cfg.sigma_eps_sq)) /
                   norm;
        });
        EmpiricalEstimate e = detail::summarize(diffs, point_master);
        sum_means += e.mean;
        sum_vars += e.stderr_ * e.stderr_;
        ++count;
    }
    if (count == 0) throw std::invalid_argument("empirical_delta_transfer: no feasible p");
    EmpiricalEstimate out;
    out.mean = sum_means / count;
    out.stderr_ = std::sqrt(sum_vars) / count;
    out.trials = trials;
    out.master_seed = master_seed;
    return out;
}

} // namespace tlreg
