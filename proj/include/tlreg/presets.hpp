#pragma once

#include "sweep.hpp"

namespace tlreg {

// Canned experiment definitions behind the `preset` CLI subcommand. All of
// them share the reference setting d=80, n_src=50, n_tgt=20, sigma_xi_sq=2,
// sigma_eps_sq=4, ||beta||^2 = d.
struct PresetResult {
    ProblemConfig config;
    std::vector<SweepRow> rows;
    bool with_status = false;   // plane-style CSV
    std::string overlay_csv;    // extra CSV (beneficial p_tilde intervals), may be empty
};

namespace detail {

inline void append_curve(PresetResult& res, const ProblemConfig& cfg, SweepMode mode, int trials,
                         std::uint64_t seed, int threads, int p_tilde, int t,
                         const std::string& id_prefix) {
    SweepSpec spec;
    spec.mode = mode;
    spec.axes = {{"p", 0, static_cast<double>(cfg.d - t), 1}};
    spec.p_tilde = p_tilde;
    spec.t = t;
    spec.trials = trials;
    spec.master_seed = seed;
    spec.threads = threads;
    for (SweepRow& row : run_curve(cfg, spec)) {
        row.point_id = id_prefix + row.point_id;
        res.rows.push_back(std::move(row));
    }
}

inline const std::vector<int>& transfer_counts() {
    static const std::vector<int> ts = {0, 16, 32, 48};
    return ts;
}

} // namespace detail

inline PresetResult run_preset(const std::string& name, SweepMode mode = SweepMode::Analytic,
                               int trials = 0, std::uint64_t seed = 1, int threads = 1) {
    PresetResult res;
    res.config = default_config();
    ProblemConfig& cfg = res.config;

    auto curves_over_t = [&](int default_trials) {
        int tr = trials > 0 ? trials : default_trials;
        for (int t : detail::transfer_counts())
            detail::append_curve(res, cfg, mode, tr, splitmix64(seed ^ static_cast<std::uint64_t>(t)),
                                 threads, cfg.d, t, "t=" + std::to_string(t) + ",");
    };

    if (name == "fig1a" || name == "fig1b" || name == "fig1c" || name == "fig1d") {
        cfg.sigma_eta_sq = name == "fig1a" ? 0.0 : name == "fig1b" ? 0.5 : name == "fig1c" ? 1.0 : 2.0;
        curves_over_t(250);
        return res;
    }
    if (name == "fig1e" || name == "fig1f" || name == "fig1g") {
        int k = name == "fig1e" ? 3 : name == "fig1f" ? 15 : 27;
        cfg.relation = RelationOperator::local_average(k);
        curves_over_t(250);
        return res;
    }
    if (name == "fig1h") {
        // averaging over the whole signal; expressed as a dense operator since
        // the circulant constructor requires an odd neighborhood
        cfg.relation = RelationOperator::dense_matrix(
            Matrix::Constant(cfg.d, cfg.d, 1.0 / cfg.d));
        curves_over_t(250);
        return res;
    }
    if (name == "fig2") {
        cfg.sigma_eta_sq = 0.5;
        res.with_status = true;
        int tr = trials > 0 ? trials : 250;
        for (int t : detail::transfer_counts()) {
            SweepSpec spec;
            spec.mode = mode;
            spec.axes = {{"p_tilde", 1, static_cast<double>(cfg.d), 1},
                         {"p", 0, static_cast<double>(cfg.d), 1}};
            spec.t = t;
            spec.trials = tr;
            spec.master_seed = splitmix64(seed ^ static_cast<std::uint64_t>(t));
            spec.threads = threads;
            for (SweepRow& row : run_plane(cfg, spec)) {
                row.point_id = "t=" + std::to_string(t) + "," + row.point_id;
                res.rows.push_back(std::move(row));
            }
        }
        return res;
    }
    if (name == "fig3a" || name == "fig3b" || name == "fig3c" || name == "fig3d") {
        // per-transferred-parameter error difference over (p_tilde, sigma_eta_sq),
        // analytic values only, with the beneficial p_tilde intervals as overlay
        cfg.beta = make_beta(BetaShape::piecewise(), cfg.d);
        if (name == "fig3d")
            cfg.relation = RelationOperator::discrete_derivative();
        else
            cfg.relation = RelationOperator::local_average(
                name == "fig3a" ? 3 : name == "fig3b" ? 15 : 59);
        std::ostringstream overlay;
        overlay << "sigma_eta_sq,p_tilde_lo,p_tilde_hi\n";
        for (int step = 0; step <= 40; ++step) {
            double sig = step * 0.05;
            ProblemConfig c2 = cfg;
            c2.sigma_eta_sq = sig;
            for (int pt = 1; pt <= cfg.d; ++pt) {
                ExtendedError de = delta_transfer_uniform(c2, pt);
                SweepRow row;
                row.point_id = "sigma_eta_sq=" + detail::fmt_double(sig) +
                               ",p_tilde=" + std::to_string(pt);
                row.p_tilde = pt;
                row.sigma_eta_sq = sig;
                row.seed = seed;
                row.has_analytic = true;
                if (de.is_finite())
                    row.analytic = de.value();
                else
                    row.analytic_inf = true;
                res.rows.push_back(std::move(row));
            }
            for (auto [lo, hi] : ptilde_beneficial_ranges(c2).intervals)
                overlay << detail::fmt_double(sig) << "," << lo << "," << hi << "\n";
        }
        res.overlay_csv = overlay.str();
        return res;
    }
    if (name == "fig4") {
        cfg.sigma_eta_sq = 0.5;
        int tr = trials > 0 ? trials : 750;
        struct BetaCase { const char* id; BetaShape shape; };
        struct RelCase { const char* id; RelationOperator rel; };
        const BetaCase betas[] = {{"linear", BetaShape::linear()},
                                  {"sparse", BetaShape::sparse(0.25)}};
        const RelCase rels[] = {{"identity", RelationOperator::identity()},
                                {"avg11", RelationOperator::local_average(11)},
                                {"derivative", RelationOperator::discrete_derivative()}};
        for (const BetaCase& b : betas) {
            for (const RelCase& r : rels) {
                ProblemConfig c2 = cfg;
                c2.beta = make_beta(b.shape, cfg.d);
                c2.relation = r.rel;
                for (int t : detail::transfer_counts()) {
                    // fixed evolution of F (ascending coordinates) shared by all
                    // curves; the transferred set is the top-index tail
                    std::vector<int> t_coords;
                    for (int c = cfg.d - t + 1; c <= cfg.d; ++c) t_coords.push_back(c);
                    std::vector<int> s_coords(static_cast<size_t>(cfg.d));
                    std::iota(s_coords.begin(), s_coords.end(), 1);
                    LayoutScript script = LayoutScript::ascending(cfg.d, t_coords, s_coords);
                    SweepSpec spec;
                    spec.mode = mode;
                    spec.axes = {{"p", 0, static_cast<double>(script.max_p()), 1}};
                    spec.trials = tr;
                    spec.master_seed = splitmix64(
                        seed ^ splitmix64(static_cast<std::uint64_t>(t) * 7919 +
                                          (&b - betas) * 2 + (&r - rels)));
                    spec.threads = threads;
                    std::string prefix = std::string("beta=") + b.id + ",H=" + r.id +
                                         ",t=" + std::to_string(t) + ",";
                    for (SweepRow& row : run_specific(c2, script, spec)) {
                        row.point_id = prefix + row.point_id;
                        res.rows.push_back(std::move(row));
                    }
                }
            }
        }
        return res;
    }
    throw std::invalid_argument("unknown preset '" + name + "'");
}

} // namespace tlreg
