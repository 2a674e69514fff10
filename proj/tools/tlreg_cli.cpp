#include <tlreg/presets.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string mode = "analytic";
    std::uint64_t seed = 1;
    int trials = 0;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON problem config");
    cmd->add_option("--out", o.out_path, "output CSV path");
    cmd->add_option("--mode", o.mode, "analytic|mc|both")
        ->check(CLI::IsMember({"analytic", "mc", "both"}));
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
    cmd->add_option("--threads", o.threads, "worker threads for trials");
}

tlreg::ProblemConfig load(const CommonOpts& o) {
    return o.config_path.empty() ? tlreg::default_config() : tlreg::load_config(o.config_path);
}

tlreg::SweepSpec base_spec(const CommonOpts& o, int default_trials) {
    tlreg::SweepSpec spec;
    spec.mode = tlreg::sweep_mode_from_string(o.mode);
    spec.trials = o.trials > 0 ? o.trials : default_trials;
    spec.master_seed = o.seed;
    spec.threads = o.threads;
    return spec;
}

void emit(const std::vector<tlreg::SweepRow>& rows, const std::string& out, bool with_status) {
    if (out.empty())
        std::cout << tlreg::to_csv(rows, with_status);
    else
        tlreg::write_csv(rows, out, with_status);
}

int report_comparison(const std::vector<tlreg::SweepRow>& rows) {
    tlreg::CompareReport rep = tlreg::compare_rows(rows);
    for (const auto& [id, z] : rep.z_scores)
        std::cout << id << " z=" << z << "\n";
    std::cout << "points=" << rep.points << " within_3sigma=" << rep.within_3
              << " fraction=" << rep.fraction_within_3() << " max|z|=" << rep.max_abs_z << "\n";
    return rep.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer-learning linear regression lab"};
    app.require_subcommand(1);

    CommonOpts copt;
    std::string axis = "p", axis2 = "p";
    double amin = 0, amax = 80, astep = 1;
    double bmin = 0, bmax = 80, bstep = 1;
    int p_tilde = 80, p = 0, t = 0;
    double sigma_eta = -1;
    std::string script_path, in_path, preset_name;

    CLI::App* curve = app.add_subcommand("curve", "1-D sweep of the expected target error");
    add_common(curve, copt);
    curve->add_option("--axis", axis, "p|p_tilde|t|sigma_eta_sq");
    curve->add_option("--min", amin, "axis start");
    curve->add_option("--max", amax, "axis stop (inclusive)");
    curve->add_option("--step", astep, "axis step");
    curve->add_option("--p-tilde", p_tilde, "fixed source free-parameter count");
    curve->add_option("--p", p, "fixed target free-parameter count");
    curve->add_option("--t", t, "fixed transferred count");
    curve->add_option("--sigma-eta-sq", sigma_eta, "relation noise override");

    CLI::App* plane = app.add_subcommand("plane", "2-D sweep (long-format CSV)");
    add_common(plane, copt);
    plane->add_option("--axis1", axis, "first axis name");
    plane->add_option("--min1", amin, "first axis start");
    plane->add_option("--max1", amax, "first axis stop");
    plane->add_option("--step1", astep, "first axis step");
    plane->add_option("--axis2", axis2, "second axis name");
    plane->add_option("--min2", bmin, "second axis start");
    plane->add_option("--max2", bmax, "second axis stop");
    plane->add_option("--step2", bstep, "second axis step");
    plane->add_option("--p-tilde", p_tilde, "fixed source free-parameter count");
    plane->add_option("--p", p, "fixed target free-parameter count");
    plane->add_option("--t", t, "fixed transferred count");
    plane->add_option("--sigma-eta-sq", sigma_eta, "relation noise override");

    CLI::App* specific = app.add_subcommand("specific", "sweep p along a fixed layout script");
    add_common(specific, copt);
    specific->add_option("--script", script_path, "layout script JSON (keys S, T, order)")
        ->required();
    specific->add_option("--min", amin, "p start");
    specific->add_option("--max", amax, "p stop (inclusive)");
    specific->add_option("--step", astep, "p step");
    specific->add_option("--sigma-eta-sq", sigma_eta, "relation noise override");

    CLI::App* compare = app.add_subcommand("compare", "z-score report for a both-mode CSV");
    compare->add_option("--in", in_path, "CSV produced with --mode both")->required();

    CLI::App* preset = app.add_subcommand("preset", "reproduce a canned figure dataset");
    add_common(preset, copt);
    preset->add_option("name", preset_name,
                       "fig1a..fig1h, fig2, fig3a..fig3d, fig4")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (curve->parsed()) {
            tlreg::ProblemConfig cfg = load(copt);
            tlreg::SweepSpec spec = base_spec(copt, 250);
            spec.axes = {{axis, amin, amax, astep}};
            spec.p_tilde = p_tilde;
            spec.p = p;
            spec.t = t;
            if (sigma_eta >= 0) spec.sigma_eta_sq = sigma_eta;
            std::vector<tlreg::SweepRow> rows = tlreg::run_curve(cfg, spec);
            emit(rows, copt.out_path, false);
            if (spec.mode == tlreg::SweepMode::Both) return report_comparison(rows);
            return 0;
        }
        if (plane->parsed()) {
            tlreg::ProblemConfig cfg = load(copt);
            tlreg::SweepSpec spec = base_spec(copt, 250);
            spec.axes = {{axis, amin, amax, astep}, {axis2, bmin, bmax, bstep}};
            spec.p_tilde = p_tilde;
            spec.p = p;
            spec.t = t;
            if (sigma_eta >= 0) spec.sigma_eta_sq = sigma_eta;
            std::vector<tlreg::SweepRow> rows = tlreg::run_plane(cfg, spec);
            emit(rows, copt.out_path, true);
            if (spec.mode == tlreg::SweepMode::Both) return report_comparison(rows);
            return 0;
        }
        if (specific->parsed()) {
            tlreg::ProblemConfig cfg = load(copt);
            std::ifstream in(script_path);
            if (!in) throw std::runtime_error("cannot open script: " + script_path);
            nlohmann::json j;
            in >> j;
            tlreg::LayoutScript script;
            script.t_coords = j.value("T", std::vector<int>{});
            if (j.contains("S"))
                script.s_coords = j["S"].get<std::vector<int>>();
            else
                script.s_coords = tlreg::Selector::full(cfg.d).coords();
            if (j.contains("order")) {
                script.order = j["order"].get<std::vector<int>>();
            } else {
                script = tlreg::LayoutScript::ascending(cfg.d, script.t_coords, script.s_coords);
            }
            tlreg::SweepSpec spec = base_spec(copt, 750);
            if (amax > script.max_p()) amax = script.max_p();
            spec.axes = {{"p", amin, amax, astep}};
            if (sigma_eta >= 0) spec.sigma_eta_sq = sigma_eta;
            std::vector<tlreg::SweepRow> rows = tlreg::run_specific(cfg, script, spec);
            emit(rows, copt.out_path, false);
            if (spec.mode == tlreg::SweepMode::Both) return report_comparison(rows);
            return 0;
        }
        if (compare->parsed()) {
            return report_comparison(tlreg::read_csv(in_path));
        }
        if (preset->parsed()) {
            tlreg::PresetResult res =
                tlreg::run_preset(preset_name, tlreg::sweep_mode_from_string(copt.mode),
                                  copt.trials, copt.seed, copt.threads);
            emit(res.rows, copt.out_path, res.with_status);
            if (!res.overlay_csv.empty() && !copt.out_path.empty()) {
                std::ofstream ov(copt.out_path + ".thresholds.csv", std::ios::binary);
                ov << res.overlay_csv;
            }
            if (tlreg::sweep_mode_from_string(copt.mode) == tlreg::SweepMode::Both)
                return report_comparison(res.rows);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
