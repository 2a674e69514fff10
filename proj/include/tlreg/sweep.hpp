#pragma once

#include "montecarlo.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tlreg {

enum class SweepMode { Analytic, Mc, Both };

inline SweepMode sweep_mode_from_string(const std::string& s) {
    if (s == "analytic") return SweepMode::Analytic;
    if (s == "mc") return SweepMode::Mc;
    if (s == "both") return SweepMode::Both;
    throw std::invalid_argument("mode must be analytic, mc, or both");
}

struct SweepAxis {
    std::string name;  // p, p_tilde, t, sigma_eta_sq
    double start = 0, stop = 0, step = 1;

    std::vector<double> values() const {
        if (step <= 0) throw std::invalid_argument("axis step must be > 0");
        if (stop < start) throw std::invalid_argument("axis range is empty");
        std::vector<double> out;
        for (int i = 0;; ++i) {
            double v = start + i * step;
            if (v > stop + 1e-9) break;
            out.push_back(v);
        }
        return out;
    }
};

struct SweepSpec {
    SweepMode mode = SweepMode::Analytic;
    std::vector<SweepAxis> axes;
    // fixed values for the knobs not swept
    int p_tilde = 80, p = 0, t = 0;
    std::optional<double> sigma_eta_sq;
    int trials = 250;
    std::uint64_t master_seed = 1;
    int threads = 1;
};

struct SweepRow {
    std::string point_id;
    int p_tilde = 0, p = 0, t = 0;
    double sigma_eta_sq = 0;
    // analytic cell: value, "inf", or empty (mc-only mode / eliminated)
    bool has_analytic = false;
    bool analytic_inf = false;
    double analytic = 0;
    std::optional<EmpiricalEstimate> mc;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string status;  // "" or "eliminated"
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void apply_axis(SweepPoint& pt, double& sigma_eta, const std::string& name, double v) {
    if (name == "p")
        pt.p = static_cast<int>(std::llround(v));
    else if (name == "p_tilde")
        pt.p_tilde = static_cast<int>(std::llround(v));
    else if (name == "t")
        pt.t = static_cast<int>(std::llround(v));
    else if (name == "sigma_eta_sq")
        sigma_eta = v;
    else
        throw std::invalid_argument("unknown axis '" + name + "'");
}

} // namespace detail

inline SweepRow evaluate_point(const ProblemConfig& base, const SweepSpec& spec, SweepPoint pt,
                               double sigma_eta) {
    ProblemConfig cfg = base;
    cfg.sigma_eta_sq = sigma_eta;
    pt.sigma_eta_sq.reset();
    SweepRow row;
    row.p_tilde = pt.p_tilde;
    row.p = pt.p;
    row.t = pt.t;
    row.sigma_eta_sq = sigma_eta;
    row.seed = spec.master_seed;
    if (spec.mode != SweepMode::Mc) {
        ExtendedError e = pt.layout ? target_error_specific(cfg, *pt.layout)
                                    : expected_target_error_uniform(cfg, pt.p_tilde, pt.p, pt.t);
        row.has_analytic = true;
        if (e.is_finite())
            row.analytic = e.value();
        else
            row.analytic_inf = true;
    }
    if (spec.mode != SweepMode::Analytic) {
        row.mc = estimate_mean_risk(cfg, pt, spec.trials, spec.master_seed, spec.threads);
        row.trials = spec.trials;
    }
    return row;
}

// one row per swept value; infeasible points are skipped
inline std::vector<SweepRow> run_curve(const ProblemConfig& cfg, const SweepSpec& spec) {
    if (spec.axes.size() != 1) throw std::invalid_argument("curve needs exactly one axis");
    double sigma_base = spec.sigma_eta_sq.value_or(cfg.sigma_eta_sq);
    std::vector<SweepRow> rows;
    std::uint64_t idx = 0;
    for (double v : spec.axes[0].values()) {
        SweepPoint pt;
        pt.p_tilde = spec.p_tilde;
        pt.p = spec.p;
        pt.t = spec.t;
        pt.point_index = idx++;
        double sigma_eta = sigma_base;
        detail::apply_axis(pt, sigma_eta, spec.axes[0].name, v);
        try {
            check_layout_feasible(cfg.d, pt.p_tilde, pt.p, pt.t);
        } catch (const std::invalid_argument&) {
            continue;
        }
        SweepRow row = evaluate_point(cfg, spec, pt, sigma_eta);
        row.point_id = spec.axes[0].name + "=" + detail::fmt_double(v);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("curve: no feasible point in range");
    return rows;
}

// long-format grid; infeasible cells are kept with status "eliminated"
inline std::vector<SweepRow> run_plane(const ProblemConfig& cfg, const SweepSpec& spec) {
    if (spec.axes.size() != 2) throw std::invalid_argument("plane needs exactly two axes");
    double sigma_base = spec.sigma_eta_sq.value_or(cfg.sigma_eta_sq);
    std::vector<SweepRow> rows;
    std::uint64_t idx = 0;
    for (double v1 : spec.axes[0].values()) {
        for (double v2 : spec.axes[1].values()) {
            SweepPoint pt;
            pt.p_tilde = spec.p_tilde;
            pt.p = spec.p;
            pt.t = spec.t;
            pt.point_index = idx++;
            double sigma_eta = sigma_base;
            detail::apply_axis(pt, sigma_eta, spec.axes[0].name, v1);
            detail::apply_axis(pt, sigma_eta, spec.axes[1].name, v2);
            std::string id = spec.axes[0].name + "=" + detail::fmt_double(v1) + "," +
                             spec.axes[1].name + "=" + detail::fmt_double(v2);
            bool feasible = true;
            try {
                check_layout_feasible(cfg.d, pt.p_tilde, pt.p, pt.t);
            } catch (const std::invalid_argument&) {
                feasible = false;
            }
            SweepRow row;
            if (feasible) {
                row = evaluate_point(cfg, spec, pt, sigma_eta);
            } else {
                row.p_tilde = pt.p_tilde;
                row.p = pt.p;
                row.t = pt.t;
                row.sigma_eta_sq = sigma_eta;
                row.seed = spec.master_seed;
                row.status = "eliminated";
            }
            row.point_id = id;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// fixed S and T; F grows with p as a prefix of `order`
struct LayoutScript {
    std::vector<int> s_coords;
    std::vector<int> t_coords;
    std::vector<int> order;

    static LayoutScript ascending(int d, std::vector<int> t_coords,
                                  std::vector<int> s_coords) {
        LayoutScript sc;
        sc.t_coords = std::move(t_coords);
        sc.s_coords = std::move(s_coords);
        Selector t(sc.t_coords, d);
        for (int c = 1; c <= d; ++c)
            if (!t.contains(c)) sc.order.push_back(c);
        return sc;
    }

    int max_p() const { return static_cast<int>(order.size()); }

    CoordinateLayout layout_at(int d, int p) const {
        if (p < 0 || p > max_p())
            throw std::invalid_argument("layout script: p out of range");
        Selector t(t_coords, d);
        std::vector<int> f(order.begin(), order.begin() + p);
        for (int c : f)
            if (t.contains(c))
                throw std::invalid_argument("layout script: order overlaps T");
        std::sort(f.begin(), f.end());
        return make_layout(d, s_coords, std::move(f), t_coords);
    }
};

inline std::vector<SweepRow> run_specific(const ProblemConfig& cfg, const LayoutScript& script,
                                          const SweepSpec& spec) {
    if (spec.axes.size() != 1 || spec.axes[0].name != "p")
        throw std::invalid_argument("specific sweep needs a single 'p' axis");
    double sigma_eta = spec.sigma_eta_sq.value_or(cfg.sigma_eta_sq);
    std::vector<SweepRow> rows;
    std::uint64_t idx = 0;
    for (double v : spec.axes[0].values()) {
        int p = static_cast<int>(std::llround(v));
        if (p < 0 || p > script.max_p()) continue;
        SweepPoint pt;
        pt.layout = script.layout_at(cfg.d, p);
        pt.p_tilde = pt.layout->p_tilde();
        pt.p = p;
        pt.t = pt.layout->t();
        pt.point_index = idx++;
        SweepRow row = evaluate_point(cfg, spec, pt, sigma_eta);
        row.point_id = "p=" + detail::fmt_double(p);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("specific: no feasible point in range");
    return rows;
}

// --- CSV --------------------------------------------------------------------

inline std::string csv_header(bool with_status) {
    std::string h = "point,p_tilde,p,t,sigma_eta_sq,analytic,mc_mean,mc_stderr,trials,seed";
    if (with_status) h += ",status";
    return h;
}

inline std::string to_csv(const std::vector<SweepRow>& rows, bool with_status = false) {
    std::ostringstream out;
    out << csv_header(with_status) << "\n";
    for (const SweepRow& r : rows) {
        out << r.point_id << "," << r.p_tilde << "," << r.p << "," << r.t << ","
            << detail::fmt_double(r.sigma_eta_sq) << ",";
        if (r.has_analytic) out << (r.analytic_inf ? "inf" : detail::fmt_double(r.analytic));
        out << ",";
        if (r.mc) out << detail::fmt_double(r.mc->mean);
        out << ",";
        if (r.mc) out << detail::fmt_double(r.mc->stderr_);
        out << ",";
        if (r.mc) out << r.trials;
        out << "," << r.seed;
        if (with_status) out << "," << r.status;
        out << "\n";
    }
    return out.str();
}

inline void write_csv(const std::vector<SweepRow>& rows, const std::string& path,
                      bool with_status = false) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_csv(rows, with_status);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<SweepRow> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
    std::vector<std::string> header = split_csv_line(line);
    auto col = [&](const std::string& name) {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    };
    int c_point = col("point"), c_pt = col("p_tilde"), c_p = col("p"), c_t = col("t");
    int c_sig = col("sigma_eta_sq"), c_an = col("analytic"), c_mean = col("mc_mean");
    int c_err = col("mc_stderr"), c_trials = col("trials"), c_seed = col("seed");
    int c_status = col("status");
    if (c_an < 0 || c_mean < 0 || c_err < 0) throw std::runtime_error("missing csv columns");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        SweepRow r;
        auto get = [&](int i) { return i >= 0 && i < static_cast<int>(f.size()) ? f[static_cast<size_t>(i)] : std::string(); };
        r.point_id = get(c_point);
        if (!get(c_pt).empty()) r.p_tilde = std::stoi(get(c_pt));
        if (!get(c_p).empty()) r.p = std::stoi(get(c_p));
        if (!get(c_t).empty()) r.t = std::stoi(get(c_t));
        if (!get(c_sig).empty()) r.sigma_eta_sq = std::stod(get(c_sig));
        std::string an = get(c_an);
        if (!an.empty()) {
            r.has_analytic = true;
            if (an == "inf")
                r.analytic_inf = true;
            else
                r.analytic = std::stod(an);
        }
        if (!get(c_mean).empty()) {
            EmpiricalEstimate e;
            e.mean = std::stod(get(c_mean));
            e.stderr_ = std::stod(get(c_err));
            if (!get(c_trials).empty()) e.trials = std::stoi(get(c_trials));
            r.mc = e;
            r.trials = e.trials;
        }
        if (!get(c_seed).empty()) r.seed = std::stoull(get(c_seed));
        r.status = get(c_status);
        rows.push_back(std::move(r));
    }
    return rows;
}

// --- analytic vs Monte Carlo comparison -------------------------------------

struct CompareReport {
    int points = 0;
    int within_3 = 0;
    double max_abs_z = 0;
    std::vector<std::pair<std::string, double>> z_scores;

    double fraction_within_3() const { return points == 0 ? 0.0 : static_cast<double>(within_3) / points; }
    bool pass() const { return points > 0 && fraction_within_3() >= 0.95; }
};

inline CompareReport compare_rows(const std::vector<SweepRow>& rows) {
    CompareReport rep;
    for (const SweepRow& r : rows) {
        if (!r.has_analytic || r.analytic_inf || !r.mc || r.mc->stderr_ <= 0) continue;
        double z = (r.mc->mean - r.analytic) / r.mc->stderr_;
        rep.z_scores.emplace_back(r.point_id, z);
        rep.max_abs_z = std::max(rep.max_abs_z, std::abs(z));
        ++rep.points;
        if (std::abs(z) <= 3.0) ++rep.within_3;
    }
    return rep;
}

} // namespace tlreg
