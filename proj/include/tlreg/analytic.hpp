#pragma once

#include "layout.hpp"
#include "model.hpp"

#include <cmath>
#include <ostream>
#include <utility>
#include <vector>

namespace tlreg {

// Expected errors are genuinely infinite when the free-parameter count is
// within one of the sample count; sweeps traverse those bands, so Infinite is
// a value, not an exception.
enum class BandReason { TargetBand, SourceBand };

class ExtendedError {
public:
    static ExtendedError finite(double v) { return ExtendedError(true, v, BandReason::TargetBand); }
    static ExtendedError infinite(BandReason r) { return ExtendedError(false, 0.0, r); }

    bool is_finite() const { return finite_; }
    double value() const {
        if (!finite_) throw std::domain_error("value() on infinite error");
        return value_;
    }
    BandReason reason() const {
        if (finite_) throw std::domain_error("reason() on finite error");
        return reason_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtendedError& e) {
        if (e.finite_) return os << e.value_;
        return os << "inf";
    }

private:
    ExtendedError(bool f, double v, BandReason r) : finite_(f), value_(v), reason_(r) {}
    bool finite_;
    double value_;
    BandReason reason_;
};

enum class Regime { Under, Band, Over };

// free-parameter count vs sample count: expected error is infinite when the
// two are within one of each other
inline Regime regime(int count, int samples) {
    if (count <= samples - 2) return Regime::Under;
    if (count >= samples + 2) return Regime::Over;
    return Regime::Band;
}

// --- source task -----------------------------------------------------------

// realized-theta, fixed-S form of the expected source error
inline ExtendedError source_error_deterministic_S(const ProblemConfig& cfg, const Selector& S,
                                                  const Vector& theta) {
    if (S.size() < 1) throw std::invalid_argument("source error: S must be nonempty");
    if (theta.size() != cfg.d) throw std::invalid_argument("source error: theta length != d");
    int pt = S.size(), ns = cfg.n_src;
    double off = S.complement().apply(theta).squaredNorm();
    switch (regime(pt, ns)) {
    case Regime::Under:
        return ExtendedError::finite((ns - 1.0) / (ns - pt - 1.0) * (off + cfg.sigma_xi_sq));
    case Regime::Band:
        return ExtendedError::infinite(BandReason::SourceBand);
    case Regime::Over: {
        double on = S.apply(theta).squaredNorm();
        return ExtendedError::finite((pt - 1.0) / (pt - ns - 1.0) * (off + cfg.sigma_xi_sq) +
                                     (pt - ns) / static_cast<double>(pt) * on);
    }
    }
    throw std::logic_error("unreachable");
}

// expectation over uniform S and eta
inline ExtendedError expected_source_error(const ProblemConfig& cfg, int p_tilde) {
    if (p_tilde < 1 || p_tilde > cfg.d)
        throw std::invalid_argument("expected_source_error: need 1 <= p_tilde <= d");
    double kappa = task_scalars(cfg).kappa;
    int ns = cfg.n_src;
    double d = cfg.d, pt = p_tilde;
    double core = (1.0 - pt / d) * kappa + cfg.sigma_xi_sq;
    switch (regime(p_tilde, ns)) {
    case Regime::Under:
        return ExtendedError::finite((ns - 1.0) / (ns - pt - 1.0) * core);
    case Regime::Band:
        return ExtendedError::infinite(BandReason::SourceBand);
    case Regime::Over:
        return ExtendedError::finite((pt - 1.0) / (pt - ns - 1.0) * core + (pt - ns) / d * kappa);
    }
    throw std::logic_error("unreachable");
}

// --- per-transferred-parameter error difference (uniform layouts) ----------

// closed form with rho supplied explicitly; used for threshold boundary checks
inline ExtendedError delta_transfer_uniform_at_rho(const ProblemConfig& cfg, int p_tilde,
                                                   double rho) {
    if (p_tilde < 1 || p_tilde > cfg.d)
        throw std::invalid_argument("delta_transfer: need 1 <= p_tilde <= d");
    double kappa = task_scalars(cfg).kappa;
    int ns = cfg.n_src;
    double d = cfg.d, pt = p_tilde;
    double top = d - pt + d * cfg.sigma_xi_sq / kappa;
    switch (regime(p_tilde, ns)) {
    case Regime::Under:
        return ExtendedError::finite(kappa / d * (1.0 - 2.0 * rho + top / (ns - pt - 1.0)));
    case Regime::Band:
        return ExtendedError::infinite(BandReason::SourceBand);
    case Regime::Over:
        return ExtendedError::finite(kappa / d * (ns / pt) *
                                     (1.0 - 2.0 * rho + top / (pt - ns - 1.0)));
    }
    throw std::logic_error("unreachable");
}

inline ExtendedError delta_transfer_uniform(const ProblemConfig& cfg, int p_tilde) {
    return delta_transfer_uniform_at_rho(cfg, p_tilde, task_scalars(cfg).rho);
}

// same quantity through the source-error route; kept as an independent
// algebraic path and cross-checked against the closed form in the tests
inline ExtendedError delta_transfer_via_source_error(const ProblemConfig& cfg, int p_tilde) {
    ExtendedError src = expected_source_error(cfg, p_tilde);
    if (!src.is_finite()) return src;
    TaskScalars s = task_scalars(cfg);
    double pt = p_tilde;
    double factor = (p_tilde <= cfg.n_src) ? 1.0 : cfg.n_src / pt;
    return ExtendedError::finite((src.value() - cfg.sigma_xi_sq - s.kappa) / pt -
                                 2.0 * s.kappa / cfg.d * (s.rho - 1.0) * factor);
}

// --- target task, uniform layouts -------------------------------------------

inline ExtendedError expected_target_error_uniform(const ProblemConfig& cfg, int p_tilde, int p,
                                                   int t) {
    check_layout_feasible(cfg.d, p_tilde, p, t);
    if (regime(p, cfg.n_tgt) == Regime::Band)
        return ExtendedError::infinite(BandReason::TargetBand);
    double delta_term = 0.0;
    if (t > 0) {
        ExtendedError de = delta_transfer_uniform(cfg, p_tilde);
        if (!de.is_finite()) return ExtendedError::infinite(BandReason::SourceBand);
        delta_term = t * de.value();
    }
    double bsq = cfg.beta.squaredNorm();
    double d = cfg.d, pp = p;
    int n = cfg.n_tgt;
    double core = (1.0 - pp / d) * bsq + cfg.sigma_eps_sq + delta_term;
    if (p <= n - 2) return ExtendedError::finite((n - 1.0) / (n - pp - 1.0) * core);
    return ExtendedError::finite((pp - 1.0) / (pp - n - 1.0) * core + (pp - n) / d * bsq);
}

// t = 0 special case, written in its own algebraic form
inline ExtendedError target_error_no_transfer(const ProblemConfig& cfg, int p) {
    if (p < 0 || p > cfg.d) throw std::invalid_argument("target_error: need 0 <= p <= d");
    double bsq = cfg.beta.squaredNorm();
    double d = cfg.d, pp = p;
    int n = cfg.n_tgt;
    double core = (1.0 - pp / d) * bsq + cfg.sigma_eps_sq;
    switch (regime(p, n)) {
    case Regime::Under:
        return ExtendedError::finite((1.0 + pp / (n - pp - 1.0)) * core);
    case Regime::Band:
        return ExtendedError::infinite(BandReason::TargetBand);
    case Regime::Over:
        return ExtendedError::finite((1.0 + n / (pp - n - 1.0)) * core + (pp - n) / d * bsq);
    }
    throw std::logic_error("unreachable");
}

// p = 0 special case: transfer with no additional learning
inline ExtendedError target_error_no_learning(const ProblemConfig& cfg, int p_tilde, int t) {
    check_layout_feasible(cfg.d, p_tilde, 0, t);
    double base = cfg.beta.squaredNorm() + cfg.sigma_eps_sq;
    if (t == 0) return ExtendedError::finite(base);
    ExtendedError de = delta_transfer_uniform(cfg, p_tilde);
    if (!de.is_finite()) return de;
    return ExtendedError::finite(base + t * de.value());
}

// minimal task correlation for beneficial transfer at a given p_tilde;
// contract: delta_transfer_uniform < 0 iff rho > threshold
inline double rho_threshold_uniform(const ProblemConfig& cfg, int p_tilde) {
    ExtendedError src = expected_source_error(cfg, p_tilde);
    if (!src.is_finite())
        throw std::invalid_argument("rho_threshold: p_tilde is inside the source band");
    TaskScalars s = task_scalars(cfg);
    double pt = p_tilde;
    double factor = (p_tilde <= cfg.n_src) ? 1.0 : pt / cfg.n_src;
    return 1.0 +
           cfg.d / (2.0 * pt) * ((src.value() - cfg.sigma_xi_sq) / s.kappa - 1.0) * factor;
}

// --- beneficial p_tilde ranges ----------------------------------------------

struct BeneficialRange {
    std::vector<std::pair<int, int>> intervals;  // inclusive, disjoint, sorted

    bool contains(int p_tilde) const {
        for (auto [lo, hi] : intervals)
            if (p_tilde >= lo && p_tilde <= hi) return true;
        return false;
    }
};

// the four strict range conditions on p_tilde; evaluated on the integer
// lattice, source-band values excluded
inline BeneficialRange ptilde_beneficial_ranges(const ProblemConfig& cfg) {
    TaskScalars s = task_scalars(cfg);
    double rho = s.rho;
    double gi = cfg.sigma_xi_sq / s.kappa;  // 1 / Gamma_src
    double d = cfg.d;
    double ns = cfg.n_src;
    bool big_nsrc = ns > d * (1.0 + gi) + 1.0;

    auto beneficial = [&](int p_tilde) {
        double pt = p_tilde;
        if (rho > 0.0 && ns < d - 1.0 &&
            pt > ns + 1.0 + (d - ns + d * gi - 1.0) / (2.0 * rho))
            return true;
        if (rho > 1.0 && !big_nsrc &&
            pt < ns - 1.0 - (d - ns + d * gi + 1.0) / (2.0 * (rho - 1.0)))
            return true;
        if (rho >= 0.0 && rho < 1.0 && big_nsrc &&
            pt > ns - 1.0 - (d - ns + d * gi + 1.0) / (2.0 * (rho - 1.0)))
            return true;
        if (rho >= 1.0 && big_nsrc) return true;
        return false;
    };

    BeneficialRange out;
    int run_start = 0;
    for (int pt = 1; pt <= cfg.d + 1; ++pt) {
        bool ok = pt <= cfg.d && regime(pt, cfg.n_src) != Regime::Band && beneficial(pt);
        if (ok && run_start == 0) run_start = pt;
        if (!ok && run_start != 0) {
            out.intervals.emplace_back(run_start, pt - 1);
            run_start = 0;
        }
    }
    return out;
}

// --- target task, specific layouts ------------------------------------------

inline ExtendedError delta_transfer_specific(const ProblemConfig& cfg,
                                             const CoordinateLayout& layout) {
    if (layout.d() != cfg.d) throw std::invalid_argument("delta_transfer: layout dim != d");
    int t = layout.t();
    if (t == 0) return ExtendedError::finite(0.0);
    int pt = layout.p_tilde(), ns = cfg.n_src;
    TaskScalars s = task_scalars(cfg, layout);
    double zeta_term = t * (s.zeta_Sc + cfg.sigma_xi_sq);
    switch (regime(pt, ns)) {
    case Regime::Under:
        // kappa_T (1 - 2 rho_T + ...) expanded through the raw inner product,
        // well-defined at kappa_T = 0
        return ExtendedError::finite(s.kappa_T - 2.0 * s.rho_inner_T +
                                     zeta_term / (ns - pt - 1.0));
    case Regime::Band:
        return ExtendedError::infinite(BandReason::SourceBand);
    case Regime::Over: {
        double ptd = pt;
        // kappa_T * psi_T = (t / p_tilde) * energy_S, again inner-product safe
        double head = ((ptd * ptd - ns * ptd) * (t / ptd) * s.energy_S +
                       (ns * ptd - 1.0) * s.kappa_T) /
                      (ptd * ptd - 1.0);
        return ExtendedError::finite(ns / ptd * (head - 2.0 * s.rho_inner_T +
                                                 zeta_term / (ptd - ns - 1.0)));
    }
    }
    throw std::logic_error("unreachable");
}

inline ExtendedError target_error_specific(const ProblemConfig& cfg,
                                           const CoordinateLayout& layout) {
    if (layout.d() != cfg.d) throw std::invalid_argument("target_error: layout dim != d");
    int p = layout.p(), n = cfg.n_tgt;
    if (regime(p, n) == Regime::Band) return ExtendedError::infinite(BandReason::TargetBand);
    ExtendedError de = delta_transfer_specific(cfg, layout);
    if (!de.is_finite()) return de;
    double off = layout.F.complement().apply(cfg.beta).squaredNorm();
    double core = off + cfg.sigma_eps_sq + de.value();
    double pp = p;
    if (p <= n - 2) return ExtendedError::finite((n - 1.0) / (n - pp - 1.0) * core);
    double on = layout.F.apply(cfg.beta).squaredNorm();
    return ExtendedError::finite((pp - 1.0) / (pp - n - 1.0) * core + (1.0 - n / pp) * on);
}

// root in rho_T of the specific-layout error difference;
// contract: delta_transfer_specific < 0 iff rho_T > threshold
inline double rho_T_threshold_specific(const ProblemConfig& cfg,
                                       const CoordinateLayout& layout) {
    if (layout.t() < 1) throw std::invalid_argument("rho_T threshold: need t > 0");
    TaskScalars s = task_scalars(cfg, layout);
    if (s.kappa_T <= 0.0) throw std::domain_error("rho_T threshold: kappa_T = 0");
    int pt = layout.p_tilde(), ns = cfg.n_src, t = layout.t();
    double zeta_term = t * (s.zeta_Sc + cfg.sigma_xi_sq) / s.kappa_T;
    switch (regime(pt, ns)) {
    case Regime::Under:
        return 0.5 * (1.0 + zeta_term / (ns - pt - 1.0));
    case Regime::Band:
        throw std::invalid_argument("rho_T threshold: p_tilde is inside the source band");
    case Regime::Over: {
        double ptd = pt;
        double head = ((ptd * ptd - ns * ptd) * s.psi_T + ns * ptd - 1.0) / (ptd * ptd - 1.0);
        return 0.5 * (head + zeta_term / (ptd - ns - 1.0));
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace tlreg
