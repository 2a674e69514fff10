#pragma once

#include "config.hpp"
#include "layout.hpp"
#include "linalg.hpp"

#include <limits>

namespace tlreg {

// Scalar summaries of the source-target relation. The layout-restricted
// fields are only meaningful when has_layout is set. rho_T is deliberately
// not stored: formulas consume the raw inner product and kappa_T separately
// so that kappa_T = 0 never produces a 0/0.
struct TaskScalars {
    double kappa = 0;      // E||theta||^2 = ||H beta||^2 + d sigma_eta^2
    double rho = 0;        // <H beta, beta> / kappa
    double gamma_src = 0;  // kappa / sigma_xi^2

    bool has_layout = false;
    double kappa_T = 0;      // ||(H beta)_T||^2 + t sigma_eta^2
    double rho_inner_T = 0;  // <(H beta)_T, beta_T>
    double zeta_Sc = 0;      // ||(H beta)_{S^c}||^2 + (d - p_tilde) sigma_eta^2
    double energy_S = 0;     // ||(H beta)_S||^2 + p_tilde sigma_eta^2
    double psi_T = 0;        // (t / p_tilde) * energy_S / kappa_T, t > 0 only
    bool psi_valid = false;

    double rho_T() const {
        if (!has_layout || kappa_T <= 0.0)
            throw std::domain_error("rho_T undefined: kappa_T = 0");
        return rho_inner_T / kappa_T;
    }
};

inline TaskScalars task_scalars(const ProblemConfig& cfg) {
    cfg.validate();
    Vector bh = cfg.beta_h();
    TaskScalars s;
    s.kappa = bh.squaredNorm() + cfg.d * cfg.sigma_eta_sq;
    if (s.kappa == 0.0) throw std::domain_error("task_scalars: kappa = 0");
    s.rho = bh.dot(cfg.beta) / s.kappa;
    s.gamma_src = cfg.sigma_xi_sq > 0 ? s.kappa / cfg.sigma_xi_sq
                                      : std::numeric_limits<double>::infinity();
    return s;
}

inline TaskScalars task_scalars(const ProblemConfig& cfg, const CoordinateLayout& layout) {
    if (layout.d() != cfg.d) throw std::invalid_argument("task_scalars: layout dim != d");
    TaskScalars s = task_scalars(cfg);
    Vector bh = cfg.beta_h();
    s.has_layout = true;
    Vector bh_T = layout.T.apply(bh);
    s.kappa_T = bh_T.squaredNorm() + layout.t() * cfg.sigma_eta_sq;
    s.rho_inner_T = bh_T.dot(layout.T.apply(cfg.beta));
    Selector s_comp = layout.S.complement();
    s.zeta_Sc = s_comp.apply(bh).squaredNorm() + (cfg.d - layout.p_tilde()) * cfg.sigma_eta_sq;
    s.energy_S = layout.S.apply(bh).squaredNorm() + layout.p_tilde() * cfg.sigma_eta_sq;
    if (layout.t() > 0 && s.kappa_T > 0.0) {
        s.psi_T = (static_cast<double>(layout.t()) / layout.p_tilde()) * s.energy_S / s.kappa_T;
        s.psi_valid = true;
    }
    return s;
}

struct SourceInstance {
    Matrix Z;      // n_src x d
    Vector theta;  // H beta + eta
    Vector v;      // Z theta + xi
};

struct TargetInstance {
    Matrix X;  // n_tgt x d
    Vector y;  // X beta + eps
};

// beta_h passed in so sweeps can amortize the H beta product across trials
inline SourceInstance sample_source_instance(const ProblemConfig& cfg, const Vector& beta_h,
                                             Rng& rng) {
    SourceInstance inst;
    inst.theta = beta_h + sample_gaussian_vector(cfg.d, cfg.sigma_eta_sq, rng);
    inst.Z = sample_standard_gaussian(cfg.n_src, cfg.d, rng);
    inst.v = inst.Z * inst.theta + sample_gaussian_vector(cfg.n_src, cfg.sigma_xi_sq, rng);
    return inst;
}

inline SourceInstance sample_source_instance(const ProblemConfig& cfg, Rng& rng) {
    cfg.validate();
    return sample_source_instance(cfg, cfg.beta_h(), rng);
}

inline TargetInstance sample_target_instance(const ProblemConfig& cfg, Rng& rng) {
    TargetInstance inst;
    inst.X = sample_standard_gaussian(cfg.n_tgt, cfg.d, rng);
    inst.y = inst.X * cfg.beta + sample_gaussian_vector(cfg.n_tgt, cfg.sigma_eps_sq, rng);
    return inst;
}

} // namespace tlreg
