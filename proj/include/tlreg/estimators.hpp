#pragma once

#include "layout.hpp"
#include "linalg.hpp"
#include "model.hpp"

namespace tlreg {

struct SourceFit {
    Vector theta_hat;  // length d, zero off S
};

struct TargetFit {
    Vector beta_hat;  // length d; matches theta_hat on T, zero on Z
};

// min-norm solution of ||v - Z r||^2 subject to r = 0 off S
inline SourceFit fit_source(const Matrix& Z, const Vector& v, const Selector& S) {
    if (Z.cols() != S.ambient_dim())
        throw std::invalid_argument("fit_source: Z cols != ambient dim");
    if (v.size() != Z.rows()) throw std::invalid_argument("fit_source: v length != rows");
    return SourceFit{S.embed(min_norm_solve(S.select_cols(Z), v))};
}

// min-norm over F of ||y - X r||^2 subject to r_T = theta_hat_T, r_Z = 0
inline TargetFit fit_target(const Matrix& X, const Vector& y, const Vector& theta_hat,
                            const CoordinateLayout& layout) {
    if (X.cols() != layout.d())
        throw std::invalid_argument("fit_target: X cols != layout dim");
    if (y.size() != X.rows()) throw std::invalid_argument("fit_target: y length != rows");
    if (theta_hat.size() != layout.d())
        throw std::invalid_argument("fit_target: theta_hat length != d");
    Vector theta_T = layout.T.apply(theta_hat);
    Vector residual = y;
    if (layout.t() > 0) residual -= layout.T.select_cols(X) * theta_T;
    Vector beta_hat = layout.T.embed(theta_T);
    if (layout.p() > 0)
        beta_hat += layout.F.embed(min_norm_solve(layout.F.select_cols(X), residual));
    return TargetFit{std::move(beta_hat)};
}

// exact conditional out-of-sample error for isotropic Gaussian test inputs
inline double source_risk(const Vector& theta_hat, const Vector& theta, double sigma_xi_sq) {
    if (theta_hat.size() != theta.size())
        throw std::invalid_argument("source_risk: length mismatch");
    return sigma_xi_sq + (theta_hat - theta).squaredNorm();
}

inline double target_risk(const Vector& beta_hat, const Vector& beta, double sigma_eps_sq) {
    if (beta_hat.size() != beta.size())
        throw std::invalid_argument("target_risk: length mismatch");
    return sigma_eps_sq + (beta_hat - beta).squaredNorm();
}

// validation-mode risk: average squared error over fresh test pairs
// (the exact identities above are the default everywhere else)
inline double empirical_risk(const Vector& coef_hat, const Vector& coef_true,
                             double noise_var, int num_pairs, Rng& rng) {
    double acc = 0.0;
    double sd = std::sqrt(noise_var);
    int dd = static_cast<int>(coef_true.size());
    for (int k = 0; k < num_pairs; ++k) {
        double pred = 0.0, truth = 0.0;
        for (int i = 0; i < dd; ++i) {
            double x = rng.gaussian();
            pred += x * coef_hat[i];
            truth += x * coef_true[i];
        }
        double err = pred - (truth + sd * rng.gaussian());
        acc += err * err;
    }
    return acc / num_pairs;
}

} // namespace tlreg
