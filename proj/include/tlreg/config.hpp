#pragma once

#include "relation.hpp"

#include <json.hpp>

#include <fstream>

namespace tlreg {

// Full experiment definition. Defaults follow the reference setting used
// throughout: d=80, n_src=50, n_tgt=20, sigma_xi_sq=0.025*d, sigma_eps_sq=0.05*d,
// linearly increasing beta with ||beta||^2 = d, identity relation.
struct ProblemConfig {
    int d = 80;
    int n_src = 50;  // source sample count (n tilde)
    int n_tgt = 20;  // target sample count
    double sigma_xi_sq = 2.0;
    double sigma_eps_sq = 4.0;
    double sigma_eta_sq = 0.0;
    Vector beta;
    RelationOperator relation;

    void validate() const {
        if (d < 1 || n_src < 1 || n_tgt < 1)
            throw std::invalid_argument("config: d, n_src, n_tgt must be >= 1");
        if (sigma_xi_sq < 0 || sigma_eps_sq < 0 || sigma_eta_sq < 0)
            throw std::invalid_argument("config: variances must be >= 0");
        if (beta.size() != d) throw std::invalid_argument("config: beta length != d");
        if (beta.squaredNorm() == 0.0)
            throw std::invalid_argument("config: beta must be nonzero");
    }

    Matrix relation_matrix() const { return build_relation_matrix(relation, d); }
    Vector beta_h() const { return relation_matrix() * beta; }
};

inline ProblemConfig default_config() {
    ProblemConfig c;
    c.beta = make_beta(BetaShape::linear(), c.d);
    c.relation = RelationOperator::identity();
    return c;
}

inline BetaShape beta_shape_from_json(const nlohmann::json& j) {
    std::string shape = j.value("shape", "linear");
    if (shape == "linear") return BetaShape::linear();
    if (shape == "sparse") return BetaShape::sparse(j.value("frac", 0.25));
    if (shape == "piecewise") {
        if (j.contains("levels"))
            return BetaShape::piecewise(j["levels"].get<std::vector<double>>());
        return BetaShape::piecewise();
    }
    if (shape == "explicit")
        return BetaShape::explicit_values(j.at("values").get<std::vector<double>>());
    throw std::invalid_argument("config: unknown beta shape '" + shape + "'");
}

inline RelationOperator relation_from_json(const nlohmann::json& j, int d) {
    std::string variant = j.value("variant", "identity_scale");
    if (variant == "identity_scale")
        return RelationOperator::identity(j.value("scale", 1.0));
    if (variant == "local_average")
        return RelationOperator::local_average(j.at("neighborhood").get<int>());
    if (variant == "discrete_derivative") return RelationOperator::discrete_derivative();
    if (variant == "dense") {
        auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
        Matrix m(d, d);
        if (static_cast<int>(rows.size()) != d)
            throw std::invalid_argument("config: dense relation matrix must be d x d");
        for (int i = 0; i < d; ++i) {
            if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != d)
                throw std::invalid_argument("config: dense relation matrix must be d x d");
            for (int k = 0; k < d; ++k) m(i, k) = rows[static_cast<size_t>(i)][static_cast<size_t>(k)];
        }
        return RelationOperator::dense_matrix(std::move(m));
    }
    throw std::invalid_argument("config: unknown relation variant '" + variant + "'");
}

inline ProblemConfig config_from_json(const nlohmann::json& j) {
    ProblemConfig c = default_config();
    c.d = j.value("d", c.d);
    c.n_src = j.value("n_src", c.n_src);
    c.n_tgt = j.value("n_tgt", c.n_tgt);
    c.sigma_xi_sq = j.value("sigma_xi_sq", c.sigma_xi_sq);
    c.sigma_eps_sq = j.value("sigma_eps_sq", c.sigma_eps_sq);
    c.sigma_eta_sq = j.value("sigma_eta_sq", c.sigma_eta_sq);
    if (j.contains("beta"))
        c.beta = make_beta(beta_shape_from_json(j["beta"]), c.d);
    else
        c.beta = make_beta(BetaShape::linear(), c.d);
    if (j.contains("relation"))
        c.relation = relation_from_json(j["relation"], c.d);
    c.validate();
    return c;
}

inline ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

} // namespace tlreg
