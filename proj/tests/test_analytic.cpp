#include <tlreg/analytic.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace tlreg;

namespace {

ProblemConfig reference_config() { return default_config(); }

}  // namespace

TEST_CASE("expected source error at the reference setting") {
    ProblemConfig cfg = reference_config();
    ExtendedError e = expected_source_error(cfg, 80);
    REQUIRE(e.is_finite());
    REQUIRE(e.value() == Catch::Approx(35.4483).margin(5e-4));

    // underparameterized branch, hand value: (49/19)*((1-30/80)*80+2)
    ExtendedError u = expected_source_error(cfg, 30);
    REQUIRE(u.value() == Catch::Approx(49.0 / 19.0 * 52.0).margin(1e-10));
}

TEST_CASE("source error is infinite across the interpolation band") {
    ProblemConfig cfg = reference_config();
    for (int pt : {49, 50, 51}) {
        ExtendedError e = expected_source_error(cfg, pt);
        REQUIRE_FALSE(e.is_finite());
        REQUIRE(e.reason() == BandReason::SourceBand);
    }
    REQUIRE(expected_source_error(cfg, 48).is_finite());
    REQUIRE(expected_source_error(cfg, 52).is_finite());
}

TEST_CASE("deterministic-S source error branches") {
    ProblemConfig cfg = reference_config();
    cfg.d = 6;
    cfg.n_src = 4;
    cfg.beta = make_beta(BetaShape::linear(), 6);
    Vector theta = cfg.beta;

    Selector s_under({1, 2}, 6);
    double off = s_under.complement().apply(theta).squaredNorm();
    ExtendedError under = source_error_deterministic_S(cfg, s_under, theta);
    REQUIRE(under.value() == Catch::Approx(3.0 / 1.0 * (off + 2.0)));

    Selector s_over = Selector::full(6);
    ExtendedError over = source_error_deterministic_S(cfg, s_over, theta);
    REQUIRE(over.value() ==
            Catch::Approx(5.0 / 1.0 * 2.0 + 2.0 / 6.0 * theta.squaredNorm()));

    REQUIRE_FALSE(source_error_deterministic_S(cfg, Selector({1, 2, 3, 4}, 6), theta)
                      .is_finite());
}

TEST_CASE("per-parameter transfer gain at the reference setting") {
    ProblemConfig cfg = reference_config();
    ExtendedError de = delta_transfer_uniform(cfg, 80);
    REQUIRE(de.value() == Catch::Approx(-0.581897).margin(5e-7));
    REQUIRE_FALSE(delta_transfer_uniform(cfg, 50).is_finite());
}

TEST_CASE("transfer gain hits -kappa/d for a perfectly learnable source") {
    ProblemConfig cfg = reference_config();
    cfg.d = 4;
    cfg.n_src = 20;
    cfg.sigma_xi_sq = 0.0;
    cfg.beta = make_beta(BetaShape::linear(), 4);
    double kappa = task_scalars(cfg).kappa;
    ExtendedError de = delta_transfer_uniform(cfg, 4);
    REQUIRE(de.value() == Catch::Approx(-kappa / 4.0).margin(1e-12));
}

TEST_CASE("the two algebraic routes to the transfer gain agree") {
    ProblemConfig cfg = reference_config();
    for (double eta : {0.0, 0.5, 2.0}) {
        cfg.sigma_eta_sq = eta;
        for (int pt = 1; pt <= 80; ++pt) {
            if (regime(pt, cfg.n_src) == Regime::Band) continue;
            double a = delta_transfer_uniform(cfg, pt).value();
            double b = delta_transfer_via_source_error(cfg, pt).value();
            REQUIRE(a == Catch::Approx(b).epsilon(1e-12).margin(1e-12));
        }
    }
}

TEST_CASE("expected target error at the reference setting") {
    ProblemConfig cfg = reference_config();
    REQUIRE(expected_target_error_uniform(cfg, 80, 60, 0).value() ==
            Catch::Approx(76.31).margin(5e-3));
    REQUIRE(expected_target_error_uniform(cfg, 80, 60, 16).value() ==
            Catch::Approx(62.2228).margin(5e-4));
    REQUIRE(expected_target_error_uniform(cfg, 80, 0, 0).value() ==
            Catch::Approx(84.0).margin(1e-10));
}

TEST_CASE("target error is infinite across the target band") {
    ProblemConfig cfg = reference_config();
    for (int p : {19, 20, 21}) {
        ExtendedError e = expected_target_error_uniform(cfg, 80, p, 0);
        REQUIRE_FALSE(e.is_finite());
        REQUIRE(e.reason() == BandReason::TargetBand);
    }
}

TEST_CASE("a transferred coordinate drags the source band into the target error") {
    ProblemConfig cfg = reference_config();
    ExtendedError with_t = expected_target_error_uniform(cfg, 50, 5, 3);
    REQUIRE_FALSE(with_t.is_finite());
    REQUIRE(with_t.reason() == BandReason::SourceBand);
    // without transfer the source regime is irrelevant
    REQUIRE(expected_target_error_uniform(cfg, 50, 5, 0).is_finite());
}

TEST_CASE("no-transfer special case matches the general formula") {
    ProblemConfig cfg = reference_config();
    for (int p = 0; p <= 80; ++p) {
        ExtendedError a = target_error_no_transfer(cfg, p);
        ExtendedError b = expected_target_error_uniform(cfg, 80, p, 0);
        REQUIRE(a.is_finite() == b.is_finite());
        if (a.is_finite())
            REQUIRE(a.value() == Catch::Approx(b.value()).epsilon(1e-12).margin(1e-12));
    }
}

TEST_CASE("no-learning special case matches the general formula") {
    ProblemConfig cfg = reference_config();
    REQUIRE(target_error_no_learning(cfg, 80, 40).value() ==
            Catch::Approx(60.7241).margin(5e-4));
    for (int pt : {5, 30, 48, 52, 80}) {
        for (int t : {0, 1, pt / 2, pt}) {
            ExtendedError a = target_error_no_learning(cfg, pt, t);
            ExtendedError b = expected_target_error_uniform(cfg, pt, 0, t);
            REQUIRE(a.is_finite() == b.is_finite());
            if (a.is_finite())
                REQUIRE(a.value() ==
                        Catch::Approx(b.value()).epsilon(1e-12).margin(1e-12));
        }
    }
}

TEST_CASE("rho threshold at the reference setting") {
    ProblemConfig cfg = reference_config();
    REQUIRE(rho_threshold_uniform(cfg, 80) == Catch::Approx(0.534483).margin(5e-7));
    REQUIRE_THROWS_AS(rho_threshold_uniform(cfg, 50), std::invalid_argument);
}

TEST_CASE("the transfer gain vanishes exactly at the rho threshold") {
    ProblemConfig cfg = reference_config();
    for (int pt : {5, 30, 48, 52, 70, 80}) {
        double thr = rho_threshold_uniform(cfg, pt);
        REQUIRE(delta_transfer_uniform_at_rho(cfg, pt, thr).value() ==
                Catch::Approx(0.0).margin(1e-10));
        REQUIRE(delta_transfer_uniform_at_rho(cfg, pt, thr + 0.01).value() < 0.0);
        REQUIRE(delta_transfer_uniform_at_rho(cfg, pt, thr - 0.01).value() > 0.0);
    }
}

TEST_CASE("beneficial p_tilde range at the reference setting") {
    ProblemConfig cfg = reference_config();
    BeneficialRange r = ptilde_beneficial_ranges(cfg);
    REQUIRE(r.intervals.size() == 1);
    REQUIRE(r.intervals[0].first == 67);
    REQUIRE(r.intervals[0].second == 80);
}

TEST_CASE("abundant source data makes every p_tilde beneficial") {
    ProblemConfig cfg = reference_config();
    cfg.n_src = 150;  // above d (1 + 1/Gamma_src) + 1 with rho = 1
    BeneficialRange r = ptilde_beneficial_ranges(cfg);
    REQUIRE(r.intervals.size() == 1);
    REQUIRE(r.intervals[0].first == 1);
    REQUIRE(r.intervals[0].second == 80);
}

TEST_CASE("anticorrelated tasks are never beneficial") {
    ProblemConfig cfg = reference_config();
    cfg.relation = RelationOperator::identity(-1.0);  // rho = -1
    BeneficialRange r = ptilde_beneficial_ranges(cfg);
    REQUIRE(r.intervals.empty());
    for (int pt = 1; pt <= 80; ++pt) {
        if (regime(pt, cfg.n_src) == Regime::Band) continue;
        REQUIRE(delta_transfer_uniform(cfg, pt).value() > 0.0);
    }
}

TEST_CASE("range membership matches the sign of the transfer gain") {
    Rng rng(31);
    for (int rep = 0; rep < 12; ++rep) {
        ProblemConfig cfg;
        cfg.d = 20 + static_cast<int>(rng.below(60));
        cfg.n_src = 5 + static_cast<int>(rng.below(200));
        cfg.n_tgt = 10;
        cfg.sigma_xi_sq = 0.5 + 3.0 * rng.uniform01();
        cfg.sigma_eta_sq = rng.uniform01();
        cfg.beta = make_beta(BetaShape::linear(), cfg.d);
        double scale = -0.5 + 2.5 * rng.uniform01();  // spans rho < 0 and rho > 1
        if (std::abs(scale) < 0.05) scale = 0.5;
        cfg.relation = RelationOperator::identity(scale);
        BeneficialRange range = ptilde_beneficial_ranges(cfg);
        for (int pt = 1; pt <= cfg.d; ++pt) {
            if (regime(pt, cfg.n_src) == Regime::Band) continue;
            bool gain = delta_transfer_uniform(cfg, pt).value() < 0.0;
            INFO("d=" << cfg.d << " n_src=" << cfg.n_src << " scale=" << scale
                      << " p_tilde=" << pt);
            REQUIRE(range.contains(pt) == gain);
        }
    }
}

TEST_CASE("specific-layout transfer gain vanishes without transfer") {
    ProblemConfig cfg = reference_config();
    CoordinateLayout l = make_layout(80, {1, 2, 3}, {4, 5, 6}, {});
    REQUIRE(delta_transfer_specific(cfg, l).value() == 0.0);
}

TEST_CASE("specific-layout gain for a perfectly learnable source block") {
    ProblemConfig cfg;
    cfg.d = 4;
    cfg.n_src = 10;
    cfg.n_tgt = 3;
    cfg.sigma_xi_sq = 0.0;
    cfg.sigma_eps_sq = 1.0;
    cfg.beta = Vector::Zero(4);
    cfg.beta[0] = 1.0;
    cfg.beta[1] = -2.0;
    cfg.relation = RelationOperator::identity();
    CoordinateLayout l = make_layout(4, {1, 2}, {3, 4}, {1, 2});
    TaskScalars s = task_scalars(cfg, l);
    ExtendedError de = delta_transfer_specific(cfg, l);
    REQUIRE(de.value() == Catch::Approx(-s.kappa_T).margin(1e-12));
}

TEST_CASE("specific-layout gain is well defined at kappa_T = 0") {
    ProblemConfig cfg = reference_config();
    cfg.d = 8;
    cfg.n_src = 12;
    cfg.beta = Vector::Zero(8);
    cfg.beta[0] = 1.0;
    cfg.beta[1] = 1.0;
    CoordinateLayout l = make_layout(8, {3, 4, 5}, {1, 2}, {4, 5});
    TaskScalars s = task_scalars(cfg, l);
    REQUIRE(s.kappa_T == 0.0);
    double expect = 2.0 * (s.zeta_Sc + cfg.sigma_xi_sq) / (12.0 - 3.0 - 1.0);
    ExtendedError de = delta_transfer_specific(cfg, l);
    REQUIRE(de.value() == Catch::Approx(expect).margin(1e-12));
    REQUIRE(de.value() >= 0.0);
}

TEST_CASE("rho_T threshold equals one when the source block is learned exactly") {
    ProblemConfig cfg;
    cfg.d = 6;
    cfg.n_src = 10;
    cfg.n_tgt = 3;
    cfg.sigma_xi_sq = 0.0;
    cfg.sigma_eps_sq = 1.0;
    cfg.sigma_eta_sq = 0.0;
    cfg.beta = Vector::Zero(6);
    cfg.beta << 1, 1, 0, 0, 1, 2;
    cfg.relation = RelationOperator::identity();
    CoordinateLayout l = make_layout(6, {1, 2, 3, 4}, {5, 6}, {1, 2});
    REQUIRE(rho_T_threshold_specific(cfg, l) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("specific-layout gain crosses zero exactly at the rho_T threshold") {
    Rng rng(33);
    int checked = 0;
    while (checked < 50) {
        int d = 8 + static_cast<int>(rng.below(16));
        int ns = 3 + static_cast<int>(rng.below(30));
        int pt = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
        if (regime(pt, ns) == Regime::Band) continue;
        int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(pt)));
        int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(d - t + 1)));
        ProblemConfig cfg;
        cfg.d = d;
        cfg.n_src = ns;
        cfg.n_tgt = 4;
        cfg.sigma_xi_sq = 2.0 * rng.uniform01();
        cfg.sigma_eta_sq = rng.uniform01();
        cfg.beta = sample_standard_gaussian(d, 1, rng);
        cfg.relation = RelationOperator::dense_matrix(
            Matrix(Matrix::Identity(d, d) + 0.3 * sample_standard_gaussian(d, d, rng)));
        CoordinateLayout l = sample_uniform_layout(d, pt, p, t, rng);
        TaskScalars s = task_scalars(cfg, l);
        if (s.kappa_T <= 1e-12) continue;

        double thr = rho_T_threshold_specific(cfg, l);
        double de = delta_transfer_specific(cfg, l).value();

        // the gain is affine in the inner product <(H beta)_T, beta_T> with
        // slope -2 (under) or -2 n_src / p_tilde (over); shifting the inner
        // product to thr * kappa_T must land exactly on zero
        double slope = (pt <= ns) ? -2.0 : -2.0 * ns / static_cast<double>(pt);
        double at_thr = de + slope * (thr * s.kappa_T - s.rho_inner_T);
        REQUIRE(at_thr == Catch::Approx(0.0).margin(1e-9 * (1.0 + std::abs(de))));

        // sign contract
        bool gain = de < -1e-12;
        bool above = s.rho_T() > thr + 1e-12;
        if (std::abs(de) > 1e-9) REQUIRE(gain == above);
        ++checked;
    }
}

TEST_CASE("specific layout reduces to the uniform formula for constant beta") {
    ProblemConfig cfg = reference_config();
    cfg.d = 10;
    cfg.n_tgt = 4;
    cfg.beta = make_beta(BetaShape::piecewise({1.0}), 10);  // constant
    for (int p : {0, 1, 2, 7, 10}) {
        std::vector<int> f;
        for (int c = 1; c <= p; ++c) f.push_back(c);
        CoordinateLayout l = make_layout(10, {1}, f, {});
        ExtendedError a = target_error_specific(cfg, l);
        ExtendedError b = target_error_no_transfer(cfg, p);
        REQUIRE(a.is_finite() == b.is_finite());
        if (a.is_finite())
            REQUIRE(a.value() == Catch::Approx(b.value()).epsilon(1e-12).margin(1e-12));
    }
}

TEST_CASE("finite expected errors respect the noise floors") {
    ProblemConfig cfg = reference_config();
    for (int pt : {5, 30, 48, 52, 80}) {
        ExtendedError src = expected_source_error(cfg, pt);
        REQUIRE(src.value() >= cfg.sigma_xi_sq);
        for (int p : {0, 5, 16, 30, 60}) {
            for (int t : {0, 2}) {
                if (t > pt || p + t > cfg.d) continue;
                ExtendedError e = expected_target_error_uniform(cfg, pt, p, t);
                if (e.is_finite()) REQUIRE(e.value() >= cfg.sigma_eps_sq);
            }
        }
    }
}
