#include <tlreg/linalg.hpp>
#include <tlreg/selector.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace tlreg;

TEST_CASE("gaussian sampling is deterministic per seed") {
    Rng a(42), b(42);
    Matrix m1 = sample_standard_gaussian(2, 3, a);
    Matrix m2 = sample_standard_gaussian(2, 3, b);
    REQUIRE(m1 == m2);
    Rng c(43);
    REQUIRE(sample_standard_gaussian(2, 3, c) != m1);
}

TEST_CASE("gaussian sample moments") {
    Rng rng(7);
    Matrix m = sample_standard_gaussian(10000, 1, rng);
    double mean = m.mean();
    double var = (m.array() - mean).square().sum() / (m.size() - 1);
    REQUIRE(std::abs(mean) < 0.05);
    REQUIRE(var > 0.9);
    REQUIRE(var < 1.1);
}

TEST_CASE("gaussian 1x1 draw is finite") {
    Rng rng(11);
    Matrix m = sample_standard_gaussian(1, 1, rng);
    REQUIRE(std::isfinite(m(0, 0)));
    REQUIRE_THROWS_AS(sample_standard_gaussian(0, 1, rng), std::invalid_argument);
}

TEST_CASE("pseudoinverse on identity and rank-deficient diagonal") {
    REQUIRE(pseudoinverse(Matrix::Identity(3, 3)).isApprox(Matrix::Identity(3, 3), 1e-14));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2.0;
    Matrix dp = pseudoinverse(d);
    REQUIRE(dp(0, 0) == Catch::Approx(0.5));
    REQUIRE(dp(1, 1) == 0.0);
}

TEST_CASE("pseudoinverse defining property on a random matrix") {
    Rng rng(3);
    Matrix m = sample_standard_gaussian(5, 3, rng);
    Matrix mp = pseudoinverse(m);
    REQUIRE((m * mp * m - m).norm() <= 1e-10 * m.norm());
}

TEST_CASE("all four Moore-Penrose identities") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Rng rng(seed);
        for (auto [r, c] : {std::pair{8, 5}, std::pair{5, 8}}) {
            Matrix m = sample_standard_gaussian(r, c, rng);
            Matrix mp = pseudoinverse(m);
            double tol = 1e-10;
            REQUIRE((m * mp * m - m).norm() <= tol * m.norm());
            REQUIRE((mp * m * mp - mp).norm() <= tol * mp.norm());
            REQUIRE((m * mp - (m * mp).transpose()).norm() <= tol * (m * mp).norm());
            REQUIRE((mp * m - (mp * m).transpose()).norm() <= tol * (mp * m).norm());
        }
    }
}

TEST_CASE("min_norm_solve matches the pseudoinverse route") {
    Rng rng(9);
    for (auto [r, c] : {std::pair{8, 5}, std::pair{5, 8}, std::pair{6, 6}}) {
        Matrix m = sample_standard_gaussian(r, c, rng);
        Vector b = sample_standard_gaussian(r, 1, rng);
        Vector x = min_norm_solve(m, b);
        Vector x_ref = pseudoinverse(m) * b;
        REQUIRE((x - x_ref).norm() <= 1e-8 * (1.0 + x_ref.norm()));
    }
}

TEST_CASE("selector apply and embed") {
    Vector v(3);
    v << 5, 6, 7;
    Selector s({1, 3}, 3);
    Vector sub = s.apply(v);
    REQUIRE(sub.size() == 2);
    REQUIRE(sub[0] == 5);
    REQUIRE(sub[1] == 7);

    Selector full = Selector::full(3);
    REQUIRE(full.apply(v) == v);
    REQUIRE(Selector::none(3).apply(v).size() == 0);

    Vector w(1);
    w << 9;
    Vector e = Selector({2}, 3).embed(w);
    REQUIRE(e[0] == 0);
    REQUIRE(e[1] == 9);
    REQUIRE(e[2] == 0);

    REQUIRE(s.apply(s.embed(sub)) == sub);
    REQUIRE(s.complement().apply(s.embed(sub)).isZero(0.0));
}

TEST_CASE("selector validation") {
    REQUIRE_THROWS_AS(Selector({2, 1}, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(Selector({1, 1}, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(Selector({4}, 3), std::invalid_argument);
    Vector v(2);
    v << 1, 2;
    REQUIRE_THROWS_AS(Selector({1}, 3).apply(v), std::invalid_argument);
}

TEST_CASE("embed-apply is an idempotent projection") {
    Rng rng(5);
    Vector v = sample_standard_gaussian(7, 1, rng);
    Selector s({2, 3, 6}, 7);
    Vector proj = s.embed(s.apply(v));
    REQUIRE(s.embed(s.apply(proj)) == proj);
    for (int c : {2, 3, 6}) REQUIRE(proj[c - 1] == v[c - 1]);
    for (int c : {1, 4, 5, 7}) REQUIRE(proj[c - 1] == 0.0);
}

// expectations of Wishart pseudoinverses and of the range projection, checked
// by Monte Carlo in both the tall and wide regimes
TEST_CASE("wishart pseudoinverse expectations") {
    const int draws = 20000;

    auto avg_gram_pinv = [&](int n, int p, std::uint64_t seed) {
        Matrix acc = Matrix::Zero(n, n);
        Rng rng(seed);
        for (int i = 0; i < draws; ++i) {
            Matrix x = sample_standard_gaussian(n, p, rng);
            acc += pseudoinverse(Matrix(x * x.transpose()), 1e-10);
        }
        return Matrix(acc / draws);
    };

    SECTION("n=12 p=4") {
        int n = 12, p = 4;
        Matrix m = avg_gram_pinv(n, p, 101);
        double expect = (1.0 / (n - p - 1.0)) * (static_cast<double>(p) / n);
        for (int i = 0; i < n; ++i)
            REQUIRE(m(i, i) == Catch::Approx(expect).epsilon(0.05));
    }
    SECTION("n=4 p=12") {
        int n = 4, p = 12;
        Matrix m = avg_gram_pinv(n, p, 102);
        double expect = 1.0 / (p - n - 1.0);
        for (int i = 0; i < n; ++i)
            REQUIRE(m(i, i) == Catch::Approx(expect).epsilon(0.05));
    }
}

TEST_CASE("projection onto the row space has mean (n/p) I in the wide regime") {
    const int draws = 20000;
    int n = 4, p = 12;
    Matrix acc = Matrix::Zero(p, p);
    Rng rng(103);
    for (int i = 0; i < draws; ++i) {
        Matrix x = sample_standard_gaussian(n, p, rng);
        acc += pseudoinverse(x, 1e-10) * x;
    }
    acc /= draws;
    double expect = static_cast<double>(n) / p;
    for (int i = 0; i < p; ++i) REQUIRE(acc(i, i) == Catch::Approx(expect).epsilon(0.05));
}
