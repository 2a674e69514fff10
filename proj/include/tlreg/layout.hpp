#pragma once

#include "rng.hpp"
#include "selector.hpp"

#include <algorithm>

namespace tlreg {

// L = {S, F, T, Z}: S = source free coords, T subset of S transferred to the
// target, F = target free coords, Z = target coords forced to zero.
// F, T, Z partition {1..d}.
struct CoordinateLayout {
    Selector S, F, T, Z;

    CoordinateLayout(Selector s, Selector f, Selector t, Selector z)
        : S(std::move(s)), F(std::move(f)), T(std::move(t)), Z(std::move(z)) {
        int d = S.ambient_dim();
        if (F.ambient_dim() != d || T.ambient_dim() != d || Z.ambient_dim() != d)
            throw std::invalid_argument("layout: mismatched ambient dims");
        if (S.size() < 1) throw std::invalid_argument("layout: S must be nonempty");
        if (!T.is_subset_of(S)) throw std::invalid_argument("layout: T must be a subset of S");
        if (F.size() + T.size() + Z.size() != d)
            throw std::invalid_argument("layout: F, T, Z must partition {1..d}");
        std::vector<bool> seen(static_cast<size_t>(d), false);
        for (const Selector* sel : {&F, &T, &Z})
            for (int c : sel->coords()) {
                if (seen[static_cast<size_t>(c - 1)])
                    throw std::invalid_argument("layout: F, T, Z must be disjoint");
                seen[static_cast<size_t>(c - 1)] = true;
            }
    }

    int d() const { return S.ambient_dim(); }
    int p_tilde() const { return S.size(); }
    int p() const { return F.size(); }
    int t() const { return T.size(); }
};

// builds Z as the complement of F and T
inline CoordinateLayout make_layout(int d, std::vector<int> s_coords,
                                    std::vector<int> f_coords,
                                    std::vector<int> t_coords) {
    Selector s(std::move(s_coords), d);
    Selector f(std::move(f_coords), d);
    Selector t(std::move(t_coords), d);
    std::vector<int> rest;
    for (int c = 1; c <= d; ++c)
        if (!f.contains(c) && !t.contains(c)) rest.push_back(c);
    return CoordinateLayout(std::move(s), std::move(f), std::move(t),
                            Selector(std::move(rest), d));
}

inline void check_layout_feasible(int d, int p_tilde, int p, int t) {
    if (p_tilde < 1 || p_tilde > d || t < 0 || t > p_tilde || p < 0 || p + t > d)
        throw std::invalid_argument(
            "infeasible layout sizes: need 1 <= p_tilde <= d, 0 <= t <= p_tilde, "
            "0 <= p, p + t <= d");
}

// uniform size-k subset of pool via partial Fisher-Yates, returned sorted
inline std::vector<int> sample_subset(std::vector<int> pool, int k, Rng& rng) {
    int n = static_cast<int>(pool.size());
    if (k < 0 || k > n) throw std::invalid_argument("sample_subset: bad k");
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
    }
    pool.resize(static_cast<size_t>(k));
    std::sort(pool.begin(), pool.end());
    return pool;
}

// S uniform over size-p_tilde subsets of {1..d}; T uniform over size-t subsets
// of S; F uniform over size-p subsets of {1..d} \ T; Z = the rest.
inline CoordinateLayout sample_uniform_layout(int d, int p_tilde, int p, int t, Rng& rng) {
    check_layout_feasible(d, p_tilde, p, t);
    std::vector<int> all(static_cast<size_t>(d));
    std::iota(all.begin(), all.end(), 1);
    std::vector<int> s = sample_subset(all, p_tilde, rng);
    std::vector<int> tt = sample_subset(s, t, rng);
    std::vector<int> pool;
    pool.reserve(static_cast<size_t>(d - t));
    size_t j = 0;
    for (int c = 1; c <= d; ++c) {
        if (j < tt.size() && tt[j] == c)
            ++j;
        else
            pool.push_back(c);
    }
    std::vector<int> f = sample_subset(std::move(pool), p, rng);
    return make_layout(d, std::move(s), std::move(f), std::move(tt));
}

} // namespace tlreg
