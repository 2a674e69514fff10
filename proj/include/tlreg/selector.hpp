#pragma once

#include "common.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace tlreg {

// Coordinate extraction operator: picks out an ordered subset of coordinates
// from a d-dimensional vector. Coordinates are 1-based everywhere in the API.
class Selector {
public:
    Selector(std::vector<int> coords, int ambient_dim)
        : coords_(std::move(coords)), ambient_dim_(ambient_dim) {
        if (ambient_dim_ < 1)
            throw std::invalid_argument("selector: ambient_dim must be >= 1");
        int prev = 0;
        for (int c : coords_) {
            if (c <= prev || c > ambient_dim_)
                throw std::invalid_argument(
                    "selector: coords must be strictly increasing in [1, d]");
            prev = c;
        }
    }

    static Selector full(int d) {
        std::vector<int> c(static_cast<size_t>(d));
        std::iota(c.begin(), c.end(), 1);
        return Selector(std::move(c), d);
    }

    static Selector none(int d) { return Selector({}, d); }

    int size() const { return static_cast<int>(coords_.size()); }
    int ambient_dim() const { return ambient_dim_; }
    const std::vector<int>& coords() const { return coords_; }

    bool contains(int coord) const {
        return std::binary_search(coords_.begin(), coords_.end(), coord);
    }

    bool is_subset_of(const Selector& other) const {
        return std::includes(other.coords_.begin(), other.coords_.end(),
                             coords_.begin(), coords_.end());
    }

    Selector complement() const {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(ambient_dim_ - size()));
        size_t j = 0;
        for (int c = 1; c <= ambient_dim_; ++c) {
            if (j < coords_.size() && coords_[j] == c)
                ++j;
            else
                out.push_back(c);
        }
        return Selector(std::move(out), ambient_dim_);
    }

    // v in R^d -> subvector (v_{s_1}, ..., v_{s_k})
    Vector apply(const Vector& v) const {
        if (v.size() != ambient_dim_)
            throw std::invalid_argument("selector: vector length != ambient_dim");
        Vector out(size());
        for (int i = 0; i < size(); ++i) out[i] = v[coords_[static_cast<size_t>(i)] - 1];
        return out;
    }

    // w in R^k -> d-dimensional vector with w on the selected coords, 0 elsewhere
    Vector embed(const Vector& w) const {
        if (w.size() != size())
            throw std::invalid_argument("selector: vector length != |coords|");
        Vector out = Vector::Zero(ambient_dim_);
        for (int i = 0; i < size(); ++i) out[coords_[static_cast<size_t>(i)] - 1] = w[i];
        return out;
    }

    // M with d columns -> the selected columns, in order (M Q^T)
    Matrix select_cols(const Matrix& m) const {
        if (m.cols() != ambient_dim_)
            throw std::invalid_argument("selector: matrix cols != ambient_dim");
        Matrix out(m.rows(), size());
        for (int i = 0; i < size(); ++i)
            out.col(i) = m.col(coords_[static_cast<size_t>(i)] - 1);
        return out;
    }

private:
    std::vector<int> coords_;
    int ambient_dim_;
};

} // namespace tlreg
