#pragma once

#include "common.hpp"

#include <cmath>
#include <vector>

namespace tlreg {

// The deterministic d x d operator relating the two regression parameters.
struct RelationOperator {
    enum class Kind { IdentityScale, LocalAverage, DiscreteDerivative, Dense };

    Kind kind = Kind::IdentityScale;
    double scale = 1.0;    // IdentityScale
    int neighborhood = 1;  // LocalAverage, odd
    Matrix dense;          // Dense

    static RelationOperator identity(double c = 1.0) {
        RelationOperator r;
        r.kind = Kind::IdentityScale;
        r.scale = c;
        return r;
    }

    static RelationOperator local_average(int k) {
        RelationOperator r;
        r.kind = Kind::LocalAverage;
        r.neighborhood = k;
        return r;
    }

    static RelationOperator discrete_derivative() {
        RelationOperator r;
        r.kind = Kind::DiscreteDerivative;
        return r;
    }

    static RelationOperator dense_matrix(Matrix m) {
        RelationOperator r;
        r.kind = Kind::Dense;
        r.dense = std::move(m);
        return r;
    }
};

inline Matrix build_relation_matrix(const RelationOperator& rel, int d) {
    switch (rel.kind) {
    case RelationOperator::Kind::IdentityScale:
        return rel.scale * Matrix::Identity(d, d);
    case RelationOperator::Kind::LocalAverage: {
        int k = rel.neighborhood;
        if (k % 2 == 0) throw std::invalid_argument("local average: k must be odd");
        if (k < 1 || k > d) throw std::invalid_argument("local average: need 1 <= k <= d");
        Matrix h = Matrix::Zero(d, d);
        int half = (k - 1) / 2;
        double w = 1.0 / k;
        for (int i = 0; i < d; ++i)
            for (int j = -half; j <= half; ++j)
                h(i, (((i + j) % d) + d) % d) += w;
        return h;
    }
    case RelationOperator::Kind::DiscreteDerivative: {
        // periodic convolution with the 2-tap kernel (-0.5, +0.5):
        // (H x)_i = 0.5 (x_{i+1} - x_i)
        Matrix h = Matrix::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            h(i, i) = -0.5;
            h(i, (i + 1) % d) += 0.5;
        }
        return h;
    }
    case RelationOperator::Kind::Dense:
        if (rel.dense.rows() != d || rel.dense.cols() != d)
            throw std::invalid_argument("dense relation: matrix must be d x d");
        return rel.dense;
    }
    throw std::logic_error("unreachable");
}

// True-parameter generators. Every shape is rescaled to ||beta||^2 = d,
// except Explicit which is taken verbatim.
struct BetaShape {
    enum class Kind { Linear, Sparse, PiecewiseConstant, Explicit };

    Kind kind = Kind::Linear;
    double frac = 0.25;                       // Sparse
    std::vector<double> levels = default_levels();  // PiecewiseConstant
    std::vector<double> values;               // Explicit

    // the exact block levels behind the "piecewise" presets are a declared
    // convention: 4 equal-length blocks, rescaled to norm d (see README)
    static std::vector<double> default_levels() { return {1.0, 2.0, 0.5, 1.5}; }

    static BetaShape linear() { return BetaShape{}; }
    static BetaShape sparse(double f) {
        BetaShape b;
        b.kind = Kind::Sparse;
        b.frac = f;
        return b;
    }
    static BetaShape piecewise(std::vector<double> lv = default_levels()) {
        BetaShape b;
        b.kind = Kind::PiecewiseConstant;
        b.levels = std::move(lv);
        return b;
    }
    static BetaShape explicit_values(std::vector<double> v) {
        BetaShape b;
        b.kind = Kind::Explicit;
        b.values = std::move(v);
        return b;
    }
};

inline Vector make_beta(const BetaShape& shape, int d) {
    if (d < 2) throw std::invalid_argument("make_beta: d must be >= 2");
    Vector beta = Vector::Zero(d);
    switch (shape.kind) {
    case BetaShape::Kind::Linear:
        for (int i = 0; i < d; ++i) beta[i] = static_cast<double>(i);
        break;
    case BetaShape::Kind::Sparse: {
        if (shape.frac <= 0.0 || shape.frac > 1.0)
            throw std::invalid_argument("make_beta: frac must be in (0, 1]");
        int nnz = static_cast<int>(std::ceil(shape.frac * d));
        for (int i = 0; i < nnz; ++i) beta[i] = 1.0;
        break;
    }
    case BetaShape::Kind::PiecewiseConstant: {
        int nblocks = static_cast<int>(shape.levels.size());
        if (nblocks < 1) throw std::invalid_argument("make_beta: empty level pattern");
        // near-equal blocks; the first (d mod nblocks) blocks get one extra
        int base = d / nblocks, extra = d % nblocks, pos = 0;
        for (int b = 0; b < nblocks; ++b) {
            int len = base + (b < extra ? 1 : 0);
            for (int i = 0; i < len; ++i) beta[pos++] = shape.levels[static_cast<size_t>(b)];
        }
        break;
    }
    case BetaShape::Kind::Explicit: {
        if (static_cast<int>(shape.values.size()) != d)
            throw std::invalid_argument("make_beta: explicit values length != d");
        for (int i = 0; i < d; ++i) beta[i] = shape.values[static_cast<size_t>(i)];
        if (beta.squaredNorm() == 0.0)
            throw std::invalid_argument("make_beta: beta must be nonzero");
        return beta;  // verbatim, no rescale
    }
    }
    double sq = beta.squaredNorm();
    if (sq == 0.0) throw std::invalid_argument("make_beta: all-zero pattern");
    return beta * std::sqrt(static_cast<double>(d) / sq);
}

} // namespace tlreg
