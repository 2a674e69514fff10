#pragma once

#include "common.hpp"
#include "rng.hpp"

#include <Eigen/SVD>

namespace tlreg {

// rows x cols matrix of i.i.d. N(0,1) entries, filled row by row
inline Matrix sample_standard_gaussian(int rows, int cols, Rng& rng) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("sample_standard_gaussian: dims must be >= 1");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.gaussian();
    return m;
}

inline Vector sample_gaussian_vector(int len, double variance, Rng& rng) {
    Vector v(len);
    double sd = std::sqrt(variance);
    for (int i = 0; i < len; ++i) v[i] = sd * rng.gaussian();
    return v;
}

// Moore-Penrose pseudoinverse via SVD; singular values below
// rel_tol * sigma_max are truncated to zero.
inline Matrix pseudoinverse(const Matrix& m, double rel_tol = 1e-12) {
    if (rel_tol <= 0.0 || rel_tol >= 1.0)
        throw std::invalid_argument("pseudoinverse: rel_tol must be in (0, 1)");
    if (m.rows() == 0 || m.cols() == 0) return Matrix::Zero(m.cols(), m.rows());
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("pseudoinverse: SVD failed", m.rows(), m.cols());
    const Vector& s = svd.singularValues();
    double cutoff = rel_tol * s[0];
    Vector sinv = Vector::Zero(s.size());
    for (int i = 0; i < s.size(); ++i)
        if (s[i] > cutoff) sinv[i] = 1.0 / s[i];
    return svd.matrixV() * sinv.asDiagonal() * svd.matrixU().transpose();
}

// Minimum-norm least-squares solution of ||b - M x||. Same semantics as
// pseudoinverse(M) * b but avoids forming the pseudoinverse; this is the hot
// path of every Monte Carlo trial.
inline Vector min_norm_solve(const Matrix& m, const Vector& b, double rel_tol = 1e-12) {
    if (b.size() != m.rows())
        throw std::invalid_argument("min_norm_solve: rhs length != rows");
    if (m.cols() == 0) return Vector(0);
    if (m.rows() == 0) return Vector::Zero(m.cols());
    // fast path: full-rank normal equations via Cholesky (x = M^T (M M^T)^-1 b
    // in the wide case). Falls through to the SVD when the Gram matrix is
    // rank-deficient or too ill-conditioned to trust.
    {
        Eigen::LLT<Matrix> llt;
        if (m.rows() >= m.cols()) {
            llt.compute(Matrix(m.transpose() * m));
            if (llt.info() == Eigen::Success && llt.rcond() > 1e-10)
                return llt.solve(m.transpose() * b);
        } else {
            llt.compute(Matrix(m * m.transpose()));
            if (llt.info() == Eigen::Success && llt.rcond() > 1e-10)
                return m.transpose() * llt.solve(b);
        }
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("min_norm_solve: SVD failed", m.rows(), m.cols());
    const Vector& s = svd.singularValues();
    double cutoff = rel_tol * s[0];
    Vector c = svd.matrixU().transpose() * b;
    for (int i = 0; i < s.size(); ++i) c[i] = (s[i] > cutoff) ? c[i] / s[i] : 0.0;
    return svd.matrixV() * c;
}

} // namespace tlreg
