#pragma once

#include <Eigen/Dense>
#include <vector>

#include "shiftlab/shift_operator.hpp"

namespace shiftlab {

enum class KrylovOperator { Shift, CauchyDual };

/// Columns seed, T seed, T^2 seed, ..., T^(count-1) seed as coordinate vectors.
Eigen::MatrixXcd krylov_matrix(const ParamPair& pair, const AbCoords& seed, int count,
                               KrylovOperator op = KrylovOperator::Shift);

/// Orthonormal basis of the numerical column space (rank-revealing QR with a
/// relative drop threshold, so noise columns of nearly dependent inputs are
/// discarded rather than promoted to directions). The 1e-8 default matches
/// the subspace rank tolerance: long orbits accumulate round-off along the
/// directions they miss, and a finer cut would promote that noise into the
/// basis and fake coverage.
Eigen::MatrixXcd orthonormal_span(const Eigen::MatrixXcd& vectors, double rel_drop_tol = 1e-8);

/// ||v - Q Q^H v|| / ||v|| for an orthonormal Q.
double projection_residual(const Eigen::MatrixXcd& q, const Eigen::VectorXcd& v);

/// Numerical rank with singular values below rel_tol * sigma_max discarded.
int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol = 1e-8);

/// Principal-angle comparison of span(directions) against span(q). The
/// cosines are the singular values of Q^H D; a direction (combination)
/// whose cosine falls below `missing_cosine` counts as absent from the span.
/// Cover residuals are computed per column by direct projection, which stays
/// accurate far below the sqrt(eps) floor of the cosine route.
struct SpanComparison {
    std::vector<double> cosines;           // descending
    int missing = 0;                       // count of cosines < missing_cosine
    std::vector<double> column_residuals;  // ||(I - QQ^H) d_i|| per column
    double max_cover_residual = 0.0;       // max column residual below the cutoff
};

SpanComparison compare_spans(const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& directions,
                             double missing_cosine = 0.5);

}  // namespace shiftlab
