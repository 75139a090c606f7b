#include "shiftlab/krylov.hpp"

#include <algorithm>
#include <cmath>

namespace shiftlab {

Eigen::MatrixXcd krylov_matrix(const ParamPair& pair, const AbCoords& seed, int count,
                               KrylovOperator op) {
    const int dim = seed.dim();
    Eigen::MatrixXcd m(dim, std::max(count, 0));
    AbCoords v = seed;
    for (int k = 0; k < count; ++k) {
        m.col(k) = v.to_vector();
        v = (op == KrylovOperator::Shift) ? apply(pair, v) : apply_cauchy_dual(pair, v);
    }
    return m;
}

Eigen::MatrixXcd orthonormal_span(const Eigen::MatrixXcd& vectors, double rel_drop_tol) {
    if (vectors.cols() == 0) return Eigen::MatrixXcd(vectors.rows(), 0);
    Eigen::MatrixXcd normalized = vectors;
    for (Eigen::Index j = 0; j < normalized.cols(); ++j) {
        const double n = normalized.col(j).norm();
        if (n > 0) normalized.col(j) /= n;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(normalized);
    qr.setThreshold(rel_drop_tol);
    const Eigen::Index rank = qr.rank();
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(vectors.rows(), rank);
    return q;
}

double projection_residual(const Eigen::MatrixXcd& q, const Eigen::VectorXcd& v) {
    const double n = v.norm();
    if (n == 0.0) return 0.0;
    const Eigen::VectorXcd r = v - q * (q.adjoint() * v);
    return r.norm() / n;
}

int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0) return 0;
    const double bar = rel_tol * sigma(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > bar) ++rank;
    return rank;
}

SpanComparison compare_spans(const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& directions,
                             double missing_cosine) {
    SpanComparison out;
    const int d = static_cast<int>(directions.cols());
    if (d == 0) return out;
    if (q.cols() == 0) {
        out.cosines.assign(static_cast<std::size_t>(d), 0.0);
        out.column_residuals.assign(static_cast<std::size_t>(d), 1.0);
        out.missing = d;
        out.max_cover_residual = 0.0;
        return out;
    }
    Eigen::MatrixXcd overlap = q.adjoint() * directions;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap);
    const auto& sigma = svd.singularValues();
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        out.cosines.push_back(std::min(sigma(i), 1.0));
    // Directions beyond the span dimension have cosine zero by convention.
    while (static_cast<int>(out.cosines.size()) < d) out.cosines.push_back(0.0);
    for (double c : out.cosines)
        if (c < missing_cosine) ++out.missing;
    for (int i = 0; i < d; ++i) {
        const double r = projection_residual(q, directions.col(i));
        out.column_residuals.push_back(r);
        if (r < missing_cosine) out.max_cover_residual = std::max(out.max_cover_residual, r);
    }
    return out;
}

}  // namespace shiftlab
