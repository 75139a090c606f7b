#include "shiftlab/shift_operator.hpp"

#include <algorithm>
#include <cmath>

#include "shiftlab/krylov.hpp"

namespace shiftlab {

namespace {
constexpr double kPairTol = 1e-12;
}

ParamPair::ParamPair(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
    const double a2 = std::norm(alpha), b2 = std::norm(beta);
    if (a2 < kPairTol || b2 < kPairTol)
        throw DomainError("both parameters must be nonzero");
    if (std::abs(a2 + b2 - 1.0) > kPairTol)
        throw DomainError("|alpha|^2 + |beta|^2 must equal 1");
    ab_bar_ = alpha_ * std::conj(beta_);
    p_ = (std::conj(beta_) / std::conj(alpha_)) * (1.0 + a2);
    gram_entry_ = std::norm(ab_bar_) + b2;
}

ParamPair ParamPair::normalized(Complex a, Complex b) {
    const double n2 = std::norm(a) + std::norm(b);
    if (n2 <= 0.0) throw DomainError("cannot normalize the zero pair");
    if (std::abs(n2 - 1.0) > 1e-6)
        throw DomainError("pair is too far from the unit sphere to renormalize");
    const double s = 1.0 / std::sqrt(n2);
    return ParamPair(a * s, b * s);
}

ParamPair ParamPair::from_alpha_sq(double alpha_sq) {
    if (!(alpha_sq > 0.0) || !(alpha_sq < 1.0))
        throw DomainError("|alpha|^2 must lie strictly between 0 and 1");
    return ParamPair(Complex{std::sqrt(alpha_sq), 0.0}, Complex{std::sqrt(1.0 - alpha_sq), 0.0});
}

double AbCoords::norm_sq() const {
    double acc = std::norm(c0);
    for (const Complex& d : tail) acc += std::norm(d);
    return acc;
}

double AbCoords::norm() const { return std::sqrt(norm_sq()); }

AbCoords AbCoords::zero(int dim) {
    if (dim < 1) throw DomainError("coordinate dimension must be positive");
    AbCoords v;
    v.tail.assign(static_cast<std::size_t>(dim - 1), Complex{});
    return v;
}

AbCoords AbCoords::basis(int dim, int index) {
    AbCoords v = zero(dim);
    if (index < 0 || index >= dim) throw DomainError("basis index out of range");
    if (index == 0)
        v.c0 = Complex{1.0, 0.0};
    else
        v.tail[static_cast<std::size_t>(index - 1)] = Complex{1.0, 0.0};
    return v;
}

Eigen::VectorXcd AbCoords::to_vector() const {
    Eigen::VectorXcd v(dim());
    v(0) = c0;
    for (std::size_t k = 0; k < tail.size(); ++k) v(static_cast<Eigen::Index>(k) + 1) = tail[k];
    return v;
}

AbCoords AbCoords::from_vector(const Eigen::VectorXcd& v) {
    if (v.size() < 1) throw DomainError("coordinate vector must be nonempty");
    AbCoords out;
    out.c0 = v(0);
    out.tail.resize(static_cast<std::size_t>(v.size() - 1));
    for (std::size_t k = 0; k < out.tail.size(); ++k) out.tail[k] = v(static_cast<Eigen::Index>(k) + 1);
    return out;
}

AbCoords add(const AbCoords& u, const AbCoords& v) {
    AbCoords out = AbCoords::zero(std::max(u.dim(), v.dim()));
    out.c0 = u.c0 + v.c0;
    for (std::size_t k = 0; k < out.tail.size(); ++k) {
        if (k < u.tail.size()) out.tail[k] += u.tail[k];
        if (k < v.tail.size()) out.tail[k] += v.tail[k];
    }
    return out;
}

AbCoords sub(const AbCoords& u, const AbCoords& v) { return add(u, scale(v, Complex{-1.0, 0.0})); }

AbCoords scale(const AbCoords& u, Complex factor) {
    AbCoords out = u;
    out.c0 *= factor;
    for (Complex& d : out.tail) d *= factor;
    return out;
}

Complex inner_product(const AbCoords& u, const AbCoords& v) {
    Complex acc = u.c0 * std::conj(v.c0);
    const std::size_t n = std::min(u.tail.size(), v.tail.size());
    for (std::size_t k = 0; k < n; ++k) acc += u.tail[k] * std::conj(v.tail[k]);
    return acc;
}

CoeffSeries coords_to_series(const ParamPair& pair, const AbCoords& v) {
    CoeffSeries s = CoeffSeries::zero(v.dim());
    s[0] = v.c0 * pair.alpha();
    s[1] = v.c0 * pair.beta();
    for (std::size_t k = 0; k < v.tail.size(); ++k) s[static_cast<int>(k) + 2] = v.tail[k];
    return s;
}

AbCoords series_to_coords(const ParamPair& pair, const CoeffSeries& s, double tol) {
    // Component along the defect direction conj(beta) - conj(alpha) z.
    const Complex off = s.coeff(0) * pair.beta() - s.coeff(1) * pair.alpha();
    if (std::abs(off) > tol * std::max(1.0, s.norm()))
        throw DomainError("series lies outside the parametric subspace");
    AbCoords v = AbCoords::zero(std::max(s.order(), 2));
    v.c0 = s.coeff(0) * std::conj(pair.alpha()) + s.coeff(1) * std::conj(pair.beta());
    for (int k = 2; k <= s.order(); ++k) v.tail[static_cast<std::size_t>(k - 2)] = s.coeff(k);
    return v;
}

AbCoords apply(const ParamPair& pair, const AbCoords& v, double* dropped) {
    AbCoords out = AbCoords::zero(v.dim());
    out.c0 = pair.ab_bar() * v.c0;
    if (!out.tail.empty()) out.tail[0] = pair.beta() * v.c0;
    for (std::size_t k = 1; k < out.tail.size(); ++k) out.tail[k] = v.tail[k - 1];
    if (dropped) *dropped = v.tail.empty() ? 0.0 : std::abs(v.tail.back());
    return out;
}

AbCoords apply_adjoint(const ParamPair& pair, const AbCoords& v) {
    AbCoords out = AbCoords::zero(v.dim());
    out.c0 = std::conj(pair.ab_bar()) * v.c0;
    if (!v.tail.empty()) out.c0 += std::conj(pair.beta()) * v.tail[0];
    for (std::size_t k = 0; k + 1 < v.tail.size(); ++k) out.tail[k] = v.tail[k + 1];
    return out;
}

AbCoords apply_cauchy_dual(const ParamPair& pair, const AbCoords& v, double* dropped) {
    AbCoords out = AbCoords::zero(v.dim());
    const double p = pair.gram_entry();
    out.c0 = pair.ab_bar() / p * v.c0;
    if (!out.tail.empty()) out.tail[0] = pair.beta() / p * v.c0;
    for (std::size_t k = 1; k < out.tail.size(); ++k) out.tail[k] = v.tail[k - 1];
    if (dropped) *dropped = v.tail.empty() ? 0.0 : std::abs(v.tail.back());
    return out;
}

AbCoords kernel_adjoint(const ParamPair& pair, int dim) {
    AbCoords v = AbCoords::zero(dim);
    v.c0 = Complex{1.0, 0.0};
    if (dim < 2) throw DomainError("kernel vector needs dimension >= 2");
    v.tail[0] = -std::conj(pair.alpha()) * pair.beta() / std::conj(pair.beta());
    return scale(v, Complex{1.0 / v.norm(), 0.0});
}

AbCoords power_on_f0(const ParamPair& pair, int n, int dim) {
    if (n < 1) throw DomainError("power must be at least 1");
    if (n + 1 > dim)
        throw TruncationOverflow("S^n f0 reaches degree n+1 = " + std::to_string(n + 1) +
                                 " beyond truncation " + std::to_string(dim));
    AbCoords v = AbCoords::zero(dim);
    const Complex ab = pair.ab_bar();
    Complex ab_pow{1.0, 0.0};  // ab^(n+1-k) built downward from k = n+1
    for (int k = n + 1; k >= 2; --k) {
        v.tail[static_cast<std::size_t>(k - 2)] = pair.beta() * ab_pow;
        ab_pow *= ab;
    }
    v.c0 = ab_pow;  // ab^n after the n multiplications above
    return v;
}

OperatorKind operator_kind_from_string(const std::string& name) {
    if (name == "S" || name == "shift") return OperatorKind::Shift;
    if (name == "S*" || name == "adjoint") return OperatorKind::Adjoint;
    if (name == "gram" || name == "S*S") return OperatorKind::Gram;
    if (name == "defect-left") return OperatorKind::DefectLeft;
    if (name == "defect-right") return OperatorKind::DefectRight;
    if (name == "self-commutator") return OperatorKind::SelfCommutator;
    if (name == "cauchy-dual") return OperatorKind::CauchyDual;
    throw UnsupportedSelector("unknown operator selector: " + name);
}

std::string to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Shift: return "S";
        case OperatorKind::Adjoint: return "adjoint";
        case OperatorKind::Gram: return "gram";
        case OperatorKind::DefectLeft: return "defect-left";
        case OperatorKind::DefectRight: return "defect-right";
        case OperatorKind::SelfCommutator: return "self-commutator";
        case OperatorKind::CauchyDual: return "cauchy-dual";
    }
    throw UnsupportedSelector("unknown operator selector");
}

namespace {

Eigen::MatrixXcd shift_matrix(const ParamPair& pair, int dim) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
    s(0, 0) = pair.ab_bar();
    s(1, 0) = pair.beta();
    for (int k = 1; k + 1 < dim; ++k) s(k + 1, k) = Complex{1.0, 0.0};
    return s;
}

std::string basis_tag(int dim) {
    return "f0,z^2,...,z^" + std::to_string(dim);
}

}  // namespace

// The compositions below are compressions of the infinite operators, not
// products of truncated matrices: multiplying chopped truncations plants a
// spurious defect in the last row and column, while the closed forms are
// banded and exact at every finite size.
OpMatrix matrix(const ParamPair& pair, OperatorKind kind, int dim) {
    if (dim < 4) throw DomainError("matrix truncation must be at least 4");
    Eigen::MatrixXcd out;
    switch (kind) {
        case OperatorKind::Shift: out = shift_matrix(pair, dim); break;
        case OperatorKind::Adjoint: out = shift_matrix(pair, dim).adjoint(); break;
        case OperatorKind::Gram: {
            out = Eigen::MatrixXcd::Identity(dim, dim);
            out(0, 0) = Complex{pair.gram_entry(), 0.0};
            break;
        }
        case OperatorKind::DefectLeft: {
            out = Eigen::MatrixXcd::Zero(dim, dim);
            out(0, 0) = Complex{pair.alpha_sq() * pair.alpha_sq(), 0.0};
            break;
        }
        case OperatorKind::DefectRight: {
            out = Eigen::MatrixXcd::Zero(dim, dim);
            const Complex beta_bar = std::conj(pair.beta());
            out(0, 0) = 1.0 - std::norm(pair.ab_bar());
            out(0, 1) = -pair.alpha() * beta_bar * beta_bar;
            out(1, 0) = -std::conj(pair.alpha()) * pair.beta() * pair.beta();
            out(1, 1) = Complex{pair.alpha_sq(), 0.0};
            break;
        }
        case OperatorKind::SelfCommutator:
            out = matrix(pair, OperatorKind::DefectRight, dim).entries -
                  matrix(pair, OperatorKind::DefectLeft, dim).entries;
            break;
        case OperatorKind::CauchyDual: {
            // S (S*S)^(-1): the first column of S divided by the gram entry.
            out = shift_matrix(pair, dim);
            out.col(0) /= pair.gram_entry();
            break;
        }
        default: throw UnsupportedSelector("unknown operator selector");
    }
    return OpMatrix{std::move(out), basis_tag(dim)};
}

OpMatrix power_defect_matrix(const ParamPair& pair, int m, int dim) {
    if (dim < 4) throw DomainError("matrix truncation must be at least 4");
    if (m < 1) throw DomainError("defect power must be at least 1");
    // (S^m S*^m)_{ij} = <S*^m e_j, S*^m e_i>; the adjoint maps the truncation
    // into itself, so the entries are exact.
    std::vector<AbCoords> columns;
    columns.reserve(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) {
        AbCoords w = AbCoords::basis(dim, j);
        for (int k = 0; k < m; ++k) w = apply_adjoint(pair, w);
        columns.push_back(std::move(w));
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            out(i, j) -= inner_product(columns[static_cast<std::size_t>(j)],
                                       columns[static_cast<std::size_t>(i)]);
    return OpMatrix{std::move(out), basis_tag(dim)};
}

double hyponormality_check(const ParamPair& pair, int dim) {
    Eigen::MatrixXcd c = matrix(pair, OperatorKind::SelfCommutator, dim).entries;
    c = Complex{0.5, 0.0} * (c + c.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(c, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double analyticity_witness(const ParamPair& pair, int dim) {
    if (dim < 8) throw DomainError("analyticity witness needs truncation >= 8");
    const AbCoords seed = kernel_adjoint(pair, dim);
    const Eigen::MatrixXcd k = krylov_matrix(pair, seed, dim - 1, KrylovOperator::CauchyDual);
    const Eigen::MatrixXcd q = orthonormal_span(k);
    double worst = 0.0;
    for (int i = 0; i <= dim / 2 && i < dim; ++i) {
        const double covered = q.row(i).norm();
        worst = std::max(worst, std::sqrt(std::max(0.0, 1.0 - covered * covered)));
    }
    return worst;
}

EquivalenceReport unitary_equivalence(const ParamPair& from, const ParamPair& to, double tol) {
    EquivalenceReport report;
    report.defect_invariant_1 = from.alpha_sq() * from.alpha_sq();
    report.defect_invariant_2 = to.alpha_sq() * to.alpha_sq();

    const bool same_alpha = std::abs(std::abs(from.alpha()) - std::abs(to.alpha())) <= tol;
    const bool same_beta = std::abs(std::abs(from.beta()) - std::abs(to.beta())) <= tol;
    const Complex ratio_condition =
        from.alpha() / to.alpha() - std::conj(to.beta()) / std::conj(from.beta());
    report.equivalent = same_alpha && same_beta && std::abs(ratio_condition) <= tol;

    const Complex lambda = to.alpha() / from.alpha();
    report.proportionality_factor = lambda;
    report.proportional = std::abs(to.beta() - lambda * from.beta()) <= 1e-10;

    if (report.equivalent) {
        constexpr int kCertDim = 32;
        const Complex t = to.beta() / from.beta();
        Eigen::VectorXcd u = Eigen::VectorXcd::Constant(kCertDim, t);
        u(0) = Complex{1.0, 0.0};
        const Eigen::MatrixXcd s1 = matrix(from, OperatorKind::Shift, kCertDim).entries;
        const Eigen::MatrixXcd s2 = matrix(to, OperatorKind::Shift, kCertDim).entries;
        const Eigen::MatrixXcd conjugated =
            u.asDiagonal() * s1 * u.conjugate().asDiagonal();
        report.certificate = EquivalenceCertificate{
            Complex{1.0, 0.0}, t, (conjugated - s2).norm()};
    }
    return report;
}

}  // namespace shiftlab
