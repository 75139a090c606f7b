#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/series.hpp"

namespace shiftlab {

/// The parameter pair (alpha, beta) of the compressed shift: both nonzero
/// with |alpha|^2 + |beta|^2 = 1. The compression acts on the span of
/// { f0 = alpha + beta z, z^2, z^3, ... }, which is an orthonormal basis
/// of a codimension-one subspace of the Hardy space.
class ParamPair {
public:
    /// Validates the constraints to 1e-12; throws DomainError otherwise.
    ParamPair(Complex alpha, Complex beta);

    /// Rescales (a, b) onto the unit sphere first; the inputs may be off by
    /// up to 1e-6 (convenient for literals like 0.70710678).
    static ParamPair normalized(Complex a, Complex b);

    /// Real positive pair with |alpha|^2 = alpha_sq.
    static ParamPair from_alpha_sq(double alpha_sq);

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }
    double alpha_sq() const { return std::norm(alpha_); }
    double beta_sq() const { return std::norm(beta_); }

    /// alpha * conj(beta), the recurring spectral parameter.
    Complex ab_bar() const { return ab_bar_; }

    /// p = (conj(beta)/conj(alpha)) (1 + |alpha|^2); |p| >= 1 characterizes
    /// the full-space wandering property.
    Complex p() const { return p_; }

    /// |alpha*beta|^2 + |beta|^2, the leading entry of S*S.
    double gram_entry() const { return gram_entry_; }

private:
    Complex alpha_, beta_, ab_bar_, p_;
    double gram_entry_;
};

/// Coordinates with respect to the orthonormal basis (f0, z^2, ..., z^n):
/// c0 along f0 = alpha + beta z, tail[k] along z^(k+2). dim() = n is the
/// highest z-degree covered.
struct AbCoords {
    Complex c0{};
    std::vector<Complex> tail;

    int dim() const { return static_cast<int>(tail.size()) + 1; }
    double norm_sq() const;
    double norm() const;

    static AbCoords zero(int dim);
    static AbCoords basis(int dim, int index);

    Eigen::VectorXcd to_vector() const;
    static AbCoords from_vector(const Eigen::VectorXcd& v);
};

AbCoords add(const AbCoords& u, const AbCoords& v);
AbCoords sub(const AbCoords& u, const AbCoords& v);
AbCoords scale(const AbCoords& u, Complex factor);
Complex inner_product(const AbCoords& u, const AbCoords& v);

/// Expands coordinates into Taylor coefficients: c0 (alpha + beta z) + tail.
CoeffSeries coords_to_series(const ParamPair& pair, const AbCoords& v);

/// Inverse of coords_to_series. Throws DomainError when the series has a
/// component along conj(beta) - conj(alpha) z beyond tol (it then lies
/// outside the parametric subspace).
AbCoords series_to_coords(const ParamPair& pair, const CoeffSeries& s,
                          double tol = kDefaultTolerance);

/// One application of the compressed shift:
///   f0  -> ab_bar f0 + beta z^2,      z^n -> z^(n+1).
/// The coefficient shifted past the truncation is dropped; its magnitude is
/// reported through `dropped` when non-null.
AbCoords apply(const ParamPair& pair, const AbCoords& v, double* dropped = nullptr);

/// Adjoint action: f0 -> conj(alpha) beta f0, z^2 -> conj(beta) f0,
/// z^(n+1) -> z^n.
AbCoords apply_adjoint(const ParamPair& pair, const AbCoords& v);

/// Cauchy dual S (S*S)^(-1): the first column of S divided by gram_entry().
AbCoords apply_cauchy_dual(const ParamPair& pair, const AbCoords& v, double* dropped = nullptr);

/// Unit vector spanning ker S*: normalize(f0 - (conj(alpha) beta / conj(beta)) z^2).
AbCoords kernel_adjoint(const ParamPair& pair, int dim);

/// Closed form of S^n f0:
///   (ab_bar)^n f0 + beta [ (ab_bar)^(n-1) z^2 + ... + ab_bar z^n + z^(n+1) ].
/// Requires n >= 1 and n+1 <= dim (TruncationOverflow otherwise).
AbCoords power_on_f0(const ParamPair& pair, int n, int dim);

enum class OperatorKind {
    Shift,           // S
    Adjoint,         // S*
    Gram,            // S*S
    DefectLeft,      // I - S*S
    DefectRight,     // I - SS*
    SelfCommutator,  // S*S - SS*
    CauchyDual,      // S (S*S)^(-1)
};

OperatorKind operator_kind_from_string(const std::string& name);
std::string to_string(OperatorKind kind);

/// Finite truncation of an operator in the basis (f0, z^2, ..., z^dim).
struct OpMatrix {
    Eigen::MatrixXcd entries;
    std::string basis_tag;
};

/// dim x dim truncation; requires dim >= 4.
OpMatrix matrix(const ParamPair& pair, OperatorKind kind, int dim);

/// I - S^m S*^m; requires m >= 1 and dim >= 4.
OpMatrix power_defect_matrix(const ParamPair& pair, int m, int dim);

/// Smallest eigenvalue of the self-commutator S*S - SS* at truncation dim.
/// Nonnegative up to round-off for every admissible pair (the operator is
/// hyponormal); the self-commutator has rank <= 2 so truncation is exact.
double hyponormality_check(const ParamPair& pair, int dim);

/// Builds the Krylov space of the Cauchy dual seeded at ker S*, and returns
/// the largest projection residual of the basis vectors f0, z^2, ..., z^(dim/2)
/// against it. Tends to zero as dim grows: the Cauchy dual kernel vector
/// generates the whole space, which witnesses analyticity of the shift.
double analyticity_witness(const ParamPair& pair, int dim);

struct EquivalenceCertificate {
    Complex t1;  // U f0 = t1 * f0~
    Complex t;   // U z^n = t * z^n for n >= 2
    double conjugation_residual;
};

struct EquivalenceReport {
    bool equivalent = false;
    std::optional<EquivalenceCertificate> certificate;
    double defect_invariant_1 = 0.0;  // |alpha|^4, top entry of I - S*S
    double defect_invariant_2 = 0.0;
    // The three scalar conditions force (alpha2, beta2) to be a unimodular
    // multiple of (alpha1, beta1); reported, not asserted.
    bool proportional = false;
    Complex proportionality_factor{};
};

/// Unitary equivalence of the two compressions: holds iff |alpha| = |alpha1|,
/// |beta| = |beta1| and alpha/alpha1 = conj(beta1)/conj(beta). When it holds
/// the diagonal certificate U = diag(1, beta1/beta, beta1/beta, ...) is
/// verified by explicit conjugation at truncation 32.
EquivalenceReport unitary_equivalence(const ParamPair& from, const ParamPair& to,
                                      double tol = 1e-12);

}  // namespace shiftlab
