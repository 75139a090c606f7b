#pragma once

#include <cstdint>
#include <utility>

#include "shiftlab/inner_function.hpp"
#include "shiftlab/shift_operator.hpp"

namespace shiftlab {

/// Squared norm that may carry a truncation tail: the true value lies in
/// [value, value + tail_bound]. Exact for monomial and single-Blaschke
/// inner functions.
struct NormSqValue {
    double value = 0.0;
    double tail_bound = 0.0;
    bool exact = true;

    double lower() const { return value; }
    double upper() const { return value + tail_bound; }
};

/// Solves (z - ab_bar) g = (beta / theta(ab_bar)) (theta - theta(ab_bar))
/// for the function g attached to an invariant subspace with inner part
/// theta. Closed forms:
///   theta = z^n:        g = (beta/ab^n) (z^(n-1) + ab z^(n-2) + ... + ab^(n-1)),
///                       |g|^2 = (|beta|^2/|ab|^(2n)) (1-|ab|^(2n))/(1-|ab|^2);
///   one Blaschke zero:  g = beta (1-|a|^2)/(ab - a) * 1/(1 - conj(a) z),
///                       |g|^2 = |beta|^2 (1-|a|^2)/|ab - a|^2.
/// Composite inner functions go through synthetic division of the Taylor
/// expansion and report |g|^2 with a geometric tail bound.
///
/// Throws ThetaVanishesAtAbBar when |theta(ab_bar)| < 1e-10: the subspace
/// family is undefined there.
std::pair<CoeffSeries, NormSqValue> solve_g(const ParamPair& pair, const InnerFunction& theta,
                                            int order, double tol = kDefaultTolerance);

/// Data of the three-part decomposition  span(f2) + span(f1) + z^3 theta H^2:
///   f1 = ab f0 + beta z^2 + z^3 g,
///   f2 = f0 + z^2 g - (conj(alpha) beta / conj(beta)) conj(t) (1+|g|^2) z^2 theta,
///   r  = ab (1 + |alpha|^2 |t|^2 (1+|g|^2)) / (|alpha|^2 |t|^2 (1+|g|^2)),
/// with t = theta(ab). |r| >= 1 is the wandering-subspace criterion.
struct SubspaceModel {
    ParamPair pair;
    InnerFunction theta;
    Complex t{};
    CoeffSeries g;
    NormSqValue norm_sq_g;
    AbCoords f1;
    AbCoords f2;
    Complex r{};
    Complex h4_0{};  // f2 = f0 + z^2 (g + h4_0 theta)
    int order = 0;

    double abs_r() const { return std::abs(r); }
    /// Interval for |r| induced by the |g|^2 tail bound (|r| is decreasing
    /// in |g|^2, so the upper bound of the norm gives the lower bound of |r|).
    double abs_r_lower() const;
    double abs_r_upper() const;
};

SubspaceModel build_subspace(const ParamPair& pair, const InnerFunction& theta, int order,
                             double tol = kDefaultTolerance);

/// Residuals of the membership identities that make the three-part
/// decomposition invariant, plus the orthogonality suite.
struct InvarianceReport {
    double f2_step;           // S f2 - (f1 + h4_0 z^3 theta)
    double f1_step;           // S f1 - (ab f1 + (beta/t) z^3 theta)
    double tail_step;         // S(z^3 theta h) - z^4 theta h over sample h
    double g_identity;        // (z-ab) g - (beta/t)(theta - t)
    double f2_f1;             // <f2, f1>
    double f2_tail;           // max_n |<f2, z^(n+3) theta>|, n <= 20
    double f1_tail;           // max_n |<f1, z^(n+3) theta>|
    double g_tail;            // max_n |<g, z^n theta>|
    double wandering;         // max_n |<f2, S^n f2>|, 1 <= n <= 20
    double max_residual() const;
};

InvarianceReport verify_invariance(const SubspaceModel& model, std::uint64_t seed = 0x5eed);

/// Generator of the single-generator representation span(f) + z^2 theta H^2:
/// f = f0 + z^2 g. Its shift orbit spans the whole subspace.
AbCoords cyclic_generator(const ParamPair& pair, const InnerFunction& theta, int order,
                          double tol = kDefaultTolerance);

/// Recovers the inner function theta with z^2 theta H^2 contained in the
/// invariant subspace generated by f = c0 f0 + z^2 g:
///   c0 != 0:  theta = inner part of c0 beta + (z - ab) g
///   c0 == 0:  theta = inner part of g itself
/// (the z^2 prefix of the subspace is implied and not part of theta).
InnerFunction inner_part_from_generator(const ParamPair& pair, const AbCoords& f,
                                        double tol = kDefaultTolerance);

/// Orthonormal spanning directions of the model truncation: f2, f1 and
/// z^3 theta z^k for k = 0..max_tail_power.
Eigen::MatrixXcd model_directions(const SubspaceModel& model, int dim, int max_tail_power);

/// Spanning directions of the single-generator truncation: f and
/// z^2 theta z^k.
Eigen::MatrixXcd cyclic_directions(const ParamPair& pair, const InnerFunction& theta,
                                   const AbCoords& f, int dim, int max_tail_power);

/// dim(M_N) - dim(projection of S M_N into M_N) by numerical rank; equals 1
/// for every model (the wandering gap has dimension one).
int codimension_of_shifted(const SubspaceModel& model, int dim);

/// Largest projection residual of the single-generator truncation against
/// the Krylov span of f; tends to zero (the subspace is cyclic).
double cyclic_span_residual(const ParamPair& pair, const InnerFunction& theta, const AbCoords& f,
                            int dim);

}  // namespace shiftlab
