#pragma once

#include <optional>
#include <vector>

#include "shiftlab/invariant_subspace.hpp"

namespace shiftlab {

enum class CubicKind {
    UCubic,      // y^3 + 3y^2 + 2y - 1, root in (0, 1)
    GammaCubic,  // y^3 + 7y^2 + 12y - 1, root in (0, 1)
};

/// Unique real root of the selected cubic, by bisection on [0, 1] to 1e-14.
/// Both cubics are strictly increasing there.
double cubic_root(CubicKind kind);

struct Thresholds {
    double u;                   // root of y^3 + 3y^2 + 2y - 1
    double gamma;               // root of y^3 + 7y^2 + 12y - 1
    double inv_one_plus_u;      // full-space criterion on |alpha|^2
    double inv_four_plus_gamma; // necessary bound on |beta|^2 for failures
};

const Thresholds& thresholds();

/// Full-space wandering property: the kernel of S* generates the whole
/// space iff |p| >= 1 iff |alpha|^2 <= 1/(1+u). Both tests are evaluated;
/// disagreement beyond the boundary band throws InternalInconsistency.
struct FullSpaceReport {
    bool holds = false;
    Complex p{};
    double abs_p = 0.0;
    double alpha_sq = 0.0;
    double alpha_sq_threshold = 0.0;  // 1/(1+u)
};

FullSpaceReport full_space_wsp(const ParamPair& pair);

/// Result of a brute-force Krylov-span check at two truncation sizes.
struct KrylovVerdict {
    int codim = 0;
    std::vector<double> residual_curve;  // max covered-direction residual per rung
    /// Orthogonality of the explicit missing-direction witness against the
    /// Krylov generators (only meaningful when the property fails; -1 else).
    double witness_orthogonality = -1.0;
};

/// Orthonormalizes span{ S^k kernel_adjoint : k <= dim-2 } and counts the
/// basis directions of the truncated space it misses. When |p| < 1, also
/// verifies that w = z^2 * cauchy_kernel_series(p) is orthogonal to every
/// S^k (S f~ - ab f~). Requires ||p| - 1| > 0.05 and a stable codimension
/// across rungs (InconclusiveTruncation otherwise).
KrylovVerdict full_space_krylov_oracle(const ParamPair& pair, int dim);

enum class WspVerdict { Holds, Fails, Indeterminate };

const char* to_string(WspVerdict v);

struct WspReport {
    Complex r{};
    double abs_r = 0.0;
    double abs_r_lower = 0.0;  // interval induced by the |g|^2 tail bound
    double abs_r_upper = 0.0;
    WspVerdict verdict = WspVerdict::Indeterminate;
    std::optional<int> krylov_codim;
    std::vector<double> residual_curve;
    Thresholds thresholds;
};

/// Closed-form decision: the subspace equals the span of its wandering
/// vector iff |r| >= 1. When the |r| interval straddles 1 the verdict is
/// Indeterminate. The Krylov fields are left empty; the oracle below fills
/// them.
WspReport wsp_decision(const SubspaceModel& model);

/// Brute-force check of the |r| criterion: orthonormalizes the orbit of f2
/// and compares against the model truncation. Expected codimension 0 when
/// |r| >= 1 and 1 when |r| < 1 (the missing direction is the cauchy kernel
/// at r in the z^3 theta slot, corrected along f1). Requires ||r|-1| > 0.05.
KrylovVerdict subspace_krylov_oracle(const SubspaceModel& model, int dim);

/// The linear-remainder witness: with g1 = g + h4_0 theta,
///   beta + (z - ab) g1 = theta h5,   S^2 f2 - ab S f2 = z^3 theta h5,
/// where h5 is a degree-one polynomial whose root is exactly r. h5 is
/// recovered from the series by coefficient pairing against z^k theta, so
/// the degree and root come out of the arithmetic rather than the formula.
struct WanderingWitness {
    CoeffSeries g1;
    Complex h4_0{};
    CoeffSeries h5;        // coefficients h5_0..h5_5; entries beyond 1 ~ 0
    Complex h5_root{};
    double degree_excess = 0.0;   // max |h5_k| for k >= 2
    double factor_residual = 0.0; // beta + (z-ab) g1 - theta h5
    double action_residual = 0.0; // S^2 f2 - ab S f2 - z^3 theta h5
};

WanderingWitness h5_witness(const SubspaceModel& model);

/// Left-hand side of the single-Blaschke-factor criterion
///   |ab| - |alpha|^2 (1 - |alpha|^4 (1-|a|^2)/|1 - conj(a) ab|^2)(1 - |ab|),
/// negative iff |r| < 1 for theta = (z-a)/(1-conj(a)z).
double wsp_inequality_lhs(const ParamPair& pair, Complex a);

/// The bracketed quantity above, strictly between 0 and 1.
double blaschke_a_quantity(const ParamPair& pair, Complex a);

struct CounterexampleRecord {
    double alpha_sq = 0.0;
    double beta_sq = 0.0;
    double a = 0.0;       // real Blaschke zero
    double lhs = 0.0;     // negative at a counterexample
    double abs_r = 0.0;   // verified < 1
    double base_gap = 0.0;  // |alpha|^2 (1-|ab|) - |ab| > 0
    double b_term = 0.0;    // |alpha|^6 (1-|ab|)(1-a^2)/|1-a*ab|^2
    double epsilon = 0.0;   // b_term < epsilon and base + epsilon < 0
    double grid_step = 0.0;
};

struct CounterexampleSearch {
    bool possible = false;
    double beta_sq = 0.0;
    double beta_sq_threshold = 0.0;  // 1/(4+gamma)
    std::optional<CounterexampleRecord> found;
};

/// For |beta|^2 below 1/(4+gamma), walks a real grid of Blaschke zeros
/// toward the boundary until the criterion fails (such a zero always
/// exists); above the threshold no single-factor counterexample exists.
CounterexampleSearch find_counterexample(double beta_sq);

}  // namespace shiftlab
