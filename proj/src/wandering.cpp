#include "shiftlab/wandering.hpp"

#include <algorithm>
#include <cmath>

#include "shiftlab/krylov.hpp"

namespace shiftlab {

namespace {

double eval_cubic(CubicKind kind, double y) {
    return (kind == CubicKind::UCubic) ? ((y + 3.0) * y + 2.0) * y - 1.0
                                       : ((y + 7.0) * y + 12.0) * y - 1.0;
}

AbCoords series_tail_coords(const CoeffSeries& s, int dim) {
    // Coordinates of a series supported on degrees >= 2.
    AbCoords v = AbCoords::zero(dim);
    for (int k = 2; k <= s.order() && k <= dim; ++k)
        v.tail[static_cast<std::size_t>(k - 2)] = s[k];
    return v;
}

struct RungResult {
    int codim;
    double cover_residual;
};

// Shared two-rung stabilization: the codimension must agree on both rungs
// and the cosine spectrum must stay away from the decision band.
KrylovVerdict stabilized_verdict(const std::vector<RungResult>& rungs,
                                 const std::vector<SpanComparison>& comparisons) {
    for (const SpanComparison& cmp : comparisons)
        for (double c : cmp.cosines)
            if (c > 0.3 && c < 0.7)
                throw InconclusiveTruncation(
                    "principal cosine in the decision band; raise the truncation");
    if (rungs.size() >= 2 && rungs[rungs.size() - 1].codim != rungs[rungs.size() - 2].codim)
        throw InconclusiveTruncation("codimension estimate did not stabilize across truncations");
    KrylovVerdict verdict;
    verdict.codim = rungs.back().codim;
    for (const RungResult& r : rungs) verdict.residual_curve.push_back(r.cover_residual);
    return verdict;
}

}  // namespace

double cubic_root(CubicKind kind) {
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 100 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (eval_cubic(kind, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

const Thresholds& thresholds() {
    static const Thresholds t = [] {
        Thresholds out{};
        out.u = cubic_root(CubicKind::UCubic);
        out.gamma = cubic_root(CubicKind::GammaCubic);
        out.inv_one_plus_u = 1.0 / (1.0 + out.u);
        out.inv_four_plus_gamma = 1.0 / (4.0 + out.gamma);
        return out;
    }();
    return t;
}

FullSpaceReport full_space_wsp(const ParamPair& pair) {
    FullSpaceReport rep;
    rep.p = pair.p();
    rep.abs_p = std::abs(rep.p);
    rep.alpha_sq = pair.alpha_sq();
    rep.alpha_sq_threshold = thresholds().inv_one_plus_u;

    const bool by_p = rep.abs_p >= 1.0;
    const bool by_alpha = rep.alpha_sq <= rep.alpha_sq_threshold;
    const bool on_boundary = std::abs(rep.abs_p - 1.0) < 1e-10 ||
                             std::abs(rep.alpha_sq - rep.alpha_sq_threshold) < 1e-10;
    if (by_p != by_alpha && !on_boundary)
        throw InternalInconsistency("the |p| test and the |alpha|^2 threshold test disagree");
    rep.holds = by_p;
    return rep;
}

KrylovVerdict full_space_krylov_oracle(const ParamPair& pair, int dim) {
    if (dim < 32) throw DomainError("full-space oracle needs truncation >= 32");
    const double abs_p = std::abs(pair.p());
    if (std::abs(abs_p - 1.0) <= 0.05)
        throw InconclusiveTruncation("|p| too close to 1 for a finite-truncation verdict");

    std::vector<RungResult> rungs;
    std::vector<SpanComparison> comparisons;
    for (const int rung : {dim / 2, dim}) {
        const AbCoords seed = kernel_adjoint(pair, rung);
        const Eigen::MatrixXcd q = orthonormal_span(krylov_matrix(pair, seed, rung - 1));
        const Eigen::MatrixXcd directions =
            Eigen::MatrixXcd::Identity(rung, rung / 2 + 1);
        const SpanComparison cmp = compare_spans(q, directions);
        rungs.push_back({cmp.missing, cmp.max_cover_residual});
        comparisons.push_back(cmp);
    }
    KrylovVerdict verdict = stabilized_verdict(rungs, comparisons);

    if (abs_p < 1.0) {
        // Explicit witness: w = z^2 sum conj(p)^n z^n is orthogonal to every
        // S^k (S f~ - ab f~) = (conj(alpha) beta / conj(beta)) z^(2+k) (p - z).
        const AbCoords w = series_tail_coords(cauchy_kernel_series(pair.p(), dim - 2).shifted_up(2), dim);
        const AbCoords seed = kernel_adjoint(pair, dim);
        AbCoords step = sub(apply(pair, seed), scale(seed, pair.ab_bar()));
        double worst = 0.0;
        for (int k = 0; k + 3 <= dim; ++k) {
            worst = std::max(worst,
                             std::abs(inner_product(w, step)) / (w.norm() * step.norm()));
            step = apply(pair, step);
        }
        verdict.witness_orthogonality = worst;
    }
    return verdict;
}

const char* to_string(WspVerdict v) {
    switch (v) {
        case WspVerdict::Holds: return "holds";
        case WspVerdict::Fails: return "fails";
        case WspVerdict::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

WspReport wsp_decision(const SubspaceModel& model) {
    WspReport rep;
    rep.r = model.r;
    rep.abs_r = model.abs_r();
    rep.abs_r_lower = model.abs_r_lower();
    rep.abs_r_upper = model.abs_r_upper();
    if (rep.abs_r_lower >= 1.0)
        rep.verdict = WspVerdict::Holds;
    else if (rep.abs_r_upper < 1.0)
        rep.verdict = WspVerdict::Fails;
    else
        rep.verdict = WspVerdict::Indeterminate;
    rep.thresholds = thresholds();
    return rep;
}

KrylovVerdict subspace_krylov_oracle(const SubspaceModel& model, int dim) {
    if (dim < 32) throw DomainError("subspace oracle needs truncation >= 32");
    if (dim > model.order)
        throw DomainError("oracle truncation exceeds the model order");
    const double abs_r = model.abs_r();
    if (std::abs(abs_r - 1.0) <= 0.05)
        throw InconclusiveTruncation("|r| too close to 1 for a finite-truncation verdict");

    std::vector<RungResult> rungs;
    std::vector<SpanComparison> comparisons;
    for (const int rung : {dim / 2, dim}) {
        AbCoords seed = model.f2;
        seed.tail.resize(static_cast<std::size_t>(rung - 1), Complex{});
        const Eigen::MatrixXcd q = orthonormal_span(krylov_matrix(model.pair, seed, rung - 1));
        const int max_tail = std::max(4, rung / 2 - model.theta.degree() - 3);
        const Eigen::MatrixXcd directions = model_directions(model, rung, max_tail);
        const SpanComparison cmp = compare_spans(q, directions);
        rungs.push_back({cmp.missing, cmp.max_cover_residual});
        comparisons.push_back(cmp);
    }
    KrylovVerdict verdict = stabilized_verdict(rungs, comparisons);

    if (abs_r < 1.0) {
        // Missing direction: z^3 theta * cauchy kernel at r, corrected along
        // f1 to be orthogonal to S f2 = f1 + h4_0 z^3 theta.
        const CoeffSeries kernel = cauchy_kernel_series(model.r, dim - 3 - model.theta.degree());
        const CoeffSeries tail_series =
            mul_series(model.theta.taylor_coeffs(dim), kernel, dim - 3).shifted_up(3);
        AbCoords witness = series_tail_coords(tail_series, dim);
        AbCoords f1 = model.f1;
        f1.tail.resize(static_cast<std::size_t>(dim - 1), Complex{});
        const Complex c = -std::conj(model.h4_0) / f1.norm_sq();
        witness = add(witness, scale(f1, c));

        AbCoords orbit = model.f2;
        orbit.tail.resize(static_cast<std::size_t>(dim - 1), Complex{});
        double worst = 0.0;
        for (int k = 0; k + 2 <= dim; ++k) {
            worst = std::max(worst, std::abs(inner_product(witness, orbit)) /
                                        (witness.norm() * orbit.norm()));
            orbit = apply(model.pair, orbit);
        }
        verdict.witness_orthogonality = worst;
    }
    return verdict;
}

WanderingWitness h5_witness(const SubspaceModel& model) {
    WanderingWitness w;
    const int order = model.order;
    const CoeffSeries theta_series = model.theta.taylor_coeffs(order);
    w.h4_0 = model.h4_0;
    w.g1 = add(model.g, scale(theta_series, model.h4_0)).truncated(order);

    // p = beta + (z - ab) g1 equals theta h5; h5_k = <p, z^k theta> because
    // multiplication by theta is isometric.
    CoeffSeries p = mul_series(CoeffSeries{{-model.pair.ab_bar(), Complex{1.0, 0.0}}}, w.g1);
    p[0] += model.pair.beta();
    w.h5 = CoeffSeries::zero(5);
    for (int k = 0; k <= 5; ++k)
        w.h5[k] = inner_product(p, theta_series.shifted_up(k));
    for (int k = 2; k <= 5; ++k)
        w.degree_excess = std::max(w.degree_excess, std::abs(w.h5[k]));
    w.h5_root = -w.h5[0] / w.h5[1];

    const CoeffSeries h5_linear = w.h5.truncated(1);
    w.factor_residual =
        sub(p, mul_series(theta_series, h5_linear)).truncated(theta_series.order()).norm();

    // S^2 f2 - ab S f2 = z^3 theta h5
    const AbCoords sf2 = apply(model.pair, model.f2);
    const AbCoords lhs = sub(apply(model.pair, sf2), scale(sf2, model.pair.ab_bar()));
    const CoeffSeries rhs_series = mul_series(theta_series, h5_linear, order - 3).shifted_up(3);
    w.action_residual = sub(lhs, series_tail_coords(rhs_series, order)).norm();
    return w;
}

double blaschke_a_quantity(const ParamPair& pair, Complex a) {
    const double alpha_sq = pair.alpha_sq();
    const Complex denom = Complex{1.0, 0.0} - std::conj(a) * pair.ab_bar();
    return 1.0 - alpha_sq * alpha_sq * (1.0 - std::norm(a)) / std::norm(denom);
}

double wsp_inequality_lhs(const ParamPair& pair, Complex a) {
    const double ab = std::abs(pair.ab_bar());
    return ab - pair.alpha_sq() * blaschke_a_quantity(pair, a) * (1.0 - ab);
}

CounterexampleSearch find_counterexample(double beta_sq) {
    if (!(beta_sq > 0.0) || !(beta_sq < 1.0))
        throw DomainError("|beta|^2 must lie strictly between 0 and 1");
    CounterexampleSearch search;
    search.beta_sq = beta_sq;
    search.beta_sq_threshold = thresholds().inv_four_plus_gamma;
    if (beta_sq >= search.beta_sq_threshold) return search;  // no such subspace exists

    search.possible = true;
    const ParamPair pair = ParamPair::from_alpha_sq(1.0 - beta_sq);
    const double ab = std::abs(pair.ab_bar());
    const double base_gap = pair.alpha_sq() * (1.0 - ab) - ab;

    constexpr double kGridStep = 0.005;
    double found_a = -1.0;
    for (double a = 0.5; a <= 0.995 + 1e-12; a += kGridStep) {
        if (std::abs(a - ab) < 1e-9) continue;
        if (wsp_inequality_lhs(pair, Complex{a, 0.0}) < 0.0) {
            found_a = a;
            break;
        }
    }
    // Near the threshold the zero must approach the boundary; halve the gap
    // to 1 until the inequality flips (it must, since the correction term
    // vanishes there while the base gap is fixed).
    if (found_a < 0.0) {
        double a = 0.995;
        for (int iter = 0; iter < 60; ++iter) {
            a = 1.0 - 0.5 * (1.0 - a);
            if (std::abs(a - ab) < 1e-9) continue;
            if (wsp_inequality_lhs(pair, Complex{a, 0.0}) < 0.0) {
                found_a = a;
                break;
            }
        }
    }
    if (found_a < 0.0)
        throw InconclusiveTruncation("no admissible zero found; |beta|^2 is too close to the bound");

    CounterexampleRecord rec;
    rec.alpha_sq = pair.alpha_sq();
    rec.beta_sq = beta_sq;
    rec.a = found_a;
    rec.lhs = wsp_inequality_lhs(pair, Complex{found_a, 0.0});
    rec.base_gap = base_gap;
    const double denom = std::norm(Complex{1.0, 0.0} - found_a * pair.ab_bar());
    rec.b_term = std::pow(pair.alpha_sq(), 3) * (1.0 - ab) * (1.0 - found_a * found_a) / denom;
    rec.epsilon = 0.5 * (rec.b_term + base_gap);
    rec.grid_step = kGridStep;

    const SubspaceModel model =
        build_subspace(pair, InnerFunction::blaschke({Complex{found_a, 0.0}}), 64);
    rec.abs_r = model.abs_r();
    if (rec.abs_r >= 1.0)
        throw InternalInconsistency("inequality negative but |r| >= 1; arithmetic bug");
    search.found = rec;
    return search;
}

}  // namespace shiftlab
