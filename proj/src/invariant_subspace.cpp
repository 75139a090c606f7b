#include "shiftlab/invariant_subspace.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "shiftlab/krylov.hpp"

namespace shiftlab {

namespace {

constexpr double kThetaVanishTol = 1e-10;

double abs_r_from_norm(const ParamPair& pair, Complex t, double norm_sq_g) {
    const double d = pair.alpha_sq() * std::norm(t) * (1.0 + norm_sq_g);
    return std::abs(pair.ab_bar()) * (1.0 + d) / d;
}

// z^s * theta * z^k as coordinates (the low coefficients vanish, so the
// component along f0 is zero).
AbCoords shifted_theta_coords(const CoeffSeries& theta_series, int s, int k, int dim) {
    AbCoords v = AbCoords::zero(dim);
    for (int j = 0; j <= theta_series.order(); ++j) {
        const int degree = s + k + j;
        if (degree < 2) {
            if (std::abs(theta_series[j]) > 1e-13)
                throw InternalInconsistency("shifted inner series reaches below z^2");
            continue;
        }
        if (degree > dim) break;
        v.tail[static_cast<std::size_t>(degree - 2)] = theta_series[j];
    }
    return v;
}

CoeffSeries random_polynomial(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    CoeffSeries s = CoeffSeries::zero(degree);
    for (int k = 0; k <= degree; ++k) s[k] = Complex{unit(rng), unit(rng)};
    return s;
}

}  // namespace

std::pair<CoeffSeries, NormSqValue> solve_g(const ParamPair& pair, const InnerFunction& theta,
                                            int order, double tol) {
    const Complex ab = pair.ab_bar();
    const Complex t = theta.evaluate(ab);
    if (std::abs(t) < kThetaVanishTol)
        throw ThetaVanishesAtAbBar("theta vanishes at alpha*conj(beta); no subspace is attached");

    const Complex beta = pair.beta();

    if (theta.blaschke_zeros().empty()) {
        const int n = theta.monomial_power();
        if (n == 0) return {CoeffSeries::zero(0), NormSqValue{0.0, 0.0, true}};
        // g = (beta/ab^n) sum_{k<n} ab^(n-1-k) z^k; the unimodular constant
        // of theta cancels between beta/t and theta - t.
        CoeffSeries g = CoeffSeries::zero(n - 1);
        Complex ab_pow{1.0, 0.0};
        for (int k = n - 1; k >= 0; --k) {
            g[k] = ab_pow;
            ab_pow *= ab;
        }
        g = scale(g, beta / ab_pow);  // ab_pow = ab^n
        const double q = std::norm(ab);
        const double qn = std::pow(q, n);
        const double norm_sq = pair.beta_sq() / qn * (1.0 - qn) / (1.0 - q);
        return {std::move(g), NormSqValue{norm_sq, 0.0, true}};
    }

    if (theta.blaschke_zeros().size() == 1 && theta.monomial_power() == 0) {
        const Complex a = theta.blaschke_zeros()[0];
        const Complex head = beta * (1.0 - std::norm(a)) / (ab - a);
        CoeffSeries g = CoeffSeries::zero(order);
        Complex pow{1.0, 0.0};
        for (int k = 0; k <= order; ++k) {
            g[k] = head * pow;
            pow *= std::conj(a);
        }
        const double norm_sq = pair.beta_sq() * (1.0 - std::norm(a)) / std::norm(ab - a);
        return {std::move(g), NormSqValue{norm_sq, 0.0, true}};
    }

    // Composite inner function: synthetic division of the Taylor expansion.
    CoeffSeries rhs = theta.taylor_coeffs(order);
    rhs[0] -= t;
    rhs = scale(rhs, beta / t);
    CoeffSeries g = divide_by_linear(rhs, ab, tol);

    NormSqValue norm_sq;
    norm_sq.exact = false;
    norm_sq.value = g.norm_sq();
    const double rho = theta.decay_rate();
    if (rho > 0.0) {
        double envelope = 0.0;
        for (int k = std::max(0, g.order() - 7); k <= g.order(); ++k)
            envelope = std::max(envelope, std::abs(g[k]) / std::pow(rho, k));
        const double r2 = rho * rho;
        norm_sq.tail_bound = envelope * envelope * std::pow(r2, g.order() + 1) / (1.0 - r2);
    }
    return {std::move(g), norm_sq};
}

double SubspaceModel::abs_r_lower() const {
    return abs_r_from_norm(pair, t, norm_sq_g.upper());
}

double SubspaceModel::abs_r_upper() const {
    return abs_r_from_norm(pair, t, norm_sq_g.lower());
}

SubspaceModel build_subspace(const ParamPair& pair, const InnerFunction& theta, int order,
                             double tol) {
    if (order < 8) throw DomainError("subspace models need truncation order >= 8");
    auto [g, norm_sq] = solve_g(pair, theta, order, tol);
    const Complex ab = pair.ab_bar();
    const Complex t = theta.evaluate(ab);
    const Complex beta = pair.beta();

    SubspaceModel model{pair, theta, t, std::move(g), norm_sq, AbCoords::zero(order),
                        AbCoords::zero(order), Complex{}, Complex{}, order};

    // f1 = ab f0 + beta z^2 + z^3 g
    model.f1.c0 = ab;
    model.f1.tail[0] = beta;
    for (int j = 0; j <= model.g.order() && j + 3 <= order; ++j)
        model.f1.tail[static_cast<std::size_t>(j + 1)] = model.g[j];

    // f2 = f0 + z^2 (g + h4_0 theta), h4_0 = -(conj(alpha) beta / conj(beta)) conj(t) (1+|g|^2)
    model.h4_0 = -(std::conj(pair.alpha()) * beta / std::conj(beta)) * std::conj(t) *
                 (1.0 + norm_sq.value);
    const CoeffSeries theta_series = theta.taylor_coeffs(order - 2);
    model.f2.c0 = Complex{1.0, 0.0};
    for (int j = 0; j + 2 <= order; ++j)
        model.f2.tail[static_cast<std::size_t>(j)] =
            model.g.coeff(j) + model.h4_0 * theta_series.coeff(j);

    const double d = pair.alpha_sq() * std::norm(t) * (1.0 + norm_sq.value);
    model.r = ab * (1.0 + d) / d;
    return model;
}

double InvarianceReport::max_residual() const {
    return std::max({f2_step, f1_step, tail_step, g_identity, f2_f1, f2_tail, f1_tail, g_tail,
                     wandering});
}

InvarianceReport verify_invariance(const SubspaceModel& model, std::uint64_t seed) {
    const ParamPair& pair = model.pair;
    const int dim = model.order;
    const CoeffSeries theta_series = model.theta.taylor_coeffs(dim);
    InvarianceReport rep{};

    // (i) S f2 = f1 + h4_0 z^3 theta
    {
        const AbCoords lhs = apply(pair, model.f2);
        const AbCoords rhs =
            add(model.f1, scale(shifted_theta_coords(theta_series, 3, 0, dim), model.h4_0));
        rep.f2_step = sub(lhs, rhs).norm();
    }
    // (ii) S f1 = ab f1 + (beta/t) z^3 theta
    {
        const AbCoords lhs = apply(pair, model.f1);
        const AbCoords rhs = add(scale(model.f1, pair.ab_bar()),
                                 scale(shifted_theta_coords(theta_series, 3, 0, dim),
                                       pair.beta() / model.t));
        rep.f1_step = sub(lhs, rhs).norm();
    }
    // (iii) S(z^3 theta h) = z^4 theta h for h = 1 and random polynomials.
    {
        std::mt19937_64 rng(seed);
        double worst = 0.0;
        for (int trial = 0; trial < 4; ++trial) {
            const CoeffSeries h =
                (trial == 0) ? CoeffSeries::constant(Complex{1.0, 0.0}) : random_polynomial(rng, 8);
            const CoeffSeries th = mul_series(theta_series, h, dim - 4);
            AbCoords lhs_in = AbCoords::zero(dim);
            AbCoords rhs = AbCoords::zero(dim);
            for (int j = 0; j <= th.order(); ++j) {
                if (j + 3 <= dim) lhs_in.tail[static_cast<std::size_t>(j + 1)] = th[j];
                if (j + 4 <= dim) rhs.tail[static_cast<std::size_t>(j + 2)] = th[j];
            }
            worst = std::max(worst, sub(apply(pair, lhs_in), rhs).norm());
        }
        rep.tail_step = worst;
    }
    // g identity: (z-ab) g - (beta/t) theta + beta, compared over the common
    // truncation (both sides are only known up to the series order).
    {
        CoeffSeries lhs = sub(mul_series(CoeffSeries{{-pair.ab_bar(), Complex{1.0, 0.0}}}, model.g),
                              scale(theta_series, pair.beta() / model.t));
        lhs[0] += pair.beta();
        rep.g_identity = lhs.truncated(theta_series.order()).norm();
    }
    // Orthogonality suite.
    rep.f2_f1 = std::abs(inner_product(model.f2, model.f1));
    rep.f2_tail = rep.f1_tail = rep.g_tail = 0.0;
    for (int n = 0; n <= 20; ++n) {
        if (n + 3 + model.theta.degree() <= dim) {
            const AbCoords dir = shifted_theta_coords(theta_series, 3, n, dim);
            rep.f2_tail = std::max(rep.f2_tail, std::abs(inner_product(model.f2, dir)));
            rep.f1_tail = std::max(rep.f1_tail, std::abs(inner_product(model.f1, dir)));
        }
        rep.g_tail = std::max(
            rep.g_tail, std::abs(inner_product(model.g, theta_series.shifted_up(n))));
    }
    // Wandering property of f2.
    {
        AbCoords v = model.f2;
        double worst = 0.0;
        for (int n = 1; n <= 20; ++n) {
            v = apply(pair, v);
            worst = std::max(worst, std::abs(inner_product(model.f2, v)));
        }
        rep.wandering = worst;
    }
    return rep;
}

AbCoords cyclic_generator(const ParamPair& pair, const InnerFunction& theta, int order,
                          double tol) {
    auto [g, norm_sq] = solve_g(pair, theta, order, tol);
    (void)norm_sq;
    AbCoords f = AbCoords::zero(order);
    f.c0 = Complex{1.0, 0.0};
    for (int j = 0; j <= g.order() && j + 2 <= order; ++j)
        f.tail[static_cast<std::size_t>(j)] = g[j];
    return f;
}

InnerFunction inner_part_from_generator(const ParamPair& pair, const AbCoords& f, double tol) {
    const double scale = f.norm();
    if (scale <= 0.0) throw ZeroVector("generator is the zero vector");
    CoeffSeries g = CoeffSeries::zero(std::max<int>(1, static_cast<int>(f.tail.size()) - 1));
    for (std::size_t k = 0; k < f.tail.size(); ++k) g[static_cast<int>(k)] = f.tail[k];

    CoeffSeries q;
    if (std::abs(f.c0) > tol * scale) {
        // S f - ab f = z^2 (c0 beta + (z - ab) g)
        q = mul_series(CoeffSeries{{-pair.ab_bar(), Complex{1.0, 0.0}}}, g);
        q[0] += f.c0 * pair.beta();
    } else {
        q = g;
    }
    const int degree = q.effective_degree(1e-10);
    if (degree < 0) throw ZeroVector("generator has no polynomial content");
    return inner_part_of_polynomial(q.truncated(degree)).first;
}

Eigen::MatrixXcd model_directions(const SubspaceModel& model, int dim, int max_tail_power) {
    const CoeffSeries theta_series = model.theta.taylor_coeffs(dim);
    const int count = 2 + max_tail_power + 1;
    Eigen::MatrixXcd d(dim, count);
    auto put = [&](int col, const AbCoords& v) {
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
        x(0) = v.c0;
        for (int k = 0; k + 1 < dim && k < static_cast<int>(v.tail.size()); ++k) x(k + 1) = v.tail[k];
        const double n = x.norm();
        if (n < 1e-8) throw DomainError("spanning direction falls outside the truncation");
        d.col(col) = x / n;
    };
    put(0, model.f2);
    put(1, model.f1);
    for (int k = 0; k <= max_tail_power; ++k)
        put(2 + k, shifted_theta_coords(theta_series, 3, k, dim));
    return orthonormal_span(d);
}

Eigen::MatrixXcd cyclic_directions(const ParamPair& pair, const InnerFunction& theta,
                                   const AbCoords& f, int dim, int max_tail_power) {
    const CoeffSeries theta_series = theta.taylor_coeffs(dim);
    Eigen::MatrixXcd d(dim, 1 + max_tail_power + 1);
    auto put = [&](int col, const AbCoords& v) {
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
        x(0) = v.c0;
        for (int k = 0; k + 1 < dim && k < static_cast<int>(v.tail.size()); ++k) x(k + 1) = v.tail[k];
        const double n = x.norm();
        if (n < 1e-8) throw DomainError("spanning direction falls outside the truncation");
        d.col(col) = x / n;
    };
    put(0, f);
    for (int k = 0; k <= max_tail_power; ++k)
        put(1 + k, shifted_theta_coords(theta_series, 2, k, dim));
    return orthonormal_span(d);
}

int codimension_of_shifted(const SubspaceModel& model, int dim) {
    const int max_tail = std::max(4, dim / 2 - model.theta.degree() - 3);
    const Eigen::MatrixXcd q = model_directions(model, dim, max_tail);
    // Images of the spanning set under the shift, projected back into the
    // model truncation.
    Eigen::MatrixXcd shifted(dim, q.cols());
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        AbCoords v = AbCoords::from_vector(q.col(j));
        shifted.col(j) = apply(model.pair, v).to_vector();
    }
    const Eigen::MatrixXcd projected = q.adjoint() * shifted;
    return static_cast<int>(q.cols()) - numerical_rank(projected);
}

double cyclic_span_residual(const ParamPair& pair, const InnerFunction& theta, const AbCoords& f,
                            int dim) {
    AbCoords seed = f;
    seed.tail.resize(static_cast<std::size_t>(dim - 1), Complex{});
    const Eigen::MatrixXcd k = krylov_matrix(pair, seed, dim - 1);
    const Eigen::MatrixXcd q = orthonormal_span(k);
    const int max_tail = std::max(4, dim / 2 - theta.degree() - 2);
    const Eigen::MatrixXcd d = cyclic_directions(pair, theta, seed, dim, max_tail);
    const SpanComparison cmp = compare_spans(q, d);
    double worst = cmp.max_cover_residual;
    if (cmp.missing > 0) worst = 1.0;
    return worst;
}

}  // namespace shiftlab
