#include "shiftlab/inner_function.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace shiftlab {

namespace {

constexpr double kUnimodularTol = 1e-12;
constexpr double kBoundaryMargin = 1e-8;

// Taylor series of a single Blaschke factor with zero at a.
CoeffSeries blaschke_factor_series(Complex a, int order) {
    CoeffSeries s = CoeffSeries::zero(order);
    s[0] = -a;
    const double head = 1.0 - std::norm(a);
    Complex pow{1.0, 0.0};
    const Complex abar = std::conj(a);
    for (int k = 1; k <= order; ++k) {
        s[k] = head * pow;
        pow *= abar;
    }
    return s;
}

}  // namespace

InnerFunction::InnerFunction(Complex unimodular_const, int monomial_power,
                             std::vector<Complex> blaschke_zeros)
    : unimodular_const_(unimodular_const),
      monomial_power_(monomial_power),
      blaschke_zeros_(std::move(blaschke_zeros)) {
    if (std::abs(std::abs(unimodular_const_) - 1.0) > kUnimodularTol)
        throw DomainError("inner function constant must be unimodular");
    if (monomial_power_ < 0) throw DomainError("monomial power must be nonnegative");
    for (const Complex& a : blaschke_zeros_) {
        const double m = std::abs(a);
        if (m < 1e-12) throw DomainError("Blaschke zero at the origin belongs to the monomial factor");
        if (m >= 1.0) throw DomainError("Blaschke zeros must lie in the open unit disk");
    }
}

InnerFunction InnerFunction::monomial(int power) {
    return InnerFunction(Complex{1.0, 0.0}, power, {});
}

InnerFunction InnerFunction::blaschke(std::vector<Complex> zeros, int monomial_power,
                                      Complex unimodular_const) {
    return InnerFunction(unimodular_const, monomial_power, std::move(zeros));
}

Complex InnerFunction::evaluate(Complex w) const {
    if (std::abs(w) >= 1.0) throw DomainError("inner functions are evaluated inside the open disk");
    Complex value = unimodular_const_;
    for (int k = 0; k < monomial_power_; ++k) value *= w;
    for (const Complex& a : blaschke_zeros_) {
        const Complex denom = Complex{1.0, 0.0} - std::conj(a) * w;
        if (std::abs(denom) < 1e-14)
            throw DomainError("Blaschke denominator vanished; inputs outside the disk?");
        value *= (w - a) / denom;
    }
    return value;
}

CoeffSeries InnerFunction::taylor_coeffs(int order) const {
    if (order < 0) throw DomainError("taylor order must be nonnegative");
    if (monomial_power_ > order)
        return CoeffSeries::zero(order);
    CoeffSeries s = CoeffSeries::monomial(monomial_power_, unimodular_const_, order);
    for (const Complex& a : blaschke_zeros_)
        s = mul_series(s, blaschke_factor_series(a, order), order);
    return s;
}

double InnerFunction::decay_rate() const {
    double rho = 0.0;
    for (const Complex& a : blaschke_zeros_) rho = std::max(rho, std::abs(a));
    return rho;
}

double InnerFunction::taylor_tail_bound(int order) const {
    if (blaschke_zeros_.empty()) return 0.0;
    // Inner functions have unit Hardy norm, so the dropped tail is exactly
    // 1 - |truncation|^2 (clamped against round-off).
    return std::max(0.0, 1.0 - taylor_coeffs(order).norm_sq());
}

bool same_inner_up_to_unimodular(const InnerFunction& a, const InnerFunction& b, double tol) {
    if (a.monomial_power() != b.monomial_power()) return false;
    if (a.blaschke_zeros().size() != b.blaschke_zeros().size()) return false;
    std::vector<Complex> rest = b.blaschke_zeros();
    for (const Complex& za : a.blaschke_zeros()) {
        auto it = std::min_element(rest.begin(), rest.end(), [&](Complex x, Complex y) {
            return std::abs(x - za) < std::abs(y - za);
        });
        if (it == rest.end() || std::abs(*it - za) > tol) return false;
        rest.erase(it);
    }
    return true;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d <= 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i)
        companion(i, d - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs[static_cast<std::size_t>(d)];
    for (int i = 1; i < d; ++i) companion(i, i - 1) = Complex{1.0, 0.0};
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw RootFindingFailure("companion-matrix eigensolver did not converge");
    std::vector<Complex> roots(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return roots;
}

std::pair<InnerFunction, CoeffSeries> inner_part_of_polynomial(const CoeffSeries& q) {
    const double scale = q.max_abs_coeff();
    if (scale <= 0.0) throw ZeroPolynomial("cannot factor the zero polynomial");
    const double bar = 1e-12 * scale;

    int degree = q.order();
    while (degree > 0 && std::abs(q[degree]) <= bar) --degree;
    int vanish = 0;
    while (vanish < degree && std::abs(q[vanish]) <= bar) ++vanish;
    if (degree == 0 && std::abs(q[0]) <= bar) throw ZeroPolynomial("cannot factor the zero polynomial");

    std::vector<Complex> body(q.coeffs().begin() + vanish, q.coeffs().begin() + degree + 1);

    std::vector<Complex> inside;
    std::vector<Complex> origin;
    if (body.size() > 1) {
        for (const Complex& root : polynomial_roots(body)) {
            const double m = std::abs(root);
            if (m <= 1e-12) {
                origin.push_back(root);  // stray origin root missed by the coefficient trim
            } else if (m < 1.0 - kBoundaryMargin) {
                inside.push_back(root);
            } else if (m <= 1.0 + kBoundaryMargin) {
                throw BoundaryRoot("polynomial root within 1e-8 of the unit circle");
            }
        }
    }

    CoeffSeries outer{std::move(body)};
    for (const Complex& root : origin) {
        outer = divide_by_linear(outer, root, 1e-7);
        ++vanish;
    }
    for (const Complex& a : inside) {
        outer = divide_by_linear(outer, a, 1e-7);
        CoeffSeries denom = CoeffSeries::zero(1);
        denom[0] = Complex{1.0, 0.0};
        denom[1] = -std::conj(a);
        outer = mul_series(outer, denom);
    }
    return {InnerFunction(Complex{1.0, 0.0}, vanish, std::move(inside)), outer};
}

}  // namespace shiftlab
