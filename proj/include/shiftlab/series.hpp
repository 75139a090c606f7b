#pragma once

#include <complex>
#include <vector>

#include "shiftlab/config.hpp"
#include "shiftlab/errors.hpp"

namespace shiftlab {

using Complex = std::complex<double>;

/// Truncated power series c_0 + c_1 z + ... + c_N z^N with complex
/// coefficients, representing an element of the Hardy space of the unit
/// disk by its Taylor coefficients. The inner product is the l^2 pairing
/// of coefficients, conjugate-linear in the second argument, so
/// norm_sq() equals the squared Hardy norm of the truncation.
class CoeffSeries {
public:
    CoeffSeries() : coeffs_(1, Complex{}) {}
    explicit CoeffSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.assign(1, Complex{});
    }

    static CoeffSeries zero(int order);
    static CoeffSeries constant(Complex c, int order = 0);
    /// scale * z^degree, truncated to `order` (defaults to `degree`).
    static CoeffSeries monomial(int degree, Complex scale = Complex{1.0, 0.0}, int order = -1);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    /// Coefficient of z^k; zero beyond the truncation order.
    Complex coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Complex{};
    }
    Complex& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
    const Complex& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

    double norm_sq() const;
    double norm() const;
    double max_abs_coeff() const;

    /// Horner evaluation at a point of the disk (no domain check; the
    /// truncation converges for any finite z).
    Complex eval(Complex z) const;

    /// Pads with zeros or chops to the requested order.
    CoeffSeries truncated(int new_order) const;
    /// Multiplication by z^m (coefficients shift up; nothing is dropped).
    CoeffSeries shifted_up(int m) const;
    /// Drops the first m coefficients; requires them to vanish within tol
    /// relative to the largest coefficient.
    CoeffSeries shifted_down(int m, double tol = kDefaultTolerance) const;

    /// Largest k with |c_k| > tol * max|c|; -1 for the (numerically) zero series.
    int effective_degree(double rel_tol = 1e-12) const;

private:
    std::vector<Complex> coeffs_;
};

/// Sum over k of u_k * conj(v_k); the shorter series is zero-padded.
Complex inner_product(const CoeffSeries& u, const CoeffSeries& v);

CoeffSeries add(const CoeffSeries& u, const CoeffSeries& v);
CoeffSeries sub(const CoeffSeries& u, const CoeffSeries& v);
CoeffSeries scale(const CoeffSeries& u, Complex factor);

/// Cauchy product. Exact: the result order is the sum of the input orders
/// unless `result_order` asks for an explicit truncation.
CoeffSeries mul_series(const CoeffSeries& u, const CoeffSeries& v, int result_order = -1);

/// Solves (z - lambda) q = u by synthetic division. Requires u(lambda) = 0
/// within tol (relative to the largest coefficient of u), evaluated by
/// Horner's rule; otherwise throws RootMismatch. The returned quotient has
/// order u.order() - 1.
CoeffSeries divide_by_linear(const CoeffSeries& u, Complex lambda, double tol = kDefaultTolerance);

/// Coefficients c_n = conj(w)^n for n <= order; the truncated reproducing
/// kernel of the Hardy space at w. Requires |w| < 1 (DomainError otherwise):
/// the full series is square-summable only inside the disk.
CoeffSeries cauchy_kernel_series(Complex w, int order);

inline CoeffSeries operator+(const CoeffSeries& u, const CoeffSeries& v) { return add(u, v); }
inline CoeffSeries operator-(const CoeffSeries& u, const CoeffSeries& v) { return sub(u, v); }
inline CoeffSeries operator*(const CoeffSeries& u, const CoeffSeries& v) { return mul_series(u, v); }
inline CoeffSeries operator*(Complex c, const CoeffSeries& u) { return scale(u, c); }

}  // namespace shiftlab
