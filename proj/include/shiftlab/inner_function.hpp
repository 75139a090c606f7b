#pragma once

#include <utility>
#include <vector>

#include "shiftlab/series.hpp"

namespace shiftlab {

/// Inner function of the form
///
///     theta(z) = c * z^m * prod_i (z - a_i) / (1 - conj(a_i) z)
///
/// with |c| = 1, m >= 0 and zeros 0 < |a_i| < 1: a unimodular constant
/// times a monomial times a finite Blaschke product. Values have modulus
/// < 1 inside the disk and modulus 1 on the boundary.
class InnerFunction {
public:
    /// theta = 1.
    InnerFunction() : unimodular_const_{1.0, 0.0}, monomial_power_(0) {}

    InnerFunction(Complex unimodular_const, int monomial_power, std::vector<Complex> blaschke_zeros);

    static InnerFunction monomial(int power);
    static InnerFunction blaschke(std::vector<Complex> zeros, int monomial_power = 0,
                                  Complex unimodular_const = Complex{1.0, 0.0});

    Complex unimodular_const() const { return unimodular_const_; }
    int monomial_power() const { return monomial_power_; }
    const std::vector<Complex>& blaschke_zeros() const { return blaschke_zeros_; }

    /// Total zero count inside the disk (monomial power + Blaschke factors).
    int degree() const { return monomial_power_ + static_cast<int>(blaschke_zeros_.size()); }

    /// Value at a point of the open disk; DomainError for |w| >= 1.
    Complex evaluate(Complex w) const;

    /// Truncated Taylor expansion, using
    /// (z - a)/(1 - conj(a) z) = -a + (1 - |a|^2) sum_{k>=1} conj(a)^{k-1} z^k
    /// per factor and Cauchy products for the composite.
    CoeffSeries taylor_coeffs(int order) const;

    /// Geometric bound on the squared-norm tail of taylor_coeffs beyond
    /// `order`; zero for pure monomials.
    double taylor_tail_bound(int order) const;

    /// Slowest coefficient decay rate: max |a_i| (zero for pure monomials).
    double decay_rate() const;

private:
    Complex unimodular_const_;
    int monomial_power_;
    std::vector<Complex> blaschke_zeros_;
};

/// Equality up to a unimodular constant: same monomial power and the same
/// multiset of Blaschke zeros within tol.
bool same_inner_up_to_unimodular(const InnerFunction& a, const InnerFunction& b, double tol = 1e-8);

/// Roots of the polynomial with coefficients c_0..c_d (c_d != 0) via the
/// eigenvalues of its companion matrix.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

/// Factors a nonzero polynomial q = theta * outer where theta collects the
/// monomial factor z^(order of vanishing at 0) and one Blaschke factor per
/// root inside the open disk (multiplicity respected), and outer has no
/// zeros in the open disk. Constants are folded into outer, so theta has
/// unimodular constant 1 and q == theta * outer exactly.
///
/// Throws ZeroPolynomial for q = 0, RootFindingFailure if the eigensolver
/// fails, and BoundaryRoot for roots with |root| within 1e-8 of the unit
/// circle, which cannot be classified reliably.
std::pair<InnerFunction, CoeffSeries> inner_part_of_polynomial(const CoeffSeries& q);

}  // namespace shiftlab
