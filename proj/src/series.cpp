#include "shiftlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace shiftlab {

void RunConfig::validate() const {
    if (truncation_order < 8)
        throw DomainError("truncation order must be at least 8, got " +
                          std::to_string(truncation_order));
    if (!(tolerance > 0.0) || tolerance > 1e-4)
        throw DomainError("tolerance must lie in (0, 1e-4]");
    if (output_format != "json" && output_format != "csv" && output_format != "text")
        throw DomainError("unknown output format: " + output_format);
}

int RunConfig::env_truncation_default() {
    if (const char* env = std::getenv("SHIFTLAB_TRUNCATION")) {
        const int n = std::atoi(env);
        if (n >= 8) return n;
    }
    return kDefaultOrder;
}

CoeffSeries CoeffSeries::zero(int order) {
    return CoeffSeries(std::vector<Complex>(static_cast<std::size_t>(std::max(order, 0)) + 1));
}

CoeffSeries CoeffSeries::constant(Complex c, int order) {
    CoeffSeries s = zero(order);
    s[0] = c;
    return s;
}

CoeffSeries CoeffSeries::monomial(int degree, Complex scale, int order) {
    if (degree < 0) throw DomainError("monomial degree must be nonnegative");
    CoeffSeries s = zero(std::max(order, degree));
    s[degree] = scale;
    return s;
}

double CoeffSeries::norm_sq() const {
    double acc = 0.0;
    for (const Complex& c : coeffs_) acc += std::norm(c);
    return acc;
}

double CoeffSeries::norm() const { return std::sqrt(norm_sq()); }

double CoeffSeries::max_abs_coeff() const {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Complex CoeffSeries::eval(Complex z) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

CoeffSeries CoeffSeries::truncated(int new_order) const {
    std::vector<Complex> out(static_cast<std::size_t>(std::max(new_order, 0)) + 1);
    const std::size_t n = std::min(out.size(), coeffs_.size());
    std::copy_n(coeffs_.begin(), n, out.begin());
    return CoeffSeries(std::move(out));
}

CoeffSeries CoeffSeries::shifted_up(int m) const {
    if (m < 0) throw DomainError("shift amount must be nonnegative");
    std::vector<Complex> out(coeffs_.size() + static_cast<std::size_t>(m));
    std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + m);
    return CoeffSeries(std::move(out));
}

CoeffSeries CoeffSeries::shifted_down(int m, double tol) const {
    if (m < 0) throw DomainError("shift amount must be nonnegative");
    const double bar = tol * std::max(1.0, max_abs_coeff());
    for (int k = 0; k < m && k < static_cast<int>(coeffs_.size()); ++k)
        if (std::abs(coeffs_[static_cast<std::size_t>(k)]) > bar)
            throw DomainError("cannot shift down: low-order coefficients are nonzero");
    if (m >= static_cast<int>(coeffs_.size())) return CoeffSeries();
    return CoeffSeries(std::vector<Complex>(coeffs_.begin() + m, coeffs_.end()));
}

int CoeffSeries::effective_degree(double rel_tol) const {
    const double bar = rel_tol * max_abs_coeff();
    for (int k = order(); k >= 0; --k)
        if (std::abs(coeffs_[static_cast<std::size_t>(k)]) > bar) return k;
    return -1;
}

Complex inner_product(const CoeffSeries& u, const CoeffSeries& v) {
    const std::size_t n = std::min(u.coeffs().size(), v.coeffs().size());
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) acc += u.coeffs()[k] * std::conj(v.coeffs()[k]);
    return acc;
}

CoeffSeries add(const CoeffSeries& u, const CoeffSeries& v) {
    std::vector<Complex> out(std::max(u.coeffs().size(), v.coeffs().size()));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = u.coeff(static_cast<int>(k)) + v.coeff(static_cast<int>(k));
    return CoeffSeries(std::move(out));
}

CoeffSeries sub(const CoeffSeries& u, const CoeffSeries& v) {
    std::vector<Complex> out(std::max(u.coeffs().size(), v.coeffs().size()));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = u.coeff(static_cast<int>(k)) - v.coeff(static_cast<int>(k));
    return CoeffSeries(std::move(out));
}

CoeffSeries scale(const CoeffSeries& u, Complex factor) {
    std::vector<Complex> out = u.coeffs();
    for (Complex& c : out) c *= factor;
    return CoeffSeries(std::move(out));
}

CoeffSeries mul_series(const CoeffSeries& u, const CoeffSeries& v, int result_order) {
    const int full = u.order() + v.order();
    const int n = (result_order < 0) ? full : std::min(result_order, full);
    std::vector<Complex> out(static_cast<std::size_t>(std::max(n, 0)) + 1);
    for (int i = 0; i <= u.order(); ++i) {
        const Complex ui = u[i];
        if (ui == Complex{}) continue;
        const int jmax = std::min(v.order(), n - i);
        for (int j = 0; j <= jmax; ++j) out[static_cast<std::size_t>(i + j)] += ui * v[j];
    }
    CoeffSeries r(std::move(out));
    return (result_order < 0) ? r : r.truncated(result_order);
}

CoeffSeries divide_by_linear(const CoeffSeries& u, Complex lambda, double tol) {
    const double scale = std::max(1.0, u.max_abs_coeff());
    const Complex remainder = u.eval(lambda);
    if (std::abs(remainder) > tol * scale)
        throw RootMismatch("divide_by_linear: the point is not a root, |u(lambda)| = " +
                           std::to_string(std::abs(remainder)));
    const int n = u.order();
    if (n == 0) return CoeffSeries::zero(0);
    std::vector<Complex> q(static_cast<std::size_t>(n));
    q[static_cast<std::size_t>(n - 1)] = u[n];
    for (int k = n - 1; k >= 1; --k)
        q[static_cast<std::size_t>(k - 1)] = u[k] + lambda * q[static_cast<std::size_t>(k)];
    return CoeffSeries(std::move(q));
}

CoeffSeries cauchy_kernel_series(Complex w, int order) {
    if (std::abs(w) >= 1.0)
        throw DomainError("cauchy_kernel_series: |w| must be < 1 for square-summability");
    std::vector<Complex> out(static_cast<std::size_t>(std::max(order, 0)) + 1);
    Complex pow{1.0, 0.0};
    const Complex wbar = std::conj(w);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = pow;
        pow *= wbar;
    }
    return CoeffSeries(std::move(out));
}

}  // namespace shiftlab
