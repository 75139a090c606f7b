#include "shiftlab/series.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace shiftlab;

namespace {
Complex rc(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    return Complex{unit(rng), unit(rng)};
}
}  // namespace

TEST_CASE("inner product pairs coefficients") {
    const CoeffSeries one_plus_z{{Complex{1, 0}, Complex{1, 0}}};
    CHECK(std::abs(inner_product(one_plus_z, one_plus_z) - Complex{2, 0}) < 1e-15);

    const CoeffSeries z2 = CoeffSeries::monomial(2);
    const CoeffSeries z3 = CoeffSeries::monomial(3);
    CHECK(std::abs(inner_product(z2, z3)) == 0.0);

    // f0 = alpha + beta z against the defect direction conj(beta) - conj(alpha) z.
    const double s = 1.0 / std::sqrt(2.0);
    const CoeffSeries f0{{Complex{s, 0}, Complex{s, 0}}};
    const CoeffSeries defect{{Complex{s, 0}, Complex{-s, 0}}};
    CHECK(std::abs(inner_product(f0, defect)) < 1e-15);
    CHECK(std::abs(inner_product(defect, f0)) < 1e-15);
}

TEST_CASE("inner product is conjugate symmetric") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        CoeffSeries u = CoeffSeries::zero(24), v = CoeffSeries::zero(17);
        for (int k = 0; k <= u.order(); ++k) u[k] = rc(rng);
        for (int k = 0; k <= v.order(); ++k) v[k] = rc(rng);
        CHECK(std::abs(inner_product(u, v) - std::conj(inner_product(v, u))) < 1e-14);
    }
}

TEST_CASE("series products") {
    const CoeffSeries a{{Complex{1, 0}, Complex{1, 0}}};   // 1 + z
    const CoeffSeries b{{Complex{1, 0}, Complex{-1, 0}}};  // 1 - z
    const CoeffSeries ab = mul_series(a, b);
    CHECK(ab.order() == 2);
    CHECK(std::abs(ab[0] - Complex{1, 0}) < 1e-15);
    CHECK(std::abs(ab[1]) < 1e-15);
    CHECK(std::abs(ab[2] - Complex{-1, 0}) < 1e-15);

    // Monomial shift: z^2 (c0 + c1 z).
    const Complex c0{0.3, -0.7}, c1{-1.1, 0.2};
    const CoeffSeries shifted = mul_series(CoeffSeries::monomial(2), CoeffSeries{{c0, c1}});
    CHECK(std::abs(shifted.coeff(2) - c0) < 1e-15);
    CHECK(std::abs(shifted.coeff(3) - c1) < 1e-15);
    CHECK(std::abs(shifted.coeff(0)) + std::abs(shifted.coeff(1)) < 1e-15);
}

TEST_CASE("hand-expanded product (z - 1/2)(1 + z/2 + z^2/4)") {
    // Expansion by hand: z + z^2/2 + z^3/4 - 1/2 - z/4 - z^2/8
    //                  = -1/2 + (3/4) z + (3/8) z^2 + (1/4) z^3.
    const CoeffSeries lin{{Complex{-0.5, 0}, Complex{1, 0}}};
    const CoeffSeries quad{{Complex{1, 0}, Complex{0.5, 0}, Complex{0.25, 0}}};
    const CoeffSeries prod = mul_series(lin, quad);
    CHECK(std::abs(prod[0] - Complex{-0.5, 0}) < 1e-15);
    CHECK(std::abs(prod[1] - Complex{0.75, 0}) < 1e-15);
    CHECK(std::abs(prod[2] - Complex{0.375, 0}) < 1e-15);
    CHECK(std::abs(prod[3] - Complex{0.25, 0}) < 1e-15);
}

TEST_CASE("telescoping product (z - 1/2)(1/4 + z/2 + z^2) = z^3 - 1/8") {
    const CoeffSeries lin{{Complex{-0.5, 0}, Complex{1, 0}}};
    const CoeffSeries quad{{Complex{0.25, 0}, Complex{0.5, 0}, Complex{1, 0}}};
    const CoeffSeries prod = mul_series(lin, quad);
    CHECK(std::abs(prod[0] - Complex{-0.125, 0}) < 1e-15);
    CHECK(std::abs(prod[1]) < 1e-15);
    CHECK(std::abs(prod[2]) < 1e-15);
    CHECK(std::abs(prod[3] - Complex{1, 0}) < 1e-15);
}

TEST_CASE("synthetic division") {
    SUBCASE("identity case (z - lambda)/(z - lambda) = 1") {
        const Complex lambda{0.4, -0.3};
        const CoeffSeries u{{-lambda, Complex{1, 0}}};
        const CoeffSeries q = divide_by_linear(u, lambda);
        CHECK(q.order() == 0);
        CHECK(std::abs(q[0] - Complex{1, 0}) < 1e-15);
    }
    SUBCASE("(z^2 - 1/4)/(z - 1/2) = z + 1/2") {
        const CoeffSeries u{{Complex{-0.25, 0}, Complex{0, 0}, Complex{1, 0}}};
        const CoeffSeries q = divide_by_linear(u, Complex{0.5, 0});
        CHECK(std::abs(q[0] - Complex{0.5, 0}) < 1e-15);
        CHECK(std::abs(q[1] - Complex{1, 0}) < 1e-15);
    }
    SUBCASE("(z^n - w^n)/(z - w) is the geometric polynomial") {
        const Complex w{0.3, 0.25};
        for (int n = 1; n <= 6; ++n) {
            CoeffSeries u = CoeffSeries::monomial(n);
            u[0] = -std::pow(w, n);
            const CoeffSeries q = divide_by_linear(u, w);
            for (int k = 0; k < n; ++k)
                CHECK(std::abs(q[k] - std::pow(w, n - 1 - k)) < 1e-14);
        }
    }
    SUBCASE("rejects a non-root") {
        const CoeffSeries u{{Complex{1, 0}, Complex{1, 0}}};
        CHECK_THROWS_AS(divide_by_linear(u, Complex{0.5, 0}), RootMismatch);
    }
}

TEST_CASE("divide then multiply reproduces polynomials of degree <= 64") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> radius(0.0, 0.99);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    double worst = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
        const Complex lambda = std::polar(radius(rng), angle(rng));
        CoeffSeries q = CoeffSeries::zero(63);
        for (int k = 0; k <= 63; ++k) q[k] = rc(rng);
        const CoeffSeries u = mul_series(CoeffSeries{{-lambda, Complex{1, 0}}}, q);
        const CoeffSeries back = divide_by_linear(u, lambda);
        const CoeffSeries redo = mul_series(CoeffSeries{{-lambda, Complex{1, 0}}}, back);
        worst = std::max(worst, sub(redo, u).norm());
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("cauchy kernel series") {
    SUBCASE("at zero it is the constant 1") {
        const CoeffSeries k = cauchy_kernel_series(Complex{0, 0}, 5);
        CHECK(std::abs(k[0] - Complex{1, 0}) < 1e-15);
        for (int n = 1; n <= 5; ++n) CHECK(std::abs(k[n]) == 0.0);
    }
    SUBCASE("geometric coefficients at 1/2") {
        const CoeffSeries k = cauchy_kernel_series(Complex{0.5, 0}, 3);
        CHECK(std::abs(k[0] - Complex{1, 0}) < 1e-15);
        CHECK(std::abs(k[1] - Complex{0.5, 0}) < 1e-15);
        CHECK(std::abs(k[2] - Complex{0.25, 0}) < 1e-15);
        CHECK(std::abs(k[3] - Complex{0.125, 0}) < 1e-15);
    }
    SUBCASE("outside the disk is rejected") {
        CHECK_THROWS_AS(cauchy_kernel_series(Complex{1.0, 0}, 4), DomainError);
        CHECK_THROWS_AS(cauchy_kernel_series(Complex{0.8, 0.7}, 4), DomainError);
    }
    SUBCASE("orthogonal to z^n (w - z) for n + 1 <= order") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> radius(0.0, 0.95);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
        double worst = 0.0;
        for (int trial = 0; trial < 25; ++trial) {
            const Complex w = std::polar(radius(rng), angle(rng));
            const CoeffSeries kernel = cauchy_kernel_series(w, 48);
            for (int n = 0; n + 1 <= 48; ++n) {
                CoeffSeries probe = CoeffSeries::zero(n + 1);
                probe[n] = w;
                probe[n + 1] = Complex{-1, 0};
                worst = std::max(worst, std::abs(inner_product(kernel, probe)));
            }
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("horner evaluation") {
    const CoeffSeries p{{Complex{1, 0}, Complex{-2, 0}, Complex{3, 0}}};
    const Complex z{0.5, 0.5};
    CHECK(std::abs(p.eval(z) - (Complex{1, 0} - 2.0 * z + 3.0 * z * z)) < 1e-15);
}

TEST_CASE("shifts and truncation") {
    const CoeffSeries p{{Complex{1, 0}, Complex{2, 0}}};
    const CoeffSeries up = p.shifted_up(3);
    CHECK(up.order() == 4);
    CHECK(std::abs(up[3] - Complex{1, 0}) < 1e-15);
    CHECK(std::abs(up[4] - Complex{2, 0}) < 1e-15);
    const CoeffSeries down = up.shifted_down(3);
    CHECK(sub(down, p).norm() < 1e-15);
    CHECK_THROWS_AS(up.shifted_down(4), DomainError);
    CHECK(p.truncated(4).order() == 4);
    CHECK(p.truncated(0).order() == 0);
}
