#include "shiftlab/inner_function.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace shiftlab;

TEST_CASE("evaluation of simple inner functions") {
    const InnerFunction z = InnerFunction::monomial(1);
    CHECK(std::abs(z.evaluate(Complex{0.5, 0}) - Complex{0.5, 0}) < 1e-15);

    // (z - 1/2)/(1 - z/2) at 2/5: (2/5 - 1/2)/(1 - 1/5) = -1/8.
    const InnerFunction b = InnerFunction::blaschke({Complex{0.5, 0}});
    CHECK(std::abs(b.evaluate(Complex{0.4, 0}) - Complex{-0.125, 0}) < 1e-15);

    // A factor with zero at w evaluates to zero at w.
    const Complex w{0.3, 0.1};
    const InnerFunction bw = InnerFunction::blaschke({w});
    CHECK(std::abs(bw.evaluate(w)) < 1e-15);

    CHECK_THROWS_AS(z.evaluate(Complex{1.0, 0}), DomainError);
    CHECK_THROWS_AS(z.evaluate(Complex{0.8, 0.8}), DomainError);
}

TEST_CASE("constructor validates the shape") {
    CHECK_THROWS_AS(InnerFunction(Complex{0.5, 0}, 0, {}), DomainError);       // not unimodular
    CHECK_THROWS_AS(InnerFunction(Complex{1, 0}, -1, {}), DomainError);        // negative power
    CHECK_THROWS_AS(InnerFunction::blaschke({Complex{1.2, 0}}), DomainError);  // outside disk
    CHECK_THROWS_AS(InnerFunction::blaschke({Complex{0, 0}}), DomainError);    // origin zero
}

TEST_CASE("taylor coefficients") {
    SUBCASE("monomial") {
        const CoeffSeries t = InnerFunction::monomial(2).taylor_coeffs(4);
        for (int k = 0; k <= 4; ++k)
            CHECK(std::abs(t[k] - (k == 2 ? Complex{1, 0} : Complex{0, 0})) < 1e-15);
    }
    SUBCASE("single factor golden") {
        const CoeffSeries t = InnerFunction::blaschke({Complex{0.5, 0}}).taylor_coeffs(2);
        CHECK(std::abs(t[0] - Complex{-0.5, 0}) < 1e-15);
        CHECK(std::abs(t[1] - Complex{0.75, 0}) < 1e-15);
        CHECK(std::abs(t[2] - Complex{0.375, 0}) < 1e-15);
    }
    SUBCASE("unit norm in the limit") {
        const CoeffSeries t = InnerFunction::blaschke({Complex{0.5, 0}}).taylor_coeffs(64);
        CHECK(std::abs(t.norm_sq() - 1.0) < 1e-10);
    }
    SUBCASE("series evaluation matches direct evaluation") {
        const InnerFunction theta =
            InnerFunction::blaschke({Complex{0.4, 0.3}, Complex{-0.2, 0.5}}, 1);
        const CoeffSeries t = theta.taylor_coeffs(128);
        for (const Complex w : {Complex{0.2, 0.1}, Complex{-0.4, 0.2}, Complex{0.0, 0.5}})
            CHECK(std::abs(t.eval(w) - theta.evaluate(w)) < 1e-12);
    }
}

TEST_CASE("random finite products have nearly unit truncated norm") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> radius(0.1, 0.9);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_int_distribution<int> count(1, 4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> zeros;
        double rho = 0.0;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            zeros.push_back(std::polar(radius(rng), angle(rng)));
            rho = std::max(rho, std::abs(zeros.back()));
        }
        const InnerFunction theta = InnerFunction::blaschke(zeros);
        const int order = 256;
        const double norm_sq = theta.taylor_coeffs(order).norm_sq();
        CHECK(norm_sq <= 1.0 + 1e-12);
        CHECK(norm_sq >= 1.0 - theta.taylor_tail_bound(order) - 1e-12);
        // The exact-tail identity also bounds the dropped mass geometrically.
        CHECK(theta.taylor_tail_bound(order) < 1e-6);
    }
}

TEST_CASE("modulus below one inside the disk, approaching one near the boundary") {
    const InnerFunction theta = InnerFunction::blaschke({Complex{0.6, 0.2}, Complex{-0.3, 0.4}}, 2);
    double max_inner = 0.0;
    for (int k = 0; k < 64; ++k) {
        const Complex w = std::polar(0.95, 2.0 * M_PI * k / 64.0);
        max_inner = std::max(max_inner, std::abs(theta.evaluate(w)));
    }
    CHECK(max_inner < 1.0);
    double min_ring = 1.0;
    for (int k = 0; k < 64; ++k) {
        const Complex w = std::polar(0.9995, 2.0 * M_PI * k / 64.0);
        min_ring = std::min(min_ring, std::abs(theta.evaluate(w)));
    }
    CHECK(min_ring > 0.9);
}

TEST_CASE("polynomial roots via the companion matrix") {
    // (z - 0.5)(z - (0.2 + 0.3i))(z - 2) expanded.
    const Complex r1{0.5, 0}, r2{0.2, 0.3}, r3{2, 0};
    CoeffSeries p{{Complex{1, 0}}};
    for (const Complex r : {r1, r2, r3}) p = mul_series(p, CoeffSeries{{-r, Complex{1, 0}}});
    auto roots = polynomial_roots(p.coeffs());
    REQUIRE(roots.size() == 3);
    for (const Complex expected : {r1, r2, r3}) {
        double best = 1e9;
        for (const Complex r : roots) best = std::min(best, std::abs(r - expected));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("inner part of a polynomial") {
    SUBCASE("pure monomial") {
        auto [theta, outer] = inner_part_of_polynomial(CoeffSeries::monomial(3));
        CHECK(theta.monomial_power() == 3);
        CHECK(theta.blaschke_zeros().empty());
        CHECK(outer.effective_degree() == 0);
        CHECK(std::abs(outer[0] - Complex{1, 0}) < 1e-12);
    }
    SUBCASE("outer polynomial stays outer") {
        auto [theta, outer] = inner_part_of_polynomial(CoeffSeries{{Complex{2, 0}, Complex{-1, 0}}});
        CHECK(theta.monomial_power() == 0);
        CHECK(theta.blaschke_zeros().empty());
        CHECK(sub(outer, CoeffSeries{{Complex{2, 0}, Complex{-1, 0}}}).norm() < 1e-12);
    }
    SUBCASE("mixed factorization recomposes") {
        // q = z^2 (z - 0.4)(2 - z): inside zero 0.4, outside root 2.
        CoeffSeries q = mul_series(CoeffSeries{{Complex{-0.4, 0}, Complex{1, 0}}},
                                   CoeffSeries{{Complex{2, 0}, Complex{-1, 0}}});
        q = q.shifted_up(2);
        auto [theta, outer] = inner_part_of_polynomial(q);
        CHECK(theta.monomial_power() == 2);
        REQUIRE(theta.blaschke_zeros().size() == 1);
        CHECK(std::abs(theta.blaschke_zeros()[0] - Complex{0.4, 0}) < 1e-10);
        // outer has no zeros in the closed disk interior.
        for (const Complex root : polynomial_roots(outer.truncated(outer.effective_degree()).coeffs()))
            CHECK(std::abs(root) > 1.0);
        // q == theta * outer.
        const CoeffSeries recomposed = mul_series(theta.taylor_coeffs(q.order() + 8), outer);
        CHECK(sub(recomposed.truncated(q.order()), q).norm() < 1e-10);
    }
    SUBCASE("re-extraction is idempotent") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> radius(0.1, 0.85);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Complex> zeros = {std::polar(radius(rng), angle(rng)),
                                          std::polar(radius(rng), angle(rng))};
            CoeffSeries q{{Complex{1, 0}}};
            for (const Complex a : zeros) q = mul_series(q, CoeffSeries{{-a, Complex{1, 0}}});
            q = mul_series(q, CoeffSeries{{Complex{1.5, 0}, Complex{1, 0}}});  // outer factor
            auto [theta, outer] = inner_part_of_polynomial(q);
            const CoeffSeries recomposed =
                mul_series(theta.taylor_coeffs(q.order() + 16), outer).truncated(q.order());
            auto [theta2, outer2] = inner_part_of_polynomial(recomposed.truncated(q.order()));
            CHECK(same_inner_up_to_unimodular(theta, theta2, 1e-8));
        }
    }
    SUBCASE("zero polynomial is rejected") {
        CHECK_THROWS_AS(inner_part_of_polynomial(CoeffSeries::zero(4)), ZeroPolynomial);
    }
    SUBCASE("boundary roots are refused, not classified") {
        const CoeffSeries q{{Complex{-1.0, 0}, Complex{1, 0}}};  // root at 1
        CHECK_THROWS_AS(inner_part_of_polynomial(q), BoundaryRoot);
    }
}
