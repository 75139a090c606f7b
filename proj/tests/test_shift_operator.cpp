#include "shiftlab/shift_operator.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "shiftlab/krylov.hpp"

using namespace shiftlab;

namespace {

ParamPair random_pair(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.05, 0.95);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const double x = mag(rng);
    return ParamPair(std::polar(std::sqrt(x), angle(rng)),
                     std::polar(std::sqrt(1.0 - x), angle(rng)));
}

AbCoords random_coords(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    AbCoords v = AbCoords::zero(dim);
    v.c0 = Complex{unit(rng), unit(rng)};
    for (Complex& d : v.tail) d = Complex{unit(rng), unit(rng)};
    return v;
}

const ParamPair kHalf{Complex{1.0 / std::sqrt(2.0), 0}, Complex{1.0 / std::sqrt(2.0), 0}};

}  // namespace

TEST_CASE("pair validation") {
    CHECK_THROWS_AS(ParamPair(Complex{1, 0}, Complex{0, 0}), DomainError);
    CHECK_THROWS_AS(ParamPair(Complex{0.5, 0}, Complex{0.5, 0}), DomainError);
    CHECK_NOTHROW(ParamPair::normalized(Complex{0.70710678, 0}, Complex{0.70710678, 0}));
    CHECK_THROWS_AS(ParamPair::normalized(Complex{0.4, 0}, Complex{0.4, 0}), DomainError);
    const ParamPair p = ParamPair::from_alpha_sq(0.8);
    CHECK(std::abs(p.ab_bar() - Complex{0.4, 0}) < 1e-14);
    CHECK(std::abs(std::abs(p.ab_bar()) - std::abs(p.alpha()) * std::abs(p.beta())) < 1e-14);
    CHECK(std::abs(p.ab_bar()) <= 0.5 + 1e-14);
}

TEST_CASE("shift action on the basis") {
    const AbCoords f0 = AbCoords::basis(16, 0);
    const AbCoords sf0 = apply(kHalf, f0);
    CHECK(std::abs(sf0.c0 - Complex{0.5, 0}) < 1e-15);
    CHECK(std::abs(sf0.tail[0] - kHalf.beta()) < 1e-15);
    for (std::size_t k = 1; k < sf0.tail.size(); ++k) CHECK(std::abs(sf0.tail[k]) == 0.0);

    const AbCoords z2 = AbCoords::basis(16, 1);
    const AbCoords sz2 = apply(kHalf, z2);
    CHECK(std::abs(sz2.c0) == 0.0);
    CHECK(std::abs(sz2.tail[1] - Complex{1, 0}) < 1e-15);

    // ||S f0||^2 = |alpha beta|^2 + |beta|^2 exactly.
    CHECK(std::abs(sf0.norm_sq() - kHalf.gram_entry()) < 1e-15);
}

TEST_CASE("vectors without f0 component follow the plain Hardy shift") {
    std::mt19937_64 rng(23);
    AbCoords v = random_coords(rng, 32);
    v.c0 = Complex{};
    const AbCoords sv = apply(kHalf, v);
    CHECK(std::abs(sv.c0) == 0.0);
    CHECK(std::abs(sv.tail[0]) == 0.0);
    for (std::size_t k = 1; k < sv.tail.size(); ++k)
        CHECK(std::abs(sv.tail[k] - v.tail[k - 1]) < 1e-15);
}

TEST_CASE("adjoint matches the defining property") {
    std::mt19937_64 rng(31);
    const ParamPair pair = random_pair(rng);
    const AbCoords f0 = AbCoords::basis(8, 0);
    const AbCoords z2 = AbCoords::basis(8, 1);
    CHECK(sub(apply_adjoint(pair, f0),
              scale(f0, std::conj(pair.alpha()) * pair.beta()))
              .norm() < 1e-15);
    CHECK(sub(apply_adjoint(pair, z2), scale(f0, std::conj(pair.beta()))).norm() < 1e-15);

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const ParamPair p = random_pair(rng);
        AbCoords u = random_coords(rng, 64), v = random_coords(rng, 64);
        u.tail.back() = Complex{};  // keep S u inside the truncation
        worst = std::max(worst, std::abs(inner_product(apply(p, u), v) -
                                         inner_product(u, apply_adjoint(p, v))));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("kernel of the adjoint") {
    std::mt19937_64 rng(37);
    SUBCASE("explicit form at the symmetric pair") {
        const AbCoords k = kernel_adjoint(kHalf, 8);
        // normalize(f0 - (1/sqrt 2) z^2)
        const double scale = 1.0 / std::sqrt(1.5);
        CHECK(std::abs(k.c0 - Complex{scale, 0}) < 1e-14);
        CHECK(std::abs(k.tail[0] - Complex{-scale / std::sqrt(2.0), 0}) < 1e-14);
    }
    SUBCASE("annihilated by the adjoint and orthogonal to the range") {
        for (int trial = 0; trial < 20; ++trial) {
            const ParamPair pair = random_pair(rng);
            const AbCoords k = kernel_adjoint(pair, 32);
            CHECK(std::abs(k.norm() - 1.0) < 1e-14);
            CHECK(apply_adjoint(pair, k).norm() < 1e-13);
            const AbCoords v = random_coords(rng, 32);
            CHECK(std::abs(inner_product(k, apply(pair, v))) < 1e-13);
        }
    }
}

TEST_CASE("matrix truncations match the closed forms") {
    std::mt19937_64 rng(41);
    const ParamPair pair = random_pair(rng);
    const int dim = 12;
    const Complex ab = pair.ab_bar();

    const Eigen::MatrixXcd s = matrix(pair, OperatorKind::Shift, dim).entries;
    CHECK(std::abs(s(0, 0) - ab) < 1e-15);
    CHECK(std::abs(s(1, 0) - pair.beta()) < 1e-15);
    for (int k = 1; k + 1 < dim; ++k) CHECK(std::abs(s(k + 1, k) - Complex{1, 0}) < 1e-15);

    // Matrix application agrees with the coordinate action.
    const AbCoords v = random_coords(rng, dim);
    CHECK((s * v.to_vector() - apply(pair, v).to_vector()).norm() < 1e-13);
    CHECK((s.adjoint() * v.to_vector() - apply_adjoint(pair, v).to_vector()).norm() < 1e-13);

    const Eigen::MatrixXcd gram = matrix(pair, OperatorKind::Gram, dim).entries;
    Eigen::MatrixXcd gram_expected = Eigen::MatrixXcd::Identity(dim, dim);
    gram_expected(0, 0) = Complex{pair.gram_entry(), 0};
    CHECK((gram - gram_expected).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(pair.gram_entry() > 0.0);  // left invertibility

    const Eigen::MatrixXcd dl = matrix(pair, OperatorKind::DefectLeft, dim).entries;
    Eigen::MatrixXcd dl_expected = Eigen::MatrixXcd::Zero(dim, dim);
    dl_expected(0, 0) = Complex{pair.alpha_sq() * pair.alpha_sq(), 0};
    CHECK((dl - dl_expected).cwiseAbs().maxCoeff() < 1e-15);

    const Eigen::MatrixXcd dr = matrix(pair, OperatorKind::DefectRight, dim).entries;
    Eigen::MatrixXcd dr_expected = Eigen::MatrixXcd::Zero(dim, dim);
    dr_expected(0, 0) = 1.0 - std::norm(ab);
    dr_expected(0, 1) = -pair.alpha() * std::conj(pair.beta()) * std::conj(pair.beta());
    dr_expected(1, 0) = -std::conj(pair.alpha()) * pair.beta() * pair.beta();
    dr_expected(1, 1) = Complex{pair.alpha_sq(), 0};
    CHECK((dr - dr_expected).cwiseAbs().maxCoeff() < 1e-14);

    const Eigen::MatrixXcd cd = matrix(pair, OperatorKind::CauchyDual, dim).entries;
    CHECK(std::abs(cd(0, 0) - ab / pair.gram_entry()) < 1e-14);
    CHECK(std::abs(cd(1, 0) - pair.beta() / pair.gram_entry()) < 1e-14);
    CHECK(std::abs(cd(2, 1) - Complex{1, 0}) < 1e-15);

    CHECK_THROWS_AS(matrix(pair, OperatorKind::Shift, 3), DomainError);
    CHECK_THROWS_AS(operator_kind_from_string("spectral-radius"), UnsupportedSelector);
}

TEST_CASE("second-power defect corner block") {
    const ParamPair pair = ParamPair::from_alpha_sq(0.6);
    const Complex a = pair.alpha(), b = pair.beta(), ab = pair.ab_bar();
    const double b2 = pair.beta_sq();
    const Eigen::MatrixXcd d = power_defect_matrix(pair, 2, 10).entries;
    CHECK(std::abs(d(0, 0) - (1.0 - std::pow(std::abs(ab), 4))) < 1e-14);
    CHECK(std::abs(d(0, 1) - (-std::conj(a) * b2 * ab * ab)) < 1e-14);
    CHECK(std::abs(d(0, 2) - (-std::conj(b) * ab * ab)) < 1e-14);
    CHECK(std::abs(d(1, 1) - (1.0 - pair.alpha_sq() * b2 * b2)) < 1e-14);
    CHECK(std::abs(d(1, 2) - (-a * b2 * std::conj(b))) < 1e-14);
    CHECK(std::abs(d(2, 2) - (1.0 - b2)) < 1e-14);
    CHECK(std::abs(d(2, 0) - (-b * std::conj(ab) * std::conj(ab))) < 1e-14);
    // Banded: zero beyond the (m+1) x (m+1) corner.
    CHECK(d.bottomRightCorner(7, 7).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("closed-form powers agree with repeated application") {
    std::mt19937_64 rng(43);
    SUBCASE("small powers at the symmetric pair") {
        const AbCoords p1 = power_on_f0(kHalf, 1, 8);
        CHECK(std::abs(p1.c0 - Complex{0.5, 0}) < 1e-15);
        CHECK(std::abs(p1.tail[0] - kHalf.beta()) < 1e-15);

        const AbCoords p2 = power_on_f0(kHalf, 2, 8);
        CHECK(std::abs(p2.c0 - Complex{0.25, 0}) < 1e-15);
        CHECK(std::abs(p2.tail[0] - kHalf.beta() * Complex{0.5, 0}) < 1e-15);
        CHECK(std::abs(p2.tail[1] - kHalf.beta()) < 1e-15);
    }
    SUBCASE("n = 5 against the apply oracle") {
        AbCoords iterated = AbCoords::basis(16, 0);
        for (int k = 0; k < 5; ++k) iterated = apply(kHalf, iterated);
        CHECK(sub(power_on_f0(kHalf, 5, 16), iterated).norm() < 1e-13);
    }
    SUBCASE("random pairs up to n = 12") {
        for (int trial = 0; trial < 10; ++trial) {
            const ParamPair pair = random_pair(rng);
            AbCoords iterated = AbCoords::basis(16, 0);
            for (int n = 1; n <= 12; ++n) {
                iterated = apply(pair, iterated);
                CHECK(sub(power_on_f0(pair, n, 16), iterated).norm() < 1e-12);
            }
        }
    }
    SUBCASE("overflow is reported") {
        CHECK_THROWS_AS(power_on_f0(kHalf, 8, 8), TruncationOverflow);
    }
}

TEST_CASE("hyponormality at truncation") {
    CHECK(hyponormality_check(kHalf, 32) >= -1e-10);
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(hyponormality_check(random_pair(rng), 64) >= -1e-10);

    // Self-commutator trace: 1 - |ab|^2 - |alpha|^4 + |alpha|^2 (equals 1).
    const ParamPair pair = ParamPair::from_alpha_sq(0.7);
    const Eigen::MatrixXcd c = matrix(pair, OperatorKind::SelfCommutator, 16).entries;
    const double expected_trace = 1.0 - std::norm(pair.ab_bar()) -
                                  pair.alpha_sq() * pair.alpha_sq() + pair.alpha_sq();
    CHECK(std::abs(c.trace().real() - expected_trace) < 1e-14);
    CHECK(std::abs(expected_trace - 1.0) < 1e-14);
}

TEST_CASE("cauchy dual kernel orbit fills the space") {
    SUBCASE("witness residual decays") {
        CHECK(analyticity_witness(kHalf, 128) < 1e-6);
    }
    SUBCASE("first orbit step is proportional to z^2 (1/(conj(alpha) beta) - z)") {
        std::mt19937_64 rng(53);
        const ParamPair pair = random_pair(rng);
        const int dim = 16;
        const AbCoords f2 = kernel_adjoint(pair, dim);
        const AbCoords step = sub(apply_cauchy_dual(pair, f2),
                                  scale(f2, pair.ab_bar() / pair.gram_entry()));
        CHECK(std::abs(step.c0) < 1e-13);
        const Complex pole = 1.0 / (std::conj(pair.alpha()) * pair.beta());
        CHECK(std::abs(pole) >= 2.0 - 1e-12);  // |ab| <= 1/2 forces an outer generator
        // step = const * (pole * z^2 - z^3)
        const Complex ratio = step.tail[0] / pole;
        CHECK(std::abs(step.tail[1] + ratio) < 1e-13);
        for (std::size_t k = 2; k < step.tail.size(); ++k) CHECK(std::abs(step.tail[k]) < 1e-13);
    }
}

TEST_CASE("unitary equivalence") {
    SUBCASE("phase rotations are equivalent with a verified certificate") {
        const Complex phase = std::polar(1.0, 1.234);
        const ParamPair rotated(phase * kHalf.alpha(), phase * kHalf.beta());
        const EquivalenceReport rep = unitary_equivalence(kHalf, rotated);
        CHECK(rep.equivalent);
        REQUIRE(rep.certificate.has_value());
        CHECK(rep.certificate->conjugation_residual < 1e-12);
        CHECK(std::abs(rep.certificate->t - phase) < 1e-12);
        CHECK(rep.proportional);
        CHECK(std::abs(rep.proportionality_factor - phase) < 1e-12);
    }
    SUBCASE("different moduli are inequivalent and the defect invariant differs") {
        const ParamPair other = ParamPair::from_alpha_sq(0.9);
        const EquivalenceReport rep = unitary_equivalence(kHalf, other);
        CHECK_FALSE(rep.equivalent);
        CHECK_FALSE(rep.certificate.has_value());
        CHECK(std::abs(rep.defect_invariant_1 - 0.25) < 1e-12);
        CHECK(std::abs(rep.defect_invariant_2 - 0.81) < 1e-12);
    }
    SUBCASE("matching moduli with incompatible phases are inequivalent") {
        const ParamPair twisted(std::polar(1.0 / std::sqrt(2.0), 0.3),
                                Complex{1.0 / std::sqrt(2.0), 0});
        const EquivalenceReport rep = unitary_equivalence(kHalf, twisted);
        CHECK_FALSE(rep.equivalent);
    }
}

TEST_CASE("restriction to a proper model subspace is not an isometry") {
    // M' spanned by f/delta and z^(n+3): f = f0 + (beta/ab) z^2,
    // delta^2 = 1 + 1/|alpha|^2. The restricted operator maps the unit
    // vector f/delta to a vector of norm (|ab|^2 + 1/(1+|alpha|^2))^(1/2),
    // which is strictly below 1 for every admissible pair.
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        const ParamPair pair = random_pair(rng);
        AbCoords f = AbCoords::basis(16, 0);
        f.tail[0] = pair.beta() / pair.ab_bar();
        const double delta_sq = 1.0 + 1.0 / pair.alpha_sq();
        CHECK(std::abs(f.norm_sq() - delta_sq) < 1e-12);
        const double ratio_sq = apply(pair, f).norm_sq() / delta_sq;
        const double expected = std::norm(pair.ab_bar()) + 1.0 / (1.0 + pair.alpha_sq());
        CHECK(std::abs(ratio_sq - expected) < 1e-12);
        CHECK(ratio_sq < 1.0);  // hence no isometry on the restriction
    }
}

TEST_CASE("series and coordinate conversions round-trip") {
    std::mt19937_64 rng(61);
    const ParamPair pair = random_pair(rng);
    const AbCoords v = random_coords(rng, 24);
    const CoeffSeries s = coords_to_series(pair, v);
    const AbCoords back = series_to_coords(pair, s);
    CHECK(sub(back, v).norm() < 1e-13);

    CoeffSeries off = s;
    off[0] += Complex{0.2, 0};  // leaves the parametric subspace
    CHECK_THROWS_AS(series_to_coords(pair, off), DomainError);
}
