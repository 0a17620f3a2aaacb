#include <gtest/gtest.h>

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <random>

#include "fade/errors.hpp"
#include "fade/legendre_basis.hpp"
#include "fade/quadrature.hpp"

namespace fade {
namespace {

TEST(LegendreBasis, Orthonormality) {
    const BasisSet basis(15);
    const auto& rule = gauss_legendre_01(64);
    double worst = 0.0;
    for (int i = 0; i <= 15; ++i) {
        for (int j = 0; j <= 15; ++j) {
            const double inner = rule.integrate([&](double x) { return basis.evaluate(i, x) * basis.evaluate(j, x); });
            worst = std::max(worst, std::abs(inner - (i == j ? 1.0 : 0.0)));
        }
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(LegendreBasis, RecurrenceMatchesMonomialExpansion) {
    const BasisSet basis(kMaxBasisIndex);
    for (int i = 0; i <= 12; ++i) {
        for (int q = 0; q <= 200; ++q) {
            const double x = q / 200.0;
            EXPECT_NEAR(basis.evaluate(i, x), basis.evaluate_monomial(i, x), 1e-9) << "i " << i << " x " << x;
        }
    }
    for (int i = 13; i <= kMaxBasisIndex; ++i) {
        for (double x : {0.0, 0.123, 0.5, 0.87, 1.0}) {
            EXPECT_NEAR(basis.evaluate(i, x), basis.evaluate_monomial(i, x), 1e-9);
        }
    }
}

TEST(LegendreBasis, MatchesBoostLegendre) {
    const BasisSet basis(20);
    for (int i = 0; i <= 20; ++i) {
        for (double x : {0.0, 0.05, 0.31, 0.5, 0.77, 1.0}) {
            const double expected = std::sqrt(2.0 * i + 1.0) * boost::math::legendre_p(i, 2.0 * x - 1.0);
            EXPECT_NEAR(basis.evaluate(i, x), expected, 1e-12);
        }
    }
}

TEST(LegendreBasis, KnownFunctions) {
    const BasisSet basis(7);
    for (double x : {0.0, 0.2, 0.9}) {
        EXPECT_DOUBLE_EQ(basis.evaluate(0, x), 1.0);
        EXPECT_NEAR(basis.evaluate(1, x), std::sqrt(3.0) * (2 * x - 1), 1e-15);
        EXPECT_NEAR(basis.evaluate(2, x), std::sqrt(5.0) * (6 * x * x - 6 * x + 1), 1e-14);
    }
    EXPECT_NEAR(basis.evaluate(7, 1.0), std::sqrt(15.0), 1e-13);
    EXPECT_NEAR(basis.evaluate(7, 0.0), -std::sqrt(15.0), 1e-13);
    const auto c2 = basis.monomial_coefficients(2);
    ASSERT_EQ(c2.size(), 3u);
    EXPECT_NEAR(c2[0], std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(c2[1], -6 * std::sqrt(5.0), 1e-14);
    EXPECT_NEAR(c2[2], 6 * std::sqrt(5.0), 1e-14);
}

TEST(LegendreBasis, IntegerCoefficientsAreExact) {
    const BasisSet basis(32);
    const auto& c = basis.integer_coefficients(32);
    // (64)!/(0! (32!)^2) = C(64,32)
    EXPECT_EQ(c.back(), wide_real("1832624140942590534"));
    EXPECT_EQ(c.front(), wide_real(1));
    const auto& c3 = basis.integer_coefficients(3);
    EXPECT_EQ(c3[0], wide_real(-1));
    EXPECT_EQ(c3[1], wide_real(12));
    EXPECT_EQ(c3[2], wide_real(-30));
    EXPECT_EQ(c3[3], wide_real(20));
}

TEST(LegendreBasis, EvaluateAllAgreesWithSingleEvaluation) {
    const BasisSet basis(9);
    const auto all = basis.evaluate_all(0.37);
    ASSERT_EQ(all.size(), 10);
    for (int i = 0; i <= 9; ++i) EXPECT_DOUBLE_EQ(all(i), basis.evaluate(i, 0.37));
}

TEST(LegendreBasis, ErrorCases) {
    EXPECT_THROW(BasisSet(-1), DomainError);
    EXPECT_THROW(BasisSet(kMaxBasisIndex + 1), DomainError);
    const BasisSet basis(3);
    EXPECT_THROW(basis.evaluate(4, 0.5), DomainError);
    EXPECT_THROW(basis.evaluate(1, 1.5), DomainError);
    EXPECT_THROW(basis.evaluate(1, -0.1), DomainError);
    EXPECT_THROW(CoefficientVector::unit(3, 5), DomainError);
}

TEST(Moments, MatchQuadrature) {
    const auto& rule = gauss_legendre_01(64);
    for (double mu : {0.0, 1.0, 2.5, 4.0, 7.25}) {
        const auto m = legendre_moments(mu, 10);
        for (int j = 0; j <= 10; ++j) {
            const double expected = rule.integrate([&](double x) {
                return std::pow(x, mu) * std::sqrt(2.0 * j + 1.0) * boost::math::legendre_p(j, 2 * x - 1);
            });
            EXPECT_NEAR(m[j], expected, 1e-12) << "mu " << mu << " j " << j;
        }
    }
    const auto integer = legendre_moments(3.0, 8);
    for (int j = 4; j <= 8; ++j) EXPECT_EQ(integer[j], 0.0);
}

TEST(Moments, SingularExponentAgainstGaussJacobi) {
    for (double mu : {-0.5, -0.25, 0.5}) {
        const auto rule = gauss_jacobi_01(40, 0.0, mu);
        const auto m = legendre_moments(mu, 8);
        for (int j = 0; j <= 8; ++j) {
            const double expected = rule.integrate([&](double x) {
                return std::sqrt(2.0 * j + 1.0) * boost::math::legendre_p(j, 2 * x - 1);
            });
            EXPECT_NEAR(m[j], expected, 1e-12);
        }
    }
}

TEST(Projection, KnownExpansions) {
    const auto sq = project(GeneralizedPolynomial::monomial(1.0, 2.0), 3);
    EXPECT_NEAR(sq[0], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(sq[1], std::sqrt(3.0) / 6.0, 1e-15);
    EXPECT_NEAR(sq[2], std::sqrt(5.0) / 30.0, 1e-15);
    EXPECT_NEAR(sq[3], 0.0, 1e-15);

    const auto lin = project(GeneralizedPolynomial::monomial(1.0, 1.0), 2);
    EXPECT_NEAR(lin[0], 0.5, 1e-15);
    EXPECT_NEAR(lin[1], std::sqrt(3.0) / 6.0, 1e-15);
    EXPECT_NEAR(lin[2], 0.0, 1e-15);

    const auto e = project([](double x) { return std::exp(-x); }, 0);
    EXPECT_NEAR(e[0], 1.0 - std::exp(-1.0), 1e-14);
}

TEST(Projection, NumericAndExactPathsAgree) {
    const GeneralizedPolynomial p({{1.0, 0.0}, {-2.0, 1.0}, {0.5, 3.0}, {0.25, 7.0}});
    const auto exact = project(p, 10);
    const auto numeric = project([&](double x) { return p(x); }, 10);
    for (int i = 0; i <= 10; ++i) EXPECT_NEAR(exact[i], numeric[i], 1e-14);
}

TEST(Projection, ReproducesBasisPolynomials) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const BasisSet basis(8);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd c(9);
        for (int i = 0; i <= 8; ++i) c(i) = coef(rng);
        const CoefficientVector cv(c);
        const auto back = project([&](double x) { return synthesize(cv, x); }, 8);
        for (int i = 0; i <= 8; ++i) EXPECT_NEAR(back[i], c(i), 1e-13);
        EXPECT_NEAR(synthesize(cv, 0.3), c.dot(basis.evaluate_all(0.3)), 1e-13);
    }
}

TEST(Projection, NonConvergentQuadratureIsReported) {
    EXPECT_THROW(project([](double x) { return std::sin(400.0 * x); }, 4), NumericalError);
    EXPECT_THROW(project([](double x) { return x; }, 40), DomainError);
}

}  // namespace
}  // namespace fade
