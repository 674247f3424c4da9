#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "henon_atlas/polynomial.hpp"

using namespace henon;

namespace {

// Direct monomial sum, independent of the power-table evaluation.
double naive(const std::vector<Term>& terms, double y, double z) {
    double s = 0.0;
    for (const auto& t : terms) s += t.coeff * std::pow(y, t.i) * std::pow(z, t.j);
    return s;
}

BivariatePolynomial random_poly(std::mt19937_64& rng, int max_degree, int min_degree = 0) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::vector<Term> terms;
    for (int k = 0; k < 6; ++k) {
        int i = deg(rng), j = deg(rng);
        if (i + j > max_degree || i + j < min_degree) continue;
        terms.push_back({i, j, coeff(rng)});
    }
    return BivariatePolynomial(terms);
}

} // namespace

TEST(Polynomial, DuplicatesAreSummedAndZerosDropped) {
    BivariatePolynomial p{{2, 0, 1.5}, {2, 0, -1.5}, {0, 2, 2.0}, {0, 2, 1.0}, {1, 1, 0.0}};
    ASSERT_EQ(p.terms().size(), 1u);
    EXPECT_EQ(p.coefficient(0, 2), 3.0);
    EXPECT_EQ(p.coefficient(2, 0), 0.0);
    EXPECT_EQ(p.degree(), 2);
}

TEST(Polynomial, RejectsBadTerms) {
    EXPECT_THROW(BivariatePolynomial({{-1, 2, 1.0}}), InvalidPolynomial);
    EXPECT_THROW(BivariatePolynomial({{1, 2, NAN}}), InvalidPolynomial);
    EXPECT_THROW(BivariatePolynomial({{20, 20, 1.0}}), InvalidPolynomial);
}

TEST(Polynomial, EvaluateMatchesMonomialSum) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_poly(rng, 4);
        double y = u(rng), z = u(rng);
        EXPECT_NEAR(p(y, z), naive(p.terms(), y, z), 1e-12 * (1.0 + std::abs(naive(p.terms(), y, z))));
    }
}

TEST(Polynomial, GradientMatchesCentralDifferences) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const double h = 1e-5;
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_poly(rng, 4);
        double y = u(rng), z = u(rng);
        PolyValue v = p.evaluate(y, z);
        double dy = (naive(p.terms(), y + h, z) - naive(p.terms(), y - h, z)) / (2 * h);
        double dz = (naive(p.terms(), y, z + h) - naive(p.terms(), y, z - h)) / (2 * h);
        EXPECT_NEAR(v.d_dy, dy, 1e-6 * (1.0 + std::abs(dy)));
        EXPECT_NEAR(v.d_dz, dz, 1e-6 * (1.0 + std::abs(dz)));
    }
}

TEST(Polynomial, ShiftIsTranslation) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_poly(rng, 5);
        double y0 = u(rng), z0 = u(rng);
        auto q = p.shifted(y0, z0);
        for (int k = 0; k < 5; ++k) {
            double a = u(rng), b = u(rng);
            double expect = p(y0 + a, z0 + b);
            EXPECT_NEAR(q(a, b), expect, 1e-11 * (1.0 + std::abs(expect)));
        }
    }
}

TEST(PolyNonlinearity, RejectsLowDegreeTerms) {
    EXPECT_THROW(PolyNonlinearity({{0, 0, 1.0}}), InvalidPolynomial);
    EXPECT_THROW(PolyNonlinearity({{1, 0, 1.0}}), InvalidPolynomial);
    EXPECT_THROW(PolyNonlinearity({{0, 1, 1.0}, {0, 2, 1.0}}), InvalidPolynomial);
    EXPECT_NO_THROW(PolyNonlinearity({{1, 1, 1.0}}));
    // a low-degree term that cancels to zero is not stored
    EXPECT_NO_THROW(PolyNonlinearity({{1, 0, 1.0}, {1, 0, -1.0}, {2, 0, 1.0}}));
}

TEST(PolyNonlinearity, ValueAndGradientVanishAtOrigin) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        PolyNonlinearity f(random_poly(rng, 5, 2));
        PolyValue v = f.evaluate(0.0, 0.0);
        EXPECT_EQ(v.value, 0.0);
        EXPECT_EQ(v.d_dy, 0.0);
        EXPECT_EQ(v.d_dz, 0.0);
    }
}

TEST(PolyNonlinearity, ToStringListsTerms) {
    PolyNonlinearity f{{0, 2, -1.0}, {1, 1, 0.515}};
    std::string s = f.to_string();
    EXPECT_NE(s.find("y*z"), std::string::npos);
    EXPECT_NE(s.find("z^2"), std::string::npos);
    EXPECT_EQ(PolyNonlinearity{}.to_string(), "0");
}
