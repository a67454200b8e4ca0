#include "qam/quaternion.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace qam {
namespace {

Quaternion random_quaternion(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return {dist(rng), dist(rng), dist(rng), dist(rng)};
}

Quaternion random_unit_quaternion(std::mt19937_64& rng) {
    Quaternion q;
    do {
        q = random_quaternion(rng);
    } while (norm(q) < 1e-3);
    return sigma(q);
}

// components on a dyadic grid so products round to nothing
Quaternion random_dyadic_quaternion(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(-8, 8);
    return {dist(rng) / 4.0, dist(rng) / 4.0, dist(rng) / 4.0, dist(rng) / 4.0};
}

TEST(Quaternion, AdditionIsComponentwise) {
    EXPECT_EQ(Quaternion(1, 0, 0, 0) + Quaternion(0, 1, 0, 0), Quaternion(1, 1, 0, 0));
    const Quaternion q{3.5, -1.25, 0.5, 2.0};
    EXPECT_EQ(q + Quaternion{}, q);
    EXPECT_EQ(Quaternion(1, 2, 3, 4) + Quaternion(-1, -2, -3, -4), Quaternion(0, 0, 0, 0));
}

TEST(Quaternion, HamiltonProductUnits) {
    EXPECT_EQ(kQuatI * kQuatJ, kQuatK);
    EXPECT_EQ(kQuatJ * kQuatI, -kQuatK);  // non-commutativity witness
    EXPECT_EQ(kQuatJ * kQuatK, kQuatI);
    EXPECT_EQ(kQuatK * kQuatI, kQuatJ);
    EXPECT_EQ(kQuatI * kQuatI, Quaternion::real(-1.0));
    EXPECT_EQ(kQuatI * kQuatJ * kQuatK, Quaternion::real(-1.0));
}

TEST(Quaternion, HamiltonProductExpansion) {
    // (1+i)(1+j) = 1 + i + j + k
    const Quaternion p{1, 1, 0, 0};
    const Quaternion q{1, 0, 1, 0};
    EXPECT_EQ(p * q, Quaternion(1, 1, 1, 1));
}

TEST(Quaternion, ProductWithConjugateGivesSquaredNorm) {
    const Quaternion q{1, 1, 1, 1};
    EXPECT_EQ(q * conj(q), Quaternion::real(4.0));
}

TEST(Quaternion, Conjugate) {
    EXPECT_EQ(conj(Quaternion(1, 2, 3, 4)), Quaternion(1, -2, -3, -4));
    const Quaternion q{0.5, -1.5, 2.5, -3.5};
    EXPECT_EQ(conj(conj(q)), q);
    EXPECT_EQ(conj(Quaternion::real(5.0)), Quaternion::real(5.0));
}

TEST(Quaternion, Norm) {
    EXPECT_DOUBLE_EQ(norm(Quaternion(1, 1, 1, 1)), 2.0);
    EXPECT_DOUBLE_EQ(norm(Quaternion{}), 0.0);
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        Quaternion q = random_quaternion(rng);
        if (norm(q) == 0.0) continue;
        EXPECT_NEAR(norm(sigma(q)), 1.0, 1e-12);
    }
}

TEST(Quaternion, SigmaNormalizes) {
    EXPECT_EQ(sigma(Quaternion::real(2.0)), Quaternion::real(1.0));
    const Quaternion s = sigma(Quaternion(1, 1, 1, 1));
    EXPECT_TRUE(approx_equal(s, Quaternion(0.5, 0.5, 0.5, 0.5), 1e-15));
}

TEST(Quaternion, SigmaRejectsZeroAndNonFinite) {
    EXPECT_THROW(sigma(Quaternion{}), std::domain_error);
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(sigma(Quaternion(inf, 0, 0, 0)), std::domain_error);
    EXPECT_THROW(sigma(Quaternion(0, nan, 0, 0)), std::domain_error);
    // components finite but norm overflows
    EXPECT_THROW(sigma(Quaternion(1e308, 1e308, 0, 0)), std::domain_error);
}

TEST(Quaternion, InnerOfUnitVectorWithItself) {
    std::mt19937_64 rng(12);
    QuaternionVector x(7);
    for (Quaternion& q : x) q = random_unit_quaternion(rng);
    const Quaternion self = inner(x, x);
    EXPECT_TRUE(approx_equal(self, Quaternion::real(7.0), 1e-12));
}

TEST(Quaternion, InnerConjugatesSecondArgument) {
    // <[i], [j]> = conj(j) i = k
    EXPECT_EQ(inner({kQuatI}, {kQuatJ}), kQuatK);
}

TEST(Quaternion, InnerRealPartIsConcatenatedDotProduct) {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        QuaternionVector x(5), y(5);
        for (Quaternion& q : x) q = random_quaternion(rng);
        for (Quaternion& q : y) q = random_quaternion(rng);
        double dot = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            dot += x[i].w * y[i].w + x[i].x * y[i].x + x[i].y * y[i].y + x[i].z * y[i].z;
        }
        EXPECT_NEAR(inner(x, y).w, dot, 1e-12);
    }
}

TEST(Quaternion, InnerRejectsLengthMismatch) {
    EXPECT_THROW(inner({kQuatI}, {kQuatI, kQuatJ}), std::invalid_argument);
}

TEST(QuaternionProperties, Associativity) {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 1000; ++rep) {
        const Quaternion a = random_unit_quaternion(rng);
        const Quaternion b = random_unit_quaternion(rng);
        const Quaternion c = random_unit_quaternion(rng);
        EXPECT_TRUE(approx_equal((a * b) * c, a * (b * c), 1e-12));
    }
}

TEST(QuaternionProperties, NormIsMultiplicative) {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 1000; ++rep) {
        const Quaternion p = random_quaternion(rng);
        const Quaternion q = random_quaternion(rng);
        const double lhs = norm(p * q);
        const double rhs = norm(p) * norm(q);
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, rhs));
    }
}

TEST(QuaternionProperties, ConjugateReversesProducts) {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 1000; ++rep) {
        const Quaternion p = random_dyadic_quaternion(rng);
        const Quaternion q = random_dyadic_quaternion(rng);
        EXPECT_EQ(conj(p * q), conj(q) * conj(p));
    }
}

TEST(QuaternionProperties, SigmaIsIdempotent) {
    std::mt19937_64 rng(24);
    for (int rep = 0; rep < 1000; ++rep) {
        Quaternion q = random_quaternion(rng);
        if (norm(q) < 1e-6) continue;
        const Quaternion s = sigma(q);
        EXPECT_TRUE(approx_equal(sigma(s), s, 1e-12));
    }
}

TEST(QuaternionProperties, InnerHermitianSymmetry) {
    std::mt19937_64 rng(25);
    for (int rep = 0; rep < 200; ++rep) {
        QuaternionVector x(9), y(9);
        for (Quaternion& q : x) q = random_quaternion(rng);
        for (Quaternion& q : y) q = random_quaternion(rng);
        EXPECT_TRUE(approx_equal(inner(x, y), conj(inner(y, x)), 1e-12));
    }
}

TEST(QuaternionVectorOps, MaxComponentDistance) {
    const QuaternionVector a{{1, 0, 0, 0}, {0, 1, 0, 0}};
    const QuaternionVector b{{1, 0, 0, 0.25}, {0, 0.5, 0, 0}};
    EXPECT_DOUBLE_EQ(max_component_distance(a, b), 0.5);
    EXPECT_THROW(max_component_distance(a, QuaternionVector(3)), std::invalid_argument);
}

}  // namespace
}  // namespace qam
