#include "qam/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

namespace qam {
namespace {

Quaternion random_unit_quaternion(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Quaternion q;
    do {
        q = {dist(rng), dist(rng), dist(rng), dist(rng)};
    } while (norm(q) < 1e-3);
    return sigma(q);
}

double max_identity_error(const RealMatrix& m) {
    double err = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            err = std::max(err, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
    return err;
}

double max_identity_error(const QuaternionMatrix& m) {
    double err = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            const Quaternion expected = i == j ? Quaternion::real(1.0) : Quaternion{};
            err = std::max(err, component_distance(m(i, j), expected));
        }
    return err;
}

TEST(RealInverse, Identity) {
    const RealMatrix inv = invert_real(RealMatrix::identity(3));
    EXPECT_LE(max_identity_error(inv), 0.0);
}

TEST(RealInverse, Diagonal) {
    RealMatrix m(2);
    m(0, 0) = 2.0;
    m(1, 1) = 4.0;
    const RealMatrix inv = invert_real(m);
    EXPECT_DOUBLE_EQ(inv(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(inv(1, 1), 0.25);
    EXPECT_DOUBLE_EQ(inv(0, 1), 0.0);
    EXPECT_DOUBLE_EQ(inv(1, 0), 0.0);
}

TEST(RealInverse, RankDeficientThrows) {
    RealMatrix m(2, 1.0);  // [[1,1],[1,1]]
    EXPECT_THROW(invert_real(m), SingularMatrixError);
    EXPECT_THROW(invert_real(RealMatrix(3)), SingularMatrixError);  // zero matrix
}

TEST(RealInverse, MultiplyBackOnRandomMatrices) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        RealMatrix m(6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) m(i, j) = dist(rng) + (i == j ? 3.0 : 0.0);
        const RealMatrix inv = invert_real(m);
        EXPECT_LE(max_identity_error(m * inv), 1e-8);
        EXPECT_LE(max_identity_error(inv * m), 1e-8);
    }
}

TEST(RealInverse, InverseIsInvolutive) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        RealMatrix m(5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) m(i, j) = dist(rng) + (i == j ? 3.0 : 0.0);
        const RealMatrix twice = invert_real(invert_real(m));
        double err = 0.0;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) err = std::max(err, std::abs(twice(i, j) - m(i, j)));
        EXPECT_LE(err, 1e-6);
    }
}

TEST(QuaternionInverse, UnitImaginaryEntry) {
    // the 1x1 matrix [i] inverts to [-i]
    QuaternionMatrix m(1);
    m(0, 0) = kQuatI;
    const QuaternionMatrix inv = invert_quaternion(m);
    EXPECT_TRUE(approx_equal(inv(0, 0), -kQuatI, 1e-12));
}

TEST(QuaternionInverse, IdentityMatrix) {
    const QuaternionMatrix inv = invert_quaternion(QuaternionMatrix::identity(4));
    EXPECT_LE(max_identity_error(inv), 1e-12);
}

TEST(QuaternionInverse, MultiplyBackOnRandomUnitEntries) {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 20; ++rep) {
        QuaternionMatrix m(3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                m(i, j) = random_unit_quaternion(rng);
                if (i == j) m(i, j) += Quaternion::real(3.0);  // keep well-conditioned
            }
        const QuaternionMatrix inv = invert_quaternion(m);
        EXPECT_LE(max_identity_error(m * inv), 1e-8);
        EXPECT_LE(max_identity_error(inv * m), 1e-8);
    }
}

TEST(QuaternionInverse, SingularPropagates) {
    QuaternionMatrix m(2);
    m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = Quaternion(0.5, 0.5, 0.5, 0.5);
    EXPECT_THROW(invert_quaternion(m), SingularMatrixError);
}

TEST(RealEmbedding, IsAlgebraHomomorphism) {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int rep = 0; rep < 200; ++rep) {
        QuaternionMatrix a(2), b(2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                a(i, j) = {dist(rng), dist(rng), dist(rng), dist(rng)};
                b(i, j) = {dist(rng), dist(rng), dist(rng), dist(rng)};
            }
        const RealMatrix lhs = real_embedding(a * b);
        const RealMatrix rhs = real_embedding(a) * real_embedding(b);
        double err = 0.0;
        for (std::size_t i = 0; i < lhs.size(); ++i)
            for (std::size_t j = 0; j < lhs.size(); ++j)
                err = std::max(err, std::abs(lhs(i, j) - rhs(i, j)));
        EXPECT_LE(err, 1e-12);
    }
}

}  // namespace
}  // namespace qam
