#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qam/quaternion.hpp"

namespace qam {

/// Thrown when a matrix inverse does not exist at working precision.
/// In this library that almost always means a degenerate memory set
/// (duplicate or linearly dependent stored patterns).
struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense square real matrix, row-major.
class RealMatrix {
  public:
    explicit RealMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static RealMatrix identity(std::size_t n) {
        RealMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("RealMatrix: size mismatch");
        RealMatrix c(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) {
            for (std::size_t k = 0; k < a.n_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

  private:
    std::size_t n_;
    std::vector<double> data_;
};

/// Dense square quaternion matrix, row-major. Products use the Hamilton
/// product, so left/right factors must not be swapped.
class QuaternionMatrix {
  public:
    explicit QuaternionMatrix(std::size_t n) : n_(n), data_(n * n) {}

    static QuaternionMatrix identity(std::size_t n) {
        QuaternionMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion::real(1.0);
        return m;
    }

    std::size_t size() const { return n_; }

    Quaternion& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Quaternion& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    friend QuaternionMatrix operator*(const QuaternionMatrix& a, const QuaternionMatrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("QuaternionMatrix: size mismatch");
        QuaternionMatrix c(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) {
            for (std::size_t k = 0; k < a.n_; ++k) {
                const Quaternion& aik = a(i, k);
                for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

  private:
    std::size_t n_;
    std::vector<Quaternion> data_;
};

inline double max_abs_entry(const RealMatrix& m) {
    double v = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) v = std::max(v, std::abs(m(i, j)));
    return v;
}

/// Inverts a square real matrix by Gauss-Jordan elimination with partial
/// pivoting. A pivot below 1e-12 times the largest absolute entry of the
/// input raises SingularMatrixError.
inline RealMatrix invert_real(const RealMatrix& m) {
    const std::size_t n = m.size();
    const double threshold = 1e-12 * max_abs_entry(m);
    if (threshold == 0.0) throw SingularMatrixError("invert_real: zero matrix");

    RealMatrix a = m;
    RealMatrix inv = RealMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (std::abs(a(pivot, col)) < threshold) {
            throw SingularMatrixError("invert_real: matrix is singular to working precision");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const double scale = 1.0 / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= scale;
            inv(col, j) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = a(r, col);
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= factor * a(col, j);
                inv(r, j) -= factor * inv(col, j);
            }
        }
    }
    return inv;
}

/// 4x4 real matrix of left multiplication by q: writing quaternions as
/// column 4-tuples, left_block(q) * vec(r) == vec(q * r). The map is an
/// algebra homomorphism, which is what makes the embedding below work.
inline std::array<std::array<double, 4>, 4> left_block(const Quaternion& q) {
    return {{{q.w, -q.x, -q.y, -q.z},
             {q.x, q.w, -q.z, q.y},
             {q.y, q.z, q.w, -q.x},
             {q.z, -q.y, q.x, q.w}}};
}

/// Embeds a p x p quaternion matrix as a 4p x 4p real matrix by replacing
/// each entry with its left-multiplication block.
inline RealMatrix real_embedding(const QuaternionMatrix& m) {
    const std::size_t p = m.size();
    RealMatrix e(4 * p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            const auto block = left_block(m(i, j));
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c) e(4 * i + r, 4 * j + c) = block[r][c];
        }
    }
    return e;
}

/// Inverts a square quaternion matrix under the Hamilton-product matrix
/// multiplication. Works through the real embedding: since the embedding
/// is a ring homomorphism, the inverse of the embedded matrix is the
/// embedding of the inverse, and each quaternion entry is read back from
/// the first column of its 4x4 block.
inline QuaternionMatrix invert_quaternion(const QuaternionMatrix& m) {
    const std::size_t p = m.size();
    const RealMatrix inv = invert_real(real_embedding(m));
    QuaternionMatrix out(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            out(i, j) = Quaternion{inv(4 * i + 0, 4 * j), inv(4 * i + 1, 4 * j),
                                   inv(4 * i + 2, 4 * j), inv(4 * i + 3, 4 * j)};
        }
    }
    return out;
}

}  // namespace qam
