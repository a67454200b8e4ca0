#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace qam {

/// A quaternion q = w + x*i + y*j + z*k with double components.
///
/// Real and complex values embed as quaternions with zero higher parts,
/// so a single value type covers bipolar, complex, and full quaternion
/// states. Multiplication is the Hamilton product and is NOT commutative.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    /// The real quaternion r + 0i + 0j + 0k.
    static constexpr Quaternion real(double r) { return {r, 0.0, 0.0, 0.0}; }

    constexpr Quaternion& operator+=(const Quaternion& q) {
        w += q.w;
        x += q.x;
        y += q.y;
        z += q.z;
        return *this;
    }

    constexpr Quaternion& operator-=(const Quaternion& q) {
        w -= q.w;
        x -= q.x;
        y -= q.y;
        z -= q.z;
        return *this;
    }

    constexpr Quaternion& operator*=(double s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    constexpr Quaternion& operator/=(double s) {
        w /= s;
        x /= s;
        y /= s;
        z /= s;
        return *this;
    }

    friend constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
    friend constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
    friend constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
    friend constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }
    friend constexpr Quaternion operator/(Quaternion q, double s) { return q /= s; }
    friend constexpr Quaternion operator-(const Quaternion& q) { return {-q.w, -q.x, -q.y, -q.z}; }

    friend constexpr bool operator==(const Quaternion& p, const Quaternion& q) = default;

    /// Hamilton product. Argument order is significant: p*q != q*p in general.
    friend constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
        return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
                p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
                p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
                p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
    }

    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << '(' << q.w << ',' << q.x << ',' << q.y << ',' << q.z << ')';
    }
};

inline constexpr Quaternion kQuatI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kQuatJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kQuatK{0.0, 0.0, 0.0, 1.0};

/// Conjugate: negates the vector part.
constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double norm_sq(const Quaternion& q) {
    return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

/// Euclidean norm of the 4-tuple.
inline double norm(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

/// Normalizes q to the unit hypersphere: sigma(q) = q / |q|.
///
/// Throws std::domain_error when |q| is zero or not finite. Callers that
/// implement the network update rule must branch to "keep previous state"
/// instead of calling sigma in that case.
inline Quaternion sigma(const Quaternion& q) {
    const double n = norm(q);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::domain_error("sigma: argument must have finite nonzero norm");
    }
    return q / n;
}

/// Componentwise comparison with absolute tolerance.
inline bool approx_equal(const Quaternion& p, const Quaternion& q, double tol = 1e-9) {
    return std::abs(p.w - q.w) <= tol && std::abs(p.x - q.x) <= tol &&
           std::abs(p.y - q.y) <= tol && std::abs(p.z - q.z) <= tol;
}

/// Largest absolute componentwise difference.
inline double component_distance(const Quaternion& p, const Quaternion& q) {
    const double dw = std::abs(p.w - q.w);
    const double dx = std::abs(p.x - q.x);
    const double dy = std::abs(p.y - q.y);
    const double dz = std::abs(p.z - q.z);
    return std::max(std::max(dw, dx), std::max(dy, dz));
}

using QuaternionVector = std::vector<Quaternion>;

/// Inner product of quaternion column vectors: sum_i conj(y_i) * x_i.
///
/// The conjugate falls on the SECOND argument, so inner(x, y) == conj(inner(y, x)).
inline Quaternion inner(const QuaternionVector& x, const QuaternionVector& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("inner: vectors must have equal length");
    }
    Quaternion acc{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += conj(y[i]) * x[i];
    }
    return acc;
}

/// Max over elements of the largest componentwise difference.
inline double max_component_distance(const QuaternionVector& a, const QuaternionVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("max_component_distance: vectors must have equal length");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, component_distance(a[i], b[i]));
    }
    return d;
}

inline bool is_unit_vector(const QuaternionVector& v, double tol = 1e-9) {
    for (const Quaternion& q : v) {
        if (std::abs(norm(q) - 1.0) > tol) return false;
    }
    return true;
}

}  // namespace qam
