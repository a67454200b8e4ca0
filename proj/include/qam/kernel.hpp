#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace qam {

/// Scalar activation kernel f : [-1, 1] -> R applied to normalized state/
/// memory correlations. All variants are continuous and monotone
/// non-decreasing on [-1, 1]:
///
///   identity       f(x) = x
///   high-order     f(x) = (1 + x)^degree,            degree > 1
///   potential      f(x) = (1 - x + epsilon)^-order,  order >= 1, epsilon > 0
///   exponential    f(x) = exp(rate * x),             rate > 0
///
/// The epsilon of the potential kernel keeps the denominator positive at
/// x = 1; it defaults to 1e-5.
class ActivationKernel {
  public:
    enum class Kind { identity, high_order, potential, exponential };

    static ActivationKernel identity() { return ActivationKernel(Kind::identity, 0.0, 0.0); }

    static ActivationKernel high_order(double degree) {
        if (!(degree > 1.0)) throw std::invalid_argument("high_order kernel requires degree > 1");
        return ActivationKernel(Kind::high_order, degree, 0.0);
    }

    static ActivationKernel potential(double order, double epsilon = 1e-5) {
        if (!(order >= 1.0)) throw std::invalid_argument("potential kernel requires order >= 1");
        if (!(epsilon > 0.0)) throw std::invalid_argument("potential kernel requires epsilon > 0");
        return ActivationKernel(Kind::potential, order, epsilon);
    }

    static ActivationKernel exponential(double rate) {
        if (!(rate > 0.0)) throw std::invalid_argument("exponential kernel requires rate > 0");
        return ActivationKernel(Kind::exponential, rate, 0.0);
    }

    double operator()(double x) const {
        switch (kind_) {
            case Kind::identity: return x;
            case Kind::high_order: return std::pow(1.0 + x, a_);
            case Kind::potential: return 1.0 / std::pow(1.0 - x + b_, a_);
            case Kind::exponential: return std::exp(a_ * x);
        }
        return x;  // unreachable
    }

    Kind kind() const { return kind_; }

    /// Kernel parameter: degree, order, or rate depending on kind.
    double parameter() const { return a_; }

    /// Division guard of the potential kernel; zero for other kinds.
    double epsilon() const { return b_; }

    std::string name() const {
        switch (kind_) {
            case Kind::identity: return "identity";
            case Kind::high_order: return "high-order";
            case Kind::potential: return "potential";
            case Kind::exponential: return "exponential";
        }
        return "identity";
    }

  private:
    ActivationKernel(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    Kind kind_;
    double a_;
    double b_;
};

}  // namespace qam
