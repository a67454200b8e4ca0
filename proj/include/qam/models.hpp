#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "qam/kernel.hpp"
#include "qam/linalg.hpp"
#include "qam/quaternion.hpp"

namespace qam {

/// The p unit-quaternion patterns of length n that a memory model stores.
class FundamentalMemorySet {
  public:
    /// Validates that the set is non-empty, all patterns share one length,
    /// and every component is unit-norm within unit_tol.
    explicit FundamentalMemorySet(std::vector<QuaternionVector> memories, double unit_tol = 1e-9)
        : memories_(std::move(memories)) {
        if (memories_.empty()) throw std::invalid_argument("memory set must contain p >= 1 patterns");
        length_ = memories_[0].size();
        if (length_ == 0) throw std::invalid_argument("memory patterns must have length n >= 1");
        for (const QuaternionVector& u : memories_) {
            if (u.size() != length_) throw std::invalid_argument("memory patterns must share one length");
            if (!is_unit_vector(u, unit_tol)) {
                throw std::invalid_argument("memory components must be unit quaternions");
            }
        }
    }

    std::size_t length() const { return length_; }  // n
    std::size_t size() const { return memories_.size(); }  // p

    const QuaternionVector& operator[](std::size_t xi) const { return memories_[xi]; }

    auto begin() const { return memories_.begin(); }
    auto end() const { return memories_.end(); }

  private:
    std::vector<QuaternionVector> memories_;
    std::size_t length_ = 0;
};

/// Normalized real correlation between a state and a stored pattern:
/// Re{<x, u>} / n, clamped to [-1, 1] so rounding can never push a kernel
/// argument outside its domain.
inline double correlation_argument(const QuaternionVector& x, const QuaternionVector& u) {
    const double re = inner(x, u).w / static_cast<double>(x.size());
    return std::clamp(re, -1.0, 1.0);
}

/// Kernel weights w_xi = f(Re{<x, u^xi>} / n), one per stored pattern.
inline std::vector<double> kernel_weights(const QuaternionVector& state,
                                          const FundamentalMemorySet& memories,
                                          const ActivationKernel& kernel) {
    if (state.size() != memories.length()) {
        throw std::invalid_argument("kernel_weights: state length must match memory length");
    }
    std::vector<double> weights(memories.size());
    for (std::size_t xi = 0; xi < memories.size(); ++xi) {
        weights[xi] = kernel(correlation_argument(state, memories[xi]));
    }
    return weights;
}

/// Dense-weight recurrent network: potentials a_i = sum_j w_ij x_j.
///
/// Weights from the correlation (Hebbian) rule or the projection rule both
/// satisfy w_ij = conj(w_ji) with real non-negative diagonal, which makes
/// asynchronous updates convergent from any starting state.
class HopfieldMemory {
  public:
    /// Wraps an explicit weight matrix. No structure is imposed; callers
    /// that need the convergence guarantee must supply conforming weights.
    explicit HopfieldMemory(QuaternionMatrix weights) : weights_(std::move(weights)) {
        if (weights_.size() == 0) throw std::invalid_argument("weight matrix must be non-empty");
    }

    /// Correlation rule: w_ij = (1/n) sum_xi u_i^xi conj(u_j^xi).
    static HopfieldMemory hebbian(const FundamentalMemorySet& memories) {
        const std::size_t n = memories.length();
        QuaternionMatrix w(n);
        for (const QuaternionVector& u : memories) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    w(i, j) += u[i] * conj(u[j]);
                }
            }
        }
        const double scale = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w(i, j) *= scale;
        return HopfieldMemory(std::move(w));
    }

    /// Projection rule: w_ij = (1/n) sum_eta sum_xi u_i^eta cinv_{eta,xi} conj(u_j^xi),
    /// where cinv is the quaternion inverse of the Gram matrix
    /// c_{eta,xi} = <u^xi, u^eta> / n. Every stored pattern becomes a fixed
    /// point when the Gram matrix is invertible.
    ///
    /// Throws SingularMatrixError for degenerate memory sets.
    static HopfieldMemory projection(const FundamentalMemorySet& memories) {
        const std::size_t n = memories.length();
        const std::size_t p = memories.size();
        QuaternionMatrix gram(p);
        for (std::size_t eta = 0; eta < p; ++eta) {
            for (std::size_t xi = 0; xi < p; ++xi) {
                gram(eta, xi) = inner(memories[xi], memories[eta]) / static_cast<double>(n);
            }
        }
        const QuaternionMatrix cinv = invert_quaternion(gram);

        // Group as w_ij = (1/n) sum_xi v_i^xi conj(u_j^xi) with
        // v_i^xi = sum_eta u_i^eta cinv_{eta,xi}; this drops the cost from
        // n^2 p^2 to n p^2 + n^2 p quaternion products.
        std::vector<QuaternionVector> v(p, QuaternionVector(n));
        for (std::size_t xi = 0; xi < p; ++xi) {
            for (std::size_t i = 0; i < n; ++i) {
                Quaternion acc{};
                for (std::size_t eta = 0; eta < p; ++eta) {
                    acc += memories[eta][i] * cinv(eta, xi);
                }
                v[xi][i] = acc;
            }
        }
        QuaternionMatrix w(n);
        for (std::size_t xi = 0; xi < p; ++xi) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    w(i, j) += v[xi][i] * conj(memories[xi][j]);
                }
            }
        }
        const double scale = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w(i, j) *= scale;
        return HopfieldMemory(std::move(w));
    }

    std::size_t length() const { return weights_.size(); }

    const QuaternionMatrix& weights() const { return weights_; }

    Quaternion potential(const QuaternionVector& state, std::size_t i) const {
        Quaternion acc{};
        for (std::size_t j = 0; j < state.size(); ++j) acc += weights_(i, j) * state[j];
        return acc;
    }

  private:
    QuaternionMatrix weights_;
};

/// Two-layer recurrent network: kernel weights from state/memory
/// correlations feed a weighted sum of the stored patterns,
/// a_i = sum_xi w_xi(t) u_i^xi. Training just captures the memory set and
/// the kernel.
class RecurrentCorrelationMemory {
  public:
    RecurrentCorrelationMemory(FundamentalMemorySet memories, ActivationKernel kernel)
        : memories_(std::move(memories)), kernel_(kernel) {}

    std::size_t length() const { return memories_.length(); }
    std::size_t pattern_count() const { return memories_.size(); }
    const FundamentalMemorySet& memories() const { return memories_; }
    const ActivationKernel& kernel() const { return kernel_; }

    std::vector<double> weights(const QuaternionVector& state) const {
        return kernel_weights(state, memories_, kernel_);
    }

    Quaternion potential(const QuaternionVector& state, std::size_t i) const {
        const std::vector<double> w = weights(state);
        return output(w, i);
    }

    Quaternion output(const std::vector<double>& weights, std::size_t i) const {
        Quaternion acc{};
        for (std::size_t xi = 0; xi < memories_.size(); ++xi) acc += memories_[xi][i] * weights[xi];
        return acc;
    }

  private:
    FundamentalMemorySet memories_;
    ActivationKernel kernel_;
};

/// Correlation network whose output layer uses projected patterns
/// v^xi = sum_eta u^eta cinv_{eta,xi} instead of the raw memories, where
/// cinv is the inverse of the real kernel matrix
/// c_{eta,xi} = f(Re{<u^xi, u^eta>} / n). The projection makes every
/// stored pattern a fixed point while keeping the kernel dynamics.
class RecurrentProjectionMemory {
  public:
    /// Builds the kernel matrix, inverts it, and stores the projected
    /// patterns. Throws SingularMatrixError when the kernel matrix is not
    /// invertible (e.g. duplicate stored patterns).
    RecurrentProjectionMemory(FundamentalMemorySet memories, ActivationKernel kernel)
        : memories_(std::move(memories)), kernel_(kernel) {
        const std::size_t n = memories_.length();
        const std::size_t p = memories_.size();
        RealMatrix c(p);
        for (std::size_t eta = 0; eta < p; ++eta) {
            for (std::size_t xi = 0; xi < p; ++xi) {
                c(eta, xi) = kernel_(correlation_argument(memories_[xi], memories_[eta]));
            }
        }
        const RealMatrix cinv = invert_real(c);
        projected_.assign(p, QuaternionVector(n));
        for (std::size_t xi = 0; xi < p; ++xi) {
            for (std::size_t i = 0; i < n; ++i) {
                Quaternion acc{};
                for (std::size_t eta = 0; eta < p; ++eta) {
                    acc += memories_[eta][i] * cinv(eta, xi);
                }
                projected_[xi][i] = acc;
            }
        }
    }

    std::size_t length() const { return memories_.length(); }
    std::size_t pattern_count() const { return memories_.size(); }
    const FundamentalMemorySet& memories() const { return memories_; }
    const ActivationKernel& kernel() const { return kernel_; }

    /// Projected output patterns v^xi; not unit vectors in general.
    const std::vector<QuaternionVector>& projected() const { return projected_; }

    std::vector<double> weights(const QuaternionVector& state) const {
        return kernel_weights(state, memories_, kernel_);
    }

    Quaternion potential(const QuaternionVector& state, std::size_t i) const {
        const std::vector<double> w = weights(state);
        return output(w, i);
    }

    Quaternion output(const std::vector<double>& weights, std::size_t i) const {
        Quaternion acc{};
        for (std::size_t xi = 0; xi < projected_.size(); ++xi)
            acc += projected_[xi][i] * weights[xi];
        return acc;
    }

  private:
    FundamentalMemorySet memories_;
    ActivationKernel kernel_;
    std::vector<QuaternionVector> projected_;
};

/// A trained, ready-to-run associative memory of any of the three families.
using TrainedMemory =
    std::variant<HopfieldMemory, RecurrentCorrelationMemory, RecurrentProjectionMemory>;

inline std::size_t length(const TrainedMemory& model) {
    return std::visit([](const auto& m) { return m.length(); }, model);
}

enum class UpdateMode {
    synchronous,   // every neuron updated from the same previous state
    asynchronous,  // cyclic order 1..n, later neurons see earlier updates
};

/// Network state: a unit-quaternion vector plus an iteration counter.
struct NetworkState {
    QuaternionVector x;
    long t = 0;
};

namespace detail {

/// The update rule applied to one activation potential: normalize to the
/// unit hypersphere when the potential has finite nonzero norm, otherwise
/// keep the previous state. A non-finite norm also covers component
/// overflow during accumulation.
inline Quaternion activate(const Quaternion& a, const Quaternion& previous) {
    const double n = norm(a);
    if (n > 0.0 && std::isfinite(n)) return a / n;
    return previous;
}

}  // namespace detail

/// One update of the whole network. Synchronous mode computes all
/// potentials from the incoming state; asynchronous mode sweeps neurons in
/// cyclic order 1..n, each seeing the updates made earlier in the sweep.
inline NetworkState step(const TrainedMemory& model, const NetworkState& state, UpdateMode mode) {
    const std::size_t n = length(model);
    if (state.x.size() != n) {
        throw std::invalid_argument("step: state length must match the trained model");
    }
    NetworkState next{state.x, state.t + 1};
    if (mode == UpdateMode::synchronous) {
        std::visit(
            [&](const auto& m) {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, HopfieldMemory>) {
                    for (std::size_t i = 0; i < n; ++i) {
                        next.x[i] = detail::activate(m.potential(state.x, i), state.x[i]);
                    }
                } else {
                    // kernel weights depend only on the full state; compute once
                    const std::vector<double> w = m.weights(state.x);
                    for (std::size_t i = 0; i < n; ++i) {
                        next.x[i] = detail::activate(m.output(w, i), state.x[i]);
                    }
                }
            },
            model);
    } else {
        std::visit(
            [&](const auto& m) {
                for (std::size_t i = 0; i < n; ++i) {
                    next.x[i] = detail::activate(m.potential(next.x, i), next.x[i]);
                }
            },
            model);
    }
    return next;
}

struct RunResult {
    NetworkState state;
    long iterations = 0;
    bool converged = false;
};

/// Iterates the network until the max componentwise distance between
/// successive states drops to tol, or max_iters updates have run.
inline RunResult run(const TrainedMemory& model, NetworkState initial, UpdateMode mode,
                     long max_iters = 1000, double tol = 1e-6) {
    if (max_iters < 1) throw std::invalid_argument("run: max_iters must be >= 1");
    if (tol < 0.0) throw std::invalid_argument("run: tol must be >= 0");
    NetworkState current = std::move(initial);
    for (long iter = 1; iter <= max_iters; ++iter) {
        NetworkState next = step(model, current, mode);
        const double moved = max_component_distance(next.x, current.x);
        current = std::move(next);
        if (moved <= tol) return {std::move(current), iter, true};
    }
    return {std::move(current), max_iters, false};
}

}  // namespace qam
