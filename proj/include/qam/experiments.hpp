#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qam/models.hpp"

namespace qam {

// ---------------------------------------------------------------------------
// Deterministic random streams
//
// Every trial owns a private generator derived from (seed, noise level
// index, trial index), so sweeps produce identical results whether trials
// run serially or across any number of threads. Uniform doubles are mapped
// from raw 64-bit draws directly, keeping the stream independent of any
// standard-library distribution implementation.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline std::uint64_t split_mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Generator for one (noise level, trial) cell of a sweep.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t level_index, std::uint64_t trial_index) {
    std::uint64_t h = seed;
    h = split_mix64(h ^ (0x9E3779B97F4A7C15ULL * (level_index + 1)));
    h = split_mix64(h ^ (0xC2B2AE3D27D4EB4FULL * (trial_index + 1)));
    return Rng(split_mix64(h));
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

inline bool bernoulli(Rng& rng, double prob) { return uniform01(rng) < prob; }

// ---------------------------------------------------------------------------
// Random pattern generation and noise injection
// ---------------------------------------------------------------------------

/// Vector of +-1 components (as real quaternions), each sign equiprobable.
inline QuaternionVector random_bipolar_vector(std::size_t n, Rng& rng) {
    QuaternionVector v(n);
    for (Quaternion& q : v) q = Quaternion::real(bernoulli(rng, 0.5) ? 1.0 : -1.0);
    return v;
}

inline FundamentalMemorySet random_bipolar_memories(std::size_t n, std::size_t p, Rng& rng) {
    std::vector<QuaternionVector> memories;
    memories.reserve(p);
    for (std::size_t xi = 0; xi < p; ++xi) memories.push_back(random_bipolar_vector(n, rng));
    return FundamentalMemorySet(std::move(memories));
}

/// Unit quaternion (cos phi + i sin phi)(cos psi + k sin psi)(cos theta + j sin theta),
/// multiplied in that order.
inline Quaternion rand_q_from_angles(double phi, double psi, double theta) {
    const Quaternion a{std::cos(phi), std::sin(phi), 0.0, 0.0};
    const Quaternion b{std::cos(psi), 0.0, 0.0, std::sin(psi)};
    const Quaternion c{std::cos(theta), 0.0, std::sin(theta), 0.0};
    return (a * b) * c;
}

struct RandAngles {
    double phi;    // [-pi, pi)
    double psi;    // [-pi/4, pi/4)
    double theta;  // [-pi/2, pi/2)
};

inline RandAngles draw_rand_angles(Rng& rng) {
    using std::numbers::pi;
    return {uniform(rng, -pi, pi), uniform(rng, -pi / 4, pi / 4), uniform(rng, -pi / 2, pi / 2)};
}

/// Uniformly sampled unit quaternion over the angle box above.
inline Quaternion rand_q(Rng& rng) {
    const RandAngles a = draw_rand_angles(rng);
    return rand_q_from_angles(a.phi, a.psi, a.theta);
}

inline QuaternionVector random_quaternion_vector(std::size_t n, Rng& rng) {
    QuaternionVector v(n);
    for (Quaternion& q : v) q = rand_q(rng);
    return v;
}

inline FundamentalMemorySet random_quaternion_memories(std::size_t n, std::size_t p, Rng& rng) {
    std::vector<QuaternionVector> memories;
    memories.reserve(p);
    for (std::size_t xi = 0; xi < p; ++xi) memories.push_back(random_quaternion_vector(n, rng));
    return FundamentalMemorySet(std::move(memories));
}

inline bool is_bipolar(const Quaternion& q) {
    return (q.w == 1.0 || q.w == -1.0) && q.x == 0.0 && q.y == 0.0 && q.z == 0.0;
}

inline bool is_bipolar(const QuaternionVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Quaternion& q) { return is_bipolar(q); });
}

/// Flips each +-1 component independently with probability noise_prob.
/// Throws std::domain_error when the input is not bipolar.
inline QuaternionVector inject_noise_bipolar(const QuaternionVector& u, double noise_prob,
                                             Rng& rng) {
    if (!is_bipolar(u)) {
        throw std::domain_error("inject_noise_bipolar: input vector is not bipolar");
    }
    QuaternionVector out = u;
    for (Quaternion& q : out) {
        if (bernoulli(rng, noise_prob)) q = -q;
    }
    return out;
}

/// Replaces each component independently with a fresh random unit
/// quaternion with probability noise_prob.
inline QuaternionVector inject_noise_quaternion(const QuaternionVector& u, double noise_prob,
                                                Rng& rng) {
    QuaternionVector out = u;
    for (Quaternion& q : out) {
        if (bernoulli(rng, noise_prob)) q = rand_q(rng);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Trials and sweeps
// ---------------------------------------------------------------------------

enum class Domain { bipolar, quaternion };

enum class ModelFamily {
    hopfield_hebbian,
    hopfield_projection,
    recurrent_correlation,
    recurrent_projection,
};

/// Update mode used when the configuration leaves it unset: dense-weight
/// networks get the asynchronous mode their convergence guarantee assumes;
/// kernel networks converge either way, so they default to the
/// deterministic-and-fast synchronous mode.
inline UpdateMode default_update_mode(ModelFamily family) {
    switch (family) {
        case ModelFamily::hopfield_hebbian:
        case ModelFamily::hopfield_projection: return UpdateMode::asynchronous;
        default: return UpdateMode::synchronous;
    }
}

struct TrialConfig {
    Domain domain = Domain::bipolar;
    std::size_t length = 100;    // n
    std::size_t patterns = 36;   // p
    ModelFamily family = ModelFamily::recurrent_projection;
    ActivationKernel kernel = ActivationKernel::identity();
    double noise_prob = 0.0;
    int trials = 100;
    long max_iters = 1000;
    std::uint64_t seed = 0;
    std::optional<UpdateMode> update_mode;  // unset -> default_update_mode(family)
    double success_tol = 1e-3;
    double convergence_tol = 1e-6;
    int threads = 0;  // 0 -> hardware concurrency
};

inline UpdateMode resolved_update_mode(const TrialConfig& config) {
    return config.update_mode.value_or(default_update_mode(config.family));
}

inline TrainedMemory train_model(ModelFamily family, const FundamentalMemorySet& memories,
                                 const ActivationKernel& kernel) {
    switch (family) {
        case ModelFamily::hopfield_hebbian: return HopfieldMemory::hebbian(memories);
        case ModelFamily::hopfield_projection: return HopfieldMemory::projection(memories);
        case ModelFamily::recurrent_correlation:
            return RecurrentCorrelationMemory(memories, kernel);
        case ModelFamily::recurrent_projection:
            return RecurrentProjectionMemory(memories, kernel);
    }
    throw std::logic_error("train_model: unknown model family");
}

struct TrialOutcome {
    bool success = false;
    long iterations = 0;
    bool converged = false;
    double final_distance = std::numeric_limits<double>::infinity();
    bool training_failed = false;  // singular kernel/Gram matrix
};

/// One storage-and-recall trial: draw a fresh random memory set, train the
/// configured model, probe with a corrupted copy of the first stored
/// pattern, and iterate to convergence. The trial succeeds when the final
/// state matches the stored pattern within success_tol per component.
///
/// A singular matrix during training counts as a failed trial and is
/// flagged in the outcome rather than thrown.
inline TrialOutcome run_trial(const TrialConfig& config, Rng& rng) {
    if (!(config.noise_prob >= 0.0 && config.noise_prob <= 1.0)) {
        throw std::invalid_argument("run_trial: noise_prob must lie in [0, 1]");
    }
    const FundamentalMemorySet memories =
        config.domain == Domain::bipolar
            ? random_bipolar_memories(config.length, config.patterns, rng)
            : random_quaternion_memories(config.length, config.patterns, rng);

    TrialOutcome outcome;
    std::optional<TrainedMemory> model;
    try {
        model = train_model(config.family, memories, config.kernel);
    } catch (const SingularMatrixError&) {
        outcome.training_failed = true;
        return outcome;
    }

    const QuaternionVector& target = memories[0];
    QuaternionVector probe = config.domain == Domain::bipolar
                                 ? inject_noise_bipolar(target, config.noise_prob, rng)
                                 : inject_noise_quaternion(target, config.noise_prob, rng);

    const RunResult result = run(*model, NetworkState{std::move(probe), 0},
                                 resolved_update_mode(config), config.max_iters,
                                 config.convergence_tol);
    outcome.iterations = result.iterations;
    outcome.converged = result.converged;
    outcome.final_distance = max_component_distance(result.state.x, target);
    outcome.success = outcome.final_distance <= config.success_tol;
    return outcome;
}

struct NoiseLevelResult {
    double noise_prob = 0.0;
    int trials = 0;
    int successes = 0;
    double recall_probability = 0.0;  // successes / trials, exactly
    double mean_iterations = 0.0;
    int converged_count = 0;
    int training_failures = 0;
};

struct SweepResult {
    TrialConfig config;
    std::vector<NoiseLevelResult> levels;  // ascending noise_prob
};

inline std::vector<double> default_noise_grid() {
    std::vector<double> grid(11);
    for (int i = 0; i <= 10; ++i) grid[static_cast<std::size_t>(i)] = i / 10.0;
    return grid;
}

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs `config.trials` independent trials at every grid noise level and
/// aggregates recall statistics. Levels are processed in ascending order
/// of noise. Trials run in parallel across `config.threads` workers; the
/// per-trial generators depend only on (seed, level index, trial index),
/// so the result is bitwise independent of the thread count.
inline SweepResult run_sweep(const TrialConfig& config, std::span<const double> noise_grid) {
    if (config.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
    if (noise_grid.empty()) throw std::invalid_argument("run_sweep: empty noise grid");
    for (double g : noise_grid) {
        if (!(g >= 0.0 && g <= 1.0)) {
            throw std::invalid_argument("run_sweep: noise levels must lie in [0, 1]");
        }
    }
    std::vector<double> grid(noise_grid.begin(), noise_grid.end());
    std::sort(grid.begin(), grid.end());

    SweepResult result;
    result.config = config;
    const int threads = std::min(resolve_thread_count(config.threads), config.trials);

    for (std::size_t level = 0; level < grid.size(); ++level) {
        TrialConfig level_config = config;
        level_config.noise_prob = grid[level];

        std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));
        auto work = [&](int worker) {
            for (int t = worker; t < config.trials; t += threads) {
                Rng rng = trial_rng(config.seed, level, static_cast<std::uint64_t>(t));
                outcomes[static_cast<std::size_t>(t)] = run_trial(level_config, rng);
            }
        };
        if (threads <= 1) {
            work(0);
        } else {
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(threads));
            for (int w = 0; w < threads; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        work(w);
                    } catch (...) {
                        errors[static_cast<std::size_t>(w)] = std::current_exception();
                    }
                });
            }
            for (std::thread& t : pool) t.join();
            for (const std::exception_ptr& e : errors) {
                if (e) std::rethrow_exception(e);
            }
        }

        NoiseLevelResult lr;
        lr.noise_prob = grid[level];
        lr.trials = config.trials;
        long iteration_sum = 0;
        for (const TrialOutcome& o : outcomes) {
            lr.successes += o.success ? 1 : 0;
            lr.converged_count += o.converged ? 1 : 0;
            lr.training_failures += o.training_failed ? 1 : 0;
            iteration_sum += o.iterations;
        }
        lr.recall_probability = static_cast<double>(lr.successes) / lr.trials;
        lr.mean_iterations = static_cast<double>(iteration_sum) / lr.trials;
        result.levels.push_back(lr);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Presets mirroring the two benchmark experiments
// ---------------------------------------------------------------------------

/// Bundle of experiment-scale parameters plus per-kernel defaults.
struct ExperimentPreset {
    Domain domain;
    std::size_t length;
    std::size_t patterns;
    int trials;
    long max_iters;
    double high_order_degree;
    double potential_order;
    double potential_epsilon;
    double exponential_rate;
};

/// Bipolar benchmark: n=100, p=36, kernels (1+x)^5, (1-x+1e-5)^-3, e^(4x).
inline ExperimentPreset example1_preset() {
    return {Domain::bipolar, 100, 36, 100, 1000, 5.0, 3.0, 1e-5, 4.0};
}

/// Quaternion benchmark: n=100, p=36, kernels (1+x)^20, (1-x+1e-5)^-3, e^(14x).
inline ExperimentPreset example2_preset() {
    return {Domain::quaternion, 100, 36, 100, 1000, 20.0, 3.0, 1e-5, 14.0};
}

inline ActivationKernel kernel_from_preset(const ExperimentPreset& preset,
                                           ActivationKernel::Kind kind) {
    switch (kind) {
        case ActivationKernel::Kind::identity: return ActivationKernel::identity();
        case ActivationKernel::Kind::high_order:
            return ActivationKernel::high_order(preset.high_order_degree);
        case ActivationKernel::Kind::potential:
            return ActivationKernel::potential(preset.potential_order, preset.potential_epsilon);
        case ActivationKernel::Kind::exponential:
            return ActivationKernel::exponential(preset.exponential_rate);
    }
    throw std::logic_error("kernel_from_preset: unknown kernel kind");
}

// ---------------------------------------------------------------------------
// Model naming (CLI flags, CSV fields)
// ---------------------------------------------------------------------------

inline std::string to_string(Domain domain) {
    return domain == Domain::bipolar ? "bipolar" : "quaternion";
}

inline std::string model_label(ModelFamily family, const ActivationKernel& kernel) {
    switch (family) {
        case ModelFamily::hopfield_hebbian: return "qhnn-hebbian";
        case ModelFamily::hopfield_projection: return "qhnn-projection";
        case ModelFamily::recurrent_correlation: return "qrcnn-" + kernel.name();
        case ModelFamily::recurrent_projection: return "qrpnn-" + kernel.name();
    }
    return "unknown";
}

}  // namespace qam
