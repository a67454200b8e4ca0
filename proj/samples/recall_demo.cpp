// Stores a handful of random quaternion patterns, corrupts one, and shows
// the projection network pulling the state back to the stored pattern.

#include <iostream>

#include "qam/qam.hpp"

int main() {
    using namespace qam;

    Rng rng(7);
    const std::size_t n = 32;
    const std::size_t p = 6;
    const FundamentalMemorySet memories = random_quaternion_memories(n, p, rng);

    const TrainedMemory model =
        TrainedMemory{RecurrentProjectionMemory(memories, ActivationKernel::exponential(10.0))};

    const QuaternionVector probe = inject_noise_quaternion(memories[0], 0.3, rng);
    std::cout << "probe distance to stored pattern:   "
              << max_component_distance(probe, memories[0]) << '\n';

    const RunResult result = run(model, NetworkState{probe, 0}, UpdateMode::synchronous);
    std::cout << "recalled distance to stored pattern: "
              << max_component_distance(result.state.x, memories[0]) << '\n';
    std::cout << "iterations: " << result.iterations << (result.converged ? "" : " (no convergence)")
              << '\n';
    return 0;
}
