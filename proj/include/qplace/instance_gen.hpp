#pragma once

#include "qplace/model.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qplace {

/// Name of the pseudo-random engine recorded in generated instance headers.
inline constexpr const char* kGeneratorName = "mt19937_64";

/// Linear-nearest-neighbour benchmark with log2(N) hidden stages.
struct ChainBenchmark {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  PhysicalEnvironment env;
  Circuit circuit;
  /// hidden_stages[s][j] = qubit at position j of the chain of stage s.
  std::vector<std::vector<QubitId>> hidden_stages;
};

/**
 * For each of log2(N) stages, draws a fresh uniformly random ordering of the
 * N qubits and emits N*log2(N) gates (T = 3), each between a random position
 * j of that ordering and its left or right neighbour with probability 1/2
 * (the only neighbour at either end). The environment is a chain x0..x{N-1}
 * with neighbour weight 1 in units of 0.001 s. Throws ValidationError unless N
 * is a power of two and at least 4.
 */
[[nodiscard]] ChainBenchmark gen_chain_benchmark(std::size_t n,
                                                 std::uint64_t seed);

/// Sidecar text recording N, seed, generator and the hidden orderings.
[[nodiscard]] std::string emit_chain_header(const ChainBenchmark& bench);

struct SimpleGraph {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct ReductionInstance {
  PhysicalEnvironment env;
  Circuit circuit;
};

/**
 * Hamiltonian-cycle reduction: W(vi,vj) = 1 exactly when (vi,vj) is not an
 * edge of H, 0 otherwise (diagonal 0); the circuit has m levels, level i
 * holding one gate on (q_i, q_{(i mod m)+1}) with T = 1. The optimal runtime
 * is 0 iff H is Hamiltonian. Requires m >= 3.
 */
[[nodiscard]] ReductionInstance gen_hamiltonian_reduction(const SimpleGraph& h);

/// Deterministic bounded draw in [0, bound) from a 64-bit engine.
template <class Engine>
[[nodiscard]] std::uint64_t draw_below(Engine& engine, std::uint64_t bound) {
  // Rejection sampling keeps the draw exactly uniform and independent of the
  // standard library's distribution implementation.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = engine();
  while (x >= limit) {
    x = engine();
  }
  return x % bound;
}

} // namespace qplace
