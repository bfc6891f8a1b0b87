#pragma once

#include "qplace/fast_graph.hpp"
#include "qplace/model.hpp"
#include "qplace/runtime.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>

namespace qplace {

using BigCount = boost::multiprecision::cpp_int;

/// m! / (m - n)!, the number of injective placements of n qubits into m
/// vertices (zero when n > m).
[[nodiscard]] BigCount placement_count(std::size_t n, std::size_t m);

struct ExhaustiveResult {
  Placement best;
  Rational runtime{0};
  BigCount search_space;
};

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

/**
 * Evaluates every injective placement (no SWAPs) and returns the first one
 * reaching the minimum, in lexicographic order of the image vectors.
 * Placements that need an unavailable interaction are skipped. Throws
 * BudgetExceededError when m!/(m-n)! exceeds `budget`, InfeasibleError when
 * no placement is feasible.
 */
[[nodiscard]] ExhaustiveResult
exhaustive_place(const Circuit& circuit, const PhysicalEnvironment& env,
                 EvalMode mode, std::uint64_t budget = kDefaultOracleBudget);

inline constexpr std::size_t kMaxOracleRoutingVertices = 8;

/**
 * Exact minimum number of SWAP layers realising `target` on `g`, by
 * breadth-first search over arrangements. Only for graphs with at most eight
 * members; throws BudgetExceededError otherwise.
 */
[[nodiscard]] std::size_t min_depth_routing(const FastGraph& g,
                                            std::span<const VertexId> target);

} // namespace qplace
