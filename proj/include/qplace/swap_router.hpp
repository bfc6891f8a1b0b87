#pragma once

#include "qplace/fast_graph.hpp"
#include "qplace/model.hpp"

#include <span>
#include <utility>
#include <vector>

namespace qplace {

/// A SWAP between two adjacent vertices, stored as (lo, hi).
using Swap = std::pair<VertexId, VertexId>;

/**
 * @brief Layers of vertex-disjoint SWAPs.
 *
 * Applying the layers in order moves the value that started on vertex v to
 * the target vertex the schedule was built for.
 */
struct SwapSchedule {
  std::vector<std::vector<Swap>> layers;

  [[nodiscard]] std::size_t depth() const { return layers.size(); }
  [[nodiscard]] std::size_t swap_count() const;
  [[nodiscard]] bool empty() const { return layers.empty(); }

  friend bool operator==(const SwapSchedule&, const SwapSchedule&) = default;
};

/// result[v] = final vertex of the value that started on v.
[[nodiscard]] std::vector<VertexId>
realized_permutation(const SwapSchedule& schedule, std::size_t vertex_count);

/// Every layer vertex-disjoint and every SWAP on an edge of `g`.
[[nodiscard]] bool schedule_is_legal(const SwapSchedule& schedule,
                                     const FastGraph& g);

/// Split of a connected graph into two connected parts.
struct SeparatorResult {
  std::vector<VertexId> first;
  std::vector<VertexId> second;
  /// Cut edge used for transfers, first endpoint in `first`.
  Swap channel{kUnassigned, kUnassigned};
  /// |smaller part| / |larger part|.
  Rational ratio{0};
};

/**
 * Best-balanced split over single-edge cuts of every BFS spanning tree,
 * followed by boundary moves that keep both parts connected. Falls back to
 * constructive_separator if the ratio would be below 1/maxdegree. The channel is
 * the lightest cut edge. Throws ValidationError for disconnected or
 * single-vertex graphs.
 */
[[nodiscard]] SeparatorResult balanced_connected_separator(const FastGraph& g);

/**
 * Constructive split with ratio >= 1/k for maximum degree k: root a spanning
 * tree at v1 keeping all of v1's edges, then walk into the one oversized
 * subtree, absorbing the small ones, until a subtree of size in
 * [(n-1)/k, n-(n-1)/k] is found.
 */
[[nodiscard]] SeparatorResult constructive_separator(const FastGraph& g);

struct RouteOptions {
  /// Retire a leaf as soon as its final value can be swapped into it. The
  /// plain schedule is also built and returned if it is shallower.
  bool leaf_override = true;
};

/**
 * @brief Realises a permutation of values as layers of SWAPs along `g`.
 *
 * target[v] is the vertex the value on v must end on; vertices outside
 * `g.members()` must map to themselves. The graph is split into two connected
 * halves; values bubble toward the channel inside BFS trees rooted at its
 * endpoints while the channel stays open every layer; then both halves are
 * solved recursively and their layers are merged index-wise.
 *
 * Throws ValidationError for a non-bijective target and InfeasibleError for a
 * disconnected graph.
 */
[[nodiscard]] SwapSchedule route_permutation(const FastGraph& g,
                                             std::span<const VertexId> target,
                                             const RouteOptions& options = {});

/// One SWAP gate of duration `swap_duration` per SWAP, one level per layer,
/// over qubits named after the environment vertices.
[[nodiscard]] Circuit schedule_to_gates(const SwapSchedule& schedule,
                                        const PhysicalEnvironment& env,
                                        const Rational& swap_duration = Rational(3));

} // namespace qplace
