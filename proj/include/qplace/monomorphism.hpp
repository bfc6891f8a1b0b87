#pragma once

#include "qplace/fast_graph.hpp"
#include "qplace/model.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qplace {

/// Interaction graph of a workspace: qubits touched by two-qubit gates and
/// the distinct unordered pairs they interact on.
struct InteractionPattern {
  std::vector<QubitId> vertices;                     // sorted
  std::vector<std::pair<QubitId, QubitId>> edges;    // (lo, hi), sorted, unique

  [[nodiscard]] static InteractionPattern of(std::span<const Gate> gates);
  [[nodiscard]] static InteractionPattern of(const Circuit& circuit);
  [[nodiscard]] std::size_t index_of(QubitId q) const;
};

struct MonomorphismOptions {
  std::size_t limit = 100;
  /// Maximum number of tentative assignments; 0 means unlimited.
  std::uint64_t node_budget = 0;
};

/// One embedding: images[i] is the host vertex of pattern.vertices[i].
using Monomorphism = std::vector<VertexId>;

struct MonomorphismResult {
  std::vector<Monomorphism> maps;
  /// True when the search space was fully explored, so `maps` is the complete
  /// set of embeddings.
  bool exhausted = false;
  bool budget_hit = false;
  std::uint64_t nodes = 0;
};

/**
 * @brief Enumerates injective, edge-preserving maps of `pattern` into `host`.
 *
 * Backtracking with a deterministic order: the first vertex of each connected
 * piece is the one of highest degree (ties by identifier, larger pieces
 * first); afterwards the vertex with most already-ordered neighbours comes
 * next, ties again by degree then identifier. Host candidates are tried by
 * increasing id. Stops after `limit` maps or when the node budget runs out.
 */
[[nodiscard]] MonomorphismResult
enumerate_monomorphisms(const InteractionPattern& pattern, const FastGraph& host,
                        const MonomorphismOptions& options = {});

/// Checks injectivity and edge preservation of one map.
[[nodiscard]] bool is_monomorphism(const InteractionPattern& pattern,
                                   const FastGraph& host,
                                   std::span<const VertexId> images);

} // namespace qplace
