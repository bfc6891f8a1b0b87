#pragma once

#include "qplace/model.hpp"

#include <span>
#include <vector>

namespace qplace {

struct Edge {
  VertexId u;
  VertexId v;
  Rational weight{1};
};

/**
 * @brief Simple undirected graph over a subset of physical vertices.
 *
 * Vertex ids live in the id space of the originating environment
 * (0..vertex_count()-1); `members()` lists the vertices that belong to the
 * graph, which lets induced subgraphs keep the original numbering.
 */
class FastGraph {
public:
  FastGraph() = default;
  /// Graph on all of 0..vertex_count-1 with the given edges.
  FastGraph(std::size_t vertex_count, std::span<const Edge> edges,
            Rational threshold = Rational(0));

  [[nodiscard]] std::size_t vertex_count() const { return vertex_count_; }
  [[nodiscard]] const std::vector<VertexId>& members() const { return members_; }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] bool contains(VertexId v) const { return member_[v]; }
  [[nodiscard]] bool adjacent(VertexId a, VertexId b) const {
    return adjacency_[static_cast<std::size_t>(a) * vertex_count_ + b] != 0;
  }
  /// Neighbours sorted by id.
  [[nodiscard]] const std::vector<VertexId>& neighbors(VertexId v) const {
    return neighbors_[v];
  }
  [[nodiscard]] std::size_t degree(VertexId v) const { return neighbors_[v].size(); }
  [[nodiscard]] std::size_t max_degree() const;
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] Rational edge_weight(VertexId a, VertexId b) const;
  [[nodiscard]] const Rational& threshold() const { return threshold_; }
  [[nodiscard]] bool connected() const;
  /// Connected components, each sorted, ordered by smallest member.
  [[nodiscard]] std::vector<std::vector<VertexId>> components() const;
  /// Subgraph induced by `subset` (same id space).
  [[nodiscard]] FastGraph induced(std::span<const VertexId> subset) const;

private:
  std::size_t vertex_count_ = 0;
  std::vector<VertexId> members_;
  std::vector<char> member_;
  std::vector<char> adjacency_;
  std::vector<std::vector<VertexId>> neighbors_;
  std::vector<Edge> edges_;
  Rational threshold_{0};
};

/**
 * Edges are the off-diagonal pairs with W <= threshold (inclusive). Diagonal
 * weights never contribute.
 */
[[nodiscard]] FastGraph fast_graph(const PhysicalEnvironment& env,
                                   const Rational& threshold);

/**
 * Bottleneck value of a minimum-bottleneck spanning tree: the smallest
 * threshold whose fast graph is connected. Throws InfeasibleError if no finite
 * threshold connects the environment.
 */
[[nodiscard]] Rational min_connecting_threshold(const PhysicalEnvironment& env);

} // namespace qplace
