#include "qplace/fast_graph.hpp"

#include "qplace/errors.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace qplace {

FastGraph::FastGraph(std::size_t vertex_count, std::span<const Edge> edges,
                     Rational threshold)
    : vertex_count_(vertex_count), member_(vertex_count, 1),
      adjacency_(vertex_count * vertex_count, 0), neighbors_(vertex_count),
      threshold_(threshold) {
  members_.resize(vertex_count);
  std::iota(members_.begin(), members_.end(), VertexId{0});
  for (const auto& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count || e.u == e.v) {
      throw ValidationError("invalid edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ")");
    }
    auto& cell = adjacency_[static_cast<std::size_t>(e.u) * vertex_count + e.v];
    if (cell != 0) {
      continue;
    }
    cell = 1;
    adjacency_[static_cast<std::size_t>(e.v) * vertex_count + e.u] = 1;
    neighbors_[e.u].push_back(e.v);
    neighbors_[e.v].push_back(e.u);
    edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  for (auto& n : neighbors_) {
    std::sort(n.begin(), n.end());
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
}

std::size_t FastGraph::max_degree() const {
  std::size_t out = 0;
  for (const VertexId v : members_) {
    out = std::max(out, neighbors_[v].size());
  }
  return out;
}

Rational FastGraph::edge_weight(VertexId a, VertexId b) const {
  const Edge key{std::min(a, b), std::max(a, b), Rational(0)};
  const auto it = std::lower_bound(
      edges_.begin(), edges_.end(), key, [](const Edge& x, const Edge& y) {
        return std::tie(x.u, x.v) < std::tie(y.u, y.v);
      });
  if (it == edges_.end() || it->u != key.u || it->v != key.v) {
    throw ValidationError("no edge (" + std::to_string(a) + "," +
                          std::to_string(b) + ")");
  }
  return it->weight;
}

std::vector<std::vector<VertexId>> FastGraph::components() const {
  std::vector<std::vector<VertexId>> out;
  std::vector<char> seen(vertex_count_, 0);
  for (const VertexId root : members_) {
    if (seen[root] != 0) {
      continue;
    }
    std::vector<VertexId> comp{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (const VertexId w : neighbors_[comp[i]]) {
        if (seen[w] == 0) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool FastGraph::connected() const { return components().size() <= 1; }

FastGraph FastGraph::induced(std::span<const VertexId> subset) const {
  FastGraph out;
  out.vertex_count_ = vertex_count_;
  out.threshold_ = threshold_;
  out.member_.assign(vertex_count_, 0);
  out.adjacency_.assign(vertex_count_ * vertex_count_, 0);
  out.neighbors_.resize(vertex_count_);
  for (const VertexId v : subset) {
    out.member_.at(v) = member_.at(v);
  }
  for (VertexId v = 0; v < vertex_count_; ++v) {
    if (out.member_[v] != 0) {
      out.members_.push_back(v);
    }
  }
  for (const auto& e : edges_) {
    if (out.member_[e.u] != 0 && out.member_[e.v] != 0) {
      out.edges_.push_back(e);
      out.adjacency_[static_cast<std::size_t>(e.u) * vertex_count_ + e.v] = 1;
      out.adjacency_[static_cast<std::size_t>(e.v) * vertex_count_ + e.u] = 1;
      out.neighbors_[e.u].push_back(e.v);
      out.neighbors_[e.v].push_back(e.u);
    }
  }
  for (auto& n : out.neighbors_) {
    std::sort(n.begin(), n.end());
  }
  return out;
}

FastGraph fast_graph(const PhysicalEnvironment& env, const Rational& threshold) {
  if (threshold < 0) {
    throw ValidationError("threshold must be non-negative");
  }
  std::vector<Edge> edges;
  const auto m = static_cast<VertexId>(env.size());
  for (VertexId a = 0; a < m; ++a) {
    for (VertexId b = a + 1; b < m; ++b) {
      const auto& w = env.weight(a, b);
      if (w.has_value() && *w <= threshold) {
        edges.push_back({a, b, *w});
      }
    }
  }
  return {env.size(), edges, threshold};
}

Rational min_connecting_threshold(const PhysicalEnvironment& env) {
  const auto m = static_cast<VertexId>(env.size());
  std::vector<Edge> edges;
  for (VertexId a = 0; a < m; ++a) {
    for (VertexId b = a + 1; b < m; ++b) {
      if (const auto& w = env.weight(a, b)) {
        edges.push_back({a, b, *w});
      }
    }
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& x, const Edge& y) { return x.weight < y.weight; });
  // Kruskal: the last edge that merges the final two components is the
  // bottleneck.
  std::vector<VertexId> parent(m);
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto root = [&parent](VertexId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  std::size_t groups = m;
  Rational bottleneck(0);
  for (const auto& e : edges) {
    if (groups <= 1) {
      break;
    }
    const VertexId ru = root(e.u);
    const VertexId rv = root(e.v);
    if (ru != rv) {
      parent[ru] = rv;
      --groups;
      bottleneck = e.weight;
    }
  }
  if (groups > 1) {
    throw InfeasibleError(
        "environment cannot be connected: some vertices have no available "
        "interaction path");
  }
  return bottleneck;
}

} // namespace qplace
