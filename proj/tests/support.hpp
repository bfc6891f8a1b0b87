#pragma once

// Shared fixtures and independent reference implementations for the tests.
// Nothing here calls into the code under test except to build inputs.

#include "qplace/fast_graph.hpp"
#include "qplace/model.hpp"
#include "qplace/runtime.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace qplace::testing {

// Weights in units of 1e-4 s, solved from the known per-gate column trace.
inline PhysicalEnvironment acetyl() {
  const std::vector<WeightEntry> w{
      {0, 0, Rational(8)},  {1, 1, Rational(8)},  {2, 2, Rational(1)},
      {0, 1, Rational(38)}, {1, 2, Rational(89)}, {0, 2, Rational(672)},
  };
  return make_environment({"M", "C1", "C2"}, Rational(1, 10000), w);
}

inline constexpr VertexId kM = 0;
inline constexpr VertexId kC1 = 1;
inline constexpr VertexId kC2 = 2;

// Encoding circuit over a, b, c with the Rz gates carried at T = 0, in
// program order.
inline std::vector<Gate> encoding_gates() {
  return {
      single_gate("Ry90", Rational(1), 0),   single_gate("Rz90", Rational(0), 0),
      two_gate("ZZ90", Rational(1), 0, 1),   single_gate("Rz-90", Rational(0), 0),
      single_gate("Rz-90", Rational(0), 1),  single_gate("Ry90", Rational(1), 2),
      two_gate("ZZ90", Rational(1), 1, 2),   single_gate("Rz90", Rational(0), 2),
      single_gate("Ry90", Rational(1), 1),
  };
}

inline Circuit encoding_circuit() {
  return levelize({"a", "b", "c"}, encoding_gates());
}

inline Placement placement_of(std::vector<VertexId> images, std::size_t m) {
  return Placement(std::move(images), m);
}

inline std::vector<std::string> names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(prefix + std::to_string(i));
  }
  return out;
}

// Graph helpers -------------------------------------------------------------

inline FastGraph chain_graph(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i + 1 < n; ++i) {
    e.push_back({i, i + 1, Rational(1)});
  }
  return FastGraph(n, e);
}

inline FastGraph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> e;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = static_cast<VertexId>(r * cols + c);
      if (c + 1 < cols) {
        e.push_back({v, v + 1, Rational(1)});
      }
      if (r + 1 < rows) {
        e.push_back({v, static_cast<VertexId>(v + cols), Rational(1)});
      }
    }
  }
  return FastGraph(rows * cols, e);
}

inline FastGraph graph_from(std::size_t n,
                            const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  std::vector<Edge> e;
  for (const auto& [a, b] : pairs) {
    e.push_back({a, b, Rational(1)});
  }
  return FastGraph(n, e);
}

// Random connected graph: random spanning tree plus extra edges, respecting a
// degree cap.
inline std::vector<std::pair<VertexId, VertexId>>
random_connected_edges(std::mt19937_64& rng, std::size_t n, std::size_t max_degree,
                       std::size_t extra) {
  std::vector<std::size_t> degree(n, 0);
  std::set<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<VertexId> open;
    for (std::size_t j = 0; j < i; ++j) {
      if (degree[order[j]] < max_degree) {
        open.push_back(order[j]);
      }
    }
    const VertexId parent = open[rng() % open.size()];
    const VertexId child = order[i];
    edges.insert(std::minmax(parent, child));
    ++degree[parent];
    ++degree[child];
  }
  for (std::size_t t = 0; t < extra && n >= 2; ++t) {
    const auto a = static_cast<VertexId>(rng() % n);
    const auto b = static_cast<VertexId>(rng() % n);
    if (a == b || degree[a] >= max_degree || degree[b] >= max_degree ||
        edges.contains(std::minmax(a, b))) {
      continue;
    }
    edges.insert(std::minmax(a, b));
    ++degree[a];
    ++degree[b];
  }
  return {edges.begin(), edges.end()};
}

inline bool connected_subset(const FastGraph& g, const std::vector<VertexId>& part) {
  if (part.empty()) {
    return false;
  }
  std::set<VertexId> in(part.begin(), part.end());
  std::set<VertexId> seen{part.front()};
  std::vector<VertexId> stack{part.front()};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const VertexId u : g.neighbors(v)) {
      if (in.contains(u) && seen.insert(u).second) {
        stack.push_back(u);
      }
    }
  }
  return seen.size() == in.size();
}

// Reference runtime: an event list over gates, independent of the level DP.
// Each gate becomes an event that starts once every earlier gate sharing a
// qubit has finished.
inline std::optional<Rational> event_list_runtime(const Circuit& c,
                                                  const Placement& p,
                                                  const PhysicalEnvironment& env) {
  const auto gates = c.flatten();
  std::vector<Rational> end(gates.size(), Rational(0));
  Rational total(0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    Rational start(0);
    for (std::size_t j = 0; j < i; ++j) {
      const auto& h = gates[j];
      const bool shares = h.touches(g.first) || (g.two_qubit() && h.touches(g.second));
      if (shares) {
        start = std::max(start, end[j]);
      }
    }
    Rational cost(0);
    if (g.duration.numerator() != 0) {
      const VertexId a = p.at(g.first);
      const VertexId b = g.two_qubit() ? p.at(g.second) : a;
      const auto& w = env.weight(a, b);
      if (!w.has_value()) {
        return std::nullopt;
      }
      cost = *w * g.duration;
    }
    end[i] = start + cost;
    total = std::max(total, end[i]);
  }
  return total;
}

// Minimum over spanning trees of the maximum edge weight, by trying every
// distinct weight as a cutoff.
inline std::optional<Rational> brute_bottleneck(const PhysicalEnvironment& env) {
  const std::size_t m = env.size();
  if (m <= 1) {
    return Rational(0);
  }
  std::set<Rational> weights;
  for (VertexId a = 0; a < m; ++a) {
    for (VertexId b = a + 1; b < m; ++b) {
      if (env.weight(a, b)) {
        weights.insert(*env.weight(a, b));
      }
    }
  }
  for (const Rational& t : weights) {
    std::vector<std::size_t> comp(m);
    std::iota(comp.begin(), comp.end(), 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (VertexId a = 0; a < m; ++a) {
        for (VertexId b = 0; b < m; ++b) {
          if (a != b && env.weight(a, b) && *env.weight(a, b) <= t &&
              comp[a] != comp[b]) {
            const auto lo = std::min(comp[a], comp[b]);
            comp[a] = comp[b] = lo;
            changed = true;
          }
        }
      }
    }
    if (std::all_of(comp.begin(), comp.end(), [&](std::size_t c) { return c == comp[0]; })) {
      return t;
    }
  }
  return std::nullopt;
}

// Brute-force Hamiltonian cycle check over vertex orderings fixing vertex 0.
inline bool has_hamiltonian_cycle(std::size_t m,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::set<std::pair<std::size_t, std::size_t>> adj;
  for (const auto& [a, b] : edges) {
    adj.insert({a, b});
    adj.insert({b, a});
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      ok = adj.contains({order[i], order[(i + 1) % m]});
    }
    if (ok) {
      return true;
    }
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return false;
}

} // namespace qplace::testing
