#include "qplace/oracle.hpp"

#include "qplace/errors.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_map>

namespace qplace {

BigCount placement_count(std::size_t n, std::size_t m) {
  if (n > m) {
    return 0;
  }
  BigCount out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    out *= m - i;
  }
  return out;
}

ExhaustiveResult exhaustive_place(const Circuit& circuit,
                                  const PhysicalEnvironment& env, EvalMode mode,
                                  std::uint64_t budget) {
  const std::size_t n = circuit.qubit_count();
  const std::size_t m = env.size();
  ExhaustiveResult result;
  result.search_space = placement_count(n, m);
  if (result.search_space > budget) {
    throw BudgetExceededError("exhaustive search space " +
                                  result.search_space.str() +
                                  " exceeds budget " + std::to_string(budget),
                              result.search_space.str());
  }
  if (n > m) {
    throw InfeasibleError("circuit has more qubits than the environment");
  }

  std::vector<VertexId> images(n, kUnassigned);
  std::vector<char> used(m, 0);
  std::optional<Rational> best;
  std::vector<VertexId> best_images;

  const auto visit = [&](auto&& self, std::size_t q) -> void {
    if (q == n) {
      try {
        const Placement p(images, m);
        const Rational rt = evaluate_runtime(circuit, p, env, mode).total;
        if (!best.has_value() || rt < *best) {
          best = rt;
          best_images = images;
        }
      } catch (const InfeasibleError&) {
        // Uses an unavailable interaction; not a candidate.
      }
      return;
    }
    for (VertexId v = 0; v < m; ++v) {
      if (used[v] != 0) {
        continue;
      }
      used[v] = 1;
      images[q] = v;
      self(self, q + 1);
      used[v] = 0;
    }
    images[q] = kUnassigned;
  };
  visit(visit, 0);

  if (!best.has_value()) {
    throw InfeasibleError("no placement avoids unavailable interactions");
  }
  result.best = Placement(best_images, m);
  result.runtime = *best;
  return result;
}

std::size_t min_depth_routing(const FastGraph& g,
                              std::span<const VertexId> target) {
  const auto& members = g.members();
  const std::size_t k = members.size();
  if (k > kMaxOracleRoutingVertices) {
    throw BudgetExceededError("routing oracle limited to " +
                                  std::to_string(kMaxOracleRoutingVertices) +
                                  " vertices",
                              std::to_string(k));
  }
  if (target.size() != g.vertex_count()) {
    throw ValidationError("target permutation has wrong length");
  }
  std::vector<std::size_t> local(g.vertex_count(), SIZE_MAX);
  for (std::size_t i = 0; i < k; ++i) {
    local[members[i]] = i;
  }
  // Arrangement: slot i holds the local index of the value's start vertex,
  // packed four bits per slot.
  const auto pack = [k](const std::vector<std::uint8_t>& a) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < k; ++i) {
      key |= static_cast<std::uint64_t>(a[i]) << (4 * i);
    }
    return key;
  };
  std::vector<std::uint8_t> start(k);
  std::vector<std::uint8_t> goal(k);
  for (std::size_t i = 0; i < k; ++i) {
    start[i] = static_cast<std::uint8_t>(i);
    const std::size_t t = local.at(target[members[i]]);
    if (t == SIZE_MAX) {
      throw ValidationError("target leaves the graph");
    }
    goal[t] = static_cast<std::uint8_t>(i);
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : g.edges()) {
    edges.emplace_back(local[e.u], local[e.v]);
  }
  // Every non-empty matching is one possible layer.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> moves;
  std::vector<std::pair<std::size_t, std::size_t>> current;
  std::vector<char> busy(k, 0);
  const auto collect = [&](auto&& self, std::size_t from) -> void {
    if (!current.empty()) {
      moves.push_back(current);
    }
    for (std::size_t e = from; e < edges.size(); ++e) {
      const auto [a, b] = edges[e];
      if (busy[a] != 0 || busy[b] != 0) {
        continue;
      }
      busy[a] = busy[b] = 1;
      current.push_back(edges[e]);
      self(self, e + 1);
      current.pop_back();
      busy[a] = busy[b] = 0;
    }
  };
  collect(collect, 0);

  const std::uint64_t goal_key = pack(goal);
  std::unordered_map<std::uint64_t, std::size_t> dist;
  std::deque<std::vector<std::uint8_t>> queue;
  dist.emplace(pack(start), 0);
  queue.push_back(start);
  while (!queue.empty()) {
    auto state = std::move(queue.front());
    queue.pop_front();
    const std::size_t d = dist.at(pack(state));
    if (pack(state) == goal_key) {
      return d;
    }
    for (const auto& move : moves) {
      auto next = state;
      for (const auto& [a, b] : move) {
        std::swap(next[a], next[b]);
      }
      if (dist.emplace(pack(next), d + 1).second) {
        queue.push_back(std::move(next));
      }
    }
  }
  throw InfeasibleError("permutation is not reachable on this graph");
}

} // namespace qplace
