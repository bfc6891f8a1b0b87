#include "qplace/swap_router.hpp"

#include "qplace/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace qplace {

std::size_t SwapSchedule::swap_count() const {
  std::size_t total = 0;
  for (const auto& layer : layers) {
    total += layer.size();
  }
  return total;
}

std::vector<VertexId> realized_permutation(const SwapSchedule& schedule,
                                           std::size_t vertex_count) {
  // holder[v] = starting vertex of the value currently on v.
  std::vector<VertexId> holder(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    holder[v] = static_cast<VertexId>(v);
  }
  for (const auto& layer : schedule.layers) {
    for (const auto& [a, b] : layer) {
      std::swap(holder.at(a), holder.at(b));
    }
  }
  std::vector<VertexId> out(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    out[holder[v]] = static_cast<VertexId>(v);
  }
  return out;
}

bool schedule_is_legal(const SwapSchedule& schedule, const FastGraph& g) {
  std::vector<std::size_t> stamp(g.vertex_count(), SIZE_MAX);
  for (std::size_t li = 0; li < schedule.layers.size(); ++li) {
    for (const auto& [a, b] : schedule.layers[li]) {
      if (a >= g.vertex_count() || b >= g.vertex_count() || !g.adjacent(a, b) ||
          stamp[a] == li || stamp[b] == li) {
        return false;
      }
      stamp[a] = li;
      stamp[b] = li;
    }
  }
  return true;
}

namespace {

Rational balance(std::size_t a, std::size_t b) {
  return {static_cast<std::int64_t>(std::min(a, b)),
          static_cast<std::int64_t>(std::max(a, b))};
}

struct Tree {
  std::vector<VertexId> order; // BFS order from the root
  std::vector<VertexId> parent;
  std::vector<std::size_t> subtree;
};

// BFS spanning tree of `g` restricted to vertices with mask[v] != 0.
Tree bfs_tree(const FastGraph& g, VertexId root, const std::vector<char>& mask) {
  Tree t;
  t.parent.assign(g.vertex_count(), kUnassigned);
  t.subtree.assign(g.vertex_count(), 0);
  t.order.push_back(root);
  t.parent[root] = root;
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    for (const VertexId w : g.neighbors(t.order[i])) {
      if (mask[w] != 0 && t.parent[w] == kUnassigned) {
        t.parent[w] = t.order[i];
        t.order.push_back(w);
      }
    }
  }
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    t.subtree[*it] += 1;
    if (*it != root) {
      t.subtree[t.parent[*it]] += t.subtree[*it];
    }
  }
  return t;
}

std::vector<VertexId> subtree_members(const Tree& t, VertexId top) {
  // Members of the subtree under `top`: BFS order lists descendants after
  // their ancestors, so one pass with a membership flag suffices.
  std::vector<char> in(t.parent.size(), 0);
  std::vector<VertexId> out;
  in[top] = 1;
  for (const VertexId v : t.order) {
    if (v == top || (t.parent[v] != v && in[t.parent[v]] != 0)) {
      in[v] = 1;
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool connected_within(const FastGraph& g, const std::vector<char>& mask,
                      std::size_t expected) {
  VertexId start = kUnassigned;
  for (const VertexId v : g.members()) {
    if (mask[v] != 0) {
      start = v;
      break;
    }
  }
  if (start == kUnassigned) {
    return expected == 0;
  }
  return bfs_tree(g, start, mask).order.size() == expected;
}

SeparatorResult finish_split(const FastGraph& g, std::vector<VertexId> first) {
  std::sort(first.begin(), first.end());
  std::vector<char> in_first(g.vertex_count(), 0);
  for (const VertexId v : first) {
    in_first[v] = 1;
  }
  SeparatorResult out;
  for (const VertexId v : g.members()) {
    if (in_first[v] == 0) {
      out.second.push_back(v);
    }
  }
  out.first = std::move(first);
  out.ratio = balance(out.first.size(), out.second.size());
  bool found = false;
  Rational best(0);
  for (const auto& e : g.edges()) {
    if (in_first[e.u] == in_first[e.v]) {
      continue;
    }
    const Swap oriented = in_first[e.u] != 0 ? Swap{e.u, e.v} : Swap{e.v, e.u};
    if (!found || e.weight < best) {
      best = e.weight;
      out.channel = oriented;
      found = true;
    }
  }
  return out;
}

void require_splittable(const FastGraph& g) {
  if (g.size() < 2) {
    throw ValidationError("separator needs at least two vertices");
  }
  if (!g.connected()) {
    throw ValidationError("separator needs a connected graph");
  }
}

} // namespace

SeparatorResult constructive_separator(const FastGraph& g) {
  require_splittable(g);
  const auto n = static_cast<std::int64_t>(g.size());
  const auto k = static_cast<std::int64_t>(g.max_degree());
  const Rational lo(n - 1, k);
  const Rational hi = Rational(n) - lo;
  std::vector<char> all(g.vertex_count(), 0);
  for (const VertexId v : g.members()) {
    all[v] = 1;
  }
  const VertexId v1 = g.members().front();
  // BFS from v1 keeps every edge at v1 in the tree.
  const Tree t = bfs_tree(g, v1, all);
  const auto in_range = [&](std::size_t s) {
    const Rational size(static_cast<std::int64_t>(s));
    return size >= lo && size <= hi;
  };

  VertexId best_top = kUnassigned;
  Rational best_ratio(-1);
  const auto consider = [&](VertexId top) {
    const Rational r = balance(t.subtree[top], g.size() - t.subtree[top]);
    if (r > best_ratio) {
      best_ratio = r;
      best_top = top;
    }
    return in_range(t.subtree[top]);
  };

  VertexId current = v1;
  while (true) {
    VertexId large = kUnassigned;
    for (const VertexId c : g.neighbors(current)) {
      if (t.parent[c] != current || c == current) {
        continue;
      }
      if (consider(c)) {
        return finish_split(g, subtree_members(t, c));
      }
      if (Rational(static_cast<std::int64_t>(t.subtree[c])) > hi) {
        large = c;
      }
    }
    if (large == kUnassigned) {
      break;
    }
    // Absorb current and its small subtrees; continue into the large one.
    current = large;
  }
  if (best_top == kUnassigned) {
    throw std::logic_error("constructive separator found no cut");
  }
  return finish_split(g, subtree_members(t, best_top));
}

SeparatorResult balanced_connected_separator(const FastGraph& g) {
  require_splittable(g);
  const std::size_t n = g.size();
  std::vector<char> all(g.vertex_count(), 0);
  for (const VertexId v : g.members()) {
    all[v] = 1;
  }
  Rational best_ratio(-1);
  std::vector<VertexId> best_part;
  for (const VertexId root : g.members()) {
    const Tree t = bfs_tree(g, root, all);
    for (const VertexId v : t.order) {
      if (v == root) {
        continue;
      }
      const Rational r = balance(t.subtree[v], n - t.subtree[v]);
      if (r > best_ratio) {
        best_ratio = r;
        best_part = subtree_members(t, v);
      }
    }
    if (best_ratio == balance(n / 2, n - n / 2)) {
      break;
    }
  }

  // Boundary moves from the larger part while both parts stay connected.
  std::vector<char> in_part(g.vertex_count(), 0);
  for (const VertexId v : best_part) {
    in_part[v] = 1;
  }
  std::size_t part_size = best_part.size();
  bool improved = true;
  while (improved) {
    improved = false;
    const bool part_is_small = 2 * part_size < n;
    const std::size_t small = part_is_small ? part_size : n - part_size;
    if (n - 2 * small <= 1) {
      break;
    }
    for (const VertexId v : g.members()) {
      // v must lie in the larger part and border the smaller one.
      const bool v_in_large = (in_part[v] != 0) != part_is_small;
      if (!v_in_large) {
        continue;
      }
      const bool borders = std::any_of(
          g.neighbors(v).begin(), g.neighbors(v).end(), [&](VertexId w) {
            return all[w] != 0 && ((in_part[w] != 0) == part_is_small);
          });
      if (!borders) {
        continue;
      }
      in_part[v] = in_part[v] != 0 ? 0 : 1;
      std::vector<char> rest(g.vertex_count(), 0);
      for (const VertexId w : g.members()) {
        rest[w] = in_part[w] != 0 ? 0 : 1;
      }
      const std::size_t new_part = part_size + (in_part[v] != 0 ? 1 : std::size_t(-1));
      if (connected_within(g, in_part, new_part) &&
          connected_within(g, rest, n - new_part)) {
        part_size = new_part;
        improved = true;
        break;
      }
      in_part[v] = in_part[v] != 0 ? 0 : 1;
    }
  }
  std::vector<VertexId> part;
  for (const VertexId v : g.members()) {
    if (in_part[v] != 0) {
      part.push_back(v);
    }
  }
  SeparatorResult out = finish_split(g, std::move(part));
  const Rational floor(1, static_cast<std::int64_t>(std::max<std::size_t>(g.max_degree(), 1)));
  if (out.ratio < floor) {
    SeparatorResult fallback = constructive_separator(g);
    if (fallback.ratio > out.ratio) {
      return fallback;
    }
  }
  return out;
}

namespace {

class Router {
public:
  Router(const FastGraph& g, std::span<const VertexId> target,
         const RouteOptions& options)
      : g_(g), options_(options), dest_(target.begin(), target.end()),
        retired_(g.vertex_count(), 0), side_(g.vertex_count(), -1),
        used_(g.vertex_count(), 0) {}

  SwapSchedule run() {
    SwapSchedule out;
    out.layers = solve(g_.members());
    return out;
  }

private:
  using Layers = std::vector<std::vector<Swap>>;

  Layers solve(std::vector<VertexId> members) {
    std::erase_if(members, [&](VertexId v) { return retired_[v] != 0; });
    if (members.size() <= 1 ||
        std::all_of(members.begin(), members.end(),
                    [&](VertexId v) { return dest_[v] == v; })) {
      return {};
    }
    if (members.size() == 2) {
      const Swap s{members[0], members[1]};
      std::swap(dest_[s.first], dest_[s.second]);
      return {{s}};
    }
    const FastGraph sub = g_.induced(members);
    const SeparatorResult sep = balanced_connected_separator(sub);
    for (const VertexId v : sep.first) {
      side_[v] = 0;
    }
    for (const VertexId v : sep.second) {
      side_[v] = 1;
    }
    Layers layers = exchange(sub, sep);
    for (const VertexId v : members) {
      side_[v] = -1;
    }
    Layers left = solve(sep.first);
    Layers right = solve(sep.second);
    const std::size_t depth = std::max(left.size(), right.size());
    for (std::size_t i = 0; i < depth; ++i) {
      std::vector<Swap> layer;
      if (i < left.size()) {
        layer.insert(layer.end(), left[i].begin(), left[i].end());
      }
      if (i < right.size()) {
        layer.insert(layer.end(), right[i].begin(), right[i].end());
      }
      layers.push_back(std::move(layer));
    }
    return layers;
  }

  [[nodiscard]] bool leaving(VertexId v) const {
    return side_[dest_[v]] != side_[v];
  }

  // Moves every value to the half containing its destination.
  Layers exchange(const FastGraph& sub, const SeparatorResult& sep) {
    const VertexId root0 = sep.channel.first;
    const VertexId root1 = sep.channel.second;
    std::vector<char> mask0(g_.vertex_count(), 0);
    std::vector<char> mask1(g_.vertex_count(), 0);
    for (const VertexId v : sep.first) {
      mask0[v] = 1;
    }
    for (const VertexId v : sep.second) {
      mask1[v] = 1;
    }
    const Tree trees[2] = {bfs_tree(sub, root0, mask0), bfs_tree(sub, root1, mask1)};
    std::vector<std::vector<VertexId>> children(g_.vertex_count());
    for (const auto& t : trees) {
      for (const VertexId v : t.order) {
        if (t.parent[v] != v) {
          children[t.parent[v]].push_back(v);
        }
      }
    }
    for (auto& c : children) {
      std::sort(c.begin(), c.end());
    }

    std::size_t wrong = 0;
    for (const VertexId v : sub.members()) {
      wrong += leaving(v) ? 1 : 0;
    }
    Layers layers;
    std::vector<VertexId> touched;
    std::vector<VertexId> to_retire;
    while (wrong > 0) {
      std::vector<Swap> layer;
      const auto take = [&](VertexId a, VertexId b) {
        layer.emplace_back(std::min(a, b), std::max(a, b));
        used_[a] = 1;
        used_[b] = 1;
        touched.push_back(a);
        touched.push_back(b);
      };

      if (options_.leaf_override) {
        for (const VertexId leaf : sub.members()) {
          if (retired_[leaf] != 0 || leaf == root0 || leaf == root1 ||
              used_[leaf] != 0) {
            continue;
          }
          VertexId only = kUnassigned;
          std::size_t active = 0;
          for (const VertexId w : sub.neighbors(leaf)) {
            if (retired_[w] == 0) {
              ++active;
              only = w;
            }
          }
          if (active != 1 || side_[only] != side_[leaf]) {
            continue;
          }
          if (dest_[leaf] == leaf) {
            to_retire.push_back(leaf);
          } else if (dest_[only] == leaf && used_[only] == 0) {
            take(leaf, only);
            to_retire.push_back(leaf);
          }
        }
      }

      if (used_[root0] == 0 && used_[root1] == 0 && leaving(root0) &&
          leaving(root1)) {
        take(root0, root1);
      }

      for (const auto& t : trees) {
        for (const VertexId p : t.order) {
          if (used_[p] != 0 || retired_[p] != 0 || leaving(p)) {
            continue;
          }
          for (const VertexId c : children[p]) {
            if (retired_[c] == 0 && used_[c] == 0 && leaving(c)) {
              take(p, c);
              break;
            }
          }
        }
      }

      for (const auto& [a, b] : layer) {
        const std::size_t was = (leaving(a) ? 1 : 0) + (leaving(b) ? 1 : 0);
        std::swap(dest_[a], dest_[b]);
        const std::size_t now = (leaving(a) ? 1 : 0) + (leaving(b) ? 1 : 0);
        wrong = wrong - was + now;
      }
      for (const VertexId v : touched) {
        used_[v] = 0;
      }
      touched.clear();
      for (const VertexId v : to_retire) {
        retired_[v] = 1;
      }
      const bool retired_any = !to_retire.empty();
      to_retire.clear();
      if (layer.empty()) {
        if (!retired_any) {
          throw std::logic_error("routing made no progress");
        }
        continue;
      }
      layers.push_back(std::move(layer));
    }
    return layers;
  }

  const FastGraph& g_;
  RouteOptions options_;
  std::vector<VertexId> dest_;
  std::vector<char> retired_;
  std::vector<int> side_;
  std::vector<char> used_;
};

} // namespace

SwapSchedule route_permutation(const FastGraph& g,
                               std::span<const VertexId> target,
                               const RouteOptions& options) {
  if (target.size() != g.vertex_count()) {
    throw ValidationError("target permutation has wrong length");
  }
  std::vector<char> hit(g.vertex_count(), 0);
  for (std::size_t v = 0; v < target.size(); ++v) {
    const VertexId t = target[v];
    if (t >= g.vertex_count() || hit[t] != 0) {
      throw ValidationError("target is not a bijection");
    }
    hit[t] = 1;
    if (g.contains(static_cast<VertexId>(v)) != g.contains(t) ||
        (!g.contains(static_cast<VertexId>(v)) && t != v)) {
      throw ValidationError("target moves a vertex outside the graph");
    }
  }
  if (!g.connected()) {
    throw InfeasibleError("cannot route on a disconnected graph");
  }
  SwapSchedule routed = Router(g, target, options).run();
  if (options.leaf_override) {
    // Retiring leaves reshapes later splits and can cost a layer; keep the
    // override only when it is no deeper than the plain schedule.
    SwapSchedule plain = Router(g, target, RouteOptions{false}).run();
    if (plain.depth() < routed.depth()) {
      return plain;
    }
  }
  return routed;
}

Circuit schedule_to_gates(const SwapSchedule& schedule,
                          const PhysicalEnvironment& env,
                          const Rational& swap_duration) {
  std::vector<Level> levels;
  levels.reserve(schedule.layers.size());
  for (const auto& layer : schedule.layers) {
    Level level;
    for (const auto& [a, b] : layer) {
      level.push_back(two_gate("SWAP", swap_duration, a, b));
    }
    levels.push_back(std::move(level));
  }
  return {env.names(), std::move(levels)};
}

} // namespace qplace
