#include "qplace/monomorphism.hpp"

#include <algorithm>
#include <functional>

namespace qplace {

InteractionPattern InteractionPattern::of(std::span<const Gate> gates) {
  InteractionPattern p;
  for (const auto& g : gates) {
    if (!g.two_qubit()) {
      continue;
    }
    p.vertices.push_back(g.first);
    p.vertices.push_back(g.second);
    p.edges.emplace_back(std::min(g.first, g.second), std::max(g.first, g.second));
  }
  std::sort(p.vertices.begin(), p.vertices.end());
  p.vertices.erase(std::unique(p.vertices.begin(), p.vertices.end()),
                   p.vertices.end());
  std::sort(p.edges.begin(), p.edges.end());
  p.edges.erase(std::unique(p.edges.begin(), p.edges.end()), p.edges.end());
  return p;
}

InteractionPattern InteractionPattern::of(const Circuit& circuit) {
  const auto gates = circuit.flatten();
  return of(gates);
}

std::size_t InteractionPattern::index_of(QubitId q) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), q);
  if (it == vertices.end() || *it != q) {
    return SIZE_MAX;
  }
  return static_cast<std::size_t>(it - vertices.begin());
}

bool is_monomorphism(const InteractionPattern& pattern, const FastGraph& host,
                     std::span<const VertexId> images) {
  if (images.size() != pattern.vertices.size()) {
    return false;
  }
  std::vector<char> used(host.vertex_count(), 0);
  for (const VertexId v : images) {
    if (v >= host.vertex_count() || !host.contains(v) || used[v] != 0) {
      return false;
    }
    used[v] = 1;
  }
  for (const auto& [a, b] : pattern.edges) {
    if (!host.adjacent(images[pattern.index_of(a)], images[pattern.index_of(b)])) {
      return false;
    }
  }
  return true;
}

namespace {

class Matcher {
public:
  Matcher(const InteractionPattern& pattern, const FastGraph& host,
          const MonomorphismOptions& options)
      : pattern_(pattern), host_(host), options_(options),
        n_(pattern.vertices.size()), adj_(n_) {
    for (const auto& [a, b] : pattern.edges) {
      const auto ia = pattern.index_of(a);
      const auto ib = pattern.index_of(b);
      adj_[ia].push_back(ib);
      adj_[ib].push_back(ia);
    }
  }

  MonomorphismResult run() {
    if (!feasible_by_counting()) {
      result_.exhausted = true;
      return std::move(result_);
    }
    build_order();
    images_.assign(n_, kUnassigned);
    used_.assign(host_.vertex_count(), 0);
    const bool stopped = search(0);
    result_.exhausted = !stopped;
    return std::move(result_);
  }

private:
  // Necessary conditions that refute most impossible embeddings cheaply.
  bool feasible_by_counting() const {
    if (n_ > host_.size() || pattern_.edges.size() > host_.edges().size()) {
      return false;
    }
    std::vector<std::size_t> pdeg;
    std::vector<std::size_t> hdeg;
    for (const auto& a : adj_) {
      pdeg.push_back(a.size());
    }
    for (const VertexId v : host_.members()) {
      hdeg.push_back(host_.degree(v));
    }
    std::sort(pdeg.rbegin(), pdeg.rend());
    std::sort(hdeg.rbegin(), hdeg.rend());
    for (std::size_t i = 0; i < pdeg.size(); ++i) {
      if (pdeg[i] > hdeg[i]) {
        return false;
      }
    }
    // An embedded copy is a subgraph, so its cycle rank cannot exceed the
    // host's: |E| - |V| + #components.
    const auto rank = [](std::size_t e, std::size_t v, std::size_t c) {
      return static_cast<long long>(e) - static_cast<long long>(v) +
             static_cast<long long>(c);
    };
    const auto pattern_rank =
        rank(pattern_.edges.size(), n_, component_sizes().second);
    const auto host_rank =
        rank(host_.edges().size(), host_.size(), host_.components().size());
    return pattern_rank <= host_rank;
  }

  // (component id per vertex, component count); component_size_ filled too.
  std::pair<std::vector<std::size_t>, std::size_t> component_sizes() const {
    std::vector<std::size_t> comp(n_, SIZE_MAX);
    std::size_t count = 0;
    for (std::size_t r = 0; r < n_; ++r) {
      if (comp[r] != SIZE_MAX) {
        continue;
      }
      std::vector<std::size_t> stack{r};
      comp[r] = count;
      while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        for (const auto y : adj_[x]) {
          if (comp[y] == SIZE_MAX) {
            comp[y] = count;
            stack.push_back(y);
          }
        }
      }
      ++count;
    }
    return {comp, count};
  }

  void build_order() {
    const auto [comp, count] = component_sizes();
    std::vector<std::size_t> size(count, 0);
    for (const auto c : comp) {
      ++size[c];
    }
    std::vector<std::size_t> links(n_, 0);
    std::vector<char> placed(n_, 0);
    order_.clear();
    for (std::size_t step = 0; step < n_; ++step) {
      std::size_t best = SIZE_MAX;
      for (std::size_t i = 0; i < n_; ++i) {
        if (placed[i] != 0) {
          continue;
        }
        if (best == SIZE_MAX) {
          best = i;
          continue;
        }
        const auto key = [&](std::size_t x) {
          // Larger tuple wins; identifier ascending is handled by scan order.
          return std::make_tuple(links[x], links[x] == 0 ? size[comp[x]] : 0,
                                 adj_[x].size());
        };
        if (key(i) > key(best)) {
          best = i;
        }
      }
      placed[best] = 1;
      order_.push_back(best);
      for (const auto y : adj_[best]) {
        ++links[y];
      }
    }
    position_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      position_[order_[i]] = i;
    }
    earlier_.assign(n_, {});
    for (std::size_t i = 0; i < n_; ++i) {
      for (const auto y : adj_[order_[i]]) {
        if (position_[y] < i) {
          earlier_[i].push_back(y);
        }
      }
    }
  }

  // Returns true when the search was cut short (limit or budget).
  bool search(std::size_t depth) {
    if (depth == n_) {
      result_.maps.push_back(images_);
      return result_.maps.size() >= options_.limit;
    }
    const auto x = order_[depth];
    const auto& anchors = earlier_[depth];
    const auto& candidates = anchors.empty()
                                 ? host_.members()
                                 : host_.neighbors(images_[anchors.front()]);
    for (const VertexId v : candidates) {
      if (used_[v] != 0 || host_.degree(v) < adj_[x].size()) {
        continue;
      }
      bool ok = true;
      for (std::size_t k = 1; k < anchors.size() && ok; ++k) {
        ok = host_.adjacent(v, images_[anchors[k]]);
      }
      if (!ok) {
        continue;
      }
      if (options_.node_budget != 0 && result_.nodes >= options_.node_budget) {
        result_.budget_hit = true;
        return true;
      }
      ++result_.nodes;
      images_[x] = v;
      used_[v] = 1;
      const bool stop = search(depth + 1);
      used_[v] = 0;
      images_[x] = kUnassigned;
      if (stop) {
        return true;
      }
    }
    return false;
  }

  const InteractionPattern& pattern_;
  const FastGraph& host_;
  MonomorphismOptions options_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> position_;
  std::vector<std::vector<std::size_t>> earlier_;
  std::vector<VertexId> images_;
  std::vector<char> used_;
  MonomorphismResult result_;
};

} // namespace

MonomorphismResult enumerate_monomorphisms(const InteractionPattern& pattern,
                                           const FastGraph& host,
                                           const MonomorphismOptions& options) {
  MonomorphismOptions opts = options;
  opts.limit = std::max<std::size_t>(opts.limit, 1);
  auto result = Matcher(pattern, host, opts).run();
  // Every map is re-verified independently of the search bookkeeping.
  std::erase_if(result.maps, [&](const Monomorphism& m) {
    return !is_monomorphism(pattern, host, m);
  });
  return result;
}

} // namespace qplace
