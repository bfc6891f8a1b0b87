#include "qplace/placer.hpp"

#include "qplace/errors.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

namespace qplace {

void validate_config(const PlacementConfig& config) {
  if (config.k == 0) {
    throw ValidationError("k must be at least 1");
  }
  if (config.threshold.has_value() && *config.threshold < 0) {
    throw ValidationError("threshold must be non-negative");
  }
  if (config.swap_duration < 0) {
    throw ValidationError("swap duration must be non-negative");
  }
}

PrefixResult extract_max_prefix(std::span<const Gate> gates,
                                const FastGraph& host,
                                std::uint64_t node_budget) {
  const std::size_t m = host.vertex_count();
  std::size_t qubits = 0;
  for (const auto& g : gates) {
    qubits = std::max<std::size_t>(qubits, g.first + 1);
    if (g.two_qubit()) {
      qubits = std::max<std::size_t>(qubits, g.second + 1);
    }
  }
  std::vector<VertexId> img(qubits, kUnassigned);
  std::vector<char> used(m, 0);
  std::set<std::pair<QubitId, QubitId>> seen;

  const auto free_neighbor = [&](VertexId v) {
    for (const VertexId u : host.neighbors(v)) {
      if (used[u] == 0) {
        return u;
      }
    }
    return kUnassigned;
  };
  const auto bind = [&](QubitId q, VertexId v) {
    img[q] = v;
    used[v] = 1;
  };

  std::size_t i = 0;
  for (; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (!g.two_qubit()) {
      continue;
    }
    const auto key = std::minmax(g.first, g.second);
    if (seen.contains(key)) {
      continue;
    }
    // Try to grow the current witness before paying for a full search.
    const VertexId ia = img[g.first];
    const VertexId ib = img[g.second];
    bool extended = false;
    if (ia != kUnassigned && ib != kUnassigned) {
      extended = host.adjacent(ia, ib);
    } else if (ia != kUnassigned || ib != kUnassigned) {
      const bool a_mapped = ia != kUnassigned;
      const VertexId v = free_neighbor(a_mapped ? ia : ib);
      if (v != kUnassigned) {
        bind(a_mapped ? g.second : g.first, v);
        extended = true;
      }
    } else {
      for (const auto& e : host.edges()) {
        if (used[e.u] == 0 && used[e.v] == 0) {
          bind(g.first, e.u);
          bind(g.second, e.v);
          extended = true;
          break;
        }
      }
    }
    if (!extended) {
      const auto pattern = InteractionPattern::of(gates.first(i + 1));
      const auto found =
          enumerate_monomorphisms(pattern, host, {1, node_budget});
      if (found.maps.empty()) {
        break;
      }
      std::fill(img.begin(), img.end(), kUnassigned);
      std::fill(used.begin(), used.end(), 0);
      for (std::size_t j = 0; j < pattern.vertices.size(); ++j) {
        bind(pattern.vertices[j], found.maps.front()[j]);
      }
    }
    seen.insert(key);
  }
  if (i < gates.size() && seen.empty()) {
    const Gate& g = gates[i];
    throw InfeasibleError("no embedding for gate '" + g.label +
                          "': the fast graph has no usable edge");
  }

  PrefixResult result;
  result.length = i;
  result.pattern = InteractionPattern::of(gates.first(i));
  for (const QubitId q : result.pattern.vertices) {
    result.witness.push_back(img[q]);
  }
  return result;
}

namespace {

bool improves(const std::optional<Rational>& candidate,
              const std::optional<Rational>& current) {
  return candidate.has_value() && (!current.has_value() || *candidate < *current);
}

} // namespace

Placement fine_tune(const Placement& p, const Circuit& stage,
                    const PhysicalEnvironment& env, const FastGraph& host,
                    const PlacementConfig& config) {
  const std::size_t n = stage.qubit_count();
  const std::size_t m = env.size();
  if (p.qubit_count() != n || p.vertex_count() != m) {
    throw ValidationError("placement does not match stage and environment");
  }
  const auto gates = stage.flatten();
  const auto pattern = InteractionPattern::of(gates);
  std::vector<std::vector<QubitId>> partners(n);
  for (const auto& [a, b] : pattern.edges) {
    partners[a].push_back(b);
    partners[b].push_back(a);
  }
  std::vector<char> active(n, 0);
  for (const auto& g : gates) {
    if (g.two_qubit() || g.duration.numerator() != 0) {
      active[g.first] = 1;
    }
  }
  for (const QubitId q : pattern.vertices) {
    active[q] = 1;
  }

  std::vector<VertexId> images = p.images();
  std::vector<QubitId> occupant(m, kNoQubit);
  for (QubitId q = 0; q < n; ++q) {
    if (images[q] != kUnassigned) {
      occupant[images[q]] = q;
    }
  }
  const auto on_edges = [&](QubitId q) {
    for (const QubitId r : partners[q]) {
      if (images[r] == kUnassigned || !host.adjacent(images[q], images[r])) {
        return false;
      }
    }
    return true;
  };

  const StageEvaluator eval(stage, env, config.mode);
  std::optional<Rational> current = eval.runtime(images);
  for (std::size_t sweep = 0; sweep < config.max_sweeps; ++sweep) {
    bool improved = false;
    for (QubitId q = 0; q < n; ++q) {
      if (active[q] == 0 || images[q] == kUnassigned) {
        continue;
      }
      for (const VertexId v : host.members()) {
        const VertexId from = images[q];
        if (v == from) {
          continue;
        }
        const QubitId other = occupant[v];
        images[q] = v;
        if (other != kNoQubit) {
          images[other] = from;
        }
        bool keep = on_edges(q) && (other == kNoQubit || on_edges(other));
        if (keep) {
          const auto candidate = eval.runtime(images);
          keep = improves(candidate, current);
          if (keep) {
            current = candidate;
          }
        }
        if (keep) {
          occupant[v] = q;
          occupant[from] = other;
          improved = true;
        } else {
          images[q] = from;
          if (other != kNoQubit) {
            images[other] = v;
          }
        }
      }
    }
    if (!improved) {
      break;
    }
  }
  return Placement(std::move(images), m);
}

namespace {

struct StagePlan {
  Circuit circuit;
  InteractionPattern pattern;
  Monomorphism witness;
};

std::vector<StagePlan> split_stages(const Circuit& merged, const FastGraph& host,
                                    std::uint64_t node_budget) {
  std::vector<Gate> flat;
  std::vector<std::size_t> level_of;
  for (std::size_t li = 0; li < merged.levels().size(); ++li) {
    for (const auto& g : merged.levels()[li]) {
      flat.push_back(g);
      level_of.push_back(li);
    }
  }
  std::vector<StagePlan> plans;
  std::size_t pos = 0;
  while (pos < flat.size()) {
    auto prefix =
        extract_max_prefix(std::span(flat).subspan(pos), host, node_budget);
    std::vector<Level> levels;
    for (std::size_t j = pos; j < pos + prefix.length; ++j) {
      if (j == pos || level_of[j] != level_of[j - 1]) {
        levels.emplace_back();
      }
      levels.back().push_back(flat[j]);
    }
    plans.push_back({Circuit(merged.qubits(), std::move(levels)),
                     std::move(prefix.pattern), std::move(prefix.witness)});
    pos += prefix.length;
  }
  if (plans.empty()) {
    plans.push_back({Circuit(merged.qubits(), {}), {}, {}});
  }
  return plans;
}

/// Fine-tuned, deduplicated stage placements covering only the qubits the
/// stage uses.
std::vector<std::vector<VertexId>>
stage_candidates(const StagePlan& plan, std::size_t stage_index,
                 const PhysicalEnvironment& env, const FastGraph& host,
                 const PlacementConfig& config) {
  const std::size_t n = plan.circuit.qubit_count();
  const std::size_t m = env.size();
  auto found =
      enumerate_monomorphisms(plan.pattern, host, {config.k, config.node_budget});
  if (found.maps.empty()) {
    found.maps.push_back(plan.witness);
  }

  // Qubits with only single-qubit work go to the cheapest free vertices,
  // heaviest load first.
  std::vector<Rational> load(n, Rational(0));
  std::vector<char> in_pattern(n, 0);
  for (const QubitId q : plan.pattern.vertices) {
    in_pattern[q] = 1;
  }
  for (const auto& level : plan.circuit.levels()) {
    for (const auto& g : level) {
      if (!g.two_qubit()) {
        load[g.first] += g.duration;
      }
    }
  }
  std::vector<QubitId> singles;
  for (QubitId q = 0; q < n; ++q) {
    if (in_pattern[q] == 0 && load[q] > 0) {
      singles.push_back(q);
    }
  }
  std::stable_sort(singles.begin(), singles.end(),
                   [&](QubitId a, QubitId b) { return load[a] > load[b]; });
  std::vector<VertexId> by_diagonal(m);
  std::iota(by_diagonal.begin(), by_diagonal.end(), VertexId{0});
  std::stable_sort(by_diagonal.begin(), by_diagonal.end(),
                   [&](VertexId a, VertexId b) {
                     const auto& wa = env.weight(a, a);
                     const auto& wb = env.weight(b, b);
                     if (wa.has_value() != wb.has_value()) {
                       return wa.has_value();
                     }
                     return wa.has_value() && *wa < *wb;
                   });

  const StageEvaluator eval(plan.circuit, env, config.mode);
  std::vector<std::vector<VertexId>> out;
  std::set<std::vector<VertexId>> seen;
  for (const auto& map : found.maps) {
    std::vector<VertexId> images(n, kUnassigned);
    std::vector<char> used(m, 0);
    for (std::size_t j = 0; j < map.size(); ++j) {
      images[plan.pattern.vertices[j]] = map[j];
      used[map[j]] = 1;
    }
    auto next_free = by_diagonal.begin();
    for (const QubitId q : singles) {
      while (used[*next_free] != 0) {
        ++next_free;
      }
      images[q] = *next_free;
      used[*next_free] = 1;
    }
    auto tuned = fine_tune(Placement(std::move(images), m), plan.circuit, env,
                           host, config)
                     .images();
    if (!eval.runtime(tuned).has_value()) {
      continue;
    }
    if (seen.insert(tuned).second) {
      out.push_back(std::move(tuned));
    }
  }
  if (out.empty()) {
    throw InfeasibleError("no feasible placement for stage " +
                          std::to_string(stage_index + 1));
  }
  return out;
}

/// Fast-graph components and the routing between complete placements.
class Transitions {
public:
  explicit Transitions(const FastGraph& host)
      : host_(&host), component_of_(host.vertex_count(), 0) {
    const auto comps = host.components();
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (const VertexId v : comps[c]) {
        component_of_[v] = c;
      }
      if (comps[c].size() >= 2) {
        graphs_.push_back(host.induced(comps[c]));
      }
    }
  }

  /// Unused qubits keep their previous vertex when it is free, otherwise
  /// take the nearest free vertex (by hops, then id).
  [[nodiscard]] std::vector<VertexId>
  complete(const std::vector<VertexId>& partial,
           const std::vector<VertexId>* prev) const {
    const std::size_t m = host_->vertex_count();
    std::vector<VertexId> images = partial;
    std::vector<char> used(m, 0);
    for (const VertexId v : images) {
      if (v != kUnassigned) {
        used[v] = 1;
      }
    }
    std::vector<QubitId> displaced;
    for (QubitId q = 0; q < images.size(); ++q) {
      if (images[q] != kUnassigned) {
        continue;
      }
      if (prev != nullptr && used[(*prev)[q]] == 0) {
        images[q] = (*prev)[q];
        used[images[q]] = 1;
      } else {
        displaced.push_back(q);
      }
    }
    for (const QubitId q : displaced) {
      VertexId pick = kUnassigned;
      if (prev != nullptr) {
        pick = nearest_free((*prev)[q], used);
      }
      if (pick == kUnassigned) {
        pick = static_cast<VertexId>(
            std::find(used.begin(), used.end(), 0) - used.begin());
      }
      images[q] = pick;
      used[pick] = 1;
    }
    return images;
  }

  /// SWAP layers moving every qubit from `prev` to `next`; nullopt when a
  /// qubit would have to leave its fast-graph component.
  [[nodiscard]] std::optional<SwapSchedule>
  route(const std::vector<VertexId>& prev,
        const std::vector<VertexId>& next) const {
    const std::size_t m = host_->vertex_count();
    std::vector<VertexId> target(m);
    std::iota(target.begin(), target.end(), VertexId{0});
    std::vector<char> was(m, 0);
    std::vector<char> will(m, 0);
    for (std::size_t q = 0; q < prev.size(); ++q) {
      if (component_of_[prev[q]] != component_of_[next[q]]) {
        return std::nullopt;
      }
      target[prev[q]] = next[q];
      was[prev[q]] = 1;
      will[next[q]] = 1;
    }
    // Empty values leave vertices that become occupied, in sorted pairs per
    // component.
    std::vector<std::vector<VertexId>> sources(graphs_.size() + m);
    std::vector<std::vector<VertexId>> sinks(graphs_.size() + m);
    for (VertexId v = 0; v < m; ++v) {
      if (was[v] == 0 && will[v] != 0) {
        sources[component_of_[v]].push_back(v);
      } else if (was[v] != 0 && will[v] == 0) {
        sinks[component_of_[v]].push_back(v);
      }
    }
    for (std::size_t c = 0; c < sources.size(); ++c) {
      if (sources[c].size() != sinks[c].size()) {
        return std::nullopt;
      }
      for (std::size_t i = 0; i < sources[c].size(); ++i) {
        target[sources[c][i]] = sinks[c][i];
      }
    }

    SwapSchedule merged;
    for (const auto& g : graphs_) {
      std::vector<VertexId> local(m);
      std::iota(local.begin(), local.end(), VertexId{0});
      bool moves = false;
      for (const VertexId v : g.members()) {
        local[v] = target[v];
        moves = moves || target[v] != v;
      }
      if (!moves) {
        continue;
      }
      const auto part = route_permutation(g, local);
      if (merged.layers.size() < part.layers.size()) {
        merged.layers.resize(part.layers.size());
      }
      for (std::size_t i = 0; i < part.layers.size(); ++i) {
        merged.layers[i].insert(merged.layers[i].end(), part.layers[i].begin(),
                                part.layers[i].end());
      }
    }
    for (auto& layer : merged.layers) {
      std::sort(layer.begin(), layer.end());
    }
    return merged;
  }

private:
  [[nodiscard]] VertexId nearest_free(VertexId start,
                                      const std::vector<char>& used) const {
    const std::size_t m = host_->vertex_count();
    std::vector<std::size_t> dist(m, SIZE_MAX);
    std::deque<VertexId> queue{start};
    dist[start] = 0;
    VertexId best = kUnassigned;
    std::size_t best_dist = SIZE_MAX;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      if (dist[v] > best_dist) {
        break;
      }
      if (used[v] == 0 && (dist[v] < best_dist || v < best)) {
        best = v;
        best_dist = dist[v];
      }
      for (const VertexId u : host_->neighbors(v)) {
        if (dist[u] == SIZE_MAX) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
      }
    }
    return best;
  }

  const FastGraph* host_;
  std::vector<std::size_t> component_of_;
  std::vector<FastGraph> graphs_;
};

/// Clock arithmetic over vertices for scoring candidates, either exact
/// rationals or integers after a common rescaling.
template <class T>
class CostModel {
public:
  struct Op {
    QubitId a;
    QubitId b;
    T duration;
    bool zero;
    bool level_end;
  };

  EvalMode mode = EvalMode::kPipelined;
  std::size_t m = 0;
  std::vector<T> weight;
  std::vector<char> available;
  T swap_duration{0};
  std::vector<std::vector<Op>> stages;

  /// Returns false when a gate needs an unavailable interaction.
  bool run_stage(std::vector<T>& clock, std::size_t stage,
                 const std::vector<VertexId>& images) const {
    for (const auto& op : stages[stage]) {
      const VertexId a = images[op.a];
      if (op.b != kNoQubit) {
        const VertexId b = images[op.b];
        T done = std::max(clock[a], clock[b]);
        if (!op.zero) {
          const std::size_t at = static_cast<std::size_t>(a) * m + b;
          if (available[at] == 0) {
            return false;
          }
          done += weight[at] * op.duration;
        }
        clock[a] = done;
        clock[b] = done;
      } else if (!op.zero) {
        const std::size_t at = static_cast<std::size_t>(a) * m + a;
        if (available[at] == 0) {
          return false;
        }
        clock[a] += weight[at] * op.duration;
      }
      if (op.level_end) {
        barrier(clock);
      }
    }
    return true;
  }

  void run_swaps(std::vector<T>& clock, const SwapSchedule& schedule) const {
    for (const auto& layer : schedule.layers) {
      for (const auto& [u, v] : layer) {
        const T done = std::max(clock[u], clock[v]) +
                       weight[static_cast<std::size_t>(u) * m + v] * swap_duration;
        clock[u] = done;
        clock[v] = done;
      }
      barrier(clock);
    }
  }

private:
  void barrier(std::vector<T>& clock) const {
    if (mode == EvalMode::kSequentialLevels && !clock.empty()) {
      const T top = *std::max_element(clock.begin(), clock.end());
      std::fill(clock.begin(), clock.end(), top);
    }
  }
};

template <class T, class Weight, class Duration>
CostModel<T> build_cost_model(const PhysicalEnvironment& env,
                              const std::vector<StagePlan>& plans,
                              const PlacementConfig& config, Weight to_weight,
                              Duration to_duration) {
  CostModel<T> model;
  model.mode = config.mode;
  model.m = env.size();
  model.weight.assign(model.m * model.m, T(0));
  model.available.assign(model.m * model.m, 0);
  for (VertexId a = 0; a < model.m; ++a) {
    for (VertexId b = 0; b < model.m; ++b) {
      if (const auto& w = env.weight(a, b)) {
        model.weight[a * model.m + b] = to_weight(*w);
        model.available[a * model.m + b] = 1;
      }
    }
  }
  model.swap_duration = to_duration(config.swap_duration);
  for (const auto& plan : plans) {
    auto& ops = model.stages.emplace_back();
    for (const auto& level : plan.circuit.levels()) {
      for (std::size_t i = 0; i < level.size(); ++i) {
        const auto& g = level[i];
        ops.push_back({g.first, g.second, to_duration(g.duration),
                       g.duration.numerator() == 0, i + 1 == level.size()});
      }
    }
  }
  return model;
}

/// Integer model when every weight and duration rescales without risk of
/// overflow; the scale is returned alongside.
std::optional<std::pair<CostModel<std::int64_t>, std::int64_t>>
scaled_cost_model(const PhysicalEnvironment& env,
                  const std::vector<StagePlan>& plans,
                  const PlacementConfig& config) {
  constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 40;
  bool ok = true;
  const auto lcm_into = [&ok](std::int64_t& acc, std::int64_t d) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(acc / std::gcd(acc, d), d, &out) ||
        out > kMaxDenominator) {
      ok = false;
      return;
    }
    acc = out;
  };
  const std::size_t m = env.size();
  std::int64_t wden = 1;
  std::int64_t tden = 1;
  for (VertexId a = 0; a < m; ++a) {
    for (VertexId b = 0; b < m; ++b) {
      if (const auto& w = env.weight(a, b)) {
        lcm_into(wden, w->denominator());
      }
    }
  }
  lcm_into(tden, config.swap_duration.denominator());
  Rational total_duration = config.swap_duration * 64 * Rational(m + 1) *
                            Rational(plans.size());
  for (const auto& plan : plans) {
    for (const auto& level : plan.circuit.levels()) {
      for (const auto& g : level) {
        lcm_into(tden, g.duration.denominator());
        total_duration += g.duration;
      }
    }
  }
  if (!ok) {
    return std::nullopt;
  }
  Rational max_weight(0);
  for (VertexId a = 0; a < m; ++a) {
    for (VertexId b = 0; b < m; ++b) {
      if (const auto& w = env.weight(a, b)) {
        max_weight = std::max(max_weight, *w);
      }
    }
  }
  // Loose bound on any clock value, kept well inside int64.
  const double bound = boost::rational_cast<double>(max_weight) *
                       static_cast<double>(wden) *
                       boost::rational_cast<double>(total_duration) *
                       static_cast<double>(tden);
  if (!(bound < 0x1p61)) {
    return std::nullopt;
  }
  const auto scale = [](std::int64_t den) {
    return [den](const Rational& r) {
      return r.numerator() * (den / r.denominator());
    };
  };
  auto model = build_cost_model<std::int64_t>(env, plans, config, scale(wden),
                                              scale(tden));
  return std::make_pair(std::move(model), wden * tden);
}

struct Realized {
  std::vector<VertexId> images;
  SwapSchedule schedule;
};

std::optional<Realized> realize(const std::vector<VertexId>& partial,
                                const std::vector<VertexId>* prev,
                                const Transitions& transitions) {
  Realized r;
  r.images = transitions.complete(partial, prev);
  if (prev != nullptr) {
    auto schedule = transitions.route(*prev, r.images);
    if (!schedule.has_value()) {
      return std::nullopt;
    }
    r.schedule = std::move(*schedule);
  }
  return r;
}

template <class T>
std::optional<T> advance(const CostModel<T>& model, std::vector<T>& clock,
                         const Realized& r, std::size_t stage) {
  model.run_swaps(clock, r.schedule);
  if (!model.run_stage(clock, stage, r.images)) {
    return std::nullopt;
  }
  return clock.empty() ? T(0) : *std::max_element(clock.begin(), clock.end());
}

/// Picks one complete placement per stage; result[i].schedule enters stage i.
template <class T>
std::vector<Realized>
choose(const std::vector<std::vector<std::vector<VertexId>>>& candidates,
       const CostModel<T>& model, const Transitions& transitions,
       bool lookahead) {
  const std::size_t stages = candidates.size();
  std::vector<Realized> chosen;
  std::vector<T> clock(model.m, T(0));
  // Realizations of the current stage's candidates against the committed
  // previous placement, computed during the previous lookahead.
  std::vector<std::optional<Realized>> cache;
  bool cached = false;

  for (std::size_t i = 0; i < stages; ++i) {
    const std::vector<VertexId>* prev =
        chosen.empty() ? nullptr : &chosen.back().images;
    const bool look = lookahead && i + 1 < stages;

    std::optional<T> best_score;
    bool best_continues = false;
    std::optional<Realized> best;
    std::vector<T> best_clock;
    std::vector<std::optional<Realized>> best_next;

    for (std::size_t a = 0; a < candidates[i].size(); ++a) {
      std::optional<Realized> cand =
          cached ? std::move(cache[a]) : realize(candidates[i][a], prev, transitions);
      if (!cand.has_value()) {
        continue;
      }
      std::vector<T> after = clock;
      std::optional<T> score = advance(model, after, *cand, i);
      if (!score.has_value()) {
        continue;
      }
      bool continues = false;
      std::vector<std::optional<Realized>> next;
      if (look) {
        next.resize(candidates[i + 1].size());
        std::optional<T> best_b;
        for (std::size_t b = 0; b < next.size(); ++b) {
          next[b] = realize(candidates[i + 1][b], &cand->images, transitions);
          if (!next[b].has_value()) {
            continue;
          }
          std::vector<T> two = after;
          const auto cb = advance(model, two, *next[b], i + 1);
          if (cb.has_value() && (!best_b.has_value() || *cb < *best_b)) {
            best_b = cb;
          }
        }
        if (best_b.has_value()) {
          score = best_b;
          continues = true;
        }
      }
      // A candidate with a feasible continuation beats one without.
      const bool better = !best_score.has_value() ||
                          (continues && !best_continues) ||
                          (continues == best_continues && *score < *best_score);
      if (better) {
        best_score = score;
        best_continues = continues;
        best = std::move(cand);
        best_clock = std::move(after);
        best_next = std::move(next);
      }
    }
    if (!best.has_value()) {
      throw InfeasibleError("no feasible placement for stage " +
                            std::to_string(i + 1));
    }
    chosen.push_back(std::move(*best));
    clock = std::move(best_clock);
    cache = std::move(best_next);
    cached = look;
  }
  return chosen;
}

} // namespace

PlacedProgram place(const Circuit& circuit, const PhysicalEnvironment& env,
                    const PlacementConfig& config) {
  validate_config(config);
  require_valid(env);
  const std::size_t n = circuit.qubit_count();
  const std::size_t m = env.size();
  if (n > m) {
    throw InfeasibleError("circuit has " + std::to_string(n) +
                          " qubits but the environment only " + std::to_string(m));
  }

  PlacedProgram program;
  program.qubit_names = circuit.qubits();
  program.vertex_names = env.names();
  program.mode = config.mode;
  program.lookahead = config.lookahead;
  program.k = config.k;
  program.seed = config.seed;
  program.time_unit_seconds = env.time_unit_seconds();
  program.search_space = placement_count(n, m);
  program.threshold = config.threshold.has_value() ? *config.threshold
                                                   : min_connecting_threshold(env);

  const Circuit merged = merge_interaction_runs(circuit, config.interaction_cap);
  const FastGraph host = fast_graph(env, program.threshold);
  const auto plans = split_stages(merged, host, config.node_budget);

  std::vector<std::vector<std::vector<VertexId>>> candidates;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    candidates.push_back(stage_candidates(plans[i], i, env, host, config));
  }

  const Transitions transitions(host);
  std::vector<Realized> chosen;
  if (auto scaled = scaled_cost_model(env, plans, config)) {
    chosen = choose(candidates, scaled->first, transitions, config.lookahead);
  } else {
    const auto identity = [](const Rational& r) { return r; };
    const auto model =
        build_cost_model<Rational>(env, plans, config, identity, identity);
    chosen = choose(candidates, model, transitions, config.lookahead);
  }

  const Placement vertices = identity_placement(m);
  std::vector<Level> physical;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (i > 0) {
      const Circuit swaps =
          schedule_to_gates(chosen[i].schedule, env, config.swap_duration);
      program.transitions.push_back(
          {chosen[i].schedule,
           evaluate_runtime(swaps, vertices, env, config.mode).total});
      physical.insert(physical.end(), swaps.levels().begin(),
                      swaps.levels().end());
    }
    Placement placement(chosen[i].images, m);
    const Rational runtime =
        evaluate_runtime(plans[i].circuit, placement, env, config.mode).total;
    for (const auto& level : plans[i].circuit.levels()) {
      Level mapped;
      for (Gate g : level) {
        g.first = placement.at(g.first);
        if (g.two_qubit()) {
          g.second = placement.at(g.second);
        }
        mapped.push_back(std::move(g));
      }
      physical.push_back(std::move(mapped));
    }
    program.stages.push_back({plans[i].circuit, std::move(placement), runtime});
  }
  program.physical = Circuit(env.names(), std::move(physical));
  program.total_runtime =
      evaluate_runtime(program.physical, vertices, env, config.mode).total;
  return program;
}

} // namespace qplace
