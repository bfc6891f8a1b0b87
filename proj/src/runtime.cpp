#include "qplace/runtime.hpp"

#include "qplace/errors.hpp"

#include <algorithm>
#include <numeric>

namespace qplace {
namespace {

VertexId image_of(const Placement& placement, const Circuit& circuit,
                  QubitId q) {
  if (!placement.assigned(q)) {
    throw ValidationError("placement does not cover qubit '" +
                          circuit.qubits()[q] + "'");
  }
  return placement.at(q);
}

Rational operating_time(const Gate& g, VertexId a, VertexId b,
                        const PhysicalEnvironment& env) {
  if (g.duration.numerator() == 0) {
    return Rational(0);
  }
  const auto& w = env.weight(a, b);
  if (!w.has_value()) {
    throw InfeasibleError("unavailable interaction (" + env.name(a) + "," +
                          env.name(b) + ") used by gate '" + g.label + "'");
  }
  return *w * g.duration;
}

} // namespace

void advance_runtime(std::vector<Rational>& time, const Circuit& circuit,
                     const Placement& placement,
                     const PhysicalEnvironment& env, EvalMode mode) {
  time.resize(circuit.qubit_count(), Rational(0));
  for (const auto& level : circuit.levels()) {
    for (const auto& g : level) {
      const VertexId a = image_of(placement, circuit, g.first);
      if (g.two_qubit()) {
        const VertexId b = image_of(placement, circuit, g.second);
        const Rational done =
            std::max(time[g.first], time[g.second]) + operating_time(g, a, b, env);
        time[g.first] = done;
        time[g.second] = done;
      } else {
        time[g.first] += operating_time(g, a, a, env);
      }
    }
    if (mode == EvalMode::kSequentialLevels && !time.empty()) {
      const Rational barrier = *std::max_element(time.begin(), time.end());
      std::fill(time.begin(), time.end(), barrier);
    }
  }
}

RuntimeTrace evaluate_runtime(const Circuit& circuit,
                              const Placement& placement,
                              const PhysicalEnvironment& env, EvalMode mode) {
  RuntimeTrace trace;
  trace.finish.assign(circuit.qubit_count(), Rational(0));
  advance_runtime(trace.finish, circuit, placement, env, mode);
  if (!trace.finish.empty()) {
    trace.total = *std::max_element(trace.finish.begin(), trace.finish.end());
  }
  return trace;
}

Circuit merge_interaction_runs(const Circuit& circuit, const Rational& cap) {
  struct Kept {
    Gate gate;
    std::size_t level;
    std::size_t run_length;
  };
  std::vector<Kept> kept;
  // Index into `kept` of the last gate touching each qubit.
  std::vector<std::size_t> last(circuit.qubit_count(), SIZE_MAX);
  for (std::size_t li = 0; li < circuit.levels().size(); ++li) {
    for (const auto& g : circuit.levels()[li]) {
      if (g.two_qubit()) {
        const std::size_t k = last[g.first];
        if (k != SIZE_MAX && k == last[g.second]) {
          // The previous gate on both qubits is the same gate, so it is a
          // two-qubit gate on this very pair with nothing in between.
          kept[k].gate.duration += g.duration;
          ++kept[k].run_length;
          continue;
        }
      }
      last[g.first] = kept.size();
      if (g.two_qubit()) {
        last[g.second] = kept.size();
      }
      kept.push_back({g, li, 1});
    }
  }
  std::vector<Level> levels(circuit.levels().size());
  for (auto& k : kept) {
    if (k.run_length > 1) {
      k.gate.duration = std::min(cap, k.gate.duration);
    }
    levels[k.level].push_back(std::move(k.gate));
  }
  std::erase_if(levels, [](const Level& l) { return l.empty(); });
  return {circuit.qubits(), std::move(levels)};
}

StageEvaluator::StageEvaluator(const Circuit& circuit,
                               const PhysicalEnvironment& env, EvalMode mode)
    : circuit_(&circuit), env_(&env), mode_(mode), m_(env.size()) {
  // Common denominators of weights and durations.
  std::int64_t wden = 1;
  std::int64_t tden = 1;
  bool ok = true;
  auto lcm_into = [&ok](std::int64_t& acc, std::int64_t d) {
    const std::int64_t g = std::gcd(acc, d);
    std::int64_t out = 0;
    if (__builtin_mul_overflow(acc / g, d, &out) || out > (1LL << 40)) {
      ok = false;
      return;
    }
    acc = out;
  };
  for (VertexId a = 0; a < m_ && ok; ++a) {
    for (VertexId b = 0; b < m_ && ok; ++b) {
      if (const auto& w = env.weight(a, b)) {
        lcm_into(wden, w->denominator());
      }
    }
  }
  for (const auto& level : circuit.levels()) {
    for (const auto& g : level) {
      lcm_into(tden, g.duration.denominator());
    }
  }
  if (!ok) {
    return;
  }
  std::int64_t max_weight = 0;
  weights_.assign(m_ * m_, -1);
  for (VertexId a = 0; a < m_ && ok; ++a) {
    for (VertexId b = 0; b < m_ && ok; ++b) {
      if (const auto& w = env.weight(a, b)) {
        std::int64_t s = 0;
        if (__builtin_mul_overflow(w->numerator(), wden / w->denominator(), &s)) {
          ok = false;
        }
        weights_[a * m_ + b] = s;
        max_weight = std::max(max_weight, s);
      }
    }
  }
  // Bound on any finish time: sum over gates of max_weight * duration.
  std::int64_t budget = 0;
  for (std::size_t li = 0; li < circuit.levels().size() && ok; ++li) {
    const auto& level = circuit.levels()[li];
    for (std::size_t gi = 0; gi < level.size() && ok; ++gi) {
      const auto& g = level[gi];
      std::int64_t t = 0;
      std::int64_t cost = 0;
      if (__builtin_mul_overflow(g.duration.numerator(),
                                 tden / g.duration.denominator(), &t) ||
          __builtin_mul_overflow(t, max_weight, &cost) ||
          __builtin_add_overflow(budget, cost, &budget) ||
          budget > (std::int64_t{1} << 62)) {
        ok = false;
        break;
      }
      ops_.push_back({g.first, g.second, t, gi + 1 == level.size()});
    }
  }
  if (!ok || __builtin_mul_overflow(wden, tden, &denominator_)) {
    ops_.clear();
    weights_.clear();
    return;
  }
  scaled_ = true;
}

std::optional<Rational>
StageEvaluator::runtime(std::span<const VertexId> images) const {
  if (!scaled_) {
    try {
      Placement p(std::vector<VertexId>(images.begin(), images.end()), m_);
      return evaluate_runtime(*circuit_, p, *env_, mode_).total;
    } catch (const InfeasibleError&) {
      return std::nullopt;
    }
  }
  std::vector<std::int64_t> time(circuit_->qubit_count(), 0);
  for (const auto& op : ops_) {
    const VertexId a = images[op.a];
    if (op.b != kNoQubit) {
      const VertexId b = images[op.b];
      std::int64_t cost = 0;
      if (op.duration != 0) {
        const std::int64_t w = weights_[a * m_ + b];
        if (w < 0) {
          return std::nullopt;
        }
        cost = w * op.duration;
      }
      const std::int64_t done = std::max(time[op.a], time[op.b]) + cost;
      time[op.a] = done;
      time[op.b] = done;
    } else if (op.duration != 0) {
      const std::int64_t w = weights_[a * m_ + a];
      if (w < 0) {
        return std::nullopt;
      }
      time[op.a] += w * op.duration;
    }
    if (op.level_end && mode_ == EvalMode::kSequentialLevels) {
      const std::int64_t barrier = *std::max_element(time.begin(), time.end());
      std::fill(time.begin(), time.end(), barrier);
    }
  }
  const std::int64_t total =
      time.empty() ? 0 : *std::max_element(time.begin(), time.end());
  return Rational(total, denominator_);
}

} // namespace qplace
