#include "qplace/model.hpp"

#include "qplace/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qplace {

PhysicalEnvironment::PhysicalEnvironment(
    std::vector<std::string> names,
    std::vector<std::optional<Rational>> weights, Rational time_unit_seconds)
    : names_(std::move(names)), weights_(std::move(weights)),
      unit_(time_unit_seconds) {
  if (weights_.size() != names_.size() * names_.size()) {
    throw ValidationError("weight table must have " +
                          std::to_string(names_.size() * names_.size()) +
                          " entries, got " + std::to_string(weights_.size()));
  }
}

std::optional<VertexId> PhysicalEnvironment::find(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    return std::nullopt;
  }
  return static_cast<VertexId>(it - names_.begin());
}

PhysicalEnvironment make_environment(std::vector<std::string> names,
                                     Rational time_unit_seconds,
                                     std::span<const WeightEntry> entries) {
  const std::size_t m = names.size();
  std::vector<std::optional<Rational>> table(m * m);
  for (const auto& e : entries) {
    if (e.a >= m || e.b >= m) {
      throw ValidationError("weight entry references vertex outside table");
    }
    auto& slot = table[static_cast<std::size_t>(e.a) * m + e.b];
    if (slot.has_value()) {
      throw ValidationError("duplicate pair (" + names[e.a] + "," +
                            names[e.b] + ")");
    }
    slot = e.weight;
    table[static_cast<std::size_t>(e.b) * m + e.a] = e.weight;
  }
  return {std::move(names), std::move(table), time_unit_seconds};
}

ValidationReport validate_environment(const PhysicalEnvironment& env) {
  ValidationReport report;
  const auto m = static_cast<VertexId>(env.size());
  std::set<std::string> seen;
  for (const auto& n : env.names()) {
    if (!seen.insert(n).second) {
      report.violations.push_back("duplicate name '" + n + "'");
    }
  }
  if (env.time_unit_seconds() <= 0) {
    report.violations.push_back("time unit must be positive, got " +
                                format_rational(env.time_unit_seconds()));
  }
  for (VertexId i = 0; i < m; ++i) {
    for (VertexId j = i; j < m; ++j) {
      const auto& wij = env.weight(i, j);
      const auto& wji = env.weight(j, i);
      if (wij != wji) {
        report.violations.push_back("asymmetric pair (" + env.name(i) + "," +
                                    env.name(j) + ")");
      }
      for (const auto* w : {&wij, &wji}) {
        if (w->has_value() && **w < 0) {
          report.violations.push_back("negative weight W(" + env.name(i) +
                                      "," + env.name(j) +
                                      ")=" + format_rational(**w));
          break;
        }
      }
    }
  }
  return report;
}

void require_valid(const PhysicalEnvironment& env) {
  const auto report = validate_environment(env);
  if (report.ok()) {
    return;
  }
  std::ostringstream msg;
  msg << "invalid environment:";
  for (const auto& v : report.violations) {
    msg << ' ' << v << ';';
  }
  throw ValidationError(msg.str());
}

namespace {

void check_gate(const Gate& g, std::size_t n) {
  if (g.first >= n || (g.two_qubit() && g.second >= n)) {
    throw ValidationError("gate '" + g.label + "' references unknown qubit");
  }
  if (g.two_qubit() && g.first == g.second) {
    throw ValidationError("two-qubit gate '" + g.label +
                          "' acts on the same qubit twice");
  }
  if (g.duration < 0) {
    throw ValidationError("gate '" + g.label + "' has negative duration");
  }
}

} // namespace

Circuit::Circuit(std::vector<std::string> qubits, std::vector<Level> levels)
    : qubits_(std::move(qubits)), levels_(std::move(levels)) {
  std::set<std::string> seen;
  for (const auto& q : qubits_) {
    if (!seen.insert(q).second) {
      throw ValidationError("duplicate qubit '" + q + "'");
    }
  }
  std::vector<std::size_t> last_level(qubits_.size(), levels_.size());
  for (std::size_t li = 0; li < levels_.size(); ++li) {
    for (const auto& g : levels_[li]) {
      check_gate(g, qubits_.size());
      for (const QubitId q : {g.first, g.second}) {
        if (q == kNoQubit) {
          continue;
        }
        if (last_level[q] == li) {
          throw ValidationError("qubit '" + qubits_[q] +
                                "' used twice in level " +
                                std::to_string(li + 1));
        }
        last_level[q] = li;
      }
    }
  }
}

std::size_t Circuit::gate_count() const {
  std::size_t total = 0;
  for (const auto& level : levels_) {
    total += level.size();
  }
  return total;
}

std::optional<QubitId> Circuit::find(std::string_view name) const {
  const auto it = std::find(qubits_.begin(), qubits_.end(), name);
  if (it == qubits_.end()) {
    return std::nullopt;
  }
  return static_cast<QubitId>(it - qubits_.begin());
}

std::vector<Gate> Circuit::flatten() const {
  std::vector<Gate> out;
  out.reserve(gate_count());
  for (const auto& level : levels_) {
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Circuit levelize(std::vector<std::string> qubits, std::span<const Gate> gates) {
  // next_free[q]: first level index after the last level touching q.
  std::vector<std::size_t> next_free(qubits.size(), 0);
  std::vector<Level> levels;
  for (const auto& g : gates) {
    check_gate(g, qubits.size());
    std::size_t li = next_free[g.first];
    if (g.two_qubit()) {
      li = std::max(li, next_free[g.second]);
    }
    if (li == levels.size()) {
      levels.emplace_back();
    }
    levels[li].push_back(g);
    next_free[g.first] = li + 1;
    if (g.two_qubit()) {
      next_free[g.second] = li + 1;
    }
  }
  return {std::move(qubits), std::move(levels)};
}

Placement::Placement(std::vector<VertexId> images, std::size_t vertex_count)
    : images_(std::move(images)), vertex_count_(vertex_count) {
  std::vector<bool> used(vertex_count, false);
  for (std::size_t q = 0; q < images_.size(); ++q) {
    const VertexId v = images_[q];
    if (v == kUnassigned) {
      continue;
    }
    if (v >= vertex_count) {
      throw ValidationError("placement maps qubit " + std::to_string(q) +
                            " outside the environment");
    }
    if (used[v]) {
      throw ValidationError("placement is not injective: vertex " +
                            std::to_string(v) + " used twice");
    }
    used[v] = true;
  }
}

std::vector<QubitId> Placement::occupants() const {
  std::vector<QubitId> out(vertex_count_, kNoQubit);
  for (std::size_t q = 0; q < images_.size(); ++q) {
    if (images_[q] != kUnassigned) {
      out[images_[q]] = static_cast<QubitId>(q);
    }
  }
  return out;
}

bool Placement::complete() const {
  return std::none_of(images_.begin(), images_.end(),
                      [](VertexId v) { return v == kUnassigned; });
}

Placement identity_placement(std::size_t n) {
  std::vector<VertexId> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    images[i] = static_cast<VertexId>(i);
  }
  return {std::move(images), n};
}

} // namespace qplace
