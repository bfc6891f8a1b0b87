#pragma once

#include "qplace/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qplace {

/// Index of a logical qubit within a Circuit.
using QubitId = std::uint32_t;
/// Index of a physical vertex within a PhysicalEnvironment.
using VertexId = std::uint32_t;

inline constexpr VertexId kUnassigned = std::numeric_limits<VertexId>::max();
inline constexpr QubitId kNoQubit = std::numeric_limits<QubitId>::max();

/**
 * @brief Weighted interaction table of a physical device.
 *
 * `weight(i, j)` is the time needed to apply a unit-duration two-qubit gate
 * between vertices i and j; `weight(i, i)` the time of a unit single-qubit
 * gate on i. Absent entries mean the interaction is unavailable. Times are in
 * units of `time_unit_seconds()` seconds.
 *
 * The constructor does not validate; call validate_environment before use.
 */
class PhysicalEnvironment {
public:
  PhysicalEnvironment() = default;
  /// `weights` is row-major, names.size() squared entries.
  PhysicalEnvironment(std::vector<std::string> names,
                      std::vector<std::optional<Rational>> weights,
                      Rational time_unit_seconds);

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::string& name(VertexId v) const { return names_.at(v); }
  [[nodiscard]] std::optional<VertexId> find(std::string_view name) const;
  [[nodiscard]] const std::optional<Rational>& weight(VertexId a,
                                                      VertexId b) const {
    return weights_[static_cast<std::size_t>(a) * names_.size() + b];
  }
  [[nodiscard]] const Rational& time_unit_seconds() const { return unit_; }

  friend bool operator==(const PhysicalEnvironment&,
                         const PhysicalEnvironment&) = default;

private:
  std::vector<std::string> names_;
  std::vector<std::optional<Rational>> weights_;
  Rational unit_{1};
};

struct WeightEntry {
  VertexId a;
  VertexId b;
  Rational weight;
};

/// Builds a symmetric environment from (a, b, w) entries; pairs not listed
/// stay unavailable. Throws ValidationError on a repeated pair.
[[nodiscard]] PhysicalEnvironment
make_environment(std::vector<std::string> names, Rational time_unit_seconds,
                 std::span<const WeightEntry> entries);

struct ValidationReport {
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

[[nodiscard]] ValidationReport
validate_environment(const PhysicalEnvironment& env);

/// Throws ValidationError carrying every violation when the report is not ok.
void require_valid(const PhysicalEnvironment& env);

/// A one- or two-qubit gate with duration factor T(G).
struct Gate {
  std::string label;
  Rational duration{1};
  QubitId first = 0;
  QubitId second = kNoQubit;

  [[nodiscard]] bool two_qubit() const { return second != kNoQubit; }
  [[nodiscard]] bool touches(QubitId q) const {
    return first == q || second == q;
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

[[nodiscard]] inline Gate single_gate(std::string label, Rational t, QubitId q) {
  return Gate{std::move(label), t, q, kNoQubit};
}
[[nodiscard]] inline Gate two_gate(std::string label, Rational t, QubitId a,
                                   QubitId b) {
  return Gate{std::move(label), t, a, b};
}

using Level = std::vector<Gate>;

/**
 * @brief A levelled gate-level circuit over named logical qubits.
 *
 * Construction checks that every gate references a declared qubit, that
 * two-qubit gates act on distinct qubits, that T(G) >= 0, and that no level
 * touches a qubit twice.
 */
class Circuit {
public:
  Circuit() = default;
  Circuit(std::vector<std::string> qubits, std::vector<Level> levels);

  [[nodiscard]] std::size_t qubit_count() const { return qubits_.size(); }
  [[nodiscard]] const std::vector<std::string>& qubits() const { return qubits_; }
  [[nodiscard]] const std::vector<Level>& levels() const { return levels_; }
  [[nodiscard]] std::size_t gate_count() const;
  [[nodiscard]] bool empty() const { return gate_count() == 0; }
  [[nodiscard]] std::optional<QubitId> find(std::string_view name) const;
  /// Gates in level order, input order within a level.
  [[nodiscard]] std::vector<Gate> flatten() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

private:
  std::vector<std::string> qubits_;
  std::vector<Level> levels_;
};

/**
 * ASAP levelization: each gate goes to the level right after the last level
 * touching any of its qubits. Per-qubit gate order is preserved.
 */
[[nodiscard]] Circuit levelize(std::vector<std::string> qubits,
                               std::span<const Gate> gates);

/**
 * @brief Injective map from logical qubits to physical vertices.
 *
 * Qubits may be left unassigned (a stage placement only covers the qubits
 * the stage uses). Injectivity and range are enforced on construction.
 */
class Placement {
public:
  Placement() = default;
  Placement(std::vector<VertexId> images, std::size_t vertex_count);

  [[nodiscard]] std::size_t qubit_count() const { return images_.size(); }
  [[nodiscard]] std::size_t vertex_count() const { return vertex_count_; }
  [[nodiscard]] bool assigned(QubitId q) const {
    return q < images_.size() && images_[q] != kUnassigned;
  }
  [[nodiscard]] VertexId at(QubitId q) const { return images_.at(q); }
  [[nodiscard]] const std::vector<VertexId>& images() const { return images_; }
  /// vertex -> qubit, kNoQubit for empty vertices.
  [[nodiscard]] std::vector<QubitId> occupants() const;
  [[nodiscard]] bool complete() const;

  friend bool operator==(const Placement&, const Placement&) = default;

private:
  std::vector<VertexId> images_;
  std::size_t vertex_count_ = 0;
};

[[nodiscard]] Placement identity_placement(std::size_t n);

/// Per-qubit finish times of the runtime dynamic program and their maximum.
struct RuntimeTrace {
  std::vector<Rational> finish;
  Rational total{0};
};

} // namespace qplace
