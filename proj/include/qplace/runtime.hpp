#pragma once

#include "qplace/model.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qplace {

enum class EvalMode {
  /// Gates of the next level may start as soon as their own qubits are free.
  kPipelined,
  /// Every level waits for the slowest qubit of the previous level.
  kSequentialLevels,
};

/// Any two-qubit unitary needs at most three uses of an interaction.
inline const Rational kDefaultInteractionCap{3};

/**
 * @brief Physical runtime of a placed circuit.
 *
 * GateOperatingTime is W(P(a),P(b))*T for two-qubit gates and W(P(q),P(q))*T
 * for single-qubit gates. A two-qubit gate starts when both qubits are free
 * and leaves them both busy until it ends. Gates with T = 0 cost nothing and
 * never consult the weight table.
 *
 * Throws ValidationError when a gate qubit is unplaced and InfeasibleError
 * when a gate with T > 0 needs an unavailable interaction.
 */
[[nodiscard]] RuntimeTrace evaluate_runtime(const Circuit& circuit,
                                            const Placement& placement,
                                            const PhysicalEnvironment& env,
                                            EvalMode mode);

/// Same recurrence, continuing from existing per-qubit finish times.
void advance_runtime(std::vector<Rational>& time, const Circuit& circuit,
                     const Placement& placement,
                     const PhysicalEnvironment& env, EvalMode mode);

/**
 * Merges maximal runs of back-to-back two-qubit gates on the same unordered
 * pair (no other gate touching either qubit in between) into one gate whose
 * duration is min(cap, sum of durations). The merged gate keeps the first
 * gate's label and level; levels left empty are dropped.
 */
[[nodiscard]] Circuit merge_interaction_runs(const Circuit& circuit,
                                             const Rational& cap = kDefaultInteractionCap);

/**
 * @brief Repeated evaluation of one circuit under many placements.
 *
 * Weights and durations are rescaled to a common integer denominator once, so
 * each evaluation is plain int64 arithmetic. Falls back to the rational
 * reference path when scaling would overflow. Results are identical to
 * evaluate_runtime(...).total.
 */
class StageEvaluator {
public:
  StageEvaluator(const Circuit& circuit, const PhysicalEnvironment& env,
                 EvalMode mode);

  /// Total runtime with qubit q on images[q]; nullopt when some gate needs an
  /// unavailable interaction.
  [[nodiscard]] std::optional<Rational>
  runtime(std::span<const VertexId> images) const;

  [[nodiscard]] bool scaled() const { return scaled_; }

private:
  struct Op {
    QubitId a;
    QubitId b; // kNoQubit for single-qubit gates
    std::int64_t duration;
    bool level_end;
  };

  const Circuit* circuit_;
  const PhysicalEnvironment* env_;
  EvalMode mode_;
  bool scaled_ = false;
  std::int64_t denominator_ = 1;
  std::size_t m_ = 0;
  std::vector<std::int64_t> weights_; // -1 = unavailable
  std::vector<Op> ops_;
};

} // namespace qplace
