#pragma once

#include "qplace/fast_graph.hpp"
#include "qplace/model.hpp"
#include "qplace/monomorphism.hpp"
#include "qplace/oracle.hpp"
#include "qplace/runtime.hpp"
#include "qplace/swap_router.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qplace {

struct PlacementConfig {
  /// nullopt selects the smallest threshold whose fast graph is connected.
  std::optional<Rational> threshold;
  /// Monomorphisms considered per stage.
  std::size_t k = 100;
  EvalMode mode = EvalMode::kPipelined;
  std::size_t max_sweeps = 50;
  bool lookahead = true;
  /// Recorded in reports; the placer itself is deterministic.
  std::uint64_t seed = 0;
  Rational swap_duration{3};
  Rational interaction_cap{kDefaultInteractionCap};
  /// Node budget of each full monomorphism search during prefix extraction.
  std::uint64_t node_budget = 1'000'000;
};

/// Throws ValidationError for k == 0 or a negative threshold.
void validate_config(const PlacementConfig& config);

struct PrefixResult {
  /// Number of gates in the prefix; the breaker is gates[length] if any.
  std::size_t length = 0;
  InteractionPattern pattern;
  /// An embedding of `pattern` into the host.
  Monomorphism witness;
};

/**
 * Longest prefix of `gates` whose interaction pattern embeds into `host`.
 * Single-qubit gates never end a prefix. A full search that exhausts
 * `node_budget` counts as "does not embed". Throws InfeasibleError when the
 * first two-qubit gate cannot be embedded at all.
 */
[[nodiscard]] PrefixResult extract_max_prefix(std::span<const Gate> gates,
                                              const FastGraph& host,
                                              std::uint64_t node_budget = 1'000'000);

/**
 * Hill climbing over the qubits the stage uses, in increasing order: each is
 * tried on every host vertex (swapping with the occupant if any); a move is
 * kept when all two-qubit gates stay on host edges and the stage runtime
 * drops strictly. Repeats until a sweep finds nothing or `max_sweeps` is hit.
 * `p` may leave qubits that the stage does not use unassigned.
 */
[[nodiscard]] Placement fine_tune(const Placement& p, const Circuit& stage,
                                  const PhysicalEnvironment& env,
                                  const FastGraph& host,
                                  const PlacementConfig& config);

struct PlacedStage {
  Circuit circuit;
  /// Complete placement of every logical qubit during this stage.
  Placement placement;
  /// Runtime of the stage alone, starting from idle qubits.
  Rational runtime{0};
};

struct StageTransition {
  SwapSchedule schedule;
  /// Runtime of the SWAP layers alone.
  Rational runtime{0};
};

struct PlacedProgram {
  std::vector<std::string> qubit_names;
  std::vector<std::string> vertex_names;
  Rational threshold{0};
  EvalMode mode = EvalMode::kPipelined;
  bool lookahead = true;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  Rational time_unit_seconds{1};
  std::vector<PlacedStage> stages;
  /// transitions[i] moves stages[i].placement to stages[i+1].placement.
  std::vector<StageTransition> transitions;
  /// Stitched program over the environment vertices.
  Circuit physical;
  Rational total_runtime{0};
  /// Injective placements of the whole circuit, m!/(m-n)!.
  BigCount search_space;

  [[nodiscard]] Rational total_seconds() const {
    return total_runtime * time_unit_seconds;
  }
};

/**
 * Splits the circuit into maximal embeddable stages, places each with up to
 * k fine-tuned monomorphisms and stitches consecutive stages with SWAP
 * schedules. With lookahead on, each candidate is scored by the best
 * completion of the following stage as well.
 */
[[nodiscard]] PlacedProgram place(const Circuit& circuit,
                                  const PhysicalEnvironment& env,
                                  const PlacementConfig& config = {});

} // namespace qplace
