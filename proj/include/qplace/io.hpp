#pragma once

#include "qplace/instance_gen.hpp"
#include "qplace/model.hpp"
#include "qplace/placer.hpp"

#include <string>
#include <string_view>

namespace qplace {

/**
 * Environment text:
 *
 *     unit 1e-4            # seconds per weight unit, required once
 *     vertices M C1 C2     # optional, fixes the vertex order
 *     M M 8                # diagonal: single-qubit weight
 *     C1 M 38              # undeclared pairs are unavailable
 *
 * Without a `vertices` line, vertices are numbered by first appearance.
 * Throws ValidationError (with the line number) on a missing unit, a
 * repeated pair, a negative weight or malformed lines.
 */
[[nodiscard]] PhysicalEnvironment parse_environment(std::string_view text);
[[nodiscard]] std::string emit_environment(const PhysicalEnvironment& env);

/**
 * Circuit text:
 *
 *     qubits a b c
 *     Ry90 1 a
 *     ZZ90 1 a b
 *     ---
 *
 * `---` closes a level; the gates between two boundaries are levelized
 * as soon as possible after the previous ones.
 */
[[nodiscard]] Circuit parse_circuit(std::string_view text);
/// Writes every level followed by `---`, so levels survive a round trip.
[[nodiscard]] std::string emit_circuit(const Circuit& circuit);

/// Graph text: `vertex <name>` and `<u> <v>` edge lines.
[[nodiscard]] SimpleGraph parse_graph(std::string_view text);

[[nodiscard]] std::string mode_name(EvalMode mode);
/// Accepts "pipelined" and "sequential".
[[nodiscard]] EvalMode parse_mode(std::string_view text);

/// Line-oriented report with a fixed key order.
[[nodiscard]] std::string emit_report(const PlacedProgram& program);

/// Swap layers as `u v` pairs using environment names.
[[nodiscard]] std::string emit_schedule(const SwapSchedule& schedule,
                                        const PhysicalEnvironment& env);

} // namespace qplace
