#include "qplace/io.hpp"

#include "qplace/errors.hpp"

#include <map>
#include <sstream>
#include <unordered_map>

namespace qplace {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    std::string token;
    while (in >> token) {
      line.tokens.push_back(std::move(token));
    }
    if (!line.tokens.empty()) {
      lines.push_back(std::move(line));
    }
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(const Line& line, const std::string& what) {
  throw ValidationError("line " + std::to_string(line.number) + ": " + what);
}

Rational number_at(const Line& line, const std::string& token,
                   const char* what) {
  try {
    return parse_rational(token);
  } catch (const ValidationError&) {
    fail(line, std::string("malformed ") + what + " '" + token + "'");
  }
}

} // namespace

PhysicalEnvironment parse_environment(std::string_view text) {
  std::optional<Rational> unit;
  std::vector<std::string> names;
  std::unordered_map<std::string, VertexId> index;
  bool declared = false;
  struct Raw {
    VertexId a;
    VertexId b;
    Rational w;
  };
  std::vector<Raw> raw;
  std::map<std::pair<VertexId, VertexId>, std::size_t> seen;

  const auto vertex = [&](const Line& line, const std::string& name) {
    if (const auto it = index.find(name); it != index.end()) {
      return it->second;
    }
    if (declared) {
      fail(line, "undeclared vertex '" + name + "'");
    }
    const auto id = static_cast<VertexId>(names.size());
    names.push_back(name);
    index.emplace(name, id);
    return id;
  };

  for (const auto& line : tokenize(text)) {
    const auto& t = line.tokens;
    if (t[0] == "unit") {
      if (t.size() != 2) {
        fail(line, "expected 'unit <seconds>'");
      }
      if (unit.has_value()) {
        fail(line, "unit given twice");
      }
      unit = number_at(line, t[1], "unit");
      if (*unit <= 0) {
        fail(line, "unit must be positive");
      }
    } else if (t[0] == "vertices") {
      if (declared || !names.empty()) {
        fail(line, "'vertices' must come once, before any weight");
      }
      declared = true;
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (index.contains(t[i])) {
          fail(line, "vertex '" + t[i] + "' listed twice");
        }
        index.emplace(t[i], static_cast<VertexId>(names.size()));
        names.push_back(t[i]);
      }
    } else {
      if (t.size() != 3) {
        fail(line, "expected '<vertex> <vertex> <weight>'");
      }
      const VertexId a = vertex(line, t[0]);
      const VertexId b = vertex(line, t[1]);
      const Rational w = number_at(line, t[2], "weight");
      if (w < 0) {
        fail(line, "negative weight " + t[2] + " for (" + t[0] + "," + t[1] + ")");
      }
      const auto key = std::minmax(a, b);
      if (!seen.emplace(key, line.number).second) {
        fail(line, "duplicate pair (" + t[0] + "," + t[1] + ")");
      }
      raw.push_back({a, b, w});
    }
  }
  if (!unit.has_value()) {
    throw ValidationError("missing 'unit' line");
  }
  std::vector<WeightEntry> entries;
  entries.reserve(raw.size());
  for (const auto& r : raw) {
    entries.push_back({r.a, r.b, r.w});
  }
  auto env = make_environment(std::move(names), *unit, entries);
  require_valid(env);
  return env;
}

std::string emit_environment(const PhysicalEnvironment& env) {
  std::ostringstream out;
  out << "unit " << format_rational(env.time_unit_seconds()) << "\n";
  out << "vertices";
  for (const auto& name : env.names()) {
    out << ' ' << name;
  }
  out << "\n";
  for (VertexId a = 0; a < env.size(); ++a) {
    for (VertexId b = a; b < env.size(); ++b) {
      if (const auto& w = env.weight(a, b)) {
        out << env.name(a) << ' ' << env.name(b) << ' ' << format_rational(*w)
            << "\n";
      }
    }
  }
  return out.str();
}

Circuit parse_circuit(std::string_view text) {
  std::optional<std::vector<std::string>> qubits;
  std::unordered_map<std::string, QubitId> index;
  std::vector<Level> levels;
  std::vector<Gate> segment;

  // Levelize the pending segment after everything already placed.
  const auto close_segment = [&] {
    if (segment.empty()) {
      return;
    }
    const Circuit part = levelize(*qubits, segment);
    levels.insert(levels.end(), part.levels().begin(), part.levels().end());
    segment.clear();
  };

  for (const auto& line : tokenize(text)) {
    const auto& t = line.tokens;
    if (t[0] == "qubits") {
      if (qubits.has_value()) {
        fail(line, "qubits declared twice");
      }
      qubits.emplace(t.begin() + 1, t.end());
      for (std::size_t i = 0; i < qubits->size(); ++i) {
        if (!index.emplace((*qubits)[i], static_cast<QubitId>(i)).second) {
          fail(line, "qubit '" + (*qubits)[i] + "' declared twice");
        }
      }
      continue;
    }
    if (!qubits.has_value()) {
      fail(line, "gates before the 'qubits' line");
    }
    if (t.size() == 1 && t[0] == "---") {
      close_segment();
      continue;
    }
    if (t.size() != 3 && t.size() != 4) {
      fail(line, "expected '<label> <T> <qubit> [<qubit>]'");
    }
    const Rational duration = number_at(line, t[1], "duration");
    if (duration < 0) {
      fail(line, "negative duration " + t[1]);
    }
    const auto qubit = [&](const std::string& name) {
      const auto it = index.find(name);
      if (it == index.end()) {
        fail(line, "unknown qubit '" + name + "'");
      }
      return it->second;
    };
    if (t.size() == 3) {
      segment.push_back(single_gate(t[0], duration, qubit(t[2])));
    } else {
      const QubitId a = qubit(t[2]);
      const QubitId b = qubit(t[3]);
      if (a == b) {
        fail(line, "gate acts twice on qubit '" + t[2] + "'");
      }
      segment.push_back(two_gate(t[0], duration, a, b));
    }
  }
  if (!qubits.has_value()) {
    qubits.emplace();
  }
  close_segment();
  return Circuit(std::move(*qubits), std::move(levels));
}

std::string emit_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits";
  for (const auto& q : circuit.qubits()) {
    out << ' ' << q;
  }
  out << "\n";
  for (const auto& level : circuit.levels()) {
    for (const auto& g : level) {
      out << g.label << ' ' << format_rational(g.duration) << ' '
          << circuit.qubits()[g.first];
      if (g.two_qubit()) {
        out << ' ' << circuit.qubits()[g.second];
      }
      out << "\n";
    }
    out << "---\n";
  }
  return out.str();
}

SimpleGraph parse_graph(std::string_view text) {
  SimpleGraph g;
  std::unordered_map<std::string, std::size_t> index;
  const auto vertex = [&](const std::string& name) {
    const auto [it, fresh] = index.emplace(name, g.names.size());
    if (fresh) {
      g.names.push_back(name);
    }
    return it->second;
  };
  for (const auto& line : tokenize(text)) {
    const auto& t = line.tokens;
    if (t[0] == "vertex") {
      if (t.size() != 2) {
        fail(line, "expected 'vertex <name>'");
      }
      vertex(t[1]);
    } else if (t.size() == 2) {
      if (t[0] == t[1]) {
        fail(line, "loop on '" + t[0] + "'");
      }
      const std::size_t a = vertex(t[0]);
      const std::size_t b = vertex(t[1]);
      g.edges.emplace_back(a, b);
    } else {
      fail(line, "expected '<vertex> <vertex>'");
    }
  }
  return g;
}

std::string mode_name(EvalMode mode) {
  return mode == EvalMode::kPipelined ? "pipelined" : "sequential";
}

EvalMode parse_mode(std::string_view text) {
  if (text == "pipelined") {
    return EvalMode::kPipelined;
  }
  if (text == "sequential") {
    return EvalMode::kSequentialLevels;
  }
  throw ValidationError("unknown mode '" + std::string(text) +
                        "', expected pipelined or sequential");
}

std::string emit_schedule(const SwapSchedule& schedule,
                          const PhysicalEnvironment& env) {
  std::ostringstream out;
  for (std::size_t i = 0; i < schedule.layers.size(); ++i) {
    out << "layer " << i + 1 << ':';
    for (const auto& [u, v] : schedule.layers[i]) {
      out << ' ' << env.name(u) << '-' << env.name(v);
    }
    out << "\n";
  }
  return out.str();
}

std::string emit_report(const PlacedProgram& program) {
  std::ostringstream out;
  out << "threshold: " << format_rational(program.threshold) << "\n";
  out << "mode: " << mode_name(program.mode) << "\n";
  out << "lookahead: " << (program.lookahead ? "true" : "false") << "\n";
  out << "k: " << program.k << "\n";
  out << "seed: " << program.seed << "\n";
  out << "qubits: " << program.qubit_names.size() << "\n";
  out << "environment_qubits: " << program.vertex_names.size() << "\n";
  out << "search_space: " << program.search_space.str() << "\n";
  out << "subcircuits: " << program.stages.size() << "\n";
  out << "runtime_units: " << format_rational(program.total_runtime) << "\n";
  out << "runtime_seconds: " << format_decimal(program.total_seconds()) << "\n";
  std::size_t swaps = 0;
  for (const auto& t : program.transitions) {
    swaps += t.schedule.swap_count();
  }
  out << "swaps: " << swaps << "\n";
  out << "stages:\n";
  for (std::size_t i = 0; i < program.stages.size(); ++i) {
    const auto& stage = program.stages[i];
    out << "  - stage: " << i + 1 << "\n";
    out << "    gates: " << stage.circuit.gate_count() << "\n";
    out << "    levels: " << stage.circuit.levels().size() << "\n";
    out << "    runtime_units: " << format_rational(stage.runtime) << "\n";
    if (i > 0) {
      const auto& t = program.transitions[i - 1];
      out << "    swap_layers: " << t.schedule.depth() << "\n";
      out << "    swap_runtime_units: " << format_rational(t.runtime) << "\n";
      out << "    swaps:\n";
      for (const auto& layer : t.schedule.layers) {
        out << "      - [";
        for (std::size_t j = 0; j < layer.size(); ++j) {
          out << (j == 0 ? "" : ", ") << program.vertex_names[layer[j].first]
              << ' ' << program.vertex_names[layer[j].second];
        }
        out << "]\n";
      }
    } else {
      out << "    swap_layers: 0\n";
    }
    out << "    placement:\n";
    for (QubitId q = 0; q < program.qubit_names.size(); ++q) {
      out << "      " << program.qubit_names[q] << ": "
          << program.vertex_names[stage.placement.at(q)] << "\n";
    }
  }
  return out.str();
}

} // namespace qplace
