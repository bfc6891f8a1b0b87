#include "qplace/instance_gen.hpp"

#include "qplace/errors.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

namespace qplace {

ChainBenchmark gen_chain_benchmark(std::size_t n, std::uint64_t seed) {
  if (n < 4 || !std::has_single_bit(n)) {
    throw ValidationError("chain benchmark size must be a power of two >= 4, got " +
                          std::to_string(n));
  }
  const auto stages = static_cast<std::size_t>(std::countr_zero(n));
  std::mt19937_64 engine(seed);

  ChainBenchmark bench;
  bench.n = n;
  bench.seed = seed;

  std::vector<std::string> vertices;
  std::vector<std::string> qubits;
  std::vector<WeightEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    vertices.push_back("x" + std::to_string(i));
    qubits.push_back("q" + std::to_string(i));
    if (i + 1 < n) {
      entries.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1),
                         Rational(1)});
    }
  }
  bench.env = make_environment(std::move(vertices), Rational(1, 1000), entries);

  std::vector<Gate> gates;
  gates.reserve(n * stages * stages);
  for (std::size_t s = 0; s < stages; ++s) {
    std::vector<QubitId> order(n);
    for (std::size_t i = 0; i < n; ++i) {
      order[i] = static_cast<QubitId>(i);
    }
    // Fisher-Yates with our own bounded draw, reproducible across platforms.
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(order[i], order[draw_below(engine, i + 1)]);
    }
    for (std::size_t g = 0; g < n * stages; ++g) {
      const auto j = static_cast<std::size_t>(draw_below(engine, n));
      const bool left = draw_below(engine, 2) == 0;
      std::size_t k = 0;
      if (j == 0) {
        k = 1;
      } else if (j == n - 1) {
        k = n - 2;
      } else {
        k = left ? j - 1 : j + 1;
      }
      gates.push_back(two_gate("ZZ", Rational(3), order[j], order[k]));
    }
    bench.hidden_stages.push_back(std::move(order));
  }
  // Levels follow generation order: a new level starts whenever the next gate
  // shares a qubit with the open one, so no gate overtakes an earlier one.
  std::vector<Level> levels;
  std::vector<char> busy(n, 0);
  for (auto& g : gates) {
    if (levels.empty() || busy[g.first] != 0 || busy[g.second] != 0) {
      levels.emplace_back();
      std::fill(busy.begin(), busy.end(), 0);
    }
    busy[g.first] = busy[g.second] = 1;
    levels.back().push_back(std::move(g));
  }
  bench.circuit = Circuit(std::move(qubits), std::move(levels));
  return bench;
}

std::string emit_chain_header(const ChainBenchmark& bench) {
  std::ostringstream out;
  out << "# chain benchmark\n";
  out << "n " << bench.n << "\n";
  out << "seed " << bench.seed << "\n";
  out << "generator " << kGeneratorName << "\n";
  out << "gates " << bench.circuit.gate_count() << "\n";
  out << "hidden_stages " << bench.hidden_stages.size() << "\n";
  for (std::size_t s = 0; s < bench.hidden_stages.size(); ++s) {
    out << "stage " << s + 1;
    for (const QubitId q : bench.hidden_stages[s]) {
      out << ' ' << bench.circuit.qubits()[q];
    }
    out << "\n";
  }
  return out.str();
}

ReductionInstance gen_hamiltonian_reduction(const SimpleGraph& h) {
  const std::size_t m = h.names.size();
  if (m < 3) {
    throw ValidationError("reduction needs at least three vertices");
  }
  std::vector<char> edge(m * m, 0);
  for (const auto& [a, b] : h.edges) {
    if (a >= m || b >= m || a == b) {
      throw ValidationError("graph edge out of range or a loop");
    }
    edge[a * m + b] = edge[b * m + a] = 1;
  }
  std::vector<WeightEntry> entries;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      const bool absent = a != b && edge[a * m + b] == 0;
      entries.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b),
                         Rational(absent ? 1 : 0)});
    }
  }
  ReductionInstance out;
  out.env = make_environment(h.names, Rational(1), entries);

  std::vector<std::string> qubits;
  for (std::size_t i = 0; i < m; ++i) {
    qubits.push_back("q" + std::to_string(i + 1));
  }
  std::vector<Level> levels;
  for (std::size_t i = 0; i < m; ++i) {
    levels.push_back({two_gate("G", Rational(1), static_cast<QubitId>(i),
                               static_cast<QubitId>((i + 1) % m))});
  }
  out.circuit = Circuit(std::move(qubits), std::move(levels));
  return out;
}

} // namespace qplace
