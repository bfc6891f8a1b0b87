#include "support.hpp"

#include "qplace/errors.hpp"
#include "qplace/io.hpp"

#include <gtest/gtest.h>

namespace qplace {
namespace {

constexpr const char* kAcetylText =
    "unit 1e-4\nM M 8\nC1 C1 8\nC2 C2 1\nC1 M 38\nC1 C2 89\nM C2 672\n";

constexpr const char* kEncodingText = R"(# error-correction encoding
qubits a b c
Ry90 1 a
Rz90 0 a
ZZ90 1 a b
Rz-90 0 a
Rz-90 0 b
Ry90 1 c
ZZ90 1 b c
Rz90 0 c
Ry90 1 b
)";

TEST(ParseEnvironment, Acetyl) {
  EXPECT_EQ(parse_environment(kAcetylText), testing::acetyl());
}

TEST(ParseEnvironment, TwoVertices) {
  const auto env = parse_environment("unit 1\na a 0\na b 1\n");
  EXPECT_EQ(env.size(), 2U);
  EXPECT_EQ(*env.weight(1, 0), Rational(1));
  EXPECT_FALSE(env.weight(1, 1).has_value());
}

TEST(ParseEnvironment, Errors) {
  EXPECT_THROW((void)parse_environment("a b 1\n"), ValidationError);
  EXPECT_THROW((void)parse_environment("unit 1\na b 1\nb a 2\n"), ValidationError);
  EXPECT_THROW((void)parse_environment("unit 1\na b -1\n"), ValidationError);
  EXPECT_THROW((void)parse_environment("unit 1\na b x\n"), ValidationError);
  EXPECT_THROW((void)parse_environment("unit 1\nunit 2\n"), ValidationError);
  EXPECT_THROW((void)parse_environment("unit 0\n"), ValidationError);
  EXPECT_THROW((void)parse_environment("unit 1\nvertices a\na b 1\n"), ValidationError);
  try {
    (void)parse_environment("unit 1\n\na b 1\na b 2\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(ParseEnvironment, CommentsAndVertexOrder) {
  const auto env = parse_environment("# molecule\nunit 0.5 # half\nvertices z y\ny z 3\n");
  EXPECT_EQ(env.names(), (std::vector<std::string>{"z", "y"}));
  EXPECT_EQ(env.time_unit_seconds(), Rational(1, 2));
}

TEST(EmitEnvironment, RoundTripIsByteIdentical) {
  const auto once = emit_environment(parse_environment(kAcetylText));
  EXPECT_EQ(emit_environment(parse_environment(once)), once);
  EXPECT_EQ(parse_environment(once), testing::acetyl());
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng() % 6;
    std::vector<WeightEntry> w;
    for (VertexId a = 0; a < m; ++a) {
      for (VertexId b = a; b < m; ++b) {
        if (rng() % 2 == 0) {
          w.push_back({a, b, Rational(static_cast<std::int64_t>(rng() % 100),
                                      1 + static_cast<std::int64_t>(rng() % 7))});
        }
      }
    }
    const auto env = make_environment(testing::names("v", m), Rational(1, 1000), w);
    const auto text = emit_environment(env);
    EXPECT_EQ(parse_environment(text), env);
    EXPECT_EQ(emit_environment(parse_environment(text)), text);
  }
}

TEST(ParseCircuit, Encoding) {
  const auto c = parse_circuit(kEncodingText);
  EXPECT_EQ(c, testing::encoding_circuit());
  std::size_t nonzero = 0;
  std::size_t zero = 0;
  for (const auto& g : c.flatten()) {
    (g.duration.numerator() == 0 ? zero : nonzero)++;
  }
  EXPECT_EQ(nonzero, 5U);
  EXPECT_EQ(zero, 4U);
}

TEST(ParseCircuit, EmptyGateSection) {
  const auto c = parse_circuit("qubits a b\n");
  EXPECT_TRUE(c.empty());
  EXPECT_EQ(c.qubit_count(), 2U);
  EXPECT_TRUE(parse_circuit("").empty());
}

TEST(ParseCircuit, Errors) {
  EXPECT_THROW((void)parse_circuit("qubits a\nX 1 b\n"), ValidationError);
  EXPECT_THROW((void)parse_circuit("qubits a\nX one a\n"), ValidationError);
  EXPECT_THROW((void)parse_circuit("qubits a b\nX 1 a a\n"), ValidationError);
  EXPECT_THROW((void)parse_circuit("X 1 a\n"), ValidationError);
  EXPECT_THROW((void)parse_circuit("qubits a a\n"), ValidationError);
  EXPECT_THROW((void)parse_circuit("qubits a\nX -1 a\n"), ValidationError);
}

TEST(ParseCircuit, BoundariesSeparateSegments) {
  // Without the boundary the two single gates share a level.
  EXPECT_EQ(parse_circuit("qubits a b\nX 1 a\nX 1 b\n").levels().size(), 1U);
  const auto c = parse_circuit("qubits a b\nX 1 a\n---\nX 1 b\n");
  EXPECT_EQ(c.levels().size(), 2U);
  EXPECT_EQ(parse_circuit("qubits a b\nX 1 a\n---\n---\nX 1 b\n---\n").levels().size(), 2U);
}

TEST(EmitCircuit, RoundTripIsByteIdentical) {
  const auto once = emit_circuit(parse_circuit(kEncodingText));
  EXPECT_EQ(emit_circuit(parse_circuit(once)), once);
  EXPECT_EQ(parse_circuit(once), testing::encoding_circuit());
  const auto bench = gen_chain_benchmark(16, 3);
  const auto text = emit_circuit(bench.circuit);
  EXPECT_EQ(parse_circuit(text), bench.circuit);
  EXPECT_EQ(emit_circuit(parse_circuit(text)), text);
}

TEST(ParseGraph, VerticesAndEdges) {
  const auto g = parse_graph("vertex lone\na b\nb c # comment\n");
  EXPECT_EQ(g.names, (std::vector<std::string>{"lone", "a", "b", "c"}));
  EXPECT_EQ(g.edges.size(), 2U);
  EXPECT_THROW((void)parse_graph("a a\n"), ValidationError);
  EXPECT_THROW((void)parse_graph("a b c\n"), ValidationError);
}

TEST(Mode, Names) {
  EXPECT_EQ(parse_mode("pipelined"), EvalMode::kPipelined);
  EXPECT_EQ(parse_mode("sequential"), EvalMode::kSequentialLevels);
  EXPECT_EQ(mode_name(EvalMode::kSequentialLevels), "sequential");
  EXPECT_THROW((void)parse_mode("fast"), ValidationError);
}

TEST(Report, AcetylKeys) {
  const auto program = place(parse_circuit(kEncodingText), parse_environment(kAcetylText));
  const auto report = emit_report(program);
  EXPECT_NE(report.find("subcircuits: 1\n"), std::string::npos);
  EXPECT_NE(report.find("runtime_seconds: 0.0136\n"), std::string::npos);
  EXPECT_NE(report.find("runtime_units: 136\n"), std::string::npos);
  EXPECT_NE(report.find("search_space: 6\n"), std::string::npos);
  EXPECT_NE(report.find("threshold: 89\n"), std::string::npos);
  EXPECT_NE(report.find("      a: C2\n"), std::string::npos);
  EXPECT_EQ(report, emit_report(place(parse_circuit(kEncodingText),
                                      parse_environment(kAcetylText))));
}

TEST(Report, EmptyCircuit) {
  const auto program = place(parse_circuit("qubits a b\n"), parse_environment(kAcetylText));
  const auto report = emit_report(program);
  EXPECT_NE(report.find("subcircuits: 1\n"), std::string::npos);
  EXPECT_NE(report.find("runtime_seconds: 0\n"), std::string::npos);
}

TEST(Report, KeyOrderIsStable) {
  const auto report = emit_report(place(testing::encoding_circuit(), testing::acetyl()));
  std::vector<std::string> keys;
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line) && line != "stages:") {
    keys.push_back(line.substr(0, line.find(':')));
  }
  EXPECT_EQ(keys, (std::vector<std::string>{
                      "threshold", "mode", "lookahead", "k", "seed", "qubits",
                      "environment_qubits", "search_space", "subcircuits",
                      "runtime_units", "runtime_seconds", "swaps"}));
}

} // namespace
} // namespace qplace
