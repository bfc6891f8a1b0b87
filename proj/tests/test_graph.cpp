#include "support.hpp"

#include "qplace/errors.hpp"
#include "qplace/fast_graph.hpp"
#include "qplace/monomorphism.hpp"

#include <gtest/gtest.h>

namespace qplace {
namespace {

using testing::acetyl;
using testing::kC1;
using testing::kC2;
using testing::kM;

TEST(FastGraph, AcetylAtHundredIsPathThroughC1) {
  const auto g = fast_graph(acetyl(), Rational(100));
  ASSERT_EQ(g.edges().size(), 2U);
  EXPECT_TRUE(g.adjacent(kM, kC1));
  EXPECT_TRUE(g.adjacent(kC1, kC2));
  EXPECT_FALSE(g.adjacent(kM, kC2));
  EXPECT_TRUE(g.connected());
  EXPECT_EQ(g.degree(kC1), 2U);
}

TEST(FastGraph, ZeroThresholdHasNoEdges) {
  const auto g = fast_graph(acetyl(), Rational(0));
  EXPECT_TRUE(g.edges().empty());
  EXPECT_FALSE(g.connected());
  EXPECT_EQ(g.components().size(), 3U);
}

TEST(FastGraph, LargeThresholdIsComplete) {
  const auto g = fast_graph(acetyl(), Rational(10000));
  EXPECT_EQ(g.edges().size(), 3U);
}

TEST(FastGraph, ThresholdIsInclusiveAndIgnoresDiagonal) {
  const auto g = fast_graph(acetyl(), Rational(89));
  EXPECT_TRUE(g.adjacent(kC1, kC2));
  EXPECT_FALSE(g.adjacent(kM, kM));
  EXPECT_THROW((void)fast_graph(acetyl(), Rational(-1)), ValidationError);
}

TEST(FastGraph, InducedKeepsNumbering) {
  const auto g = testing::chain_graph(5);
  const std::vector<VertexId> part{1, 2, 3};
  const auto sub = g.induced(part);
  EXPECT_EQ(sub.vertex_count(), 5U);
  EXPECT_EQ(sub.members(), part);
  EXPECT_TRUE(sub.adjacent(1, 2));
  EXPECT_FALSE(sub.contains(0));
  EXPECT_TRUE(sub.connected());
}

PhysicalEnvironment random_weighted(std::mt19937_64& rng, std::size_t m) {
  std::vector<WeightEntry> w;
  for (VertexId a = 0; a < m; ++a) {
    for (VertexId b = a + 1; b < m; ++b) {
      if (rng() % 3 != 0) {
        w.push_back({a, b, Rational(static_cast<std::int64_t>(1 + rng() % 20))});
      }
    }
  }
  return make_environment(testing::names("v", m), Rational(1), w);
}

TEST(MinConnectingThreshold, Examples) {
  EXPECT_EQ(min_connecting_threshold(acetyl()), Rational(89));
  const std::vector<WeightEntry> two{{0, 1, Rational(7)}};
  EXPECT_EQ(min_connecting_threshold(make_environment({"a", "b"}, Rational(1), two)),
            Rational(7));
  const std::vector<WeightEntry> chain{{0, 1, Rational(1)}, {1, 2, Rational(5)}};
  EXPECT_EQ(min_connecting_threshold(make_environment({"a", "b", "c"}, Rational(1), chain)),
            Rational(5));
}

TEST(MinConnectingThreshold, UnconnectableIsAnError) {
  const std::vector<WeightEntry> w{{0, 0, Rational(1)}};
  EXPECT_THROW((void)min_connecting_threshold(make_environment({"a", "b"}, Rational(1), w)),
               InfeasibleError);
}

TEST(MinConnectingThreshold, MatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + rng() % 7;
    const auto env = random_weighted(rng, m);
    const auto expected = testing::brute_bottleneck(env);
    if (!expected.has_value()) {
      EXPECT_THROW((void)min_connecting_threshold(env), InfeasibleError);
      continue;
    }
    const Rational t = min_connecting_threshold(env);
    EXPECT_EQ(t, *expected);
    EXPECT_TRUE(fast_graph(env, t).connected());
  }
}

TEST(FastGraph, MonotoneInThreshold) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto env = random_weighted(rng, 2 + rng() % 6);
    const Rational lo(static_cast<std::int64_t>(rng() % 20));
    const Rational hi = lo + Rational(static_cast<std::int64_t>(rng() % 10));
    const auto small = fast_graph(env, lo);
    const auto large = fast_graph(env, hi);
    for (const auto& e : small.edges()) {
      EXPECT_TRUE(large.adjacent(e.u, e.v));
    }
  }
}

InteractionPattern pattern(std::vector<std::pair<QubitId, QubitId>> edges) {
  std::vector<Gate> g;
  for (const auto& [a, b] : edges) {
    g.push_back(two_gate("G", Rational(1), a, b));
  }
  return InteractionPattern::of(g);
}

TEST(Monomorphism, EdgeIntoTriangleHasSix) {
  const auto host = testing::graph_from(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto r = enumerate_monomorphisms(pattern({{0, 1}}), host);
  EXPECT_EQ(r.maps.size(), 6U);
  EXPECT_TRUE(r.exhausted);
}

TEST(Monomorphism, PathIntoAcetylFastGraph) {
  const auto host = fast_graph(acetyl(), Rational(100));
  const auto p = pattern({{0, 1}, {1, 2}});
  const auto r = enumerate_monomorphisms(p, host);
  ASSERT_EQ(r.maps.size(), 2U);
  for (const auto& map : r.maps) {
    EXPECT_EQ(map[p.index_of(1)], kC1);
  }
}

TEST(Monomorphism, TriangleIntoPathIsEmpty) {
  const auto r = enumerate_monomorphisms(pattern({{0, 1}, {1, 2}, {0, 2}}),
                                         testing::chain_graph(3));
  EXPECT_TRUE(r.maps.empty());
  EXPECT_TRUE(r.exhausted);
}

TEST(Monomorphism, EmptyPatternEmbedsOnce) {
  const auto r = enumerate_monomorphisms(InteractionPattern{}, testing::chain_graph(3));
  ASSERT_EQ(r.maps.size(), 1U);
  EXPECT_TRUE(r.maps[0].empty());
}

TEST(Monomorphism, LimitAndBudget) {
  const auto host = testing::grid_graph(4, 4);
  const auto r = enumerate_monomorphisms(pattern({{0, 1}, {1, 2}}), host, {5, 0});
  EXPECT_EQ(r.maps.size(), 5U);
  EXPECT_FALSE(r.exhausted);
  const auto tight = enumerate_monomorphisms(
      pattern({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}), host, {100'000, 10});
  EXPECT_TRUE(tight.budget_hit);
  EXPECT_FALSE(tight.exhausted);
  EXPECT_LE(tight.nodes, 10U);
}

std::set<std::vector<VertexId>> brute_force(const InteractionPattern& p,
                                            const FastGraph& host) {
  std::set<std::vector<VertexId>> out;
  const std::size_t k = p.vertices.size();
  const std::size_t m = host.vertex_count();
  std::vector<VertexId> images(k);
  std::vector<char> used(m, 0);
  const auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      for (const auto& [a, b] : p.edges) {
        if (!host.adjacent(images[p.index_of(a)], images[p.index_of(b)])) {
          return;
        }
      }
      out.insert(images);
      return;
    }
    for (VertexId v = 0; v < m; ++v) {
      if (used[v] == 0) {
        used[v] = 1;
        images[i] = v;
        self(self, i + 1);
        used[v] = 0;
      }
    }
  };
  rec(rec, 0);
  return out;
}

TEST(Monomorphism, MatchesBruteForceOnSmallGraphs) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t m = 1 + rng() % 6;
    std::vector<std::pair<VertexId, VertexId>> he;
    for (VertexId a = 0; a < m; ++a) {
      for (VertexId b = a + 1; b < m; ++b) {
        if (rng() % 2 == 0) {
          he.emplace_back(a, b);
        }
      }
    }
    const auto host = testing::graph_from(m, he);
    const std::size_t k = 2 + rng() % 5;
    std::vector<std::pair<QubitId, QubitId>> pe;
    for (QubitId a = 0; a < k; ++a) {
      for (QubitId b = a + 1; b < k; ++b) {
        if (rng() % 3 == 0) {
          pe.emplace_back(a, b);
        }
      }
    }
    const auto p = pattern(pe);
    const auto r = enumerate_monomorphisms(p, host, {1'000'000, 0});
    ASSERT_TRUE(r.exhausted);
    const std::set<std::vector<VertexId>> got(r.maps.begin(), r.maps.end());
    EXPECT_EQ(got.size(), r.maps.size());
    EXPECT_EQ(got, brute_force(p, host));
    for (const auto& map : r.maps) {
      EXPECT_TRUE(is_monomorphism(p, host, map));
    }
  }
}

TEST(Monomorphism, DeterministicOrder) {
  const auto host = testing::grid_graph(3, 3);
  const auto p = pattern({{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(enumerate_monomorphisms(p, host).maps, enumerate_monomorphisms(p, host).maps);
}

TEST(Monomorphism, RejectsNonMaps) {
  const auto host = testing::chain_graph(3);
  const auto p = pattern({{0, 1}, {1, 2}});
  EXPECT_TRUE(is_monomorphism(p, host, std::vector<VertexId>{0, 1, 2}));
  EXPECT_FALSE(is_monomorphism(p, host, std::vector<VertexId>{1, 0, 2}));
  EXPECT_FALSE(is_monomorphism(p, host, std::vector<VertexId>{0, 1, 1}));
  EXPECT_FALSE(is_monomorphism(p, host, std::vector<VertexId>{0, 1}));
}

} // namespace
} // namespace qplace
