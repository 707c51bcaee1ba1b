#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support/graphs.hpp"
#include "support/oracles.hpp"
#include "tged/centrality.hpp"

namespace tged {
namespace {

using testing::id;

TEST(DegreeCentrality, Examples) {
  auto p3 = degree_centrality(testing::path(3));
  EXPECT_EQ(p3.values, (std::vector<double>{1, 2, 1}));
  auto c4 = degree_centrality(testing::cycle(4));
  EXPECT_EQ(c4.values, (std::vector<double>(4, 2.0)));
  EXPECT_EQ(degree_centrality(Graph{}).size(), 0u);
}

TEST(BetweennessCentrality, Examples) {
  auto p3 = betweenness_centrality_serial(testing::path(3));
  EXPECT_EQ(p3.values, (std::vector<double>{0, 1, 0}));

  // Frozen from the path-enumeration oracle (checked again below).
  const Graph c4 = testing::cycle(4);
  auto bc4 = betweenness_centrality_serial(c4);
  for (NodeId u : c4.nodes()) {
    EXPECT_NEAR(bc4.at(u), 0.5, 1e-12);
    EXPECT_NEAR(testing::betweenness_by_path_enumeration(c4)[u], 0.5, 1e-12);
  }

  const Graph k14 = testing::star(4);
  EXPECT_NEAR(betweenness_centrality_serial(k14).at(id(0)), 6.0, 1e-12);
  EXPECT_NEAR(testing::betweenness_by_path_enumeration(k14)[id(0)], 6.0, 1e-12);
}

TEST(BetweennessCentrality, DisconnectedPairsContributeNothing) {
  Graph g = testing::path(3);
  NodeId x = g.add_node(Point2D{});
  NodeId y = g.add_node(Point2D{});
  g.add_edge(x, y);
  auto s = betweenness_centrality_serial(g);
  EXPECT_EQ(s.values, (std::vector<double>{0, 1, 0, 0, 0}));
}

TEST(BetweennessCentrality, MatchesPathEnumerationOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> order(2, 8);
  for (int trial = 0; trial < 120; ++trial) {
    const Graph g = testing::random_connected(rng, order(rng), 0.3);
    const auto oracle = testing::betweenness_by_path_enumeration(g);
    const auto s = betweenness_centrality_serial(g);
    for (NodeId u : g.nodes())
      EXPECT_NEAR(s.at(u), oracle.at(u), 1e-9);
  }
}

TEST(BetweennessCentrality, ParallelIsBitIdenticalToSerial) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = testing::random_graph(rng, 60, 0.08);
    const auto serial = betweenness_centrality_serial(g);
    for (int workers : {1, 2, 4}) {
      const auto par = betweenness_centrality(g, workers);
      EXPECT_EQ(par.ids, serial.ids);
      EXPECT_EQ(par.values, serial.values) << "workers=" << workers;
    }
  }
}

TEST(EigenvectorCentrality, Examples) {
  auto c4 = eigenvector_centrality(testing::cycle(4));
  for (double v : c4.values)
    EXPECT_NEAR(v, 0.5, 1e-9);

  auto single = eigenvector_centrality(testing::with_nodes(1));
  EXPECT_EQ(single.values, (std::vector<double>{1.0}));

  // P3: principal eigenvector (1, sqrt 2, 1) / 2.
  auto p3 = eigenvector_centrality(testing::path(3));
  EXPECT_NEAR(p3.at(id(1)), std::sqrt(2.0) * p3.at(id(0)), 1e-7);
  EXPECT_NEAR(p3.at(id(0)), 0.5, 1e-8);
  const auto dense = testing::principal_eigenvector(testing::path(3));
  for (NodeId u : testing::path(3).nodes())
    EXPECT_NEAR(p3.at(u), dense.at(u), 1e-7);
}

TEST(EigenvectorCentrality, PerComponentNormalization) {
  Graph g = testing::cycle(4);
  NodeId a = g.add_node(Point2D{}), b = g.add_node(Point2D{});
  g.add_edge(a, b);
  g.add_node(Point2D{});
  auto s = eigenvector_centrality(g);
  for (std::uint32_t i = 0; i < 4; ++i)
    EXPECT_NEAR(s.at(id(i)), 0.5, 1e-9);
  EXPECT_NEAR(s.at(a), std::sqrt(0.5), 1e-9);
  EXPECT_NEAR(s.at(b), std::sqrt(0.5), 1e-9);
  EXPECT_EQ(s.at(id(6)), 1.0);
}

TEST(EigenvectorCentrality, ResidualAndNormOnRandomGraphs) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> order(1, 20);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = testing::random_graph(rng, order(rng), 0.2);
    const EigenvectorConfig cfg{1e-8, 100000};
    const auto s = eigenvector_centrality(g, cfg);
    for (const auto &block : connected_components(g)) {
      double norm = 0.0, kappa = 0.0;
      for (NodeId u : block) {
        EXPECT_GE(s.at(u), 0.0);
        norm += s.at(u) * s.at(u);
        for (NodeId w : g.neighbors(u))
          kappa += s.at(u) * s.at(w);
      }
      EXPECT_NEAR(norm, 1.0, 1e-9);
      if (block.size() == 1)
        continue;
      for (NodeId u : block) {
        double ax = 0.0;
        for (NodeId w : g.neighbors(u))
          ax += s.at(w);
        EXPECT_LE(std::abs(ax - kappa * s.at(u)), 1e-6);
      }
    }
  }
}

TEST(EigenvectorCentrality, NonConvergenceIsReported) {
  try {
    eigenvector_centrality(testing::path(30), EigenvectorConfig{1e-12, 3});
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError &e) {
    EXPECT_EQ(e.iterations(), 3);
    EXPECT_GT(e.residual(), 1e-12);
  }
}

TEST(PageRankCentrality, Examples) {
  auto c5 = pagerank_centrality(testing::cycle(5));
  for (double v : c5.values)
    EXPECT_NEAR(v, c5.values[0], 1e-12);

  auto single = pagerank_centrality(testing::with_nodes(1), PageRankConfig{0.85, 0.2});
  EXPECT_DOUBLE_EQ(single.values[0], 0.2);

  // Frozen from the linear solve (I - 0.85 A D^-1) x = 0.05: leaves 19/74,
  // centre 18/37.
  auto p3 = pagerank_centrality(testing::path(3), PageRankConfig{0.85, 0.05});
  const auto oracle = testing::pagerank_by_linear_solve(testing::path(3), 0.85, 0.05);
  EXPECT_NEAR(p3.at(id(0)), 19.0 / 74.0, 1e-9);
  EXPECT_NEAR(p3.at(id(1)), 18.0 / 37.0, 1e-9);
  EXPECT_NEAR(p3.at(id(2)), 19.0 / 74.0, 1e-9);
  for (std::uint32_t i = 0; i < 3; ++i)
    EXPECT_NEAR(p3.at(id(i)), oracle.at(id(i)), 1e-9);
}

TEST(PageRankCentrality, IsolatedNodesReceiveGamma) {
  Graph g = testing::path(3);
  g.add_node(Point2D{});
  auto s = pagerank_centrality(g, PageRankConfig{0.85, 0.1});
  EXPECT_DOUBLE_EQ(s.at(id(3)), 0.1);
}

TEST(PageRankCentrality, FixedPointProperties) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> order(2, 25);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = testing::random_connected(rng, order(rng), 0.15);
    const PageRankConfig cfg;
    const auto s = pagerank_centrality(g, cfg);
    const double gamma = (1.0 - cfg.alpha) / static_cast<double>(g.order());
    EXPECT_LE(s.residual, 1e-8);
    double sum = 0.0;
    for (NodeId u : g.nodes()) {
      EXPECT_GE(s.at(u), gamma);
      double rhs = gamma;
      for (NodeId w : g.neighbors(u))
        rhs += cfg.alpha * s.at(w) / static_cast<double>(g.degree(w));
      EXPECT_LE(std::abs(rhs - s.at(u)), 1e-8);
      sum += s.at(u);
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

TEST(PageRankCentrality, RejectsBadConfig) {
  EXPECT_THROW(pagerank_centrality(testing::path(3), PageRankConfig{1.0}), std::invalid_argument);
  EXPECT_THROW(pagerank_centrality(testing::path(3), PageRankConfig{0.5, -1.0}),
               std::invalid_argument);
  EXPECT_THROW(pagerank_centrality(testing::path(30), PageRankConfig{0.85, {}, 1e-15, 2}),
               ConvergenceError);
}

TEST(RankAscending, TieBreakById) {
  CentralityScores s;
  s.ids = {id(0), id(1), id(2)};
  s.values = {1, 2, 1};
  EXPECT_EQ(rank_ascending(s), (std::vector<NodeId>{id(0), id(2), id(1)}));
  s.values = {3, 3, 3};
  EXPECT_EQ(rank_ascending(s), (std::vector<NodeId>{id(0), id(1), id(2)}));
  EXPECT_TRUE(rank_ascending(CentralityScores{}).empty());
}

TEST(RankAscending, PermutationOfNodes) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = testing::random_graph(rng, 10, 0.3);
    for (CentralityMeasure m : kAllMeasures) {
      auto r = rank_ascending(compute_centrality(g, m));
      std::sort(r.begin(), r.end());
      EXPECT_EQ(r, g.nodes());
    }
  }
}

TEST(RankAscending, DegreeAndEigenvectorAgreeOnVertexTransitive) {
  for (const Graph &g : {testing::cycle(6), testing::complete(5)}) {
    EXPECT_EQ(rank_ascending(degree_centrality(g)), rank_ascending(eigenvector_centrality(g)));
    EXPECT_EQ(rank_ascending(degree_centrality(g)), g.nodes());
  }
}

TEST(Measures, ParseAndPrint) {
  for (CentralityMeasure m : kAllMeasures)
    EXPECT_EQ(parse_measure(to_string(m)), m);
  EXPECT_EQ(parse_measure("PageRank"), CentralityMeasure::PageRank);
  EXPECT_FALSE(parse_measure("katz"));
}

} // namespace
} // namespace tged
