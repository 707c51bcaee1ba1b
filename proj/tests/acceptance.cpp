// Acceptance run: one PASS/FAIL/SKIP line per criterion. Exit status is
// nonzero when any criterion fails; skipped criteria do not count as
// failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/ged_oracle.hpp"
#include "support/graphs.hpp"
#include "support/oracles.hpp"
#include "tged/centrality.hpp"
#include "tged/contraction.hpp"
#include "tged/dataset.hpp"
#include "tged/eval.hpp"
#include "tged/ged.hpp"

namespace tged {
namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

/// Collects the first few failure messages of a criterion.
class Checker {
public:
  void expect(bool ok, const std::string &what) {
    ++checks_;
    if (ok)
      return;
    if (failures_.size() < 3)
      failures_.push_back(what);
    ++failed_;
  }
  Outcome outcome(const std::string &summary) const {
    if (!failed_)
      return {Verdict::Pass, summary + ", " + std::to_string(checks_) + " checks"};
    std::string d = std::to_string(failed_) + "/" + std::to_string(checks_) + " checks failed";
    for (const auto &f : failures_)
      d += "; " + f;
    return {Verdict::Fail, d};
  }

private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<CostModel> oracle_cost_models() {
  CostModel skewed;
  skewed.x_node = 0.9;
  skewed.y_node = 1.7;
  skewed.x_edge = 0.4;
  skewed.y_edge = 2.5;
  skewed.node_distance = NodeDistance::Discrete;
  CostModel heavy_edges;
  heavy_edges.x_node = 0.5;
  heavy_edges.y_node = 0.3;
  heavy_edges.x_edge = 3.0;
  return {CostModel{}, skewed, heavy_edges};
}

struct Pair {
  Graph g1, g2;
};

std::vector<Pair> oracle_pairs(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> order(0, 4);
  std::uniform_real_distribution<double> density(0.0, 0.8);
  std::vector<Pair> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto kind = i % 2 ? testing::LabelKind::Symbol : testing::LabelKind::Point;
    Graph a = testing::random_graph(rng, order(rng), density(rng), kind);
    Graph b = testing::random_graph(rng, order(rng), density(rng), kind);
    out.push_back({std::move(a), std::move(b)});
  }
  return out;
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Checker c;
  const auto pairs = oracle_pairs(1001, 200);
  for (const CostModel &cm : oracle_cost_models())
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto &[g1, g2] = pairs[i];
      const double exact = astar_ged(g1, g2, cm).cost;
      const double brute = brute_force_ged(g1, g2, cm);
      const double padded = testing::ged_by_padded_permutations(g1, g2, cm);
      c.expect(std::abs(exact - brute) <= 1e-9 && std::abs(exact - padded) <= 1e-9,
               "pair " + std::to_string(i) + ": astar " + fmt(exact) + " brute " + fmt(brute));
    }
  const double secs = seconds_since(t0);
  c.expect(secs <= 60.0, "took " + fmt(secs) + " s");
  return c.outcome("200 pairs x 3 cost models in " + fmt(secs) + " s");
}

Outcome beam_bound() {
  Checker c;
  const auto pairs = oracle_pairs(1001, 200);
  for (const CostModel &cm : oracle_cost_models())
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto &[g1, g2] = pairs[i];
      const double exact = astar_ged(g1, g2, cm).cost;
      for (std::size_t w : {1u, 3u, 10u}) {
        const double b = beam_ged(g1, g2, cm, w).cost;
        c.expect(b >= exact - 1e-9, "pair " + std::to_string(i) + " w=" + std::to_string(w) +
                                        ": beam " + fmt(b) + " < exact " + fmt(exact));
      }
      // The whole search tree of a 4 + 4 node pair has fewer than 1000 entries.
      const double wide = beam_ged(g1, g2, cm, 1000).cost;
      c.expect(wide == exact, "pair " + std::to_string(i) + ": wide beam " + fmt(wide));
    }
  return c.outcome("w in {1,3,10} and w=1000");
}

Outcome metric_properties() {
  Checker c;
  const CostModel cm;
  std::size_t graphs = 0;
  for (const Corpus &corpus : {synthesize_letter_like({1, 150, 15, 0.3}),
                               synthesize_letter_like({2, 150, 15, 0.1})}) {
    for (const Graph &g : corpus.graphs) {
      ++graphs;
      c.expect(search_ged(g, g, cm, SearchSpec::astar(Heuristic::CountBound)).cost == 0.0,
               "self distance of " + g.name());
    }
  }
  const auto pairs = oracle_pairs(1003, 60);
  for (const CostModel &m : oracle_cost_models())
    for (const auto &[g1, g2] : pairs)
      c.expect(std::abs(astar_ged(g1, g2, m).cost - astar_ged(g2, g1, m).cost) <= 1e-9,
               "symmetry");
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<std::size_t> order(0, 4);
  for (const CostModel &m : oracle_cost_models())
    for (int i = 0; i < 60; ++i) {
      const auto kind = i % 2 ? testing::LabelKind::Symbol : testing::LabelKind::Point;
      const Graph a = testing::random_graph(rng, order(rng), 0.4, kind);
      const Graph b = testing::random_graph(rng, order(rng), 0.4, kind);
      const Graph d = testing::random_graph(rng, order(rng), 0.4, kind);
      c.expect(astar_ged(a, d, m).cost <= astar_ged(a, b, m).cost + astar_ged(b, d, m).cost + 1e-9,
               "triangle inequality");
    }
  return c.outcome(std::to_string(graphs) + " self distances, 60 pairs, 60 triples");
}

Outcome centrality_oracles() {
  Checker c;
  std::mt19937_64 rng(1005);
  std::uniform_int_distribution<std::size_t> small(2, 8);
  for (int i = 0; i < 100; ++i) {
    const Graph g = testing::random_graph(rng, small(rng), 0.35);
    const auto oracle = testing::betweenness_by_path_enumeration(g);
    const auto s = betweenness_centrality(g);
    for (NodeId u : g.nodes())
      c.expect(std::abs(s.at(u) - oracle.at(u)) <= 1e-9, "betweenness");
  }
  std::uniform_int_distribution<std::size_t> medium(2, 30);
  for (int i = 0; i < 100; ++i) {
    const Graph g = testing::random_graph(rng, medium(rng), 0.15);
    const auto s = eigenvector_centrality(g, EigenvectorConfig{1e-8, 100000});
    for (const auto &block : connected_components(g)) {
      if (block.size() == 1)
        continue;
      double kappa = 0.0;
      for (NodeId u : block)
        for (NodeId w : g.neighbors(u))
          kappa += s.at(u) * s.at(w);
      double worst = 0.0;
      for (NodeId u : block) {
        double ax = 0.0;
        for (NodeId w : g.neighbors(u))
          ax += s.at(w);
        worst = std::max(worst, std::abs(ax - kappa * s.at(u)));
      }
      c.expect(worst <= 1e-6, "eigenvector residual " + fmt(worst));
    }
  }
  for (int i = 0; i < 100; ++i) {
    const Graph g = testing::random_connected(rng, medium(rng), 0.1);
    const PageRankConfig cfg;
    const auto s = pagerank_centrality(g, cfg);
    const double gamma = (1.0 - cfg.alpha) / static_cast<double>(g.order());
    double worst = 0.0, sum = 0.0;
    for (NodeId u : g.nodes()) {
      double rhs = gamma;
      for (NodeId w : g.neighbors(u))
        rhs += cfg.alpha * s.at(w) / static_cast<double>(g.degree(w));
      worst = std::max(worst, std::abs(rhs - s.at(u)));
      sum += s.at(u);
    }
    c.expect(worst <= 1e-8, "pagerank residual " + fmt(worst));
    c.expect(std::abs(sum - 1.0) <= 1e-6, "pagerank sum " + fmt(sum));
  }
  return c.outcome("100 graphs per measure");
}

std::vector<NodeId> removed_ids(const ContractionReport &r) {
  std::vector<NodeId> out;
  for (const auto &x : r.removed)
    out.push_back(x.id);
  return out;
}

Outcome contraction_invariants() {
  Checker c;
  using testing::id;
  c.expect(removed_ids(t_centrality_node_contraction(testing::path(3), 3, CentralityMeasure::Degree)
                           .report) == std::vector<NodeId>{id(0), id(2)},
           "P3 trace");
  c.expect(removed_ids(k_degree_node_contraction(testing::cycle(4), 2).report) ==
               std::vector<NodeId>{id(0), id(1), id(2)},
           "C4 trace");
  const auto star = t_centrality_node_contraction(testing::star(4), 2, CentralityMeasure::Degree);
  c.expect(removed_ids(star.report) == std::vector<NodeId>{id(1), id(2)} &&
               star.graph.has_node(id(0)),
           "K1,4 trace");
  c.expect(t_star_value(testing::star(4), 1) == 4, "K1,4 t*");

  std::mt19937_64 rng(1006);
  std::uniform_int_distribution<std::size_t> order(0, 14);
  std::uniform_real_distribution<double> density(0.05, 0.5);
  for (int i = 0; i < 600; ++i) {
    const Graph g = testing::random_graph(rng, order(rng), density(rng));
    const std::size_t t = std::uniform_int_distribution<std::size_t>(0, g.order() + 1)(rng);
    ContractionOptions opts;
    opts.recompute = i % 2;
    const auto m = kAllMeasures[i % 4];
    const auto a = t_centrality_node_contraction(g, t, m, opts);
    const auto b = t_centrality_node_contraction(g, t, m, opts);
    c.expect(component_count(a.graph) == component_count(g), "components preserved");
    c.expect(a.report.removed.size() <= t, "|removed| <= t");
    c.expect(a.graph == b.graph && a.report == b.report, "deterministic");
  }
  return c.outcome("hand traces + 600 random graphs");
}

/// Letter-HIGH when the data root holds it, otherwise the synthetic corpus.
Corpus benchmark_corpus(std::string &label) {
  if (const auto root = resolve_data_root(std::nullopt)) {
    const auto index = iam_index_path(*root, IamDataset::LetterHigh, Split::Test);
    if (std::filesystem::exists(index)) {
      label = "Letter-HIGH test";
      return load_iam(*root, IamDataset::LetterHigh, Split::Test);
    }
  }
  label = "synthetic d=0.3";
  return synthesize_letter_like({1, 150, 15, 0.3});
}

std::vector<BenchmarkRecord> &benchmark_records(std::string &label, double &secs) {
  static std::vector<BenchmarkRecord> records;
  static std::string cached_label;
  static double cached_secs = 0.0;
  if (records.empty()) {
    const Corpus corpus = benchmark_corpus(cached_label);
    BenchmarkOptions opts;
    opts.sample = 100;
    opts.seed = 1;
    opts.workers = 0;
    const auto t0 = std::chrono::steady_clock::now();
    records = run_timing_benchmark(corpus, opts);
    cached_secs = seconds_since(t0);
  }
  label = cached_label;
  secs = cached_secs;
  return records;
}

Outcome search_space_trend() {
  Checker c;
  std::string label;
  double secs = 0.0;
  const auto &records = benchmark_records(label, secs);
  std::string means;
  for (CentralityMeasure m : kAllMeasures) {
    double prev = INFINITY;
    means += std::string(means.empty() ? "" : "; ") + std::string(to_string(m)) + ":";
    for (const auto &row : summarize(records)) {
      if (row.measure != m)
        continue;
      means += " " + fmt(row.mean_expanded_nodes);
      c.expect(row.mean_expanded_nodes <= prev,
               std::string(to_string(m)) + " " + std::string(to_string(row.level)) + " mean " +
                   fmt(row.mean_expanded_nodes) + " > " + fmt(prev));
      prev = row.mean_expanded_nodes;
    }
  }
  c.expect(secs <= 300.0, "took " + fmt(secs) + " s");
  return c.outcome(label + ", 100 pairs, " + fmt(secs) + " s, mean expansions " + means);
}

Outcome level_zero_measure_independence() {
  Checker c;
  std::string label;
  double secs = 0.0;
  const auto &records = benchmark_records(label, secs);
  std::map<std::size_t, std::vector<double>> costs;
  for (const auto &r : records)
    if (r.level == TLevel::T0)
      costs[r.pair_id].push_back(r.cost);
  for (const auto &[pair, v] : costs) {
    c.expect(v.size() == 4, "pair " + std::to_string(pair) + " has all measures");
    for (double x : v)
      c.expect(x == v.front(), "pair " + std::to_string(pair) + " cost differs");
  }
  return c.outcome(label + ", " + std::to_string(costs.size()) + " pairs");
}

Outcome dataset_stats() {
  const auto root = resolve_data_root(std::nullopt);
  if (!root)
    return {Verdict::Skip, std::string(kDataRootEnv) + " not set"};
  const bool letter =
      std::filesystem::exists(iam_index_path(*root, IamDataset::LetterHigh, Split::Train));
  const bool aids = std::filesystem::exists(iam_index_path(*root, IamDataset::Aids, Split::Train));
  if (!letter && !aids)
    return {Verdict::Skip, "no Letter/HIGH or AIDS/data under " + root->string()};

  Checker c;
  std::string summary;
  auto full = [&](IamDataset which) {
    Corpus all;
    std::map<Split, Corpus> parts;
    for (Split s : {Split::Train, Split::Validation, Split::Test}) {
      if (!std::filesystem::exists(iam_index_path(*root, which, s)))
        continue;
      parts[s] = load_iam(*root, which, s, 0);
      all.graphs.insert(all.graphs.end(), parts[s].graphs.begin(), parts[s].graphs.end());
    }
    return std::pair{all, parts};
  };
  if (letter) {
    const auto [all, parts] = full(IamDataset::LetterHigh);
    const auto st = corpus_stats(all);
    c.expect(std::abs(st.avg_nodes - 4.7) <= 0.1, "Letter avg nodes " + fmt(st.avg_nodes));
    c.expect(std::abs(st.avg_edges - 4.5) <= 0.1, "Letter avg edges " + fmt(st.avg_edges));
    for (Split s : {Split::Train, Split::Test}) {
      const auto it = parts.find(s);
      c.expect(it != parts.end() && it->second.graphs.size() == 750,
               "Letter " + std::string(to_string(s)) + " size");
      if (it == parts.end())
        continue;
      const auto hist = corpus_stats(it->second).class_histogram;
      c.expect(hist.size() == 15, "Letter classes");
      for (const auto &[cls, n] : hist)
        c.expect(n == 50, "Letter class " + cls + " has " + std::to_string(n));
    }
    summary += "Letter avg " + fmt(st.avg_nodes) + "/" + fmt(st.avg_edges) + " ";
  }
  if (aids) {
    const auto [all, parts] = full(IamDataset::Aids);
    const auto st = corpus_stats(all);
    c.expect(std::abs(st.avg_nodes - 15.7) <= 0.1, "AIDS avg nodes " + fmt(st.avg_nodes));
    c.expect(std::abs(st.avg_edges - 16.2) <= 0.1, "AIDS avg edges " + fmt(st.avg_edges));
    // IAM class labels: "a" active, "i" inactive.
    auto counts = [&](Split s) {
      const auto it = parts.find(s);
      return it == parts.end() ? std::map<std::string, std::size_t>{}
                               : corpus_stats(it->second).class_histogram;
    };
    const auto test = counts(Split::Test), train = counts(Split::Train);
    auto get = [](const auto &m, const char *k) {
      const auto it = m.find(k);
      return it == m.end() ? std::size_t{0} : it->second;
    };
    c.expect(get(test, "a") == 300 && get(test, "i") == 1200,
             "AIDS test split " + std::to_string(get(test, "a")) + "+" +
                 std::to_string(get(test, "i")));
    c.expect(get(train, "a") == 50 && get(train, "i") == 200,
             "AIDS train split " + std::to_string(get(train, "a")) + "+" +
                 std::to_string(get(train, "i")));
    summary += "AIDS avg " + fmt(st.avg_nodes) + "/" + fmt(st.avg_edges);
  }
  return c.outcome(summary);
}

Outcome classification_sanity() {
  Checker c;
  {
    const Corpus train = synthesize_letter_like({21, 150, 15, 0.0});
    const Corpus test = synthesize_letter_like({21, 75, 15, 0.0}, Split::Test);
    ClassifyOptions opts;
    opts.workers = 0;
    const auto r = nn_classify(train, test, opts);
    c.expect(r.accuracy == 1.0, "distortion 0 accuracy " + fmt(r.accuracy));
  }
  const Corpus train = synthesize_letter_like({22, 150, 15, 0.3});
  const Corpus test = synthesize_letter_like({22, 75, 15, 0.3}, Split::Test);
  const double chance = 1.0 / 15.0;
  double worst = 1.0;
  for (CentralityMeasure m : kAllMeasures)
    for (TLevel level : kAllLevels) {
      ClassifyOptions opts;
      opts.measure = m;
      opts.level = level;
      opts.search = SearchSpec::beam(10);
      opts.workers = 1;
      const auto serial = nn_classify(train, test, opts);
      opts.workers = 4;
      const auto parallel = nn_classify(train, test, opts);
      const std::string tag = std::string(to_string(m)) + "/" + std::string(to_string(level));
      c.expect(serial.accuracy > chance, tag + " accuracy " + fmt(serial.accuracy));
      c.expect(classification_json(serial).dump() == classification_json(parallel).dump(),
               tag + " differs between 1 and 4 workers");
      worst = std::min(worst, serial.accuracy);
    }
  return c.outcome("d=0 accuracy 1.0; d=0.3 worst accuracy " + fmt(worst) + " vs chance " +
                   fmt(chance));
}

} // namespace
} // namespace tged

int main() {
  using namespace tged;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 oracle equivalence", oracle_equivalence},
      {"2 beam bound", beam_bound},
      {"3 metric properties", metric_properties},
      {"4 centrality oracles", centrality_oracles},
      {"5 contraction invariants", contraction_invariants},
      {"6 search-space trend", search_space_trend},
      {"7 T0 measure independence", level_zero_measure_independence},
      {"8 dataset statistics", dataset_stats},
      {"9 classification sanity", classification_sanity},
  };
  int failed = 0;
  for (const auto &[name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    const char *tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
    std::printf("%s  %s: %s\n", tag, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.verdict == Verdict::Fail;
  }
  return failed ? 1 : 0;
}
