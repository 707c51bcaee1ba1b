#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tged/centrality.hpp"
#include "tged/contraction.hpp"
#include "tged/dataset.hpp"
#include "tged/ged.hpp"

namespace tged {

/// t chosen per graph as the node count a k*-degree contraction would
/// remove, k = 0..3.
enum class TLevel { T0, T1Star, T2Star, T3Star };

inline constexpr TLevel kAllLevels[] = {TLevel::T0, TLevel::T1Star, TLevel::T2Star,
                                        TLevel::T3Star};

std::string_view to_string(TLevel level);
/// Accepts "T0", "T1*", "T1star", "1", ... (case-insensitive).
std::optional<TLevel> parse_level(std::string_view s);
std::size_t level_k(TLevel level);

std::map<TLevel, std::size_t> t_star_levels(const Graph &g);
std::size_t t_for_level(const Graph &g, TLevel level);

/// Contracts every graph with its own t for the level.
std::vector<Graph> contract_for_level(const std::vector<Graph> &graphs,
                                      CentralityMeasure measure, TLevel level,
                                      const ContractionOptions &opts = {}, int workers = 1);

/// cost[i * cols.size() + j] = search_ged(rows[i], cols[j]).cost, rows in
/// parallel. Bit-identical to distance_matrix_serial for any worker count.
std::vector<double> distance_matrix(const std::vector<Graph> &rows,
                                    const std::vector<Graph> &cols, const CostModel &cm,
                                    const SearchSpec &spec, int workers = 0);
std::vector<double> distance_matrix_serial(const std::vector<Graph> &rows,
                                           const std::vector<Graph> &cols,
                                           const CostModel &cm, const SearchSpec &spec);

struct BenchmarkRecord {
  std::size_t pair_id = 0;
  std::string graph1, graph2;
  CentralityMeasure measure = CentralityMeasure::Degree;
  TLevel level = TLevel::T0;
  std::size_t t1 = 0, t2 = 0;
  SearchSpec search;
  double cost = 0.0;
  std::chrono::nanoseconds elapsed{0};
  std::size_t expanded_nodes = 0;
};

struct BenchmarkOptions {
  std::vector<CentralityMeasure> measures{std::begin(kAllMeasures), std::end(kAllMeasures)};
  std::vector<TLevel> levels{std::begin(kAllLevels), std::end(kAllLevels)};
  SearchSpec search = SearchSpec::astar();
  CostModel cost{};
  std::size_t sample = 100;
  std::uint64_t seed = 1;
  int workers = 1;
  ContractionOptions contraction{};
};

/// `sample` ordered pairs (i, j), i != j, drawn with a seeded generator.
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t corpus_size,
                                                              std::size_t sample,
                                                              std::uint64_t seed);

/// One record per pair x measure x level, ordered by (pair, measure, level)
/// regardless of the worker count. Throws std::invalid_argument on an empty
/// corpus, a corpus of one graph, or sample == 0.
std::vector<BenchmarkRecord> run_timing_benchmark(const Corpus &corpus,
                                                  const BenchmarkOptions &opts);

struct BenchmarkSummaryRow {
  CentralityMeasure measure = CentralityMeasure::Degree;
  TLevel level = TLevel::T0;
  std::size_t count = 0;
  double mean_cost = 0.0;
  double mean_elapsed_ms = 0.0;
  double mean_expanded_nodes = 0.0;
  double mean_t = 0.0;
};

/// Means per (measure, level), sorted by measure then level.
std::vector<BenchmarkSummaryRow> summarize(const std::vector<BenchmarkRecord> &records);

inline constexpr std::string_view kBenchmarkCsvHeader =
    "pair_id,graph1,graph2,measure,level,t1,t2,search,beam_width,cost,elapsed_ms,"
    "expanded_nodes";

void write_benchmark_csv(std::ostream &os, const std::vector<BenchmarkRecord> &records);
nlohmann::json benchmark_summary_json(const std::vector<BenchmarkRecord> &records,
                                      const std::string &corpus_name,
                                      const BenchmarkOptions &opts);

struct Prediction {
  std::size_t test_index = 0;
  std::string name;
  std::string true_label;
  std::string predicted;
  std::size_t neighbor = 0; // index of the nearest training graph
  double distance = 0.0;
};

struct ClassificationResult {
  CentralityMeasure measure = CentralityMeasure::Degree;
  TLevel level = TLevel::T0;
  SearchSpec search;
  std::size_t k = 1;
  std::vector<Prediction> predictions;
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy = 0.0;
  /// confusion[true][predicted]
  std::map<std::string, std::map<std::string, std::size_t>> confusion;
};

struct ClassifyOptions {
  CentralityMeasure measure = CentralityMeasure::Degree;
  TLevel level = TLevel::T0;
  SearchSpec search = SearchSpec::beam(10);
  CostModel cost{};
  std::size_t k = 1;
  int workers = 1;
  ContractionOptions contraction{};
};

/// k-nearest-neighbour classification by t-centrality GED against every
/// training graph. Neighbours are ranked by (distance, training index); the
/// vote goes to the most frequent class, ties to the class whose nearest
/// member ranks first. Throws std::invalid_argument on an empty train set.
ClassificationResult nn_classify(const Corpus &train, const Corpus &test,
                                 const ClassifyOptions &opts);

nlohmann::json classification_json(const ClassificationResult &r);

} // namespace tged
