#include "tged/eval.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tged {

std::string_view to_string(TLevel level) {
  switch (level) {
  case TLevel::T0: return "T0";
  case TLevel::T1Star: return "T1*";
  case TLevel::T2Star: return "T2*";
  case TLevel::T3Star: return "T3*";
  }
  return "?";
}

std::optional<TLevel> parse_level(std::string_view s) {
  std::string t;
  for (char c : s)
    t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (t == "T0" || t == "0")
    return TLevel::T0;
  for (TLevel l : {TLevel::T1Star, TLevel::T2Star, TLevel::T3Star}) {
    const std::string k = std::to_string(level_k(l));
    if (t == "T" + k + "*" || t == "T" + k + "STAR" || t == k || t == k + "*" || t == "T" + k)
      return l;
  }
  return std::nullopt;
}

std::size_t level_k(TLevel level) { return static_cast<std::size_t>(level); }

std::map<TLevel, std::size_t> t_star_levels(const Graph &g) {
  std::map<TLevel, std::size_t> out;
  for (TLevel l : kAllLevels)
    out[l] = t_for_level(g, l);
  return out;
}

std::size_t t_for_level(const Graph &g, TLevel level) {
  const std::size_t k = level_k(level);
  return k == 0 ? 0 : t_star_value(g, k);
}

namespace {

int resolve_workers(int workers) {
#ifdef _OPENMP
  return workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
  return 1;
#endif
}

/// Runs body(i) for i in [0, n) on `workers` threads. The exception of the
/// lowest failing index is rethrown after the loop.
template <typename Body>
void parallel_for(std::size_t n, int workers, Body &&body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_workers(workers))
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace

std::vector<Graph> contract_for_level(const std::vector<Graph> &graphs,
                                      CentralityMeasure measure, TLevel level,
                                      const ContractionOptions &opts, int workers) {
  std::vector<Graph> out(graphs.size());
  parallel_for(graphs.size(), workers, [&](std::size_t i) {
    const std::size_t t = t_for_level(graphs[i], level);
    out[i] = t_centrality_node_contraction(graphs[i], t, measure, opts).graph;
    out[i].set_name(graphs[i].name());
    out[i].set_class_label(graphs[i].class_label());
  });
  return out;
}

std::vector<double> distance_matrix_serial(const std::vector<Graph> &rows,
                                           const std::vector<Graph> &cols,
                                           const CostModel &cm, const SearchSpec &spec) {
  std::vector<double> out(rows.size() * cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out[i * cols.size() + j] = search_ged(rows[i], cols[j], cm, spec).cost;
  return out;
}

std::vector<double> distance_matrix(const std::vector<Graph> &rows,
                                    const std::vector<Graph> &cols, const CostModel &cm,
                                    const SearchSpec &spec, int workers) {
  std::vector<double> out(rows.size() * cols.size());
  const std::size_t n = out.size();
  parallel_for(n, workers, [&](std::size_t idx) {
    const std::size_t i = idx / cols.size();
    const std::size_t j = idx % cols.size();
    out[idx] = search_ged(rows[i], cols[j], cm, spec).cost;
  });
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t corpus_size,
                                                              std::size_t sample,
                                                              std::uint64_t seed) {
  if (corpus_size < 2)
    throw std::invalid_argument("need at least two graphs to sample pairs");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> first(0, corpus_size - 1);
  std::uniform_int_distribution<std::size_t> second(0, corpus_size - 2);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(sample);
  for (std::size_t s = 0; s < sample; ++s) {
    const std::size_t i = first(rng);
    std::size_t j = second(rng);
    if (j >= i)
      ++j;
    out.emplace_back(i, j);
  }
  return out;
}

std::vector<BenchmarkRecord> run_timing_benchmark(const Corpus &corpus,
                                                  const BenchmarkOptions &opts) {
  if (corpus.graphs.empty())
    throw std::invalid_argument("benchmark corpus is empty");
  if (opts.sample == 0)
    throw std::invalid_argument("benchmark sample must be at least 1");
  const auto pairs = sample_pairs(corpus.graphs.size(), opts.sample, opts.seed);

  // t per graph and level, computed once.
  std::vector<std::map<TLevel, std::size_t>> levels(corpus.graphs.size());
  parallel_for(corpus.graphs.size(), opts.workers,
               [&](std::size_t i) { levels[i] = t_star_levels(corpus.graphs[i]); });

  const std::size_t per_pair = opts.measures.size() * opts.levels.size();
  std::vector<BenchmarkRecord> records(pairs.size() * per_pair);
  parallel_for(records.size(), opts.workers, [&](std::size_t idx) {
    const std::size_t p = idx / per_pair;
    const std::size_t m = (idx % per_pair) / opts.levels.size();
    const std::size_t l = idx % opts.levels.size();
    const auto [a, b] = pairs[p];
    BenchmarkRecord &r = records[idx];
    r.pair_id = p;
    r.graph1 = corpus.graphs[a].name();
    r.graph2 = corpus.graphs[b].name();
    r.measure = opts.measures[m];
    r.level = opts.levels[l];
    r.t1 = levels[a].at(r.level);
    r.t2 = levels[b].at(r.level);
    r.search = opts.search;
    const GedResult res = t_centrality_ged(corpus.graphs[a], corpus.graphs[b], r.t1, r.t2,
                                           r.measure, opts.cost, opts.search, opts.contraction);
    r.cost = res.cost;
    r.elapsed = res.elapsed;
    r.expanded_nodes = res.expanded_nodes;
  });
  return records;
}

std::vector<BenchmarkSummaryRow> summarize(const std::vector<BenchmarkRecord> &records) {
  std::map<std::pair<CentralityMeasure, TLevel>, BenchmarkSummaryRow> acc;
  for (const BenchmarkRecord &r : records) {
    auto &row = acc[{r.measure, r.level}];
    row.measure = r.measure;
    row.level = r.level;
    ++row.count;
    row.mean_cost += r.cost;
    row.mean_elapsed_ms += std::chrono::duration<double, std::milli>(r.elapsed).count();
    row.mean_expanded_nodes += static_cast<double>(r.expanded_nodes);
    row.mean_t += static_cast<double>(r.t1 + r.t2) / 2.0;
  }
  std::vector<BenchmarkSummaryRow> out;
  for (auto &[key, row] : acc) {
    const auto n = static_cast<double>(row.count);
    row.mean_cost /= n;
    row.mean_elapsed_ms /= n;
    row.mean_expanded_nodes /= n;
    row.mean_t /= n;
    out.push_back(row);
  }
  return out;
}

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

void write_benchmark_csv(std::ostream &os, const std::vector<BenchmarkRecord> &records) {
  const auto old_precision = os.precision(17);
  os << kBenchmarkCsvHeader << '\n';
  for (const BenchmarkRecord &r : records) {
    os << r.pair_id << ',' << csv_field(r.graph1) << ',' << csv_field(r.graph2) << ','
       << to_string(r.measure) << ',' << to_string(r.level) << ',' << r.t1 << ',' << r.t2
       << ',' << (r.search.kind == SearchSpec::Kind::Beam ? "beam" : "astar") << ','
       << (r.search.kind == SearchSpec::Kind::Beam ? r.search.beam_width : 0) << ',' << r.cost
       << ',' << std::chrono::duration<double, std::milli>(r.elapsed).count() << ','
       << r.expanded_nodes << '\n';
  }
  os.precision(old_precision);
}

nlohmann::json benchmark_summary_json(const std::vector<BenchmarkRecord> &records,
                                      const std::string &corpus_name,
                                      const BenchmarkOptions &opts) {
  nlohmann::json j;
  j["corpus"] = corpus_name;
  j["search"] = to_string(opts.search);
  j["seed"] = opts.seed;
  j["sample"] = opts.sample;
  j["records"] = records.size();
  auto &rows = j["summary"] = nlohmann::json::array();
  for (const auto &row : summarize(records)) {
    rows.push_back({{"measure", to_string(row.measure)},
                    {"level", to_string(row.level)},
                    {"count", row.count},
                    {"mean_cost", row.mean_cost},
                    {"mean_elapsed_ms", row.mean_elapsed_ms},
                    {"mean_expanded_nodes", row.mean_expanded_nodes},
                    {"mean_t", row.mean_t}});
  }
  return j;
}

ClassificationResult nn_classify(const Corpus &train, const Corpus &test,
                                 const ClassifyOptions &opts) {
  if (train.graphs.empty())
    throw std::invalid_argument("nearest-neighbour classification needs training graphs");
  if (opts.k == 0)
    throw std::invalid_argument("k must be at least 1");

  const auto train_c =
      contract_for_level(train.graphs, opts.measure, opts.level, opts.contraction, opts.workers);
  const auto test_c =
      contract_for_level(test.graphs, opts.measure, opts.level, opts.contraction, opts.workers);
  const std::vector<double> dist =
      opts.workers == 1 ? distance_matrix_serial(test_c, train_c, opts.cost, opts.search)
                        : distance_matrix(test_c, train_c, opts.cost, opts.search, opts.workers);

  ClassificationResult res;
  res.measure = opts.measure;
  res.level = opts.level;
  res.search = opts.search;
  res.k = opts.k;
  const std::size_t n_train = train.graphs.size();
  const std::size_t k = std::min(opts.k, n_train);
  std::vector<std::size_t> order(n_train);

  for (std::size_t i = 0; i < test.graphs.size(); ++i) {
    const double *row = dist.data() + i * n_train;
    for (std::size_t j = 0; j < n_train; ++j)
      order[j] = j;
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        return row[a] != row[b] ? row[a] < row[b] : a < b;
                      });

    // Vote; ties go to the class seen first in neighbour order.
    std::vector<std::pair<std::string, std::size_t>> votes;
    for (std::size_t r = 0; r < k; ++r) {
      const std::string cls = train.graphs[order[r]].class_label().value_or("");
      auto it = std::find_if(votes.begin(), votes.end(),
                             [&](const auto &v) { return v.first == cls; });
      if (it == votes.end())
        votes.emplace_back(cls, 1);
      else
        ++it->second;
    }
    const auto winner = std::max_element(
        votes.begin(), votes.end(), [](const auto &a, const auto &b) { return a.second < b.second; });

    Prediction p;
    p.test_index = i;
    p.name = test.graphs[i].name();
    p.true_label = test.graphs[i].class_label().value_or("");
    p.predicted = winner->first;
    p.neighbor = order[0];
    p.distance = row[order[0]];
    if (p.predicted == p.true_label)
      ++res.correct;
    ++res.confusion[p.true_label][p.predicted];
    res.predictions.push_back(std::move(p));
  }
  res.total = test.graphs.size();
  res.accuracy = res.total ? static_cast<double>(res.correct) / static_cast<double>(res.total) : 0.0;
  return res;
}

nlohmann::json classification_json(const ClassificationResult &r) {
  nlohmann::json j;
  j["measure"] = to_string(r.measure);
  j["level"] = to_string(r.level);
  j["search"] = to_string(r.search);
  j["k"] = r.k;
  j["accuracy"] = r.accuracy;
  j["correct"] = r.correct;
  j["total"] = r.total;
  j["confusion"] = r.confusion;
  auto &preds = j["predictions"] = nlohmann::json::array();
  for (const Prediction &p : r.predictions) {
    preds.push_back({{"index", p.test_index},
                     {"name", p.name},
                     {"true", p.true_label},
                     {"predicted", p.predicted},
                     {"neighbor", p.neighbor},
                     {"distance", p.distance}});
  }
  return j;
}

} // namespace tged
