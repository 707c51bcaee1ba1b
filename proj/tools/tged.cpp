// tged: command-line front end for contraction, edit distance, timing
// benchmarks and nearest-neighbour classification.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tged/centrality.hpp"
#include "tged/contraction.hpp"
#include "tged/cost_config.hpp"
#include "tged/dataset.hpp"
#include "tged/eval.hpp"
#include "tged/ged.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tged;

namespace {

enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kConfigError = 3,
  kDatasetError = 4,
  kSearchLimit = 5,
  kUsage = 64,
};

/// Thrown for problems locating or loading a corpus; maps to kDatasetError.
struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad flag values found after CLI11 parsing; maps to kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char *kFooter = R"(Exit codes: 0 ok, 2 graph/input parse error, 3 config error,
4 dataset error, 5 search expansion limit hit, 64 usage error.

Examples:
  # Letter-HIGH timing benchmark, beam search w=10, 100 sampled pairs
  TGED_DATA_ROOT=/data/iam tged benchmark --dataset letter --sample 100 \
      --csv letter.csv --json letter.json
  # AIDS 1-NN classification at T1* with PageRank contraction
  tged classify --dataset aids --data-root /data/iam --measures pagerank \
      --levels T1* --json aids.json --workers 8
  # Synthetic corpus (no download needed), exact search
  tged benchmark --dataset synthetic --distortion 0.3 --search astar \
      --csv synth.csv --json synth.json)";

// ---- option groups shared by several subcommands ------------------------

struct SearchFlags {
  std::string config;
  std::string search;
  std::size_t beam_width = 10;
  std::string heuristic;
  std::size_t expansion_limit = 0;
  CLI::Option *beam_width_opt = nullptr;
  CLI::Option *limit_opt = nullptr;

  void add(CLI::App *app, const char *default_search) {
    app->add_option("--config", config, "Cost-model file (key = value lines)")
        ->check(CLI::ExistingFile);
    app->add_option("--search", search, std::string("astar | beam (default ") + default_search +
                                            ", or the config file's choice)")
        ->check(CLI::IsMember({"astar", "beam"}));
    beam_width_opt =
        app->add_option("--beam-width,-w", beam_width, "Beam width (default 10)")
            ->check(CLI::PositiveNumber);
    app->add_option("--heuristic", heuristic, "zero | count_bound (default zero)")
        ->check(CLI::IsMember({"zero", "count_bound"}));
    limit_opt = app->add_option("--expansion-limit", expansion_limit,
                                "Abort a search after this many expansions (0 = none)");
    default_search_ = default_search;
  }

  /// Config file first, then explicit flags on top.
  CostConfig resolve() const {
    CostConfig cfg;
    const bool from_file = !config.empty();
    if (from_file)
      cfg = load_cost_config(config);
    else if (std::string_view(default_search_) == "beam")
      cfg.search = SearchSpec::beam(10);
    if (!search.empty())
      cfg.search.kind = search == "beam" ? SearchSpec::Kind::Beam : SearchSpec::Kind::AStar;
    if (beam_width_opt->count())
      cfg.search.beam_width = beam_width;
    if (!heuristic.empty())
      cfg.search.heuristic = heuristic == "count_bound" ? Heuristic::CountBound : Heuristic::Zero;
    if (limit_opt->count())
      cfg.search.expansion_limit = expansion_limit;
    return cfg;
  }

private:
  const char *default_search_ = "astar";
};

struct DatasetFlags {
  std::string dataset;
  std::string data_root;
  std::string index;
  std::uint64_t synth_seed = 1;
  std::size_t synth_count = 150;
  std::size_t synth_classes = 15;
  double distortion = 0.3;

  void add(CLI::App *app) {
    app->add_option("--dataset", dataset, "letter | aids | synthetic | cxl")
        ->required()
        ->check(CLI::IsMember({"letter", "aids", "synthetic", "cxl"}));
    app->add_option("--data-root", data_root,
                    std::string("IAM root holding Letter/ and AIDS/ (else $") + kDataRootEnv +
                        ")");
    app->add_option("--index", index, "CXL index file, with --dataset cxl");
    app->add_option("--synth-seed", synth_seed, "Synthetic corpus seed (default 1)");
    app->add_option("--synth-count", synth_count, "Synthetic graphs per split (default 150)")
        ->check(CLI::PositiveNumber);
    app->add_option("--synth-classes", synth_classes, "Synthetic classes (default 15)")
        ->check(CLI::PositiveNumber);
    app->add_option("--distortion", distortion, "Synthetic distortion (default 0.3)")
        ->check(CLI::NonNegativeNumber);
  }

  Corpus load(Split split, int workers) const {
    if (dataset == "synthetic") {
      const std::size_t count = split == Split::Train ? synth_count : (synth_count + 1) / 2;
      Corpus c = synthesize_letter_like({synth_seed, count, synth_classes, distortion}, split);
      c.name = "synthetic";
      return c;
    }
    if (dataset == "cxl") {
      if (index.empty())
        throw DatasetError("--dataset cxl needs --index FILE");
      if (!fs::exists(index))
        throw DatasetError("index file not found: " + index);
      return wrap([&] { return load_cxl_file(index, GxlSchema::Auto, workers); });
    }
    const auto root =
        resolve_data_root(data_root.empty() ? std::nullopt : std::optional<fs::path>(data_root));
    if (!root)
      throw DatasetError(std::string("no dataset root: pass --data-root or set ") + kDataRootEnv);
    const IamDataset which = dataset == "letter" ? IamDataset::LetterHigh : IamDataset::Aids;
    const fs::path idx = iam_index_path(*root, which, split);
    if (!fs::exists(idx))
      throw DatasetError("index not found: " + idx.string() + " (check --data-root / " +
                         kDataRootEnv + ")");
    return wrap([&] { return load_iam(*root, which, split, workers); });
  }

private:
  template <typename F> static Corpus wrap(F &&f) {
    try {
      return f();
    } catch (const CorpusError &e) {
      throw DatasetError(e.what());
    } catch (const ParseError &e) {
      throw DatasetError(e.what());
    }
  }
};

Split parse_split(const std::string &s) {
  if (s == "train")
    return Split::Train;
  if (s == "validation" || s == "valid")
    return Split::Validation;
  return Split::Test;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::vector<std::string> &items, Parse parse, const char *what,
                          const auto &all) {
  std::vector<T> out;
  for (const std::string &s : items) {
    if (s == "all")
      return {std::begin(all), std::end(all)};
    const auto v = parse(s);
    if (!v)
      throw UsageError(std::string("unknown ") + what + " '" + s + "'");
    out.push_back(*v);
  }
  if (out.empty())
    out.assign(std::begin(all), std::end(all));
  return out;
}

CentralityMeasure one_measure(const std::string &s) {
  const auto m = parse_measure(s);
  if (!m)
    throw UsageError("unknown measure '" + s + "'");
  return *m;
}

// ---- JSON views -----------------------------------------------------------

json report_json(const ContractionReport &r) {
  json removed = json::array();
  for (const auto &x : r.removed)
    removed.push_back({{"id", x.id.value}, {"score", x.score}});
  auto ids = [](const std::vector<NodeId> &v) {
    json a = json::array();
    for (NodeId u : v)
      a.push_back(u.value);
    return a;
  };
  return {{"measure", to_string(r.measure)},
          {"t_requested", r.t_requested},
          {"removed", removed},
          {"skipped_cut_vertices", ids(r.skipped_cut_vertices)},
          {"skipped_isolated", ids(r.skipped_isolated)},
          {"result_order", r.result_order}};
}

std::string op_name(const EditKind &k) {
  static const char *names[] = {"node_sub", "node_del", "node_ins",
                                "edge_sub", "edge_del", "edge_ins"};
  return names[k.index()];
}

json ged_json(const GedResult &r, const SearchSpec &spec) {
  json ops = json::array();
  for (const auto &op : r.path.operations)
    ops.push_back({{"kind", op_name(op.kind)}, {"text", to_string(op.kind)}, {"cost", op.cost}});
  json j{{"cost", r.cost},
         {"search", to_string(spec)},
         {"expanded_nodes", r.expanded_nodes},
         {"elapsed_ms", std::chrono::duration<double, std::milli>(r.elapsed).count()},
         {"operations", ops}};
  if (r.contraction_reports)
    j["contraction"] = {report_json(r.contraction_reports->first),
                        report_json(r.contraction_reports->second)};
  return j;
}

void write_text(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

/// t for one graph: explicit --t wins, otherwise the level's t*.
std::size_t t_for(const Graph &g, const std::optional<std::size_t> &t,
                  const std::optional<TLevel> &level) {
  if (t)
    return *t;
  return level ? t_for_level(g, *level) : 0;
}

std::optional<TLevel> level_flag(const std::string &s) {
  if (s.empty())
    return std::nullopt;
  const auto l = parse_level(s);
  if (!l)
    throw UsageError("unknown level '" + s + "' (T0, T1*, T2*, T3*)");
  return l;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"t-centrality graph edit distance toolkit"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();
  int workers = 1;
  app.add_option("--workers,-j", workers, "Worker threads, 0 = all cores (default 1)")
      ->check(CLI::NonNegativeNumber);

  // contract
  auto *contract = app.add_subcommand("contract", "Remove the t least central non-cut nodes");
  std::string c_file, c_measure = "degree", c_level, c_out, c_report;
  std::optional<std::size_t> c_t;
  bool c_recompute = false, c_strict = false;
  contract->add_option("graph", c_file, "Graph file (.gxl or debug text)")->required();
  contract->add_option("--measure,-m", c_measure, "degree | betweenness | eigenvector | pagerank");
  contract->add_option("--t,-t", c_t, "Nodes to remove");
  contract->add_option("--level", c_level, "Use t* of this level instead of --t");
  contract->add_flag("--recompute", c_recompute, "Re-rank after every deletion");
  contract->add_flag("--strict-slots", c_strict, "Skipped cut vertices use up one of the t slots");
  contract->add_option("--out,-o", c_out, "Contracted graph (debug format); default stdout");
  contract->add_option("--report", c_report, "ContractionReport JSON; default stderr");

  // ged
  auto *ged = app.add_subcommand("ged", "Edit distance between two graphs");
  std::string g_file1, g_file2, g_measure = "degree", g_level;
  std::optional<std::size_t> g_t;
  bool g_json = false;
  SearchFlags g_search;
  ged->add_option("graph1", g_file1)->required();
  ged->add_option("graph2", g_file2)->required();
  ged->add_option("--measure,-m", g_measure, "Centrality used for contraction");
  ged->add_option("--t,-t", g_t, "Contract t nodes from each graph first (default 0)");
  ged->add_option("--level", g_level, "Contract each graph by its own t* of this level");
  ged->add_flag("--json", g_json, "Machine-readable output");
  g_search.add(ged, "astar");

  // oracle (hidden): exhaustive reference distance for small pairs
  auto *oracle = app.add_subcommand("oracle", "");
  oracle->group("");
  std::string o_file1, o_file2, o_config;
  oracle->add_option("graph1", o_file1)->required();
  oracle->add_option("graph2", o_file2)->required();
  oracle->add_option("--config", o_config)->check(CLI::ExistingFile);

  // benchmark
  auto *bench = app.add_subcommand("benchmark", "Timing benchmark over sampled pairs");
  DatasetFlags b_data;
  SearchFlags b_search;
  std::vector<std::string> b_measures, b_levels;
  std::string b_split = "test", b_csv, b_json;
  std::size_t b_sample = 100;
  std::uint64_t b_seed = 1;
  bool b_recompute = false;
  b_data.add(bench);
  b_search.add(bench, "beam");
  bench->add_option("--split", b_split, "train | validation | test (default test)")
      ->check(CLI::IsMember({"train", "validation", "valid", "test"}));
  bench->add_option("--measures", b_measures, "Measures, or all (default all)")->delimiter(',');
  bench->add_option("--levels", b_levels, "Levels T0,T1*,T2*,T3*, or all (default all)")
      ->delimiter(',');
  bench->add_option("--sample", b_sample, "Number of sampled pairs (default 100)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", b_seed, "Pair sampling seed (default 1)");
  bench->add_flag("--recompute", b_recompute, "Re-rank after every contraction deletion");
  bench->add_option("--csv", b_csv, "Per-record CSV output");
  bench->add_option("--json", b_json, "Summary JSON output");

  // classify
  auto *classify = app.add_subcommand("classify", "k-nearest-neighbour classification");
  DatasetFlags k_data;
  SearchFlags k_search;
  std::vector<std::string> k_measures{"degree"}, k_levels{"T0"};
  std::string k_train = "train", k_test = "test", k_json;
  std::size_t k_k = 1, k_limit = 0;
  k_data.add(classify);
  k_search.add(classify, "beam");
  classify->add_option("--measures", k_measures, "Measures, or all (default degree)")
      ->delimiter(',');
  classify->add_option("--levels", k_levels, "Levels, or all (default T0)")->delimiter(',');
  classify->add_option("--train-split", k_train, "default train");
  classify->add_option("--test-split", k_test, "default test");
  classify->add_option("--k", k_k, "Neighbours voting (default 1)")->check(CLI::PositiveNumber);
  classify->add_option("--test-limit", k_limit, "Use only the first N test graphs (0 = all)");
  classify->add_option("--json", k_json, "ClassificationResult JSON output");

  // stats
  auto *stats = app.add_subcommand("stats", "Corpus size, averages and class histogram");
  DatasetFlags s_data;
  std::string s_split = "train";
  s_data.add(stats);
  stats->add_option("--split", s_split, "default train");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (contract->parsed()) {
      const Graph g = load_graph_file(c_file);
      const auto level = level_flag(c_level);
      ContractionOptions opts;
      opts.recompute = c_recompute;
      opts.slots = c_strict ? SlotPolicy::Strict : SlotPolicy::Permissive;
      opts.centrality.workers = workers;
      const auto res = t_centrality_node_contraction(g, t_for(g, c_t, level),
                                                     one_measure(c_measure), opts);
      Graph out = res.graph;
      out.set_name(g.name());
      out.set_class_label(g.class_label());
      write_text(c_out, write_debug(out));
      const std::string rep = dump(report_json(res.report));
      if (c_report.empty())
        std::cerr << rep;
      else
        write_text(c_report, rep);
      return kOk;
    }

    if (ged->parsed()) {
      const CostConfig cfg = g_search.resolve();
      const Graph a = load_graph_file(g_file1), b = load_graph_file(g_file2);
      const auto level = level_flag(g_level);
      const CentralityMeasure m = one_measure(g_measure);
      ContractionOptions opts;
      opts.centrality.workers = workers;
      const auto r = t_centrality_ged(a, b, t_for(a, g_t, level), t_for(b, g_t, level), m,
                                      cfg.cost, cfg.search, opts);
      if (g_json) {
        std::cout << dump(ged_json(r, cfg.search));
      } else {
        std::cout << std::setprecision(17) << "cost " << r.cost << '\n'
                  << "search " << to_string(cfg.search) << '\n'
                  << "expanded_nodes " << r.expanded_nodes << '\n';
        if (r.contraction_reports)
          std::cout << "contracted " << r.contraction_reports->first.removed.size() << " + "
                    << r.contraction_reports->second.removed.size() << " nodes\n";
        for (const auto &op : r.path.operations)
          std::cout << "  " << to_string(op.kind) << "  " << op.cost << '\n';
      }
      return kOk;
    }

    if (oracle->parsed()) {
      const CostModel cm = o_config.empty() ? CostModel{} : load_cost_config(o_config).cost;
      const double d = brute_force_ged(load_graph_file(o_file1), load_graph_file(o_file2), cm);
      std::cout << std::setprecision(17) << d << '\n';
      return kOk;
    }

    if (bench->parsed()) {
      const CostConfig cfg = b_search.resolve();
      BenchmarkOptions opts;
      opts.measures = parse_list<CentralityMeasure>(b_measures, parse_measure, "measure",
                                                    kAllMeasures);
      opts.levels = parse_list<TLevel>(b_levels, parse_level, "level", kAllLevels);
      opts.search = cfg.search;
      opts.cost = cfg.cost;
      opts.sample = b_sample;
      opts.seed = b_seed;
      opts.workers = workers;
      opts.contraction.recompute = b_recompute;
      const Corpus corpus = b_data.load(parse_split(b_split), workers);
      if (corpus.graphs.size() < 2)
        throw DatasetError("corpus " + corpus.name + " has fewer than two graphs");
      const auto records = run_timing_benchmark(corpus, opts);
      if (!b_csv.empty()) {
        std::ostringstream os;
        write_benchmark_csv(os, records);
        write_text(b_csv, os.str());
      }
      const json summary = benchmark_summary_json(records, corpus.name, opts);
      if (!b_json.empty())
        write_text(b_json, dump(summary));
      std::printf("%-12s %-5s %10s %14s %12s %8s\n", "measure", "level", "mean_cost",
                  "mean_expanded", "mean_ms", "mean_t");
      for (const auto &row : summarize(records))
        std::printf("%-12s %-5s %10.4f %14.2f %12.4f %8.2f\n",
                    std::string(to_string(row.measure)).c_str(),
                    std::string(to_string(row.level)).c_str(), row.mean_cost,
                    row.mean_expanded_nodes, row.mean_elapsed_ms, row.mean_t);
      return kOk;
    }

    if (classify->parsed()) {
      const CostConfig cfg = k_search.resolve();
      const auto measures =
          parse_list<CentralityMeasure>(k_measures, parse_measure, "measure", kAllMeasures);
      const auto levels = parse_list<TLevel>(k_levels, parse_level, "level", kAllLevels);
      const Corpus train = k_data.load(parse_split(k_train), workers);
      Corpus test = k_data.load(parse_split(k_test), workers);
      if (train.graphs.empty())
        throw DatasetError("training corpus is empty");
      if (k_limit && test.graphs.size() > k_limit)
        test.graphs.resize(k_limit);
      json out{{"corpus", train.name},
               {"train_size", train.graphs.size()},
               {"test_size", test.graphs.size()},
               {"results", json::array()}};
      for (CentralityMeasure m : measures)
        for (TLevel l : levels) {
          ClassifyOptions opts;
          opts.measure = m;
          opts.level = l;
          opts.search = cfg.search;
          opts.cost = cfg.cost;
          opts.k = k_k;
          opts.workers = workers;
          const auto r = nn_classify(train, test, opts);
          std::printf("%-12s %-4s accuracy %.4f (%zu/%zu)\n", std::string(to_string(m)).c_str(),
                      std::string(to_string(l)).c_str(), r.accuracy, r.correct, r.total);
          out["results"].push_back(classification_json(r));
        }
      if (!k_json.empty())
        write_text(k_json, dump(out));
      return kOk;
    }

    if (stats->parsed()) {
      const Corpus c = s_data.load(parse_split(s_split), workers);
      const auto st = corpus_stats(c);
      std::cout << dump({{"corpus", c.name},
                         {"split", to_string(c.split)},
                         {"graph_count", st.graph_count},
                         {"avg_nodes", st.avg_nodes},
                         {"avg_edges", st.avg_edges},
                         {"class_histogram", st.class_histogram}});
      return kOk;
    }
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const ConfigError &e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return kConfigError;
  } catch (const DatasetError &e) {
    std::cerr << "error: dataset: " << e.what() << '\n';
    return kDatasetError;
  } catch (const SearchLimitError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSearchLimit;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
