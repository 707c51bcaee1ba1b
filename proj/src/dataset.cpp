#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "tged/dataset.hpp"

namespace tged {

std::string_view to_string(Split s) {
  switch (s) {
  case Split::Train: return "train";
  case Split::Validation: return "validation";
  case Split::Test: return "test";
  }
  return "?";
}

CorpusStats corpus_stats(const Corpus &c) {
  CorpusStats st;
  st.graph_count = c.graphs.size();
  if (c.graphs.empty())
    return st;
  std::size_t nodes = 0, edges = 0;
  for (const Graph &g : c.graphs) {
    nodes += g.order();
    edges += g.size();
    ++st.class_histogram[g.class_label().value_or("")];
  }
  st.avg_nodes = static_cast<double>(nodes) / static_cast<double>(c.graphs.size());
  st.avg_edges = static_cast<double>(edges) / static_cast<double>(c.graphs.size());
  return st;
}

namespace {

std::string join_failures(const std::vector<std::string> &failures) {
  std::string out = std::to_string(failures.size()) + " corpus member(s) failed to load:";
  for (const auto &f : failures)
    out += "\n  " + f;
  return out;
}

} // namespace

CorpusError::CorpusError(std::vector<std::string> failures)
    : std::runtime_error(join_failures(failures)), failures_(std::move(failures)) {}

Corpus parse_cxl_index(std::string_view bytes, const std::filesystem::path &base_path,
                       GxlSchema schema, int workers) {
  const std::vector<IndexEntry> entries = parse_cxl_entries(bytes, base_path.string());
  Corpus corpus;
  corpus.name = base_path.filename().string();
  corpus.graphs.resize(entries.size());
  std::vector<std::string> errors(entries.size());

  const auto n = static_cast<std::int64_t>(entries.size());
#pragma omp parallel for schedule(dynamic) num_threads(workers > 0 ? workers : 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const IndexEntry &e = entries[static_cast<std::size_t>(i)];
    const std::filesystem::path file = base_path / e.file;
    try {
      if (!std::filesystem::exists(file))
        throw ParseError(ParseError::Kind::Io, file.string(), 0, "missing file");
      Graph g = load_gxl_file(file, schema);
      g.set_name(std::filesystem::path(e.file).stem().string());
      g.set_class_label(e.class_label);
      corpus.graphs[static_cast<std::size_t>(i)] = std::move(g);
    } catch (const std::exception &ex) {
      errors[static_cast<std::size_t>(i)] = ex.what();
    }
  }

  std::vector<std::string> failures;
  for (auto &e : errors)
    if (!e.empty())
      failures.push_back(std::move(e));
  if (!failures.empty())
    throw CorpusError(std::move(failures));
  return corpus;
}

Corpus load_cxl_file(const std::filesystem::path &path, GxlSchema schema, int workers) {
  const std::string bytes = read_text_file(path);
  Corpus c = parse_cxl_index(bytes, path.parent_path(), schema, workers);
  c.name = path.parent_path().filename().string() + "/" + path.stem().string();
  const std::string stem = path.stem().string();
  if (stem.starts_with("test"))
    c.split = Split::Test;
  else if (stem.starts_with("valid"))
    c.split = Split::Validation;
  else
    c.split = Split::Train;
  return c;
}

std::string write_debug(const Graph &g) {
  std::ostringstream os;
  os.precision(17);
  os << "graph " << (g.name().empty() ? "-" : g.name());
  if (g.class_label())
    os << ' ' << *g.class_label();
  os << '\n';
  for (NodeId u : g.nodes()) {
    os << "node " << u.value << ' ';
    if (const auto *p = std::get_if<Point2D>(&g.label(u)))
      os << "point " << p->x << ' ' << p->y;
    else
      os << "symbol " << std::get<Symbol>(g.label(u)).token;
    os << '\n';
  }
  for (const Edge &e : g.edges()) {
    os << "edge " << e.u.value << ' ' << e.v.value;
    if (const auto *n = std::get_if<Numeric>(&e.label))
      os << " numeric " << n->value;
    os << '\n';
  }
  return os.str();
}

Graph parse_debug(std::string_view text, std::string_view source) {
  Graph g;
  std::unordered_map<std::string, NodeId> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  auto fail = [&](ParseError::Kind kind, const std::string &detail) {
    throw ParseError(kind, std::string(source), line_no, detail);
  };
  auto real = [&](const std::string &s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
      fail(ParseError::Kind::Malformed, "expected a finite number, got '" + s + "'");
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind.starts_with('#'))
      continue;
    std::vector<std::string> f;
    for (std::string tok; ls >> tok;)
      f.push_back(tok);

    if (kind == "graph") {
      if (header)
        fail(ParseError::Kind::Malformed, "second graph record");
      header = true;
      if (f.empty() || f.size() > 2)
        fail(ParseError::Kind::Malformed, "graph record needs a name and optional class");
      if (f[0] != "-")
        g.set_name(f[0]);
      if (f.size() == 2)
        g.set_class_label(f[1]);
    } else if (kind == "node") {
      if (f.size() < 3)
        fail(ParseError::Kind::Malformed, "truncated node record");
      if (ids.contains(f[0]))
        fail(ParseError::Kind::InvalidGraph, "duplicate node id " + f[0]);
      NodeLabel label;
      if (f[1] == "point" && f.size() == 4)
        label = Point2D{real(f[2]), real(f[3])};
      else if (f[1] == "symbol" && f.size() == 3)
        label = Symbol{f[2]};
      else
        fail(ParseError::Kind::UnknownSchema, "unknown node label form '" + f[1] + "'");
      ids.emplace(f[0], g.add_node(std::move(label)));
    } else if (kind == "edge") {
      if (f.size() != 2 && !(f.size() == 4 && f[2] == "numeric"))
        fail(ParseError::Kind::Malformed, "edge record must be 'edge u v [numeric x]'");
      auto a = ids.find(f[0]), b = ids.find(f[1]);
      if (a == ids.end() || b == ids.end())
        fail(ParseError::Kind::DanglingEndpoint, "edge references an undeclared node");
      EdgeLabel label = Unlabeled{};
      if (f.size() == 4)
        label = Numeric{real(f[3])};
      try {
        g.add_edge(a->second, b->second, label);
      } catch (const GraphError &e) {
        fail(ParseError::Kind::InvalidGraph, e.what());
      }
    } else {
      fail(ParseError::Kind::Malformed, "unknown record '" + kind + "'");
    }
  }
  if (!header)
    throw ParseError(ParseError::Kind::Malformed, std::string(source), 1, "missing graph record");
  return g;
}

Graph load_graph_file(const std::filesystem::path &path, GxlSchema schema) {
  if (path.extension() == ".gxl")
    return load_gxl_file(path, schema);
  return parse_debug(read_text_file(path), path.string());
}

std::optional<std::filesystem::path> resolve_data_root(
    const std::optional<std::filesystem::path> &explicit_root) {
  if (explicit_root)
    return explicit_root;
  if (const char *env = std::getenv(kDataRootEnv); env && *env)
    return std::filesystem::path(env);
  return std::nullopt;
}

std::filesystem::path iam_index_path(const std::filesystem::path &root, IamDataset which,
                                     Split split) {
  if (which == IamDataset::LetterHigh) {
    const char *file = split == Split::Train        ? "train.cxl"
                       : split == Split::Validation ? "validation.cxl"
                                                    : "test.cxl";
    return root / "Letter" / "HIGH" / file;
  }
  const char *file = split == Split::Train        ? "train.cxl"
                     : split == Split::Validation ? "valid.cxl"
                                                  : "test.cxl";
  return root / "AIDS" / "data" / file;
}

Corpus load_iam(const std::filesystem::path &root, IamDataset which, Split split, int workers) {
  const GxlSchema schema =
      which == IamDataset::LetterHigh ? GxlSchema::Coordinates : GxlSchema::Symbolic;
  Corpus c = load_cxl_file(iam_index_path(root, which, split), schema, workers);
  c.name = which == IamDataset::LetterHigh ? "Letter-HIGH" : "AIDS";
  c.split = split;
  return c;
}

} // namespace tged
