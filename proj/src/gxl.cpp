#include <expat.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "tged/dataset.hpp"

namespace tged {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

const char *find_attr(const XML_Char **atts, std::string_view name) {
  for (std::size_t i = 0; atts[i]; i += 2)
    if (name == atts[i])
      return atts[i + 1];
  return nullptr;
}

struct ExpatDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};
using ExpatParser = std::unique_ptr<std::remove_pointer_t<XML_Parser>, ExpatDeleter>;

/// Shared driver: callbacks record the first error and stop the parser, the
/// error is rethrown once control is back in C++.
template <typename Handler>
void run_expat(std::string_view bytes, Handler &handler, const std::string &source) {
  ExpatParser parser(XML_ParserCreate(nullptr));
  if (!parser)
    throw std::bad_alloc();
  handler.parser = parser.get();
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(
      parser.get(),
      [](void *ud, const XML_Char *name, const XML_Char **atts) {
        static_cast<Handler *>(ud)->start(name, atts);
      },
      [](void *ud, const XML_Char *name) { static_cast<Handler *>(ud)->end(name); });
  XML_SetCharacterDataHandler(parser.get(), [](void *ud, const XML_Char *s, int len) {
    static_cast<Handler *>(ud)->text(std::string_view(s, static_cast<std::size_t>(len)));
  });
  const auto status =
      XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
  if (handler.error)
    throw *handler.error;
  if (status != XML_STATUS_OK)
    throw ParseError(ParseError::Kind::Malformed, source,
                     XML_GetCurrentLineNumber(parser.get()),
                     XML_ErrorString(XML_GetErrorCode(parser.get())));
}

struct HandlerBase {
  XML_Parser parser = nullptr;
  std::string source;
  std::optional<ParseError> error;

  std::size_t line() const { return XML_GetCurrentLineNumber(parser); }

  void fail(ParseError::Kind kind, const std::string &detail) {
    if (!error) {
      error.emplace(kind, source, line(), detail);
      XML_StopParser(parser, XML_FALSE);
    }
  }
};

struct PendingNode {
  std::string id;
  std::size_t line = 0;
  std::unordered_map<std::string, std::string> attrs;
};

struct PendingEdge {
  std::string from, to;
  std::size_t line = 0;
  std::unordered_map<std::string, std::string> attrs;
};

struct GxlHandler : HandlerBase {
  GxlSchema schema = GxlSchema::Auto;
  int graphs_seen = 0;
  std::string graph_name;
  std::vector<PendingNode> nodes;
  std::vector<PendingEdge> edges;

  std::unordered_map<std::string, std::string> *target = nullptr; // attrs being filled
  std::string attr_name;
  bool in_value = false;
  std::string value;

  void start(const XML_Char *name, const XML_Char **atts) {
    if (error)
      return;
    const std::string_view el(name);
    if (el == "graph") {
      if (++graphs_seen > 1)
        return fail(ParseError::Kind::Malformed, "more than one <graph> element");
      if (const char *id = find_attr(atts, "id"))
        graph_name = id;
    } else if (el == "node") {
      const char *id = find_attr(atts, "id");
      if (!id)
        return fail(ParseError::Kind::Malformed, "<node> without id");
      nodes.push_back({id, line(), {}});
      target = &nodes.back().attrs;
    } else if (el == "edge") {
      const char *from = find_attr(atts, "from");
      const char *to = find_attr(atts, "to");
      if (!from || !to)
        return fail(ParseError::Kind::Malformed, "<edge> needs from and to");
      edges.push_back({from, to, line(), {}});
      target = &edges.back().attrs;
    } else if (el == "attr") {
      const char *n = find_attr(atts, "name");
      if (!n)
        return fail(ParseError::Kind::Malformed, "<attr> without name");
      attr_name = n;
    } else if (el == "float" || el == "int" || el == "string" || el == "double" ||
               el == "bool") {
      in_value = true;
      value.clear();
    }
  }

  void end(const XML_Char *name) {
    if (error)
      return;
    const std::string_view el(name);
    if (el == "node" || el == "edge") {
      target = nullptr;
    } else if (el == "attr") {
      attr_name.clear();
    } else if (in_value) {
      in_value = false;
      if (target && !attr_name.empty())
        (*target)[attr_name] = std::string(trim(value));
    }
  }

  void text(std::string_view s) {
    if (in_value)
      value.append(s);
  }
};

std::optional<double> to_real(const std::string &s) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(out))
    return std::nullopt;
  return out;
}

} // namespace

ParseError::ParseError(Kind kind, std::string source, std::size_t line,
                       const std::string &detail)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + detail), kind_(kind),
      source_(std::move(source)), line_(line) {}

Graph parse_gxl(std::string_view bytes, GxlSchema schema, std::string_view source) {
  GxlHandler h;
  h.source = std::string(source);
  h.schema = schema;
  run_expat(bytes, h, h.source);
  if (h.graphs_seen == 0)
    throw ParseError(ParseError::Kind::Malformed, h.source, 1, "no <graph> element");

  Graph g;
  g.set_name(h.graph_name);
  std::unordered_map<std::string, NodeId> ids;
  auto fail = [&](ParseError::Kind kind, std::size_t line, const std::string &detail) {
    throw ParseError(kind, h.source, line, detail);
  };

  for (const PendingNode &n : h.nodes) {
    auto get = [&](const char *key) -> const std::string * {
      auto it = n.attrs.find(key);
      return it == n.attrs.end() ? nullptr : &it->second;
    };
    // Some AIDS exports carry only the numeric `chem` code.
    const std::string *symbol = get("symbol");
    if (!symbol || trim(*symbol).empty())
      if (const std::string *chem = get("chem"))
        symbol = chem;
    const std::string *x = get("x");
    const std::string *y = get("y");
    bool symbolic = schema == GxlSchema::Symbolic;
    if (schema == GxlSchema::Auto)
      symbolic = symbol != nullptr || !(x && y);

    NodeLabel label;
    if (symbolic) {
      if (!symbol || trim(*symbol).empty())
        fail(ParseError::Kind::UnknownSchema, n.line,
             "node " + n.id + " has neither a symbol nor x/y attributes");
      label = Symbol{std::string(trim(*symbol))};
    } else {
      if (!x || !y)
        fail(ParseError::Kind::UnknownSchema, n.line, "node " + n.id + " lacks x/y attributes");
      auto xv = to_real(*x), yv = to_real(*y);
      if (!xv || !yv)
        fail(ParseError::Kind::Malformed, n.line, "node " + n.id + " has non-numeric coordinates");
      label = Point2D{*xv, *yv};
    }
    if (ids.contains(n.id))
      fail(ParseError::Kind::InvalidGraph, n.line, "duplicate node id " + n.id);
    ids.emplace(n.id, g.add_node(std::move(label)));
  }

  for (const PendingEdge &e : h.edges) {
    auto from = ids.find(e.from);
    auto to = ids.find(e.to);
    if (from == ids.end() || to == ids.end())
      fail(ParseError::Kind::DanglingEndpoint, e.line,
           "edge " + e.from + "-" + e.to + " references an undeclared node");
    EdgeLabel label = Unlabeled{};
    if (auto it = e.attrs.find("valence"); it != e.attrs.end()) {
      auto v = to_real(it->second);
      if (!v)
        fail(ParseError::Kind::Malformed, e.line, "non-numeric valence '" + it->second + "'");
      label = Numeric{*v};
    }
    try {
      g.add_edge(from->second, to->second, label);
    } catch (const GraphError &err) {
      fail(ParseError::Kind::InvalidGraph, e.line, err.what());
    }
  }
  return g;
}

namespace {

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError(ParseError::Kind::Io, path.string(), 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CxlHandler : HandlerBase {
  std::vector<IndexEntry> entries;

  void start(const XML_Char *name, const XML_Char **atts) {
    if (error || std::string_view(name) != "print")
      return;
    const char *file = find_attr(atts, "file");
    const char *cls = find_attr(atts, "class");
    if (!file || !cls)
      return fail(ParseError::Kind::Malformed, "<print> needs file and class");
    entries.push_back({file, cls});
  }
  void end(const XML_Char *) {}
  void text(std::string_view) {}
};

} // namespace

Graph load_gxl_file(const std::filesystem::path &path, GxlSchema schema) {
  const std::string bytes = read_file(path);
  Graph g = parse_gxl(bytes, schema, path.string());
  if (g.name().empty())
    g.set_name(path.stem().string());
  return g;
}

std::vector<IndexEntry> parse_cxl_entries(std::string_view bytes, std::string_view source) {
  CxlHandler h;
  h.source = std::string(source);
  run_expat(bytes, h, h.source);
  return std::move(h.entries);
}

std::string read_text_file(const std::filesystem::path &path) { return read_file(path); }

} // namespace tged
