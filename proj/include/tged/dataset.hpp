#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tged/graph.hpp"

namespace tged {

enum class Split { Train, Validation, Test };

std::string_view to_string(Split s);

struct Corpus {
  std::string name;
  std::vector<Graph> graphs;
  Split split = Split::Train;
};

struct CorpusStats {
  std::size_t graph_count = 0;
  double avg_nodes = 0.0;
  double avg_edges = 0.0;
  std::map<std::string, std::size_t> class_histogram;
};

CorpusStats corpus_stats(const Corpus &c);

class ParseError : public std::runtime_error {
public:
  enum class Kind { Malformed, UnknownSchema, DanglingEndpoint, InvalidGraph, Io };

  ParseError(Kind kind, std::string source, std::size_t line, const std::string &detail);

  Kind kind() const noexcept { return kind_; }
  const std::string &source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

private:
  Kind kind_;
  std::string source_;
  std::size_t line_;
};

/// How GXL node attributes become labels. Auto picks Symbolic when a
/// `symbol` (or, failing that, `chem`) attribute is present, otherwise
/// Point2D from `x`/`y`.
enum class GxlSchema { Auto, Coordinates, Symbolic };

/// Parses one GXL document holding a single <graph>. Node ids are issued in
/// document order. Edges carrying a `valence` attribute get Numeric labels.
/// `source` only feeds error messages.
Graph parse_gxl(std::string_view bytes, GxlSchema schema = GxlSchema::Auto,
                std::string_view source = "<memory>");
Graph load_gxl_file(const std::filesystem::path &path, GxlSchema schema = GxlSchema::Auto);

struct IndexEntry {
  std::string file;
  std::string class_label;
};

/// Reads the (file, class) entries of a CXL collection index.
std::vector<IndexEntry> parse_cxl_entries(std::string_view bytes,
                                          std::string_view source = "<memory>");

/// Loads every graph listed by the index, relative to base_path. All member
/// failures are collected and reported together in one CorpusError.
Corpus parse_cxl_index(std::string_view bytes, const std::filesystem::path &base_path,
                       GxlSchema schema = GxlSchema::Auto, int workers = 1);
Corpus load_cxl_file(const std::filesystem::path &path, GxlSchema schema = GxlSchema::Auto,
                     int workers = 1);

class CorpusError : public std::runtime_error {
public:
  CorpusError(std::vector<std::string> failures);
  const std::vector<std::string> &failures() const noexcept { return failures_; }

private:
  std::vector<std::string> failures_;
};

/// Line-oriented text format, one record per line:
///
///   graph <name> [<class>]
///   node <id> point <x> <y>
///   node <id> symbol <token>
///   edge <u> <v>
///   edge <u> <v> numeric <value>
///
/// Ids are written as they are; the reader issues fresh dense ids in file
/// order and maps edges through them. '#' starts a comment line.
std::string write_debug(const Graph &g);
Graph parse_debug(std::string_view text, std::string_view source = "<memory>");

/// Whole file as bytes; throws ParseError(Io) when it cannot be opened.
std::string read_text_file(const std::filesystem::path &path);

/// Loads a single graph, choosing the reader by extension (.gxl, else debug).
Graph load_graph_file(const std::filesystem::path &path, GxlSchema schema = GxlSchema::Auto);

/// Environment variable naming the directory that holds the IAM corpora.
inline constexpr const char *kDataRootEnv = "TGED_DATA_ROOT";

/// Explicit path wins over the environment variable.
std::optional<std::filesystem::path> resolve_data_root(
    const std::optional<std::filesystem::path> &explicit_root);

enum class IamDataset { LetterHigh, Aids };

/// Index file for a split, following the IAM distribution layout
/// (Letter/HIGH/{train,validation,test}.cxl, AIDS/data/{train,valid,test}.cxl).
std::filesystem::path iam_index_path(const std::filesystem::path &root, IamDataset which,
                                     Split split);
Corpus load_iam(const std::filesystem::path &root, IamDataset which, Split split,
                int workers = 1);

struct SynthOptions {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t classes = 15;
  double distortion = 0.3;
};

/// Deterministic corpus of plane graphs. Each class has a connected
/// prototype of 4-6 nodes with coordinates in [0, 3]^2. Instance i belongs
/// to class i % classes; it jitters every coordinate by N(0, distortion^2)
/// and, with probability min(1, distortion), adds or removes one edge.
Corpus synthesize_letter_like(const SynthOptions &opts, Split split = Split::Train);

} // namespace tged
