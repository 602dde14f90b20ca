#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coherence/graph.hpp"
#include "coherence/spectral.hpp"

namespace coherence {

struct ParseOptions {
  /// Name used in error messages.
  std::string source = "<input>";
};

struct ParsedEdgeList {
  Graph graph;
  /// Original token of each dense ID.
  std::vector<std::string> labels;
  std::size_t dropped_duplicates = 0;
  std::size_t dropped_self_loops = 0;
  /// True when a "% asym" header marks the file as directed; edges are
  /// symmetrized either way.
  bool directed = false;
  std::vector<std::string> warnings;
};

/// KONECT-style edge list: one edge per line, two whitespace-separated
/// tokens, further columns ignored, lines starting with '%' or '#' skipped.
/// Tokens become dense IDs in order of first appearance.
ParsedEdgeList parse_edge_list(std::istream& in, const ParseOptions& options = {});
ParsedEdgeList parse_edge_list_file(const std::string& path);

/// Canonical edges, one "u v" line each, after optional '%' header lines.
void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& header = {});

struct NetworkStats {
  std::string name;
  std::size_t n_raw = 0;
  std::size_t m_raw = 0;
  std::size_t n_lcc = 0;
  std::size_t m_lcc = 0;
  double mean_degree = 0.0;
  /// Empty when the degree sequence admits no fit.
  std::optional<double> gamma;
  double mean_path = 0.0;
  std::optional<double> h_fo;
  std::optional<double> h_so;
  std::optional<CoherenceMethod> method;
};

struct StatsConfig {
  bool compute_coherence = true;
  EstimateConfig estimate;
  std::uint64_t path_seed = 1;
};

NetworkStats network_stats(const Graph& g, const std::string& name, const StatsConfig& config = {});

inline constexpr const char* kStatsCsvHeader =
    "name,n_raw,m_raw,n_lcc,m_lcc,mean_degree,gamma,mean_path,h_fo,h_so,method";

std::string to_csv_row(const NetworkStats& s);
std::string to_json(const NetworkStats& s);

/// Shortest round-trip-safe rendering with 12 significant digits.
std::string format_real(double v);

}  // namespace coherence
