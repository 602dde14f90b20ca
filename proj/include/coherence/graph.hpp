#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "coherence/error.hpp"

namespace coherence {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable undirected simple graph with dense vertex IDs 0..n-1.
///
/// Edges are stored canonically (u < v, sorted lexicographically) next to a
/// CSR adjacency with sorted neighbor lists. Construct through build_graph()
/// or Graph::from_canonical().
class Graph {
 public:
  Graph() = default;

  /// Trusted constructor: `edges` must already be canonical (u < v, sorted,
  /// unique, every endpoint < n). Checked with assertions only.
  static Graph from_canonical(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  /// CSR arrays, exposed for kernels.
  const std::vector<std::size_t>& offsets() const { return offsets_; }
  const std::vector<Vertex>& adjacency() const { return adjacency_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

struct BuildResult {
  Graph graph;
  std::size_t dropped_duplicates = 0;
  std::size_t dropped_self_loops = 0;
};

/// Canonicalizes a raw edge list. Self-loops and repeated edges (in either
/// orientation) are dropped and counted. Throws "empty graph" when no edges
/// and no vertex count are given.
BuildResult build_graph(std::span<const std::pair<std::int64_t, std::int64_t>> raw_edges,
                        std::optional<std::size_t> declared_vertices = std::nullopt);

struct DegreeSummary {
  std::vector<std::size_t> degrees;
  double mean_degree = 0.0;
  std::size_t max_degree = 0;
};

DegreeSummary degree_summary(const Graph& g);

/// L = D - A. Holds the degree vector and a copy of the CSR pattern so the
/// product L*x can be applied without materializing a matrix.
class LaplacianMatrix {
 public:
  explicit LaplacianMatrix(const Graph& g);

  std::size_t order() const { return degrees_.size(); }
  double diagonal(Vertex v) const { return degrees_[v]; }

  /// y = L x. OpenMP-parallel over rows.
  void apply(std::span<const double> x, std::span<double> y) const;
  /// Serial reference for apply().
  void apply_serial(std::span<const double> x, std::span<double> y) const;

  Eigen::MatrixXd dense() const;

 private:
  std::vector<double> degrees_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

LaplacianMatrix laplacian(const Graph& g);

/// Connected components as a label per vertex (labels 0..k-1 ordered by the
/// smallest vertex they contain).
std::vector<std::size_t> component_labels(const Graph& g, std::size_t* num_components = nullptr);
bool is_connected(const Graph& g);

inline constexpr std::int64_t kDropped = -1;

struct ComponentResult {
  Graph graph;
  /// old ID -> new ID, or kDropped for vertices outside the component.
  std::vector<std::int64_t> vertex_map;
};

/// Largest connected component; ties go to the component containing the
/// smallest original vertex ID. New IDs preserve the original relative order.
ComponentResult largest_connected_component(const Graph& g);

struct ExactPaths {};
struct SampledPaths {
  std::size_t sources = 1000;
  std::uint64_t seed = 1;
};
using PathMode = std::variant<ExactPaths, SampledPaths>;

/// Exact all-sources BFS up to this many vertices, sampled above.
inline constexpr std::size_t kExactPathLimit = 10000;

PathMode default_path_mode(const Graph& g, std::uint64_t seed = 1);

/// Mean hop distance over unordered vertex pairs. Throws "graph not
/// connected" on disconnected input.
double average_shortest_path(const Graph& g, const PathMode& mode);

struct PowerLawConfig {
  std::size_t min_tail = 10;
  double gamma_lo = 1.05;
  double gamma_hi = 8.0;
};

struct PowerLawFit {
  double gamma = 0.0;
  std::size_t xmin = 0;
  double ks_distance = 0.0;
  std::size_t tail_size = 0;
};

/// Discrete power-law MLE (Hurwitz-zeta normalization) with xmin chosen to
/// minimize the Kolmogorov-Smirnov distance between the empirical and fitted
/// tail CDFs.
PowerLawFit powerlaw_exponent(std::span<const std::size_t> degrees,
                              const PowerLawConfig& config = {});

}  // namespace coherence
