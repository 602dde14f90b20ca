#include "coherence/graph.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <omp.h>

#include "coherence/kernels.hpp"

namespace coherence {

Graph Graph::from_canonical(std::size_t n, std::vector<Edge> edges) {
  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  assert(std::is_sorted(g.edges_.begin(), g.edges_.end()));

  std::vector<std::size_t> deg(n, 0);
  for (const auto& [u, v] : g.edges_) {
    assert(u < v && v < n);
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so filling in this order leaves every
  // neighbor list sorted: lower neighbors arrive first via the second
  // endpoint, higher ones via the first.
  for (const auto& [u, v] : g.edges_) g.adjacency_[cursor[v]++] = u;
  for (const auto& [u, v] : g.edges_) g.adjacency_[cursor[u]++] = v;
  return g;
}

BuildResult build_graph(std::span<const std::pair<std::int64_t, std::int64_t>> raw_edges,
                        std::optional<std::size_t> declared_vertices) {
  if (raw_edges.empty() && !declared_vertices) throw Error("empty graph");

  std::int64_t max_id = -1;
  for (const auto& [a, b] : raw_edges) {
    if (a < 0 || b < 0) throw Error("negative vertex ID");
    max_id = std::max({max_id, a, b});
  }
  if (max_id >= std::int64_t{std::numeric_limits<Vertex>::max()})
    throw Error("vertex ID out of range");
  const auto needed = static_cast<std::size_t>(max_id + 1);
  if (declared_vertices && *declared_vertices < needed)
    throw Error("declared vertex count smaller than 1 + max vertex ID");
  const std::size_t n = declared_vertices.value_or(needed);
  if (n == 0) throw Error("empty graph");

  BuildResult out;
  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (const auto& [a, b] : raw_edges) {
    if (a == b) {
      ++out.dropped_self_loops;
      continue;
    }
    const auto u = static_cast<Vertex>(std::min(a, b));
    const auto v = static_cast<Vertex>(std::max(a, b));
    edges.emplace_back(u, v);
  }
  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  out.dropped_duplicates = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  out.graph = Graph::from_canonical(n, std::move(edges));
  return out;
}

DegreeSummary degree_summary(const Graph& g) {
  DegreeSummary s;
  s.degrees.resize(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) s.degrees[v] = g.degree(v);
  s.max_degree = s.degrees.empty() ? 0 : *std::max_element(s.degrees.begin(), s.degrees.end());
  s.mean_degree = g.num_vertices() == 0
                      ? 0.0
                      : 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(g.num_vertices());
  return s;
}

LaplacianMatrix::LaplacianMatrix(const Graph& g)
    : degrees_(g.num_vertices()), offsets_(g.offsets()), adjacency_(g.adjacency()) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) degrees_[v] = static_cast<double>(g.degree(v));
}

void LaplacianMatrix::apply_serial(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = order();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = degrees_[i] * x[i];
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) acc -= x[adjacency_[k]];
    y[i] = acc;
  }
}

void LaplacianMatrix::apply(std::span<const double> x, std::span<double> y) const {
  const auto n = static_cast<std::int64_t>(order());
#pragma omp parallel for num_threads(kernels::thread_count()) schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    double acc = degrees_[i] * x[i];
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) acc -= x[adjacency_[k]];
    y[i] = acc;
  }
}

Eigen::MatrixXd LaplacianMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(order());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    L(i, i) = degrees_[i];
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) L(i, adjacency_[k]) = -1.0;
  }
  return L;
}

LaplacianMatrix laplacian(const Graph& g) { return LaplacianMatrix(g); }

std::vector<std::size_t> component_labels(const Graph& g, std::size_t* num_components) {
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(g.num_vertices(), kUnset);
  std::vector<Vertex> stack;
  std::size_t next = 0;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (num_components) *num_components = next;
  return label;
}

bool is_connected(const Graph& g) {
  std::size_t k = 0;
  component_labels(g, &k);
  return k <= 1;
}

ComponentResult largest_connected_component(const Graph& g) {
  std::size_t k = 0;
  const auto label = component_labels(g, &k);
  std::vector<std::size_t> size(k, 0);
  for (auto l : label) ++size[l];
  // Labels are assigned in order of smallest member, so the first maximum
  // is the component holding the smallest original ID.
  const auto best = static_cast<std::size_t>(std::max_element(size.begin(), size.end()) - size.begin());

  ComponentResult out;
  out.vertex_map.assign(g.num_vertices(), kDropped);
  std::int64_t next = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (label[v] == best) out.vertex_map[v] = next++;

  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges())
    if (label[u] == best)
      edges.emplace_back(static_cast<Vertex>(out.vertex_map[u]), static_cast<Vertex>(out.vertex_map[v]));
  // Relabeling is order-preserving, so the edge list stays canonical.
  out.graph = Graph::from_canonical(static_cast<std::size_t>(next), std::move(edges));
  return out;
}

PathMode default_path_mode(const Graph& g, std::uint64_t seed) {
  if (g.num_vertices() <= kExactPathLimit) return ExactPaths{};
  return SampledPaths{1000, seed};
}

double average_shortest_path(const Graph& g, const PathMode& mode) {
  const std::size_t n = g.num_vertices();
  if (!is_connected(g)) throw Error("graph not connected");
  if (n < 2) return 0.0;

  std::vector<Vertex> sources;
  if (const auto* sampled = std::get_if<SampledPaths>(&mode);
      sampled && sampled->sources < n) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    std::mt19937_64 rng(sampled->seed);
    std::sample(all.begin(), all.end(), std::back_inserter(sources), sampled->sources, rng);
  } else {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), Vertex{0});
  }
  const auto totals = kernels::bfs_distance_totals(g, sources);
  // Every ordered pair (s, t) with s a source; for the exact case this is
  // twice the unordered sum over twice the pair count.
  return static_cast<double>(totals.distance_sum) / static_cast<double>(totals.reached);
}

}  // namespace coherence
