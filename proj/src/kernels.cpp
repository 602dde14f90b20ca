#include "coherence/kernels.hpp"

#include <cstdlib>
#include <limits>
#include <vector>

#include <omp.h>

namespace coherence::kernels {

int thread_count() {
  if (const char* env = std::getenv("COHERENCE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

// BFS from `source`, reusing caller-owned scratch buffers.
void bfs_from(const Graph& g, Vertex source, std::vector<std::uint32_t>& dist,
              std::vector<Vertex>& queue, DistanceTotals& out) {
  std::fill(dist.begin(), dist.end(), kUnseen);
  dist[source] = 0;
  std::size_t head = 0, tail = 0;
  queue[tail++] = source;
  while (head < tail) {
    const Vertex u = queue[head++];
    const std::uint32_t du = dist[u];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnseen) {
        dist[w] = du + 1;
        queue[tail++] = w;
        out.distance_sum += du + 1;
      }
    }
  }
  out.reached += tail - 1;
  if (tail != g.num_vertices()) out.all_reached = false;
}

}  // namespace

DistanceTotals bfs_distance_totals_serial(const Graph& g, std::span<const Vertex> sources) {
  DistanceTotals total;
  std::vector<std::uint32_t> dist(g.num_vertices());
  std::vector<Vertex> queue(g.num_vertices());
  for (Vertex s : sources) bfs_from(g, s, dist, queue, total);
  return total;
}

DistanceTotals bfs_distance_totals(const Graph& g, std::span<const Vertex> sources) {
  std::uint64_t sum = 0, reached = 0;
  int all_reached = 1;
  const auto count = static_cast<std::int64_t>(sources.size());
#pragma omp parallel num_threads(thread_count()) reduction(+ : sum, reached) reduction(&& : all_reached)
  {
    std::vector<std::uint32_t> dist(g.num_vertices());
    std::vector<Vertex> queue(g.num_vertices());
    DistanceTotals local;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) bfs_from(g, sources[i], dist, queue, local);
    sum += local.distance_sum;
    reached += local.reached;
    all_reached = all_reached && local.all_reached;
  }
  return {sum, reached, all_reached != 0};
}

}  // namespace coherence::kernels
