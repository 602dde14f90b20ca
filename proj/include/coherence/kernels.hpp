#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a serial twin with the
// same arithmetic order per work item; the tests compare the two and the
// benchmark times them.

#include <cstdint>
#include <span>

#include "coherence/graph.hpp"

namespace coherence::kernels {

/// Worker count: COHERENCE_THREADS if set and positive, else the OpenMP
/// default.
int thread_count();

struct DistanceTotals {
  std::uint64_t distance_sum = 0;  // sum of hop distances from the sources
  std::uint64_t reached = 0;       // (source, target) pairs reached, target != source
  bool all_reached = true;
};

/// One BFS per source; sums are integers so the result does not depend on
/// the schedule.
DistanceTotals bfs_distance_totals(const Graph& g, std::span<const Vertex> sources);
DistanceTotals bfs_distance_totals_serial(const Graph& g, std::span<const Vertex> sources);

}  // namespace coherence::kernels
