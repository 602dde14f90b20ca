#pragma once

// Reference computations kept independent of the library's own algorithms.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "coherence/graph.hpp"

namespace oracle {

/// Dense adjacency from the edge list only.
Eigen::MatrixXd adjacency(const coherence::Graph& g);

/// All-pairs hop distances by Floyd-Warshall; -1 when unreachable.
std::vector<std::vector<long>> floyd_warshall(const coherence::Graph& g);

/// L^+ = (L + J/N)^{-1} - J/N by LU, no eigendecomposition.
Eigen::MatrixXd pseudoinverse(const coherence::Graph& g);

/// Exact traces tr(L^+) and tr(L^+^2) via rational Gauss-Jordan on L + J/N.
struct RationalTraces {
  mpq_class s;  // sum 1/lambda
  mpq_class t;  // sum 1/lambda^2
};
RationalTraces rational_traces(const coherence::Graph& g);

/// Erdos-Renyi G(n, p) with its largest component, relabelled densely.
coherence::Graph random_connected(std::size_t n, double p, std::mt19937_64& rng);

/// Same graph with vertex IDs permuted.
coherence::Graph permuted(const coherence::Graph& g, std::mt19937_64& rng);

coherence::Graph path(std::size_t n);
coherence::Graph complete(std::size_t n);

}  // namespace oracle
