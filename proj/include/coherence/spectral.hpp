#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "coherence/graph.hpp"

namespace coherence {

/// Ascending Laplacian eigenvalues, optionally with an orthonormal basis
/// (column k pairs with eigenvalue k).
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  std::optional<Eigen::MatrixXd> eigenvectors;
  std::size_t num_edges = 0;

  std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
  /// 1e-9 * max(1, lambda_max).
  double zero_threshold() const;
};

enum class CoherenceMethod { DenseSpectrum, StochasticEstimate };
std::string_view method_name(CoherenceMethod m);

struct CoherenceReport {
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  double h_fo = 0.0;
  double h_so = 0.0;
  double kirchhoff = 0.0;
  double biharmonic = 0.0;
  CoherenceMethod method = CoherenceMethod::DenseSpectrum;
  /// Standard errors of h_fo and h_so, only for stochastic estimates.
  std::optional<double> h_fo_std_error;
  std::optional<double> h_so_std_error;
};

inline constexpr std::size_t kDenseThreshold = 5000;

/// Full eigendecomposition of L. Throws when N exceeds `dense_threshold`.
Spectrum spectrum(const Graph& g, bool want_vectors = false,
                  std::size_t dense_threshold = kDenseThreshold);

/// H_FO = (1/2N) sum 1/lambda_i and H_SO = (1/2N) sum 1/lambda_i^2 over the
/// nonzero eigenvalues; Kirchhoff and biharmonic indices are N times the sums.
CoherenceReport coherence_from_spectrum(const Spectrum& s);

/// Omega_ij = sum_k (u_ki - u_kj)^2 / lambda_k. Needs eigenvectors.
double resistance_distance(const Spectrum& s, Vertex i, Vertex j);
/// Theta_ij = sum_k (u_ki - u_kj)^2 / lambda_k^2. Needs eigenvectors.
double biharmonic_distance(const Spectrum& s, Vertex i, Vertex j);

/// Convenience overloads that eigendecompose `g` first.
double resistance_distance(const Graph& g, Vertex i, Vertex j);
double biharmonic_distance(const Graph& g, Vertex i, Vertex j);

double kirchhoff_index(const Graph& g);
double biharmonic_index(const Graph& g);

/// L^+ assembled from eigenpairs: U diag(1/lambda) U^T (power 1) or
/// U diag(1/lambda^2) U^T (power 2).
Eigen::MatrixXd spectral_pseudoinverse(const Spectrum& s, int power = 1);

/// Pairwise distance matrix from a Gram-type matrix G:
/// D_ij = G_ii + G_jj - 2 G_ij.
Eigen::MatrixXd gram_to_distances(const Eigen::MatrixXd& gram);

/// Sum over unordered pairs of a symmetric distance matrix. OpenMP-parallel
/// over rows with a fixed-order final reduction.
double pairwise_sum(const Eigen::MatrixXd& distances);
double pairwise_sum_serial(const Eigen::MatrixXd& distances);

struct EstimateConfig {
  std::size_t probes = 200;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  std::size_t max_iterations = 0;  // 0: 10 * N
};

/// Hutchinson estimate of tr(L^+) and tr(L^+^2) with mean-centered
/// Rademacher probes; each probe is solved by conjugate gradients on the
/// mean-zero subspace. Deterministic given the seed.
CoherenceReport coherence_estimate(const Graph& g, const EstimateConfig& config = {});
CoherenceReport coherence_estimate_serial(const Graph& g, const EstimateConfig& config = {});

/// Dense spectrum below `dense_threshold`, stochastic estimate above.
CoherenceReport coherence_auto(const Graph& g, const EstimateConfig& config = {},
                               std::size_t dense_threshold = kDenseThreshold);

}  // namespace coherence
