#include "coherence/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "coherence/kernels.hpp"

namespace coherence {

std::string_view method_name(CoherenceMethod m) {
  return m == CoherenceMethod::DenseSpectrum ? "dense-spectrum" : "stochastic-estimate";
}

double Spectrum::zero_threshold() const {
  const double top = eigenvalues.size() ? eigenvalues[eigenvalues.size() - 1] : 0.0;
  return 1e-9 * std::max(1.0, top);
}

Spectrum spectrum(const Graph& g, bool want_vectors, std::size_t dense_threshold) {
  if (g.num_vertices() > dense_threshold)
    throw Error("graph has " + std::to_string(g.num_vertices()) +
                " vertices, above the dense threshold " + std::to_string(dense_threshold) +
                "; use the stochastic estimate (coherence_estimate) instead");
  if (g.num_vertices() == 0) throw Error("empty graph");
  const Eigen::MatrixXd L = laplacian(g).dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      L, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigensolver did not converge");
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  if (want_vectors) s.eigenvectors = solver.eigenvectors();
  s.num_edges = g.num_edges();
  return s;
}

namespace {

// Index of the first eigenvalue above the zero threshold; throws unless
// exactly one eigenvalue is (numerically) zero.
Eigen::Index first_nonzero(const Spectrum& s) {
  const double cut = s.zero_threshold();
  Eigen::Index k = 0;
  while (k < s.eigenvalues.size() && s.eigenvalues[k] < cut) ++k;
  if (k >= 2) throw Error("graph disconnected");
  if (k == 0) throw Error("spectrum has no zero eigenvalue; not a Laplacian spectrum");
  return k;
}

const Eigen::MatrixXd& vectors_of(const Spectrum& s) {
  if (!s.eigenvectors) throw Error("spectrum was computed without eigenvectors");
  return *s.eigenvectors;
}

double spectral_distance(const Spectrum& s, Vertex i, Vertex j, int power) {
  const auto& U = vectors_of(s);
  if (i >= s.size() || j >= s.size()) throw Error("vertex out of range");
  const Eigen::Index start = first_nonzero(s);
  if (i == j) return 0.0;
  double sum = 0.0;
  for (Eigen::Index k = start; k < s.eigenvalues.size(); ++k) {
    const double diff = U(i, k) - U(j, k);
    sum += diff * diff / std::pow(s.eigenvalues[k], power);
  }
  return sum;
}

}  // namespace

CoherenceReport coherence_from_spectrum(const Spectrum& s) {
  const Eigen::Index start = first_nonzero(s);
  double inv = 0.0, inv2 = 0.0;
  for (Eigen::Index k = start; k < s.eigenvalues.size(); ++k) {
    const double r = 1.0 / s.eigenvalues[k];
    inv += r;
    inv2 += r * r;
  }
  const auto n = static_cast<double>(s.size());
  CoherenceReport rep;
  rep.n_vertices = s.size();
  rep.n_edges = s.num_edges;
  rep.h_fo = inv / (2.0 * n);
  rep.h_so = inv2 / (2.0 * n);
  rep.kirchhoff = n * inv;
  rep.biharmonic = n * inv2;
  rep.method = CoherenceMethod::DenseSpectrum;
  return rep;
}

double resistance_distance(const Spectrum& s, Vertex i, Vertex j) {
  return spectral_distance(s, i, j, 1);
}

double biharmonic_distance(const Spectrum& s, Vertex i, Vertex j) {
  return spectral_distance(s, i, j, 2);
}

double resistance_distance(const Graph& g, Vertex i, Vertex j) {
  if (i == j) return 0.0;
  return resistance_distance(spectrum(g, true), i, j);
}

double biharmonic_distance(const Graph& g, Vertex i, Vertex j) {
  if (i == j) return 0.0;
  return biharmonic_distance(spectrum(g, true), i, j);
}

double kirchhoff_index(const Graph& g) { return coherence_from_spectrum(spectrum(g)).kirchhoff; }

double biharmonic_index(const Graph& g) { return coherence_from_spectrum(spectrum(g)).biharmonic; }

Eigen::MatrixXd spectral_pseudoinverse(const Spectrum& s, int power) {
  const auto& U = vectors_of(s);
  const Eigen::Index start = first_nonzero(s);
  const Eigen::Index m = s.eigenvalues.size() - start;
  const Eigen::MatrixXd V = U.rightCols(m);
  Eigen::VectorXd w = s.eigenvalues.tail(m).cwiseInverse();
  if (power == 2) w = w.cwiseAbs2();
  return V * w.asDiagonal() * V.transpose();
}

Eigen::MatrixXd gram_to_distances(const Eigen::MatrixXd& gram) {
  const Eigen::VectorXd d = gram.diagonal();
  const Eigen::Index n = gram.rows();
  Eigen::MatrixXd D(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) D(i, j) = d[i] + d[j] - 2.0 * gram(i, j);
  return D;
}

double pairwise_sum_serial(const Eigen::MatrixXd& distances) {
  const Eigen::Index n = distances.rows();
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) row[i] += distances(i, j);
  double total = 0.0;
  for (double r : row) total += r;
  return total;
}

double pairwise_sum(const Eigen::MatrixXd& distances) {
  const Eigen::Index n = distances.rows();
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for num_threads(kernels::thread_count()) schedule(dynamic, 8)
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) acc += distances(i, j);
    row[i] = acc;
  }
  double total = 0.0;
  for (double r : row) total += r;
  return total;
}

namespace {

struct ProbeResult {
  double quad = 0.0;   // z^T L^+ z
  double norm2 = 0.0;  // |L^+ z|^2
};

void center(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ProbeResult run_probe(const LaplacianMatrix& L, std::size_t probe, const EstimateConfig& cfg) {
  const std::size_t n = L.order();
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(probe), static_cast<std::uint32_t>(probe >> 32)};
  std::mt19937_64 rng(seq);

  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; i += 64) {
    std::uint64_t bits = rng();
    for (std::size_t k = i; k < std::min(n, i + 64); ++k, bits >>= 1) z[k] = (bits & 1) ? 1.0 : -1.0;
  }
  center(z);

  // CG for L y = z on the mean-zero subspace, where L is positive definite.
  std::vector<double> y(n, 0.0), r = z, p = z, Ap(n);
  double rr = dot(r, r);
  const double stop = cfg.tolerance * cfg.tolerance * rr;
  const std::size_t max_iter = cfg.max_iterations ? cfg.max_iterations : 10 * n + 10;
  std::size_t it = 0;
  for (; it < max_iter && rr > stop; ++it) {
    L.apply_serial(p, Ap);
    const double alpha = rr / dot(p, Ap);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  if (rr > stop)
    throw Error("conjugate gradients did not converge: relative residual " +
                std::to_string(std::sqrt(rr / dot(z, z))) + " after " + std::to_string(it) +
                " iterations (tolerance " + std::to_string(cfg.tolerance) + ")");
  center(y);
  return {dot(z, y), dot(y, y)};
}

CoherenceReport summarize(const Graph& g, const std::vector<ProbeResult>& probes) {
  const auto m = static_cast<double>(probes.size());
  double s1 = 0.0, s2 = 0.0;
  for (const auto& p : probes) {
    s1 += p.quad;
    s2 += p.norm2;
  }
  const double mean1 = s1 / m, mean2 = s2 / m;
  double v1 = 0.0, v2 = 0.0;
  for (const auto& p : probes) {
    v1 += (p.quad - mean1) * (p.quad - mean1);
    v2 += (p.norm2 - mean2) * (p.norm2 - mean2);
  }
  const double se1 = m > 1 ? std::sqrt(v1 / (m - 1) / m) : 0.0;
  const double se2 = m > 1 ? std::sqrt(v2 / (m - 1) / m) : 0.0;

  const auto n = static_cast<double>(g.num_vertices());
  CoherenceReport rep;
  rep.n_vertices = g.num_vertices();
  rep.n_edges = g.num_edges();
  rep.h_fo = mean1 / (2.0 * n);
  rep.h_so = mean2 / (2.0 * n);
  rep.kirchhoff = n * mean1;
  rep.biharmonic = n * mean2;
  rep.method = CoherenceMethod::StochasticEstimate;
  rep.h_fo_std_error = se1 / (2.0 * n);
  rep.h_so_std_error = se2 / (2.0 * n);
  return rep;
}

void check_estimate_input(const Graph& g, const EstimateConfig& cfg) {
  if (g.num_vertices() < 2) throw Error("coherence needs at least two vertices");
  if (cfg.probes < 2) throw Error("need at least two probes");
  if (!is_connected(g)) throw Error("graph not connected");
}

}  // namespace

CoherenceReport coherence_estimate_serial(const Graph& g, const EstimateConfig& config) {
  check_estimate_input(g, config);
  const LaplacianMatrix L(g);
  std::vector<ProbeResult> results(config.probes);
  for (std::size_t i = 0; i < config.probes; ++i) results[i] = run_probe(L, i, config);
  return summarize(g, results);
}

CoherenceReport coherence_estimate(const Graph& g, const EstimateConfig& config) {
  check_estimate_input(g, config);
  const LaplacianMatrix L(g);
  std::vector<ProbeResult> results(config.probes);
  const auto count = static_cast<std::int64_t>(config.probes);
  std::string failure;
#pragma omp parallel for num_threads(kernels::thread_count()) schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      results[i] = run_probe(L, static_cast<std::size_t>(i), config);
    } catch (const Error& e) {
#pragma omp critical(coherence_estimate_failure)
      if (failure.empty()) failure = e.what();
    }
  }
  if (!failure.empty()) throw Error(failure);
  return summarize(g, results);
}

CoherenceReport coherence_auto(const Graph& g, const EstimateConfig& config,
                               std::size_t dense_threshold) {
  if (g.num_vertices() <= dense_threshold) {
    if (!is_connected(g)) throw Error("graph not connected");
    return coherence_from_spectrum(spectrum(g, false, dense_threshold));
  }
  return coherence_estimate(g, config);
}

}  // namespace coherence
