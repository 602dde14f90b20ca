#include "coherence/simulate.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coherence/kernels.hpp"

namespace coherence {

double largest_eigenvalue(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw Error("empty graph");
  if (g.num_edges() == 0) return 0.0;
  const LaplacianMatrix L(g);
  // A start vector with both a smooth and an alternating component, so it is
  // not orthogonal to the top eigenvector of any small graph we care about.
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (i % 2 ? -1.0 : 1.0) + 0.01 * static_cast<double>(i % 7);
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
    L.apply_serial(x, y);
    double rq = 0.0;
    for (std::size_t i = 0; i < n; ++i) rq += x[i] * y[i];
    x.swap(y);
    if (it > 20 && std::abs(rq - lambda) <= 1e-10 * rq) {
      lambda = rq;
      break;
    }
    lambda = rq;
  }
  return lambda;
}

void validate(const Graph& g, const SimConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw Error("dt must be positive");
  if (!(cfg.t_total > 0.0)) throw Error("t_total must be positive");
  if (!(cfg.burn_in >= 0.0 && cfg.burn_in < 1.0)) throw Error("burn_in must lie in [0, 1)");
  if (cfg.trials < 1) throw Error("trials must be at least 1");
  if (g.num_vertices() < 2) throw Error("simulation needs at least two vertices");
  if (!is_connected(g)) throw Error("graph not connected");
  const double bound = 0.1 / largest_eigenvalue(g);
  if (cfg.dt > bound) {
    const double suggested = std::pow(10.0, std::floor(std::log10(bound)));
    std::ostringstream msg;
    msg << "dt=" << cfg.dt << " violates the stability bound 0.1/lambda_max=" << bound
        << "; try --dt " << suggested;
    throw Error(msg.str());
  }
  if (static_cast<std::size_t>(std::llround(cfg.t_total / cfg.dt)) < 2)
    throw Error("t_total/dt gives fewer than two steps");
}

namespace {

std::size_t step_count(const SimConfig& cfg) {
  return static_cast<std::size_t>(std::llround(cfg.t_total / cfg.dt));
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

double deviation_variance(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double s = 0.0;
  for (double v : x) s += (v - mean) * (v - mean);
  return s / static_cast<double>(x.size());
}

double run_first_order(const LaplacianMatrix& L, const SimConfig& cfg, std::size_t trial) {
  const std::size_t n = L.order();
  const std::size_t steps = step_count(cfg);
  const auto burn = static_cast<std::size_t>(cfg.burn_in * static_cast<double>(steps));
  const double sdt = std::sqrt(cfg.dt);
  auto rng = trial_rng(cfg.seed, trial);
  std::normal_distribution<double> normal;
  std::vector<double> x(n, 0.0), lx(n);
  double acc = 0.0;
  for (std::size_t s = 1; s <= steps; ++s) {
    L.apply_serial(x, lx);
    for (std::size_t i = 0; i < n; ++i) x[i] += -cfg.dt * lx[i] + sdt * normal(rng);
    if (s > burn) acc += deviation_variance(x);
  }
  return acc / static_cast<double>(steps - burn);
}

double run_second_order(const LaplacianMatrix& L, const SimConfig& cfg, std::size_t trial) {
  const std::size_t n = L.order();
  const std::size_t steps = step_count(cfg);
  const auto burn = static_cast<std::size_t>(cfg.burn_in * static_cast<double>(steps));
  const double sdt = std::sqrt(cfg.dt);
  auto rng = trial_rng(cfg.seed, trial);
  std::normal_distribution<double> normal;
  std::vector<double> x1(n, 0.0), x2(n, 0.0), sum(n), lsum(n);
  double acc = 0.0;
  for (std::size_t s = 1; s <= steps; ++s) {
    for (std::size_t i = 0; i < n; ++i) sum[i] = x1[i] + x2[i];
    L.apply_serial(sum, lsum);
    for (std::size_t i = 0; i < n; ++i) {
      x1[i] += cfg.dt * x2[i];
      x2[i] += -cfg.dt * lsum[i] + sdt * normal(rng);
    }
    if (s > burn) acc += deviation_variance(x1);
  }
  return acc / static_cast<double>(steps - burn);
}

using TrialFn = double (*)(const LaplacianMatrix&, const SimConfig&, std::size_t);

SimEstimate aggregate(const std::vector<double>& per_trial, std::size_t steps) {
  // Per-trial values are combined in trial order, so the result does not
  // depend on how trials were scheduled.
  const auto m = static_cast<double>(per_trial.size());
  double sum = 0.0, comp = 0.0;
  for (double v : per_trial) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double mean = sum / m;
  double var = 0.0;
  for (double v : per_trial) var += (v - mean) * (v - mean);
  SimEstimate est;
  est.value = mean;
  est.std_error = per_trial.size() > 1 ? std::sqrt(var / (m - 1.0) / m) : 0.0;
  est.trials_used = per_trial.size();
  est.steps_used = steps;
  return est;
}

SimEstimate run_parallel(const Graph& g, const SimConfig& cfg, TrialFn fn) {
  validate(g, cfg);
  const LaplacianMatrix L(g);
  std::vector<double> per_trial(cfg.trials);
  const auto count = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for num_threads(kernels::thread_count()) schedule(dynamic, 1)
  for (std::int64_t t = 0; t < count; ++t) per_trial[t] = fn(L, cfg, static_cast<std::size_t>(t));
  return aggregate(per_trial, step_count(cfg));
}

SimEstimate run_serial(const Graph& g, const SimConfig& cfg, TrialFn fn) {
  validate(g, cfg);
  const LaplacianMatrix L(g);
  std::vector<double> per_trial(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) per_trial[t] = fn(L, cfg, t);
  return aggregate(per_trial, step_count(cfg));
}

}  // namespace

SimEstimate simulate_first_order(const Graph& g, const SimConfig& cfg) {
  return run_parallel(g, cfg, run_first_order);
}

SimEstimate simulate_first_order_serial(const Graph& g, const SimConfig& cfg) {
  return run_serial(g, cfg, run_first_order);
}

SimEstimate simulate_second_order(const Graph& g, const SimConfig& cfg) {
  return run_parallel(g, cfg, run_second_order);
}

SimEstimate simulate_second_order_serial(const Graph& g, const SimConfig& cfg) {
  return run_serial(g, cfg, run_second_order);
}

}  // namespace coherence
