#pragma once

#include <cstddef>
#include <cstdint>

#include "coherence/graph.hpp"

namespace coherence {

struct SimConfig {
  double dt = 1e-3;
  double t_total = 200.0;
  double burn_in = 0.5;  // fraction of the horizon discarded
  std::size_t trials = 50;
  std::uint64_t seed = 1;
};

struct SimEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t trials_used = 0;
  std::size_t steps_used = 0;  // integration steps per trial
};

/// Largest Laplacian eigenvalue by power iteration.
double largest_eigenvalue(const Graph& g);

/// Checks the config against g; throws with a suggested dt when
/// dt > 0.1 / lambda_max.
void validate(const Graph& g, const SimConfig& cfg);

/// Euler-Maruyama for dx = -L x dt + dW from x = 0. The estimate is the
/// post-burn-in average of (1/N) sum_i (x_i - mean x)^2, averaged over
/// trials; the standard error is taken across trials.
SimEstimate simulate_first_order(const Graph& g, const SimConfig& cfg);
SimEstimate simulate_first_order_serial(const Graph& g, const SimConfig& cfg);

/// dx1 = x2 dt, dx2 = -L (x1 + x2) dt + dW from x1 = x2 = 0; the estimate
/// uses the deviation of x1 from its average.
SimEstimate simulate_second_order(const Graph& g, const SimConfig& cfg);
SimEstimate simulate_second_order_serial(const Graph& g, const SimConfig& cfg);

}  // namespace coherence
