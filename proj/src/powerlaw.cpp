#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include "coherence/graph.hpp"

namespace coherence {

namespace {

double hurwitz_zeta(double s, double q) {
  // GSL's default handler aborts the process.
  [[maybe_unused]] static auto* previous = gsl_set_error_handler_off();
  gsl_sf_result r;
  if (gsl_sf_hzeta_e(s, q, &r) != GSL_SUCCESS) throw Error("Hurwitz zeta evaluation failed");
  return r.val;
}

struct TailFit {
  double gamma;
  double ks;
};

// `tail` is sorted ascending and every entry is >= xmin.
TailFit fit_tail(std::span<const std::size_t> tail, std::size_t xmin, const PowerLawConfig& cfg) {
  const auto n = static_cast<double>(tail.size());
  double log_sum = 0.0;
  for (auto d : tail) log_sum += std::log(static_cast<double>(d));
  const auto xm = static_cast<double>(xmin);

  const auto neg_log_likelihood = [&](double gamma) {
    return n * std::log(hurwitz_zeta(gamma, xm)) + gamma * log_sum;
  };
  const auto [gamma, nll] =
      boost::math::tools::brent_find_minima(neg_log_likelihood, cfg.gamma_lo, cfg.gamma_hi, 40);
  (void)nll;

  // KS distance on the survival function P(X >= v) at each distinct value.
  const double z0 = hurwitz_zeta(gamma, xm);
  double ks = 0.0;
  for (std::size_t i = 0; i < tail.size();) {
    const std::size_t v = tail[i];
    const double empirical = (n - static_cast<double>(i)) / n;
    const double model = hurwitz_zeta(gamma, static_cast<double>(v)) / z0;
    ks = std::max(ks, std::abs(empirical - model));
    while (i < tail.size() && tail[i] == v) ++i;
  }
  return {gamma, ks};
}

}  // namespace

PowerLawFit powerlaw_exponent(std::span<const std::size_t> degrees, const PowerLawConfig& config) {
  std::vector<std::size_t> sorted;
  sorted.reserve(degrees.size());
  for (auto d : degrees)
    if (d > 0) sorted.push_back(d);
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() || sorted.front() == sorted.back()) throw Error("degenerate degree sequence");

  PowerLawFit best;
  bool have = false;
  for (std::size_t i = 0; i < sorted.size();) {
    const std::size_t xmin = sorted[i];
    const std::span<const std::size_t> tail(sorted.data() + i, sorted.size() - i);
    if (tail.size() < config.min_tail) break;
    // A tail made of a single value carries no slope information.
    if (tail.front() == tail.back()) break;
    const auto fit = fit_tail(tail, xmin, config);
    if (!have || fit.ks < best.ks_distance) {
      best = {fit.gamma, xmin, fit.ks, tail.size()};
      have = true;
    }
    while (i < sorted.size() && sorted[i] == xmin) ++i;
  }
  if (!have) throw Error("too few degrees above any candidate xmin");
  return best;
}

}  // namespace coherence
