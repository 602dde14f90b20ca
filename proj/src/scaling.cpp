#include "coherence/scaling.hpp"

#include <cmath>
#include <string>

#include "coherence/error.hpp"

namespace coherence {

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("slope fit: x and y differ in length");
  if (x.size() < 3)
    throw Error("insufficient points for slope fit (need at least 3, got " + std::to_string(x.size()) + ")");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw Error("slope fit needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw Error("slope fit needs at least two distinct sizes");
  return sxy / sxx;
}

}  // namespace coherence
