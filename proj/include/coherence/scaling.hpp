#pragma once

#include <span>

namespace coherence {

/// Least-squares slope of log y against log x. Needs at least three
/// points, all positive.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace coherence
