#ifndef OPPENHEIM_STATS_HPP
#define OPPENHEIM_STATS_HPP

#include <functional>
#include <span>
#include <vector>

namespace oppenheim {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the fit.
  double residual = 0.0;
  std::size_t n = 0;
};

/// Ordinary least squares y = slope * x + intercept. Needs at least two
/// distinct x values.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> v);
/// Linear-interpolated quantile (type 7), q in [0, 1].
double quantile(std::vector<double> v, double q);
double median(std::vector<double> v);

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

/// n values geometrically spaced from `start` with ratio `ratio`.
std::vector<double> geometric_ladder(double start, double ratio, std::size_t count);

}  // namespace oppenheim

#endif  // OPPENHEIM_STATS_HPP
