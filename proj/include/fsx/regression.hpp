#pragma once

#include <cmath>
#include <vector>

#include "fsx/errors.hpp"

namespace fsx {

/// Ordinary least squares y = intercept + slope x; residual is the RMS of the fit residuals.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  std::size_t points = 0;
};

inline LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size())
    throw ParameterError("regression needs equally many x and y values");
  if (x.size() < 2)
    throw ParameterError("regression needs at least two points");
  const double n = double(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0)
    throw ParameterError("regression needs at least two distinct x values");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  f.points = x.size();
  return f;
}

} // namespace fsx
