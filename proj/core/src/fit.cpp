#include "roughflow/fit.hpp"

#include <cmath>

#include "roughflow/errors.hpp"

namespace roughflow {

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points,
                       FitModel model) {
  if (points.size() < 3)
    throw NumericalError("fit_scaling: need at least 3 points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].first <= points[i - 1].first)
      throw NumericalError("fit_scaling: abscissa must be strictly increasing");

  std::vector<std::pair<double, double>> p = points;
  if (model == FitModel::Power)
    for (auto& [x, y] : p) {
      if (x <= 0 || y <= 0)
        throw NumericalError("fit_scaling: power model needs positive data");
      x = std::log(x);
      y = std::log(y);
    }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(p.size());
  for (const auto& [x, y] : p) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double d = n * sxx - sx * sx;
  if (std::abs(d) < 1e-14 * std::max(1.0, sxx))
    throw NumericalError("fit_scaling: degenerate abscissa range");

  ScalingFit fit;
  fit.slope = (n * sxy - sx * sy) / d;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (const auto& [x, y] : p) {
    double r = y - (fit.slope * x + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);

  if (model == FitModel::Psi) {
    for (const auto& [x, y] : points) fit.psi_ratios.push_back(y / x);
    int down = 0;
    for (std::size_t i = 1; i < fit.psi_ratios.size(); ++i)
      if (fit.psi_ratios[i] <= fit.psi_ratios[i - 1] * (1 + 1e-12)) ++down;
    fit.sublinear = down >= int(fit.psi_ratios.size()) - 1 &&
                    fit.psi_ratios.back() < fit.psi_ratios.front();
  }
  return fit;
}

}  // namespace roughflow
