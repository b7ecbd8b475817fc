#pragma once

#include <utility>
#include <vector>

namespace roughflow {

enum class FitModel {
  LinearInLog,  // y = slope * x + intercept with y already log-scaled by caller
  Power,        // log y = slope * log x + intercept
  Psi,          // linear fit of y vs x plus the y/x trend (sublinearity probe)
};

struct ScalingFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;                    // rms residual in fit space
  std::vector<double> psi_ratios;         // y_i / x_i (Psi mode)
  bool sublinear = false;                 // y/x trend decreasing (Psi mode)
};

// Plain least squares; x must be strictly increasing, >= 3 points.
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points,
                       FitModel model);

}  // namespace roughflow
