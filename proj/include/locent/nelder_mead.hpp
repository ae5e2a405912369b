#pragma once

#include <functional>
#include <span>
#include <vector>

namespace locent {

struct NelderMeadOptions {
  int max_evaluations = 2000;
  double objective_tolerance = 1e-8;
  double parameter_tolerance = 1e-6;
  /// Times the simplex is rebuilt around the incumbent after convergence;
  /// a rebuild that brings no improvement ends the search.
  int max_rebuilds = 2;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free maximization by the Nelder-Mead simplex method. The initial
/// simplex is start plus one axis step per coordinate.
NelderMeadResult nelder_mead_maximize(const std::function<double(std::span<const double>)>& objective,
                                      std::span<const double> start, std::span<const double> steps,
                                      const NelderMeadOptions& options);

}  // namespace locent
