#include "locent/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "locent/errors.hpp"

namespace locent {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

// Vertices live in one flat buffer; `order` ranks them best (lowest, since
// values are negated) to worst.
class Simplex {
 public:
  explicit Simplex(std::size_t dim) : dim_(dim), coords_((dim + 1) * dim), values_(dim + 1), order_(dim + 1) {}

  std::span<double> vertex(std::size_t rank) { return {coords_.data() + order_[rank] * dim_, dim_}; }
  double value(std::size_t rank) const { return values_[order_[rank]]; }
  void set_value(std::size_t rank, double v) { values_[order_[rank]] = v; }

  void sort() {
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](auto i, auto j) { return values_[i] < values_[j]; });
  }

  // Re-rank after only the worst vertex changed.
  void reinsert_worst() {
    std::size_t k = dim_;
    while (k > 0 && values_[order_[k]] < values_[order_[k - 1]]) {
      std::swap(order_[k], order_[k - 1]);
      --k;
    }
  }

  double diameter() {
    double d = 0.0;
    const auto best = vertex(0);
    for (std::size_t r = 1; r <= dim_; ++r) {
      const auto v = vertex(r);
      for (std::size_t i = 0; i < dim_; ++i) d = std::max(d, std::abs(v[i] - best[i]));
    }
    return d;
  }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> values_;
  std::vector<std::size_t> order_;
};

}  // namespace

NelderMeadResult nelder_mead_maximize(const std::function<double(std::span<const double>)>& objective,
                                      std::span<const double> start, std::span<const double> steps,
                                      const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0 || steps.size() != dim) throw InputError("Nelder-Mead needs matching non-empty start and steps");

  int evaluations = 0;
  auto eval = [&](std::span<const double> x) {
    ++evaluations;
    const double f = objective(x);
    if (!std::isfinite(f)) throw NumericalError("objective returned a non-finite value");
    return -f;
  };

  Simplex s(dim);
  std::vector<double> center(start.begin(), start.end());
  auto build = [&](double scale) {
    for (std::size_t r = 0; r <= dim; ++r) {
      auto v = s.vertex(r);
      std::copy(center.begin(), center.end(), v.begin());
      if (r > 0) v[r - 1] += steps[r - 1] * scale;
      s.set_value(r, eval(v));
    }
    s.sort();
  };

  std::vector<double> centroid(dim);
  std::vector<double> reflected(dim);
  std::vector<double> trial(dim);
  auto along = [&](double t, std::vector<double>& out) {
    const auto worst = s.vertex(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = centroid[i] + t * (worst[i] - centroid[i]);
  };
  auto replace_worst = [&](const std::vector<double>& x, double v) {
    std::copy(x.begin(), x.end(), s.vertex(dim).begin());
    s.set_value(dim, v);
    s.reinsert_worst();
  };

  build(1.0);
  bool converged = false;
  int rebuilds = 0;
  double value_at_rebuild = 0.0;

  while (evaluations < options.max_evaluations) {
    if (s.value(dim) - s.value(0) <= options.objective_tolerance && s.diameter() <= options.parameter_tolerance) {
      const bool stalled = rebuilds > 0 && s.value(0) > value_at_rebuild - options.objective_tolerance;
      if (rebuilds >= options.max_rebuilds || stalled) {
        converged = true;
        break;
      }
      value_at_rebuild = s.value(0);
      const auto best = s.vertex(0);
      std::copy(best.begin(), best.end(), center.begin());
      ++rebuilds;
      build(std::pow(0.25, rebuilds));
      continue;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t r = 0; r < dim; ++r) {
      const auto v = s.vertex(r);
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += v[i];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    along(-kReflect, reflected);
    const double fr = eval(reflected);
    if (fr < s.value(0)) {
      along(-kReflect * kExpand, trial);
      const double fe = eval(trial);
      if (fe < fr) {
        replace_worst(trial, fe);
      } else {
        replace_worst(reflected, fr);
      }
    } else if (fr < s.value(dim - 1)) {
      replace_worst(reflected, fr);
    } else {
      const bool outside = fr < s.value(dim);
      along(outside ? -kReflect * kContract : kContract, trial);
      const double fc = eval(trial);
      if (fc < std::min(fr, s.value(dim))) {
        replace_worst(trial, fc);
      } else {
        const auto best = s.vertex(0);
        for (std::size_t r = 1; r <= dim; ++r) {
          auto v = s.vertex(r);
          for (std::size_t i = 0; i < dim; ++i) v[i] = best[i] + kShrink * (v[i] - best[i]);
          s.set_value(r, eval(v));
        }
        s.sort();
      }
    }
  }

  const auto best = s.vertex(0);
  return {std::vector<double>(best.begin(), best.end()), -s.value(0), evaluations, converged};
}

}  // namespace locent
