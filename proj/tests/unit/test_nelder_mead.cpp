#include <doctest.h>

#include <cmath>
#include <vector>

#include "locent/errors.hpp"
#include "locent/nelder_mead.hpp"

using namespace locent;

TEST_CASE("Nelder-Mead finds the peak of a smooth concave function") {
  auto f = [](std::span<const double> x) {
    return -(x[0] - 1.0) * (x[0] - 1.0) - 3.0 * (x[1] + 0.5) * (x[1] + 0.5) + 2.0;
  };
  const std::vector<double> start{0.0, 0.0};
  const std::vector<double> steps{0.5, 0.5};
  const auto r = nelder_mead_maximize(f, start, steps, {});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(-0.5).epsilon(1e-5));
}

TEST_CASE("Nelder-Mead handles a kinked max-min objective") {
  auto f = [](std::span<const double> x) { return std::min(1.0 - std::abs(x[0] - 0.3), 1.0 - std::abs(x[1] + 0.2)); };
  const std::vector<double> start{1.0, 1.0};
  const std::vector<double> steps{0.4, 0.4};
  const auto r = nelder_mead_maximize(f, start, steps, {});
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Nelder-Mead respects the evaluation budget and never loses the start value") {
  int calls = 0;
  auto rosen = [&](std::span<const double> x) {
    ++calls;
    return -(100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2));
  };
  const std::vector<double> start{-1.2, 1.0};
  const std::vector<double> steps{0.1, 0.1};
  NelderMeadOptions opts;
  opts.max_evaluations = 50;
  const auto r = nelder_mead_maximize(rosen, start, steps, opts);
  CHECK(r.evaluations == calls);
  CHECK(r.evaluations <= 50 + 3);
  CHECK(r.value >= rosen(start));
}

TEST_CASE("Nelder-Mead rejects bad input") {
  auto f = [](std::span<const double>) { return 0.0; };
  const std::vector<double> empty;
  CHECK_THROWS_AS(nelder_mead_maximize(f, empty, empty, {}), InputError);
  auto nan = [](std::span<const double>) { return std::nan(""); };
  const std::vector<double> one{0.0};
  CHECK_THROWS_AS(nelder_mead_maximize(nan, one, one, {}), NumericalError);
}
