#include "locent/localize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "locent/detail/kernels.hpp"
#include "locent/entanglement.hpp"
#include "locent/errors.hpp"
#include "locent/nelder_mead.hpp"
#include "locent/parallel.hpp"
#include "locent/seeding.hpp"

namespace locent {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAlphaPeriod = kPi / 2.0;
constexpr double kBetaPeriod = 2.0 * kPi;
constexpr double kAlphaStep = kPi / 8.0;
constexpr double kBetaStep = kPi / 4.0;

constexpr std::array<int, 16> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double fold(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

void check_basis(int n, SitePair pair, const MeasurementBasis& basis) {
  if (basis.angles.size() != basis.measured_sites.size()) {
    throw InputError("measurement basis needs one angle pair per measured site");
  }
  auto expected = measured_sites_for(n, pair);
  auto given = basis.measured_sites;
  std::sort(given.begin(), given.end());
  if (given != expected) throw InputError("measurement basis must cover exactly the sites outside the pair");
}

}  // namespace

std::string to_string(Objective objective) { return objective == Objective::LE ? "LE" : "NLE"; }

MeasurementBasis MeasurementBasis::computational(int num_qubits, SitePair pair) {
  MeasurementBasis basis;
  basis.measured_sites = measured_sites_for(num_qubits, pair);
  basis.angles.assign(basis.measured_sites.size(), SiteAngles{});
  return basis;
}

MeasurementBasis MeasurementBasis::canonicalized() const {
  MeasurementBasis out = *this;
  for (auto& a : out.angles) {
    // R(alpha + pi) = -R(alpha); R(alpha + pi/2) swaps the outcome rows up to phases.
    a.alpha = fold(a.alpha, kAlphaPeriod);
    a.beta = fold(a.beta, kBetaPeriod);
  }
  return out;
}

std::vector<QubitIndex> measured_sites_for(int num_qubits, SitePair pair) {
  check_pair(num_qubits, pair);
  std::vector<QubitIndex> sites;
  for (int k = 1; k <= num_qubits; ++k) {
    const QubitIndex q(k);
    if (q != pair.first && q != pair.second) sites.push_back(q);
  }
  return sites;
}

MeasurementBasis basis_from_angles(std::vector<QubitIndex> sites, std::span<const double> angles) {
  if (angles.size() != 2 * sites.size()) throw InputError("expected two angles per measured site");
  MeasurementBasis basis;
  basis.measured_sites = std::move(sites);
  for (std::size_t k = 0; k < basis.measured_sites.size(); ++k) {
    basis.angles.push_back({angles[2 * k], angles[2 * k + 1]});
  }
  return basis;
}

std::vector<BranchOutcome> enumerate_branches(const PureState& state, SitePair pair,
                                              const MeasurementBasis& basis) {
  const int n = state.num_qubits();
  check_basis(n, pair, basis);
  PureState rotated = state;
  for (std::size_t k = 0; k < basis.measured_sites.size(); ++k) {
    const SingleQubitUnitary u{0.0, 0.0, basis.angles[k].alpha, basis.angles[k].beta};
    rotated = apply_local_unitary(rotated, basis.measured_sites[k], u);
  }

  const std::size_t m = basis.measured_sites.size();
  const auto pair_masks = site_mask(n, pair.first) | site_mask(n, pair.second);
  std::vector<BranchOutcome> branches;
  branches.reserve(std::size_t{1} << m);
  for (std::size_t label = 0; label < (std::size_t{1} << m); ++label) {
    BranchOutcome branch;
    std::vector<MeasuredSite> measured;
    std::size_t base = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const int bit = static_cast<int>((label >> (m - 1 - k)) & 1U);
      branch.outcome_bits.push_back(static_cast<char>('0' + bit));
      measured.push_back({basis.measured_sites[k], bit});
      if (bit) base |= site_mask(n, basis.measured_sites[k]);
    }
    for (std::size_t i = 0; i < rotated.dimension(); ++i) {
      if ((i & ~pair_masks) == base) branch.probability += std::norm(rotated[i]);
    }
    if (branch.probability >= kZeroProbability) {
      branch.post_pair_state = reduce_to_pair(rotated, measured);
      branch.concurrence = concurrence(*branch.post_pair_state);
    }
    branches.push_back(std::move(branch));
  }
  return branches;
}

double le_objective(std::span<const BranchOutcome> branches) {
  double sum = 0.0;
  for (const auto& b : branches) {
    if (b.concurrence) sum += b.probability * *b.concurrence;
  }
  return sum;
}

double nle_objective(std::span<const BranchOutcome> branches) {
  double low = std::numeric_limits<double>::infinity();
  for (const auto& b : branches) {
    if (b.concurrence) low = std::min(low, *b.concurrence);
  }
  if (!std::isfinite(low)) throw NumericalError("no measurement branch occurs");
  return low;
}

double objective_value(Objective objective, std::span<const BranchOutcome> branches) {
  return objective == Objective::LE ? le_objective(branches) : nle_objective(branches);
}

BranchEvaluator::BranchEvaluator(const PureState& state, SitePair pair)
    : original_(state.amplitudes().begin(), state.amplitudes().end()),
      scratch_(original_.size()),
      measured_sites_(measured_sites_for(state.num_qubits(), pair)),
      mask_first_(site_mask(state.num_qubits(), pair.first)),
      mask_second_(site_mask(state.num_qubits(), pair.second)) {
  if (measured_sites_.empty()) throw InputError("at least one site must be measured");
  for (auto q : measured_sites_) measured_masks_.push_back(site_mask(state.num_qubits(), q));
}

double BranchEvaluator::operator()(Objective objective, std::span<const double> angles) {
  if (angles.size() != num_parameters()) throw InputError("wrong number of measurement angles");
  std::copy(original_.begin(), original_.end(), scratch_.begin());
  for (std::size_t k = 0; k < measured_masks_.size(); ++k) {
    const double c = std::cos(angles[2 * k]);
    const double s = std::sin(angles[2 * k]);
    const Complex phase(std::cos(angles[2 * k + 1]), std::sin(angles[2 * k + 1]));
    detail::apply_matrix_in_place(scratch_, measured_masks_[k], {c, -s * std::conj(phase), s * phase, c});
  }
  const std::size_t pair_mask = mask_first_ | mask_second_;
  const std::size_t hi = std::max(mask_first_, mask_second_);
  const std::size_t lo = std::min(mask_first_, mask_second_);
  double weighted = 0.0;
  double low = std::numeric_limits<double>::infinity();
  for (std::size_t base = 0; base < scratch_.size(); ++base) {
    if (base & pair_mask) continue;
    const Complex a = scratch_[base | hi | lo];
    const Complex b = scratch_[base | hi];
    const Complex c = scratch_[base | lo];
    const Complex d = scratch_[base];
    const double p = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    if (p < kZeroProbability) continue;
    const double pc = 2.0 * std::abs(a * d - b * c);
    weighted += pc;
    low = std::min(low, pc / p);
  }
  return objective == Objective::LE ? weighted : low;
}

LocalizationResult maximize(const PureState& state, SitePair pair, Objective objective,
                            const OptimizerConfig& config) {
  if (config.restarts < 1) throw InputError("need at least one optimizer restart");
  BranchEvaluator probe(state, pair);
  const std::size_t dim = probe.num_parameters();
  if (dim > 2 * kPrimes.size()) throw InputError("too many measured sites for the start sequence");

  std::mt19937_64 rng(splitmix64(config.seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shift(dim);
  for (auto& s : shift) s = unit(rng);

  std::vector<double> steps(dim);
  for (std::size_t i = 0; i < dim; ++i) steps[i] = (i % 2 == 0) ? kAlphaStep : kBetaStep;

  NelderMeadOptions options;
  options.max_evaluations = config.max_evaluations;
  options.objective_tolerance = config.objective_tolerance;
  options.parameter_tolerance = config.parameter_tolerance;

  const auto restarts = static_cast<std::size_t>(config.restarts);
  std::vector<NelderMeadResult> runs(restarts);
  parallel_for(restarts, resolve_thread_count(config.threads), [&](std::size_t r) {
    std::vector<double> start(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const double u = std::fmod(radical_inverse(r + 1, kPrimes[i]) + shift[i], 1.0);
      start[i] = u * ((i % 2 == 0) ? kAlphaPeriod : kBetaPeriod);
    }
    BranchEvaluator evaluator(state, pair);
    runs[r] = nelder_mead_maximize([&](std::span<const double> x) { return evaluator(objective, x); }, start,
                                   steps, options);
  });

  LocalizationResult result;
  result.objective = objective;
  result.optimizer_report.restarts = config.restarts;
  std::size_t best = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    result.optimizer_report.evaluations += runs[r].evaluations;
    if (runs[r].value > runs[best].value) best = r;
  }
  result.optimizer_report.best_restart = static_cast<int>(best);
  result.basis = basis_from_angles(probe.measured_sites(), runs[best].x).canonicalized();
  result.branches = enumerate_branches(state, pair, result.basis);
  result.value = objective_value(objective, result.branches);
  if (std::abs(result.value - runs[best].value) > 1e-8) {
    throw NumericalError("optimized objective could not be reproduced from its branches");
  }
  return result;
}

double maximize_grid_oracle(const PureState& state, SitePair pair, Objective objective, int resolution) {
  if (resolution < 1) throw InputError("grid resolution must be positive");
  BranchEvaluator evaluator(state, pair);
  const std::size_t dim = evaluator.num_parameters();
  std::vector<int> digits(dim, 0);
  std::vector<double> x(dim, 0.0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] = digits[i] * ((i % 2 == 0) ? kAlphaPeriod : kBetaPeriod) / resolution;
    }
    best = std::max(best, evaluator(objective, x));
    std::size_t i = 0;
    while (i < dim && ++digits[i] == resolution) digits[i++] = 0;
    if (i == dim) break;
  }
  return best;
}

}  // namespace locent
