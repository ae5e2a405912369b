#pragma once

// Entanglement localized on a pair of sites by projective measurements on all
// other sites.
//
// Each measured site k gets u_k = u_{0,0,alpha_k,beta_k} applied to the state
// before projection onto the computational basis, i.e. the measured basis
// vectors are u_k^dagger |0>, u_k^dagger |1>. The diagonal phases of the full
// four-parameter unitary only multiply branch amplitudes by a phase, so two
// angles per site span every projective measurement.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locent/qstate.hpp"

namespace locent {

enum class Objective { LE, NLE };

std::string to_string(Objective objective);

struct SiteAngles {
  double alpha = 0.0;
  double beta = 0.0;
};

struct MeasurementBasis {
  std::vector<QubitIndex> measured_sites;
  std::vector<SiteAngles> angles;

  /// Computational-basis measurement on every site outside the pair.
  static MeasurementBasis computational(int num_qubits, SitePair pair);

  /// alpha folded into [0, pi/2), beta into [0, 2 pi). Folding alpha by pi/2
  /// swaps the two outcomes of that site.
  MeasurementBasis canonicalized() const;
};

/// Sites outside the pair, ascending.
std::vector<QubitIndex> measured_sites_for(int num_qubits, SitePair pair);

struct BranchOutcome {
  std::string outcome_bits;  // one character per measured site, in basis order
  double probability = 0.0;
  std::optional<PairState> post_pair_state;  // empty when probability < kZeroProbability
  std::optional<double> concurrence;
};

struct OptimizerConfig {
  std::uint64_t seed = 0;
  int restarts = 24;
  int max_evaluations = 2000;  // per restart
  double objective_tolerance = 1e-8;
  double parameter_tolerance = 1e-6;
  int threads = 1;  // restarts evaluated in parallel; 0 = auto
};

struct OptimizerReport {
  int restarts = 0;
  int evaluations = 0;
  int best_restart = 0;
};

struct LocalizationResult {
  double value = 0.0;
  MeasurementBasis basis;
  std::vector<BranchOutcome> branches;
  Objective objective = Objective::LE;
  OptimizerReport optimizer_report;
};

/// All 2^(n-2) joint outcomes of measuring the non-pair sites in the given basis.
std::vector<BranchOutcome> enumerate_branches(const PureState& state, SitePair pair,
                                              const MeasurementBasis& basis);

/// Probability-weighted mean concurrence.
double le_objective(std::span<const BranchOutcome> branches);
/// Smallest concurrence among occurring branches.
double nle_objective(std::span<const BranchOutcome> branches);
double objective_value(Objective objective, std::span<const BranchOutcome> branches);

/// Allocation-free evaluation of either objective for a flat angle vector
/// (alpha_1, beta_1, alpha_2, beta_2, ...) over the measured sites. Holds
/// scratch space, so one instance per thread.
class BranchEvaluator {
 public:
  BranchEvaluator(const PureState& state, SitePair pair);

  double operator()(Objective objective, std::span<const double> angles);
  std::size_t num_parameters() const { return 2 * measured_masks_.size(); }
  const std::vector<QubitIndex>& measured_sites() const { return measured_sites_; }

 private:
  std::vector<Complex> original_;
  std::vector<Complex> scratch_;
  std::vector<QubitIndex> measured_sites_;
  std::vector<std::size_t> measured_masks_;
  std::size_t mask_first_ = 0;
  std::size_t mask_second_ = 0;
};

MeasurementBasis basis_from_angles(std::vector<QubitIndex> sites, std::span<const double> angles);

/// Seeded multi-start Nelder-Mead maximization of the objective over the
/// measurement angles. Restart r starts from the r-th point of a randomly
/// shifted Halton sequence, so a run with more restarts extends a run with
/// fewer.
LocalizationResult maximize(const PureState& state, SitePair pair, Objective objective,
                            const OptimizerConfig& config = {});

/// Exhaustive product grid: `resolution` values of alpha in [0, pi/2) and of
/// beta in [0, 2 pi) per measured site. Cost is resolution^(2(n-2)).
double maximize_grid_oracle(const PureState& state, SitePair pair, Objective objective, int resolution);

}  // namespace locent
