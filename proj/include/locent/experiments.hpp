#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "locent/dynamics.hpp"
#include "locent/localize.hpp"
#include "locent/qstate.hpp"

namespace locent {

/// Produces the state for one sample from its derived seed.
using StateSampler = std::function<PureState(std::uint64_t sample_seed)>;

/// Haar-random states of the given size.
StateSampler haar_sampler(int num_qubits);

/// Seed of sample `index` under master seed `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t index);

/// Records with NLE below this are left out of the relative difference.
inline constexpr double kRelativeDifferenceFloor = 1e-9;

struct DifferenceRecord {
  std::uint64_t seed = 0;
  double le = 0.0;
  double nle = 0.0;
  double diff = 0.0;
  std::optional<double> rel_diff;
};

struct EnsembleSummary {
  int num_qubits = 0;
  int samples = 0;
  double mr = 0.0;
  double md = 0.0;
  double a = 0.0;  // NLE of the state attaining md
  std::uint64_t argmax_seed = 0;
};

struct DifferenceStudy {
  EnsembleSummary summary;
  std::vector<DifferenceRecord> records;  // in sample order
};

DifferenceRecord evaluate_difference(const PureState& state, SitePair pair, std::uint64_t seed,
                                     const OptimizerConfig& config);

/// Max relative and absolute LE - NLE gaps; ties keep the earliest record.
EnsembleSummary summarize_differences(int num_qubits, std::span<const DifferenceRecord> records);

/// Samples run on `threads` workers (0 = auto); the output does not depend on the worker count.
DifferenceStudy run_difference_study(int num_qubits, SitePair pair, int samples, std::uint64_t seed,
                                     const OptimizerConfig& config, int threads = 0,
                                     const StateSampler& sampler = {});

struct MaxDiffState {
  PureState state;
  DifferenceRecord record;
  EnsembleSummary summary;
};

MaxDiffState find_max_diff_state(int num_qubits, SitePair pair, int samples, std::uint64_t seed,
                                 const OptimizerConfig& config, int threads = 0);

struct SweepPoint {
  double time = 0.0;
  double le = 0.0;
  double nle = 0.0;
  double q = 0.0;
};

/// LE, NLE and Q of exp(-iHt)|initial> at `steps` evenly spaced times from t_min to t_max inclusive.
std::vector<SweepPoint> run_time_sweep(const PureState& initial, const IsingChain& chain, SitePair pair,
                                       double t_min, double t_max, int steps, const OptimizerConfig& config,
                                       int threads = 0);

struct SpreadBin {
  double le_low = 0.0;
  double le_high = 0.0;
  int count = 0;
  double min_concurrence = 0.0;
  double max_concurrence = 0.0;
};

/// Bins states by LE and records the extreme concurrences of the occurring
/// branches at each state's LE-optimal basis. Only populated bins are returned.
std::vector<SpreadBin> run_branch_spread_study(int num_qubits, SitePair pair, int samples, double le_bin_width,
                                               std::uint64_t seed, const OptimizerConfig& config, int threads = 0,
                                               const StateSampler& sampler = {});

}  // namespace locent
