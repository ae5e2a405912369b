#include "locent/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "locent/entanglement.hpp"
#include "locent/errors.hpp"
#include "locent/parallel.hpp"
#include "locent/seeding.hpp"

namespace locent {

namespace {

// Inner maximizations run serially; parallelism lives at the sample level.
OptimizerConfig serial(OptimizerConfig config) {
  config.threads = 1;
  return config;
}

}  // namespace

StateSampler haar_sampler(int num_qubits) {
  return [num_qubits](std::uint64_t s) { return haar_random_state(num_qubits, s); };
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) { return derive_seed(seed, index); }

DifferenceRecord evaluate_difference(const PureState& state, SitePair pair, std::uint64_t seed,
                                     const OptimizerConfig& config) {
  DifferenceRecord r;
  r.seed = seed;
  r.le = maximize(state, pair, Objective::LE, config).value;
  r.nle = maximize(state, pair, Objective::NLE, config).value;
  r.diff = r.le - r.nle;
  if (r.nle >= kRelativeDifferenceFloor) r.rel_diff = r.diff / r.nle;
  return r;
}

EnsembleSummary summarize_differences(int num_qubits, std::span<const DifferenceRecord> records) {
  EnsembleSummary s;
  s.num_qubits = num_qubits;
  s.samples = static_cast<int>(records.size());
  if (records.empty()) return s;
  std::size_t argmax = 0;
  double mr = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].diff > records[argmax].diff) argmax = i;
    if (records[i].rel_diff) mr = std::max(mr, *records[i].rel_diff);
  }
  s.md = records[argmax].diff;
  s.a = records[argmax].nle;
  s.argmax_seed = records[argmax].seed;
  s.mr = std::isfinite(mr) ? mr : 0.0;
  return s;
}

DifferenceStudy run_difference_study(int num_qubits, SitePair pair, int samples, std::uint64_t seed,
                                     const OptimizerConfig& config, int threads, const StateSampler& sampler) {
  if (samples < 1) throw InputError("need at least one sample");
  check_pair(num_qubits, pair);
  const auto make = sampler ? sampler : haar_sampler(num_qubits);
  const auto inner = serial(config);
  DifferenceStudy study;
  study.records.resize(static_cast<std::size_t>(samples));
  parallel_for(study.records.size(), resolve_thread_count(threads), [&](std::size_t i) {
    const auto s = sample_seed(seed, i);
    study.records[i] = evaluate_difference(make(s), pair, s, inner);
  });
  study.summary = summarize_differences(num_qubits, study.records);
  return study;
}

MaxDiffState find_max_diff_state(int num_qubits, SitePair pair, int samples, std::uint64_t seed,
                                 const OptimizerConfig& config, int threads) {
  auto study = run_difference_study(num_qubits, pair, samples, seed, config, threads);
  auto it = std::find_if(study.records.begin(), study.records.end(),
                         [&](const DifferenceRecord& r) { return r.seed == study.summary.argmax_seed; });
  return {haar_random_state(num_qubits, study.summary.argmax_seed), *it, study.summary};
}

std::vector<SweepPoint> run_time_sweep(const PureState& initial, const IsingChain& chain, SitePair pair,
                                       double t_min, double t_max, int steps, const OptimizerConfig& config,
                                       int threads) {
  if (steps < 2) throw InputError("a sweep needs at least two steps");
  if (!(t_max > t_min)) throw InputError("sweep needs t_max > t_min");
  check_pair(initial.num_qubits(), pair);
  const auto inner = serial(config);
  std::vector<SweepPoint> points(static_cast<std::size_t>(steps));
  parallel_for(points.size(), resolve_thread_count(threads), [&](std::size_t i) {
    const double t = (i + 1 == points.size()) ? t_max : t_min + (t_max - t_min) * static_cast<double>(i) / (steps - 1);
    const auto state = evolve(chain, initial, t);
    points[i] = {t, maximize(state, pair, Objective::LE, inner).value,
                 maximize(state, pair, Objective::NLE, inner).value, classical_correlation_q(state, pair).q};
  });
  return points;
}

std::vector<SpreadBin> run_branch_spread_study(int num_qubits, SitePair pair, int samples, double le_bin_width,
                                               std::uint64_t seed, const OptimizerConfig& config, int threads,
                                               const StateSampler& sampler) {
  if (samples < 1) throw InputError("need at least one sample");
  if (!(le_bin_width > 0.0)) throw InputError("LE bin width must be positive");
  check_pair(num_qubits, pair);
  const auto make = sampler ? sampler : haar_sampler(num_qubits);
  const auto inner = serial(config);

  struct Sample {
    double le;
    double min_c;
    double max_c;
  };
  std::vector<Sample> results(static_cast<std::size_t>(samples));
  parallel_for(results.size(), resolve_thread_count(threads), [&](std::size_t i) {
    const auto result = maximize(make(sample_seed(seed, i)), pair, Objective::LE, inner);
    Sample s{result.value, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& b : result.branches) {
      if (!b.concurrence) continue;
      s.min_c = std::min(s.min_c, *b.concurrence);
      s.max_c = std::max(s.max_c, *b.concurrence);
    }
    results[i] = s;
  });

  std::map<long, SpreadBin> bins;
  for (const auto& s : results) {
    const long k = static_cast<long>(std::floor(s.le / le_bin_width));
    auto [it, fresh] = bins.try_emplace(k);
    auto& bin = it->second;
    if (fresh) {
      bin.le_low = k * le_bin_width;
      bin.le_high = (k + 1) * le_bin_width;
      bin.min_concurrence = s.min_c;
      bin.max_concurrence = s.max_c;
    }
    ++bin.count;
    bin.min_concurrence = std::min(bin.min_concurrence, s.min_c);
    bin.max_concurrence = std::max(bin.max_concurrence, s.max_c);
  }
  std::vector<SpreadBin> out;
  for (auto& [k, bin] : bins) out.push_back(bin);
  return out;
}

}  // namespace locent
