// End-to-end acceptance checks. Usage: acceptance [criterion numbers...]
// With no arguments every criterion runs. Each prints one PASS/FAIL line;
// the exit status is nonzero if any selected criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "locent/cli.hpp"
#include "locent/dynamics.hpp"
#include "locent/entanglement.hpp"
#include "locent/experiments.hpp"
#include "locent/localize.hpp"
#include "locent/qstate.hpp"
#include "locent/seeding.hpp"
#include "locent/state_io.hpp"

using namespace locent;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

SitePair pair_of(int a, int b) { return {QubitIndex(a), QubitIndex(b)}; }

Outcome ghz_golden() {
  const auto start = std::chrono::steady_clock::now();
  const auto state = ghz(3);
  const auto pair = pair_of(1, 2);
  const auto le = maximize(state, pair, Objective::LE);
  const auto nle = maximize(state, pair, Objective::NLE);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool bell = true;
  for (const auto* r : {&le, &nle}) {
    bell = bell && r->branches.size() == 2;
    for (const auto& b : r->branches) {
      bell = bell && b.concurrence && std::abs(*b.concurrence - 1.0) <= 1e-6 && std::abs(b.probability - 0.5) <= 1e-6;
    }
  }
  const bool pass = std::abs(le.value - 1.0) <= 1e-6 && std::abs(nle.value - 1.0) <= 1e-6 && bell && seconds < 1.0;
  return {pass, fmt("LE=%.9f NLE=%.9f bell_branches=%s runtime=%.3fs", le.value, nle.value, bell ? "yes" : "no",
                    seconds)};
}

Outcome inequality_suite() {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = true;
  for (int n : {3, 4, 5}) {
    const auto study = run_difference_study(n, pair_of(1, n), 1000, 1000 + static_cast<std::uint64_t>(n), {});
    double worst = std::numeric_limits<double>::infinity();
    int violations = 0;
    for (const auto& r : study.records) {
      worst = std::min(worst, r.le - r.nle);
      if (r.le < r.nle - 1e-6) ++violations;
    }
    pass = pass && violations == 0;
    detail += fmt("n=%d min(LE-NLE)=%.3g violations=%d; ", n, worst, violations);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  pass = pass && seconds < 600.0;
  return {pass, detail + fmt("runtime=%.0fs", seconds)};
}

Outcome table_reproduction() {
  const auto s3 = run_difference_study(3, pair_of(1, 3), 5000, 1, {}).summary;
  const auto s4 = run_difference_study(4, pair_of(1, 4), 5000, 1, {}).summary;
  const bool pass = s3.md <= 0.05 && s4.md >= 0.05;
  return {pass, fmt("n=3 MD=%.4f (<= 0.05) MR=%.4f A=%.4f; n=4 MD=%.4f (>= 0.05) MR=%.4f A=%.4f", s3.md, s3.mr, s3.a,
                    s4.md, s4.mr, s4.a)};
}

Outcome ordering_check() {
  constexpr int kSamples = 1000;
  int ordered = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    double md[6] = {};
    for (int n : {3, 4, 5}) md[n] = run_difference_study(n, pair_of(1, n), kSamples, seed, {}).summary.md;
    const bool ok = md[5] >= md[4] && md[4] >= md[3];
    ordered += ok ? 1 : 0;
    detail += fmt("seed %llu: %.4f/%.4f/%.4f%s; ", static_cast<unsigned long long>(seed), md[3], md[4], md[5],
                  ok ? "" : " (out of order)");
  }
  return {ordered >= 4, detail + fmt("ordered in %d of 5 (need 4), %d samples each", ordered, kSamples)};
}

Outcome figure_sweep() {
  const auto found = find_max_diff_state(4, pair_of(1, 4), 5000, cli::kDefaultMaxDiffSeed, {});
  const auto points = run_time_sweep(found.state, IsingChain(4), pair_of(1, 4), -0.5, 0.5, 51, {});
  double q_excess = -std::numeric_limits<double>::infinity();
  double nle_excess = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    q_excess = std::max(q_excess, p.q - p.nle);
    nle_excess = std::max(nle_excess, p.nle - p.le);
  }
  std::string fixture = "fixture missing";
  const auto fixture_path = std::filesystem::path(LOCENT_DATA_DIR) / "maxdiff4.json";
  if (std::filesystem::exists(fixture_path)) {
    const auto stored = load_state(fixture_path);
    double e = 0.0;
    for (std::size_t i = 0; i < stored.dimension(); ++i) e = std::max(e, std::abs(stored[i] - found.state[i]));
    fixture = fmt("fixture max|diff|=%.2g", e);
  }
  const bool pass = points.size() == 51 && q_excess <= 1e-3 && nle_excess <= 1e-6;
  return {pass, fmt("state seed %llu LE=%.4f NLE=%.4f; max(q-nle)=%.3g max(nle-le)=%.3g; %s",
                    static_cast<unsigned long long>(found.record.seed), found.record.le, found.record.nle, q_excess,
                    nle_excess, fixture.c_str())};
}

Outcome q_oracle() {
  double worst = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    const auto state = haar_random_state(4, derive_seed(6, i));
    const auto pair = pair_of(1, 4);
    worst = std::max(worst, std::abs(classical_correlation_q(state, pair).q - classical_correlation_q_grid(state, pair, 180)));
  }
  return {worst <= 2e-3, fmt("max |Q_svd - Q_grid(1 deg)| = %.3g over 200 states (tol 2e-3)", worst)};
}

Outcome concurrence_oracle() {
  double worst = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto pair = PairState::from_register(haar_random_state(2, derive_seed(7, i)));
    worst = std::max(worst, std::abs(concurrence(pair) - concurrence_purity_oracle(pair)));
  }
  return {worst <= 1e-9, fmt("max |2|ad-bc| - sqrt(2(1-Tr rho^2))| = %.3g over 1000 states (tol 1e-9)", worst)};
}

Outcome optimizer_soundness() {
  double worst = -std::numeric_limits<double>::infinity();
  std::string where;
  for (int n : {3, 4}) {
    for (std::size_t i = 0; i < 50; ++i) {
      const auto state = haar_random_state(n, derive_seed(800 + static_cast<std::uint64_t>(n), i));
      const auto pair = pair_of(1, n);
      for (auto objective : {Objective::LE, Objective::NLE}) {
        const double gap = maximize_grid_oracle(state, pair, objective, 24) - maximize(state, pair, objective).value;
        if (gap > worst) {
          worst = gap;
          where = fmt("n=%d state %zu %s", n, i, to_string(objective).c_str());
        }
      }
    }
  }
  return {worst <= 1e-2, fmt("max(grid - optimizer) = %.3g at %s (tol 1e-2)", worst, where.c_str())};
}

Outcome dynamics_exactness() {
  const IsingChain chain(4);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> t(-2.0, 2.0);
  double oracle_error = 0.0;
  double norm_error = 0.0;
  double group_error = 0.0;
  auto max_error = [](const PureState& a, const PureState& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
  };
  for (std::size_t i = 0; i < 20; ++i) {
    const auto state = haar_random_state(4, derive_seed(9, i));
    const double t1 = t(rng);
    const double t2 = t(rng);
    const auto fast = evolve(chain, state, t1);
    oracle_error = std::max(oracle_error, max_error(fast, evolve_dense_oracle(chain, state, t1)));
    norm_error = std::max(norm_error, std::abs(fast.norm() - 1.0));
    group_error = std::max(group_error, max_error(evolve(chain, fast, t2), evolve(chain, state, t1 + t2)));
  }
  const bool pass = oracle_error <= 1e-9 && norm_error <= 1e-12 && group_error <= 1e-9;
  return {pass, fmt("oracle error %.3g (1e-9), norm error %.3g (1e-12), group law error %.3g (1e-9)", oracle_error,
                    norm_error, group_error)};
}

Outcome branch_spread() {
  const auto bins = run_branch_spread_study(3, pair_of(1, 3), 20000, 0.01, 10, {});
  int checked = 0;
  int failing = 0;
  std::string failures;
  for (const auto& b : bins) {
    if (b.count < 100) continue;
    ++checked;
    if (b.min_concurrence < 0.2 && b.max_concurrence > 0.8) continue;
    ++failing;
    if (failing <= 6) {
      failures += fmt(" [%.2f,%.2f) n=%d min=%.3f max=%.3f;", b.le_low, b.le_high, b.count, b.min_concurrence,
                      b.max_concurrence);
    }
  }
  const bool pass = checked > 0 && failing == 0;
  return {pass, fmt("%d bins with >= 100 states, %d without min < 0.2 and max > 0.8", checked, failing) +
                    (failing ? ":" + failures + (failing > 6 ? " ..." : "") : "")};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "locent_acceptance_determinism";
  std::filesystem::create_directories(dir);
  const auto state = (dir / "state.json").string();
  save_state(state, haar_random_state(4, 11));

  struct Command {
    std::string name;
    std::vector<std::string> args;  // "{out}" is replaced by the output path
  };
  const std::vector<Command> commands{
      {"le", {"le", "--state", state, "--seed", "5", "--out", "{out}"}},
      {"nle", {"nle", "--state", state, "--seed", "5", "--out", "{out}"}},
      {"q", {"q", "--state", state, "--out", "{out}"}},
      {"branches", {"branches", "--state", state, "--objective", "nle", "--out", "{out}"}},
      {"table1", {"table1", "--n", "4", "--samples", "40", "--seed", "3", "--out", "{out}"}},
      {"sweep.csv", {"sweep", "--state", state, "--steps", "11", "--out", "{out}"}},
      {"sweep.svg", {"sweep", "--state", state, "--steps", "11", "--format", "svg", "--out", "{out}"}},
      {"spread", {"spread", "--samples", "200", "--seed", "2", "--out", "{out}"}},
      {"ghz-check", {"ghz-check", "--out", "{out}"}},
  };

  // Second run uses a different worker count; outputs must not depend on it.
  const char* thread_settings[] = {"1", "3"};
  std::string mismatched;
  for (const auto& c : commands) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      setenv("LOCENT_THREADS", thread_settings[run], 1);
      const auto out_path = dir / (c.name + "." + std::to_string(run));
      std::vector<std::string> args = c.args;
      for (auto& a : args)
        if (a == "{out}") a = out_path.string();
      std::ostringstream out;
      std::ostringstream err;
      const int code = cli::run(args, out, err);
      if (code != cli::kExitOk) return {false, c.name + " exited with " + std::to_string(code) + ": " + err.str()};
      outputs[run] = read_file(out_path) + out.str();
    }
    if (outputs[0] != outputs[1] || outputs[0].empty()) mismatched += " " + c.name;
  }
  unsetenv("LOCENT_THREADS");
  std::filesystem::remove_all(dir);
  return {mismatched.empty(), mismatched.empty() ? fmt("%zu commands byte-identical across repeated runs",
                                                       commands.size())
                                                 : "outputs differ for:" + mismatched};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "GHZ golden case", ghz_golden},
      {2, "LE >= NLE on random states", inequality_suite},
      {3, "difference statistics for n = 3 and 4", table_reproduction},
      {4, "MD ordering across system size", ordering_check},
      {5, "Ising sweep bounds Q <= NLE <= LE", figure_sweep},
      {6, "closed-form Q vs grid search", q_oracle},
      {7, "concurrence vs purity formula", concurrence_oracle},
      {8, "optimizer vs grid oracle", optimizer_soundness},
      {9, "factorized vs dense evolution", dynamics_exactness},
      {10, "branch concurrence spread per LE bin", branch_spread},
      {11, "CLI determinism", determinism},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long id = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || id < 1 || id > static_cast<long>(criteria.size())) {
      std::cerr << "unknown criterion '" << argv[i] << "'\n";
      return 4;
    }
    selected.insert(static_cast<int>(id));
  }

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome result;
    try {
      result = c.check();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += result.pass ? 0 : 1;
    std::cout << (result.pass ? "PASS" : "FAIL") << fmt(" c%02d ", c.id) << c.title << " | " << result.detail
              << fmt(" [%.1fs]", seconds) << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
