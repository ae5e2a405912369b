#include "locent/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "locent/entanglement.hpp"
#include "locent/errors.hpp"
#include "locent/experiments.hpp"
#include "locent/localize.hpp"
#include "locent/state_io.hpp"
#include "locent/svg_plot.hpp"

namespace locent::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string state_path;
  std::string pair_text;
  std::string out_path;
  std::string summary_path;
  std::string save_state_path;
  std::string format;
  std::string objective = "le";
  std::uint64_t seed = 0;
  int restarts = 24;
  int max_evals = 2000;
  double tolerance = 1e-8;
  int num_qubits = 0;
  int samples = 0;
  double t_min = -0.5;
  double t_max = 0.5;
  int steps = 51;
  double coupling = 1.0;
  double bin_width = 0.01;
  bool auto_maxdiff = false;
};

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

SitePair parse_pair(const std::string& text, int num_qubits, SitePair fallback) {
  if (text.empty()) {
    check_pair(num_qubits, fallback);
    return fallback;
  }
  int a = 0;
  int b = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> a >> comma >> b) || comma != ',' || !(in >> std::ws).eof()) {
    throw UsageError("--pair expects two site numbers as a,b");
  }
  const SitePair pair{QubitIndex(a), QubitIndex(b)};
  check_pair(num_qubits, pair);
  return pair;
}

OptimizerConfig optimizer_config(const Options& o) {
  if (o.restarts < 1) throw UsageError("--restarts must be at least 1");
  if (o.max_evals < 1) throw UsageError("--max-evals must be at least 1");
  OptimizerConfig config;
  config.seed = o.seed;
  config.restarts = o.restarts;
  config.max_evaluations = o.max_evals;
  config.objective_tolerance = o.tolerance;
  config.threads = 0;
  return config;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  if (o.format.empty()) return;
  for (const char* f : allowed)
    if (o.format == f) return;
  throw UsageError("--format " + o.format + " is not available for this command");
}

PureState require_state(const Options& o) {
  if (o.state_path.empty()) throw UsageError("--state is required");
  return load_state(o.state_path);
}

json pair_json(SitePair pair) { return json::array({pair.first.value, pair.second.value}); }

json basis_json(const MeasurementBasis& basis) {
  json sites = json::array();
  json alpha = json::array();
  json beta = json::array();
  for (std::size_t k = 0; k < basis.measured_sites.size(); ++k) {
    sites.push_back(basis.measured_sites[k].value);
    alpha.push_back(basis.angles[k].alpha);
    beta.push_back(basis.angles[k].beta);
  }
  return {{"sites", sites}, {"alpha", alpha}, {"beta", beta}};
}

json branches_json(const std::vector<BranchOutcome>& branches) {
  json out = json::array();
  for (const auto& b : branches) {
    json entry{{"outcome", b.outcome_bits}, {"probability", b.probability}};
    if (b.post_pair_state) {
      json re = json::array();
      json im = json::array();
      for (const auto& c : b.post_pair_state->coefficients) {
        re.push_back(c.real());
        im.push_back(c.imag());
      }
      entry["pair_state"] = {{"order", "11,10,01,00"}, {"re", re}, {"im", im}};
      entry["concurrence"] = *b.concurrence;
    } else {
      entry["pair_state"] = nullptr;
      entry["concurrence"] = nullptr;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

json localization_json(const LocalizationResult& r, SitePair pair, const OptimizerConfig& config) {
  return {{"objective", to_string(r.objective)},
          {"value", r.value},
          {"pair", pair_json(pair)},
          {"basis", basis_json(r.basis)},
          {"diagnostics",
           {{"restarts", r.optimizer_report.restarts},
            {"evaluations", r.optimizer_report.evaluations},
            {"best_restart", r.optimizer_report.best_restart},
            {"seed", config.seed}}}};
}

json direction_json(const BlochDirection& d) { return json::array({d.x, d.y, d.z}); }

int cmd_localize(const Options& o, Objective objective, bool with_branches, std::ostream& out) {
  require_format(o, {"json"});
  const auto state = require_state(o);
  const auto pair = parse_pair(o.pair_text, state.num_qubits(), {QubitIndex(1), QubitIndex(state.num_qubits())});
  const auto config = optimizer_config(o);
  const auto result = maximize(state, pair, objective, config);
  auto doc = localization_json(result, pair, config);
  if (with_branches) doc["branches"] = branches_json(result.branches);
  emit(doc.dump(2) + "\n", o.out_path, out);
  return kExitOk;
}

int cmd_q(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  const auto state = require_state(o);
  const auto pair = parse_pair(o.pair_text, state.num_qubits(), {QubitIndex(1), QubitIndex(state.num_qubits())});
  const auto r = classical_correlation_q(state, pair);
  const json doc{{"measure", "Q"},
                 {"value", r.q},
                 {"pair", pair_json(pair)},
                 {"alpha_hat", direction_json(r.alpha_hat)},
                 {"beta_hat", direction_json(r.beta_hat)}};
  emit(doc.dump(2) + "\n", o.out_path, out);
  return kExitOk;
}

json summary_json(const EnsembleSummary& s, SitePair pair, std::uint64_t seed) {
  return {{"num_qubits", s.num_qubits}, {"samples", s.samples}, {"pair", pair_json(pair)},
          {"seed", seed},               {"mr", s.mr},           {"md", s.md},
          {"a", s.a},                   {"argmax_seed", s.argmax_seed}};
}

int cmd_table1(const Options& o, std::ostream& out) {
  require_format(o, {"csv"});
  const int n = o.num_qubits == 0 ? 4 : o.num_qubits;
  const int samples = o.samples == 0 ? 5000 : o.samples;
  if (samples < 1) throw UsageError("--samples must be positive");
  if (n < 3 || n > 6) throw InputError("table1 supports 3 to 6 qubits");
  const auto pair = parse_pair(o.pair_text, n, {QubitIndex(1), QubitIndex(n)});
  const auto study = run_difference_study(n, pair, samples, o.seed, optimizer_config(o));

  std::string csv = "seed,le,nle,diff,rel_diff\n";
  for (const auto& r : study.records) {
    csv += std::to_string(r.seed) + ',' + number(r.le) + ',' + number(r.nle) + ',' + number(r.diff) + ',' +
           (r.rel_diff ? number(*r.rel_diff) : std::string()) + '\n';
  }
  if (!o.out_path.empty()) emit(csv, o.out_path, out);
  const auto summary = summary_json(study.summary, pair, o.seed).dump(2) + "\n";
  if (!o.summary_path.empty()) emit(summary, o.summary_path, out);
  out << summary;
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"csv", "svg"});
  if (o.auto_maxdiff == !o.state_path.empty()) throw UsageError("give exactly one of --state or --auto-maxdiff");
  if (o.steps < 2) throw UsageError("--steps must be at least 2");
  const auto config = optimizer_config(o);

  std::optional<PureState> initial;
  json provenance;
  if (o.auto_maxdiff) {
    const int samples = o.samples == 0 ? 5000 : o.samples;
    const SitePair search_pair{QubitIndex(1), QubitIndex(4)};
    const auto found = find_max_diff_state(4, search_pair, samples, o.seed, config);
    err << "max-difference state: seed " << found.record.seed << ", LE " << number(found.record.le) << ", NLE "
        << number(found.record.nle) << '\n';
    initial = found.state;
    provenance = {{"master_seed", o.seed}, {"samples", samples}, {"sample_seed", found.record.seed},
                  {"le", found.record.le}, {"nle", found.record.nle}};
  } else {
    initial = load_state(o.state_path);
  }
  if (!o.save_state_path.empty()) {
    auto doc = state_to_json(*initial);
    if (!provenance.is_null()) doc["search"] = provenance;
    emit(doc.dump(2) + "\n", o.save_state_path, out);
  }
  const int n = initial->num_qubits();
  const auto pair = parse_pair(o.pair_text, n, {QubitIndex(1), QubitIndex(n)});
  const IsingChain chain(n, o.coupling);
  const auto points = run_time_sweep(*initial, chain, pair, o.t_min, o.t_max, o.steps, config);

  if (o.format == "svg") {
    LineChart chart;
    chart.title = "LE, NLE and Q of sites " + std::to_string(pair.first.value) + "," +
                  std::to_string(pair.second.value) + " under Ising evolution";
    chart.x_label = "t (hbar/J)";
    chart.y_label = "entanglement / correlation";
    PlotSeries le{"LE", {}, {}, ""};
    PlotSeries nle{"NLE", {}, {}, "8,5"};
    PlotSeries q{"Q", {}, {}, "9,4,2,4"};
    for (const auto& p : points) {
      for (auto* s : {&le, &nle, &q}) s->x.push_back(p.time);
      le.y.push_back(p.le);
      nle.y.push_back(p.nle);
      q.y.push_back(p.q);
    }
    chart.series = {le, nle, q};
    emit(render_line_chart(chart), o.out_path, out);
  } else {
    std::string csv = "t,le,nle,q\n";
    for (const auto& p : points) csv += number(p.time) + ',' + number(p.le) + ',' + number(p.nle) + ',' + number(p.q) + '\n';
    emit(csv, o.out_path, out);
  }
  return kExitOk;
}

int cmd_spread(const Options& o, std::ostream& out) {
  require_format(o, {"json", "csv"});
  const int n = o.num_qubits == 0 ? 3 : o.num_qubits;
  const int samples = o.samples == 0 ? 20000 : o.samples;
  if (samples < 1) throw UsageError("--samples must be positive");
  if (n < 3 || n > 6) throw InputError("spread supports 3 to 6 qubits");
  if (!(o.bin_width > 0.0)) throw UsageError("--bin-width must be positive");
  const auto pair = parse_pair(o.pair_text, n, {QubitIndex(1), QubitIndex(n)});
  const auto bins = run_branch_spread_study(n, pair, samples, o.bin_width, o.seed, optimizer_config(o));
  if (o.format == "csv") {
    std::string csv = "le_low,le_high,count,min_c,max_c\n";
    for (const auto& b : bins) {
      csv += number(b.le_low) + ',' + number(b.le_high) + ',' + std::to_string(b.count) + ',' +
             number(b.min_concurrence) + ',' + number(b.max_concurrence) + '\n';
    }
    emit(csv, o.out_path, out);
  } else {
    json arr = json::array();
    for (const auto& b : bins) {
      arr.push_back({{"le_low", b.le_low}, {"le_high", b.le_high}, {"count", b.count},
                     {"min_concurrence", b.min_concurrence}, {"max_concurrence", b.max_concurrence}});
    }
    const json doc{{"num_qubits", n}, {"samples", samples}, {"pair", pair_json(pair)},
                   {"bin_width", o.bin_width}, {"seed", o.seed}, {"bins", arr}};
    emit(doc.dump(2) + "\n", o.out_path, out);
  }
  return kExitOk;
}

int cmd_ghz_check(const Options& o, std::ostream& out) {
  require_format(o, {"json"});
  const int n = o.num_qubits == 0 ? 3 : o.num_qubits;
  const auto state = ghz(n);
  const SitePair pair = parse_pair(o.pair_text, n, {QubitIndex(1), QubitIndex(2)});
  const auto config = optimizer_config(o);
  const auto le = maximize(state, pair, Objective::LE, config);
  const auto nle = maximize(state, pair, Objective::NLE, config);

  const double expected_p = 1.0 / static_cast<double>(std::size_t{1} << (n - 2));
  bool bell = true;
  for (const auto& b : nle.branches) {
    bell = bell && b.concurrence && std::abs(*b.concurrence - 1.0) <= 1e-6 &&
           std::abs(b.probability - expected_p) <= 1e-6;
  }
  const bool pass = std::abs(le.value - 1.0) <= 1e-6 && std::abs(nle.value - 1.0) <= 1e-6 && bell;
  const json doc{{"num_qubits", n},
                 {"pair", pair_json(pair)},
                 {"le", le.value},
                 {"nle", nle.value},
                 {"nle_basis", basis_json(nle.basis)},
                 {"branches", branches_json(nle.branches)},
                 {"pass", pass}};
  emit(doc.dump(2) + "\n", o.out_path, out);
  return pass ? kExitOk : kExitNumerical;
}

void add_optimizer_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Optimizer / sampling seed")->capture_default_str();
  cmd->add_option("--restarts", o.restarts, "Optimizer restarts")->capture_default_str();
  cmd->add_option("--max-evals", o.max_evals, "Objective evaluations per restart")->capture_default_str();
  cmd->add_option("--tol", o.tolerance, "Objective tolerance")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Localizable entanglement (LE), new localizable entanglement (NLE) and classical correlation (Q)"};
  app.require_subcommand(1, 1);

  auto* le = app.add_subcommand("le", "Maximize the average branch concurrence");
  auto* nle = app.add_subcommand("nle", "Maximize the smallest branch concurrence");
  auto* q = app.add_subcommand("q", "Classical correlation Q of a pair");
  auto* branches = app.add_subcommand("branches", "List the branches at the optimal basis");
  auto* table1 = app.add_subcommand("table1", "LE - NLE difference statistics over random states");
  auto* sweep = app.add_subcommand("sweep", "LE, NLE and Q along Ising-chain evolution");
  auto* spread = app.add_subcommand("spread", "Branch concurrence spread per LE bin");
  auto* ghz_check = app.add_subcommand("ghz-check", "Golden GHZ check");

  for (auto* cmd : {le, nle, q, branches, sweep}) cmd->add_option("--state", o.state_path, "State JSON file");
  for (auto* cmd : {le, nle, q, branches, table1, sweep, spread, ghz_check}) {
    cmd->add_option("--pair", o.pair_text, "Target sites a,b (1-based)");
    cmd->add_option("--out", o.out_path, "Output file (default stdout)");
    cmd->add_option("--format", o.format, "Output format");
  }
  for (auto* cmd : {le, nle, branches, table1, sweep, spread, ghz_check}) add_optimizer_flags(cmd, o);
  for (auto* cmd : {table1, spread, ghz_check}) cmd->add_option("--n", o.num_qubits, "Number of qubits");
  for (auto* cmd : {table1, sweep, spread}) cmd->add_option("--samples", o.samples, "Random states to draw");
  branches->add_option("--objective", o.objective, "le or nle")->check(CLI::IsMember({"le", "nle"}));
  table1->add_option("--summary", o.summary_path, "Also write the JSON summary here");
  sweep->add_flag("--auto-maxdiff", o.auto_maxdiff, "Search random 4-qubit states for the largest LE - NLE gap");
  sweep->add_option("--tmin", o.t_min, "Start time (hbar/J)")->capture_default_str();
  sweep->add_option("--tmax", o.t_max, "End time (hbar/J)")->capture_default_str();
  sweep->add_option("--steps", o.steps, "Number of time points")->capture_default_str();
  sweep->add_option("--j", o.coupling, "Coupling J")->capture_default_str();
  sweep->add_option("--save-state", o.save_state_path, "Write the initial state here");
  spread->add_option("--bin-width", o.bin_width, "LE bin width")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (sweep->parsed() && o.auto_maxdiff && sweep->count("--seed") == 0) o.seed = kDefaultMaxDiffSeed;

  try {
    if (le->parsed()) return cmd_localize(o, Objective::LE, false, out);
    if (nle->parsed()) return cmd_localize(o, Objective::NLE, false, out);
    if (branches->parsed()) return cmd_localize(o, o.objective == "nle" ? Objective::NLE : Objective::LE, true, out);
    if (q->parsed()) return cmd_q(o, out);
    if (table1->parsed()) return cmd_table1(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (spread->parsed()) return cmd_spread(o, out);
    if (ghz_check->parsed()) return cmd_ghz_check(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace locent::cli
