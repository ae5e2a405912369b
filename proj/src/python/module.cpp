#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "locent/dynamics.hpp"
#include "locent/entanglement.hpp"
#include "locent/errors.hpp"
#include "locent/experiments.hpp"
#include "locent/localize.hpp"
#include "locent/qstate.hpp"

namespace py = pybind11;
using namespace locent;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

PureState to_state(const ComplexArray& amplitudes) {
  if (amplitudes.ndim() != 1) throw InputError("state must be a 1-d array");
  const auto size = static_cast<std::size_t>(amplitudes.shape(0));
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if ((std::size_t{1} << n) != size) throw InputError("state length must be a power of two");
  std::vector<Complex> amps(amplitudes.data(), amplitudes.data() + size);
  return PureState(n, std::move(amps));
}

ComplexArray to_array(const PureState& state) {
  ComplexArray out(static_cast<py::ssize_t>(state.dimension()));
  auto view = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < state.dimension(); ++i) view(static_cast<py::ssize_t>(i)) = state[i];
  return out;
}

SitePair to_pair(const std::pair<int, int>& p) { return {QubitIndex(p.first), QubitIndex(p.second)}; }

SitePair pair_or_default(const std::optional<std::pair<int, int>>& p, int n) {
  return p ? to_pair(*p) : SitePair{QubitIndex(1), QubitIndex(n)};
}

Objective parse_objective(const std::string& name) {
  if (name == "le" || name == "LE") return Objective::LE;
  if (name == "nle" || name == "NLE") return Objective::NLE;
  throw InputError("objective must be 'le' or 'nle'");
}

OptimizerConfig make_config(std::uint64_t seed, int restarts, int max_evaluations) {
  if (restarts < 1 || max_evaluations < 1) throw InputError("restarts and max_evaluations must be positive");
  OptimizerConfig config;
  config.seed = seed;
  config.restarts = restarts;
  config.max_evaluations = max_evaluations;
  return config;
}

py::list branches_list(const std::vector<BranchOutcome>& branches) {
  py::list out;
  for (const auto& b : branches) {
    py::dict d;
    d["outcome"] = b.outcome_bits;
    d["probability"] = b.probability;
    if (b.post_pair_state) {
      const auto& c = b.post_pair_state->coefficients;
      d["pair_state"] = std::vector<Complex>(c.begin(), c.end());
    } else {
      d["pair_state"] = py::none();
    }
    d["concurrence"] = b.concurrence ? py::cast(*b.concurrence) : py::none();
    out.append(d);
  }
  return out;
}

py::dict basis_dict(const MeasurementBasis& basis) {
  std::vector<int> sites;
  std::vector<double> alpha;
  std::vector<double> beta;
  for (std::size_t k = 0; k < basis.measured_sites.size(); ++k) {
    sites.push_back(basis.measured_sites[k].value);
    alpha.push_back(basis.angles[k].alpha);
    beta.push_back(basis.angles[k].beta);
  }
  py::dict d;
  d["sites"] = sites;
  d["alpha"] = alpha;
  d["beta"] = beta;
  return d;
}

py::dict summary_dict(const EnsembleSummary& s) {
  py::dict d;
  d["num_qubits"] = s.num_qubits;
  d["samples"] = s.samples;
  d["mr"] = s.mr;
  d["md"] = s.md;
  d["a"] = s.a;
  d["argmax_seed"] = s.argmax_seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Localizable entanglement of qubit pairs in small pure-state registers";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("ghz", [](int n) { return to_array(ghz(n)); }, py::arg("num_qubits"));
  m.def("haar_state", [](int n, std::uint64_t seed) { return to_array(haar_random_state(n, seed)); },
        py::arg("num_qubits"), py::arg("seed"));
  m.def(
      "basis_state", [](const std::string& bits) { return to_array(make_basis_state(static_cast<int>(bits.size()), bits)); },
      py::arg("bits"));

  m.def(
      "concurrence",
      [](const std::array<Complex, 4>& coefficients) { return concurrence(PairState{coefficients}); },
      py::arg("pair_state"), "Concurrence 2|ad - bc| of (a, b, c, d) = coefficients of |11>, |10>, |01>, |00>.");

  m.def(
      "classical_correlation",
      [](const ComplexArray& state, std::pair<int, int> pair) {
        const auto r = classical_correlation_q(to_state(state), to_pair(pair));
        py::dict d;
        d["q"] = r.q;
        d["alpha_hat"] = std::array<double, 3>{r.alpha_hat.x, r.alpha_hat.y, r.alpha_hat.z};
        d["beta_hat"] = std::array<double, 3>{r.beta_hat.x, r.beta_hat.y, r.beta_hat.z};
        return d;
      },
      py::arg("state"), py::arg("pair"));

  m.def(
      "maximize",
      [](const ComplexArray& state, std::optional<std::pair<int, int>> pair, const std::string& objective,
         std::uint64_t seed, int restarts, int max_evaluations) {
        const auto s = to_state(state);
        const auto config = make_config(seed, restarts, max_evaluations);
        LocalizationResult r;
        {
          py::gil_scoped_release release;
          r = maximize(s, pair_or_default(pair, s.num_qubits()), parse_objective(objective), config);
        }
        py::dict d;
        d["objective"] = to_string(r.objective);
        d["value"] = r.value;
        d["basis"] = basis_dict(r.basis);
        d["branches"] = branches_list(r.branches);
        d["evaluations"] = r.optimizer_report.evaluations;
        return d;
      },
      py::arg("state"), py::arg("pair") = py::none(), py::arg("objective") = "le", py::arg("seed") = 0,
      py::arg("restarts") = 24, py::arg("max_evaluations") = 2000);

  m.def(
      "branches",
      [](const ComplexArray& state, std::pair<int, int> pair, const std::vector<double>& alpha,
         const std::vector<double>& beta) {
        const auto s = to_state(state);
        const auto sp = to_pair(pair);
        if (alpha.size() != beta.size()) throw InputError("alpha and beta must have equal length");
        std::vector<double> flat;
        for (std::size_t k = 0; k < alpha.size(); ++k) {
          flat.push_back(alpha[k]);
          flat.push_back(beta[k]);
        }
        auto sites = measured_sites_for(s.num_qubits(), sp);
        if (sites.size() != alpha.size()) throw InputError("need one angle pair per measured site");
        return branches_list(enumerate_branches(s, sp, basis_from_angles(std::move(sites), flat)));
      },
      py::arg("state"), py::arg("pair"), py::arg("alpha"), py::arg("beta"));

  m.def(
      "evolve",
      [](const ComplexArray& state, double time, double coupling_j) {
        const auto s = to_state(state);
        return to_array(evolve(IsingChain(s.num_qubits(), coupling_j), s, time));
      },
      py::arg("state"), py::arg("time"), py::arg("coupling_j") = 1.0);

  m.def(
      "difference_study",
      [](int n, int samples, std::uint64_t seed, std::optional<std::pair<int, int>> pair, int restarts,
         int threads) {
        const auto config = make_config(0, restarts, 2000);
        DifferenceStudy study;
        {
          py::gil_scoped_release release;
          study = run_difference_study(n, pair_or_default(pair, n), samples, seed, config, threads);
        }
        py::list records;
        for (const auto& r : study.records) {
          py::dict d;
          d["seed"] = r.seed;
          d["le"] = r.le;
          d["nle"] = r.nle;
          d["diff"] = r.diff;
          d["rel_diff"] = r.rel_diff ? py::cast(*r.rel_diff) : py::none();
          records.append(d);
        }
        py::dict out = summary_dict(study.summary);
        out["records"] = records;
        return out;
      },
      py::arg("num_qubits"), py::arg("samples"), py::arg("seed") = 0, py::arg("pair") = py::none(),
      py::arg("restarts") = 24, py::arg("threads") = 0);

  m.def(
      "time_sweep",
      [](const ComplexArray& state, double t_min, double t_max, int steps, std::optional<std::pair<int, int>> pair,
         double coupling_j, int restarts, int threads) {
        const auto s = to_state(state);
        const auto config = make_config(0, restarts, 2000);
        std::vector<SweepPoint> points;
        {
          py::gil_scoped_release release;
          points = run_time_sweep(s, IsingChain(s.num_qubits(), coupling_j), pair_or_default(pair, s.num_qubits()),
                                  t_min, t_max, steps, config, threads);
        }
        std::vector<double> t, le, nle, q;
        for (const auto& p : points) {
          t.push_back(p.time);
          le.push_back(p.le);
          nle.push_back(p.nle);
          q.push_back(p.q);
        }
        py::dict d;
        d["t"] = t;
        d["le"] = le;
        d["nle"] = nle;
        d["q"] = q;
        return d;
      },
      py::arg("state"), py::arg("t_min") = -0.5, py::arg("t_max") = 0.5, py::arg("steps") = 51,
      py::arg("pair") = py::none(), py::arg("coupling_j") = 1.0, py::arg("restarts") = 24, py::arg("threads") = 0);
}
