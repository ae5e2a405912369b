#include "locent/state_io.hpp"

#include <cmath>
#include <fstream>

#include "locent/errors.hpp"

namespace locent {

namespace {

constexpr double kLoadNormTolerance = 1e-6;

std::vector<double> read_reals(const nlohmann::json& doc, const char* key, std::size_t expected) {
  if (!doc.contains(key) || !doc[key].is_array()) throw InputError(std::string("state file needs array '") + key + "'");
  const auto& arr = doc[key];
  if (arr.size() != expected) {
    throw InputError(std::string("array '") + key + "' must have " + std::to_string(expected) + " entries");
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& v : arr) {
    if (!v.is_number()) throw InputError(std::string("array '") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

PureState state_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw InputError("state file needs integer field 'n'");
  }
  const int n = doc["n"].get<int>();
  if (n < kMinQubits || n > kMaxQubits) throw InputError("state file 'n' out of range");
  const std::size_t dim = std::size_t{1} << n;
  const auto re = read_reals(doc, "re", dim);
  const auto im = read_reals(doc, "im", dim);
  std::vector<Complex> amps(dim);
  double n2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    amps[i] = {re[i], im[i]};
    n2 += std::norm(amps[i]);
  }
  if (!std::isfinite(n2) || std::abs(std::sqrt(n2) - 1.0) > kLoadNormTolerance) {
    throw InputError("state norm deviates from 1 by more than 1e-6");
  }
  return PureState::normalized(n, std::move(amps));
}

nlohmann::json state_to_json(const PureState& state) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (const auto& a : state.amplitudes()) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  return {{"n", state.num_qubits()}, {"re", re}, {"im", im}};
}

PureState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return state_from_json(doc);
}

void save_state(const std::filesystem::path& path, const PureState& state) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write state file " + path.string());
  out << state_to_json(state).dump(2) << '\n';
}

}  // namespace locent
