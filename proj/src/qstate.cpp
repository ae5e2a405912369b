#include "locent/qstate.hpp"

#include <cmath>
#include <random>
#include <string>

#include "locent/detail/kernels.hpp"
#include "locent/errors.hpp"
#include "locent/seeding.hpp"

namespace locent {

namespace {

constexpr double kNormTolerance = 1e-10;

double squared_norm(std::span<const Complex> amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

void check_num_qubits(int num_qubits) {
  if (num_qubits < kMinQubits || num_qubits > kMaxQubits) {
    throw InputError("number of qubits must be in [" + std::to_string(kMinQubits) + ", " +
                     std::to_string(kMaxQubits) + "], got " + std::to_string(num_qubits));
  }
}

}  // namespace

std::array<Complex, 4> SingleQubitUnitary::matrix() const {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const Complex p1 = std::polar(1.0, theta1);
  const Complex p2 = std::polar(1.0, theta2);
  return {p1 * c, -p1 * s * std::polar(1.0, -beta), p2 * s * std::polar(1.0, beta), p2 * c};
}

// R(a,b) D(p1,p2) = D(p1,p2) R(a, b + p1 - p2), so (D R)^-1 = D(-t1,-t2) R(-a, b - t1 + t2).
SingleQubitUnitary SingleQubitUnitary::inverse() const {
  return {-theta1, -theta2, -alpha, beta - theta1 + theta2};
}

PureState::PureState(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_num_qubits(num_qubits);
  if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
    throw InputError("expected " + std::to_string(std::size_t{1} << num_qubits) +
                     " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
  const double n2 = squared_norm(amplitudes_);
  if (!std::isfinite(n2) || std::abs(std::sqrt(n2) - 1.0) > kNormTolerance) {
    throw InputError("state is not normalized (norm " + std::to_string(std::sqrt(n2)) + ")");
  }
}

PureState PureState::normalized(int num_qubits, std::vector<Complex> amplitudes) {
  const double n = std::sqrt(squared_norm(amplitudes));
  if (!(n > 0.0) || !std::isfinite(n)) throw InputError("cannot normalize a zero or non-finite vector");
  for (auto& a : amplitudes) a /= n;
  return PureState(num_qubits, std::move(amplitudes));
}

double PureState::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

double PairState::norm() const { return std::sqrt(squared_norm(coefficients)); }

PairState PairState::from_register(const PureState& two_qubits) {
  if (two_qubits.num_qubits() != 2) throw InputError("pair state needs exactly two qubits");
  // Register index order is |00>,|01>,|10>,|11>; pair order is the reverse.
  return {{two_qubits[3], two_qubits[2], two_qubits[1], two_qubits[0]}};
}

PureState PairState::to_register() const {
  return PureState(2, {coefficients[3], coefficients[2], coefficients[1], coefficients[0]});
}

void check_site(int num_qubits, QubitIndex site) {
  if (site.value < 1 || site.value > num_qubits) {
    throw InputError("site " + std::to_string(site.value) + " out of range [1, " +
                     std::to_string(num_qubits) + "]");
  }
}

void check_pair(int num_qubits, SitePair pair) {
  check_site(num_qubits, pair.first);
  check_site(num_qubits, pair.second);
  if (pair.first == pair.second) throw InputError("pair sites must be distinct");
}

std::size_t site_mask(int num_qubits, QubitIndex site) {
  check_site(num_qubits, site);
  return std::size_t{1} << (num_qubits - site.value);
}

PureState make_basis_state(int num_qubits, std::string_view bits) {
  check_num_qubits(num_qubits);
  if (bits.size() != static_cast<std::size_t>(num_qubits)) {
    throw InputError("bit string length " + std::to_string(bits.size()) + " does not match " +
                     std::to_string(num_qubits) + " qubits");
  }
  std::size_t index = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw InputError("bit string may only contain 0 and 1");
    index = (index << 1) | static_cast<std::size_t>(ch - '0');
  }
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  amps[index] = 1.0;
  return PureState(num_qubits, std::move(amps));
}

PureState ghz(int num_qubits) {
  check_num_qubits(num_qubits);
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  amps.front() = amps.back() = 1.0 / std::sqrt(2.0);
  return PureState(num_qubits, std::move(amps));
}

PureState haar_random_state(int num_qubits, std::uint64_t seed) {
  check_num_qubits(num_qubits);
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  for (auto& a : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a = {re, im};
  }
  return PureState::normalized(num_qubits, std::move(amps));
}

PureState apply_local_unitary(const PureState& state, QubitIndex site, const SingleQubitUnitary& u) {
  const auto mask = site_mask(state.num_qubits(), site);
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  detail::apply_matrix_in_place(amps, mask, u.matrix());
  return PureState(state.num_qubits(), std::move(amps));
}

Projection project_qubit(const PureState& state, QubitIndex site, int outcome) {
  if (outcome != 0 && outcome != 1) throw InputError("measurement outcome must be 0 or 1");
  const auto mask = site_mask(state.num_qubits(), site);
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (((i & mask) != 0) != (outcome == 1)) amps[i] = 0.0;
  }
  Projection result;
  result.probability = squared_norm(amps);
  if (result.probability >= kZeroProbability) {
    result.post_state = PureState::normalized(state.num_qubits(), std::move(amps));
  }
  return result;
}

PairState reduce_to_pair(const PureState& state, std::span<const MeasuredSite> measured) {
  const int n = state.num_qubits();
  if (static_cast<int>(measured.size()) != n - 2) {
    throw InputError("exactly two sites must remain unmeasured");
  }
  std::size_t measured_mask = 0;
  std::size_t base = 0;
  for (const auto& m : measured) {
    if (m.outcome != 0 && m.outcome != 1) throw InputError("measurement outcome must be 0 or 1");
    const auto mask = site_mask(n, m.site);
    if (measured_mask & mask) throw InputError("site measured twice");
    measured_mask |= mask;
    if (m.outcome == 1) base |= mask;
  }
  // The two free masks, higher bit first (lower site number first).
  std::array<std::size_t, 2> free{};
  int found = 0;
  for (int k = 1; k <= n; ++k) {
    const auto mask = std::size_t{1} << (n - k);
    if (!(measured_mask & mask)) free[found++] = mask;
  }
  const auto [hi, lo] = free;
  PairState pair{{state[base | hi | lo], state[base | hi], state[base | lo], state[base]}};
  const double p = pair.norm() * pair.norm();
  if (p < kZeroProbability) throw InputError("measurement branch has zero probability");
  for (auto& c : pair.coefficients) c /= std::sqrt(p);
  return pair;
}

double reduced_density_purity(const PureState& state, SitePair pair) {
  const int n = state.num_qubits();
  check_pair(n, pair);
  const auto m1 = site_mask(n, pair.first);
  const auto m2 = site_mask(n, pair.second);
  const auto pair_mask = m1 | m2;
  const std::array<std::size_t, 4> offsets{0, m2, m1, m1 | m2};
  std::array<std::array<Complex, 4>, 4> rho{};
  for (std::size_t env = 0; env < state.dimension(); ++env) {
    if (env & pair_mask) continue;
    for (int r = 0; r < 4; ++r) {
      const Complex ar = state[env | offsets[r]];
      for (int c = 0; c < 4; ++c) rho[r][c] += ar * std::conj(state[env | offsets[c]]);
    }
  }
  double purity = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) purity += std::norm(rho[r][c]);
  return purity;
}

}  // namespace locent
