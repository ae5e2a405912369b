#include "locent/entanglement.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "locent/detail/kernels.hpp"
#include "locent/errors.hpp"

namespace locent {

namespace {

constexpr double kPairNormTolerance = 1e-6;

void check_pair_norm(const PairState& pair) {
  if (std::abs(pair.norm() - 1.0) > kPairNormTolerance) {
    throw InputError("pair state is not normalized");
  }
}

std::array<Complex, 4> pauli_along(const BlochDirection& n) {
  return {Complex(n.z, 0.0), Complex(n.x, -n.y), Complex(n.x, n.y), Complex(-n.z, 0.0)};
}

Complex inner(std::span<const Complex> lhs, std::span<const Complex> rhs) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) s += std::conj(lhs[i]) * rhs[i];
  return s;
}

enum class Pauli { X, Y, Z };

// Action of a Pauli on one site: (P psi)[i] = phase(bit of i) * psi[i ^ flip].
struct PauliAction {
  bool flips;
  Complex phase0;
  Complex phase1;
};

constexpr PauliAction action_of(Pauli p) {
  switch (p) {
    case Pauli::X: return {true, 1.0, 1.0};
    case Pauli::Y: return {true, Complex(0.0, -1.0), Complex(0.0, 1.0)};
    case Pauli::Z: return {false, 1.0, -1.0};
  }
  return {false, 1.0, 1.0};
}

double expect_single(std::span<const Complex> psi, std::size_t mask, Pauli p) {
  const auto act = action_of(p);
  Complex s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Complex ph = (i & mask) ? act.phase1 : act.phase0;
    s += std::conj(psi[i]) * ph * psi[act.flips ? (i ^ mask) : i];
  }
  return s.real();
}

double expect_pair(std::span<const Complex> psi, std::size_t mask_a, Pauli pa, std::size_t mask_b,
                   Pauli pb) {
  const auto act_a = action_of(pa);
  const auto act_b = action_of(pb);
  const std::size_t flip = (act_a.flips ? mask_a : 0) | (act_b.flips ? mask_b : 0);
  Complex s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Complex ph = ((i & mask_a) ? act_a.phase1 : act_a.phase0) *
                       ((i & mask_b) ? act_b.phase1 : act_b.phase0);
    s += std::conj(psi[i]) * ph * psi[i ^ flip];
  }
  return s.real();
}

// Max of v . b over the grid; the maximizer is the grid point nearest v, which
// lies within two rows and two columns of v's rounded grid coordinates.
double best_grid_alignment(const std::array<double, 3>& v, int resolution) {
  const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (len == 0.0) return 0.0;
  const double step = std::numbers::pi / resolution;
  const int columns = 2 * resolution;
  const double theta0 = std::acos(std::clamp(v[2] / len, -1.0, 1.0));
  const double phi0 = std::atan2(v[1], v[0]);
  const int row0 = static_cast<int>(std::lround(theta0 / step));
  const int col0 = static_cast<int>(std::lround(phi0 / step));
  double best = -len;
  for (int row = std::max(0, row0 - 2); row <= std::min(resolution, row0 + 2); ++row) {
    for (int dc = -2; dc <= 2; ++dc) {
      const int col = ((col0 + dc) % columns + columns) % columns;
      const auto b = BlochDirection::from_angles(row * step, col * step);
      best = std::max(best, v[0] * b.x + v[1] * b.y + v[2] * b.z);
    }
  }
  return best;
}

}  // namespace

BlochDirection BlochDirection::from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

void BlochDirection::check() const {
  if (std::abs(x * x + y * y + z * z - 1.0) > 1e-10) throw InputError("Bloch direction must be a unit vector");
}

double concurrence(const PairState& pair) {
  check_pair_norm(pair);
  return 2.0 * std::abs(pair.a() * pair.d() - pair.b() * pair.c());
}

double concurrence_purity_oracle(const PairState& pair) {
  check_pair_norm(pair);
  // rho_A over the first qubit: rows |1>, |0> pair up (a, b) and (c, d).
  const Complex r11 = std::norm(pair.a()) + std::norm(pair.b());
  const Complex r00 = std::norm(pair.c()) + std::norm(pair.d());
  const Complex r10 = pair.a() * std::conj(pair.c()) + pair.b() * std::conj(pair.d());
  const double purity = std::norm(r11) + std::norm(r00) + 2.0 * std::norm(r10);
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

double correlation_at(const PureState& state, SitePair pair, const BlochDirection& alpha_hat,
                      const BlochDirection& beta_hat) {
  const int n = state.num_qubits();
  check_pair(n, pair);
  alpha_hat.check();
  beta_hat.check();
  const auto mask_a = site_mask(n, pair.first);
  const auto mask_b = site_mask(n, pair.second);
  const auto psi = state.amplitudes();

  std::vector<Complex> sa(psi.begin(), psi.end());
  detail::apply_matrix_in_place(sa, mask_a, pauli_along(alpha_hat));
  std::vector<Complex> sb(psi.begin(), psi.end());
  detail::apply_matrix_in_place(sb, mask_b, pauli_along(beta_hat));
  std::vector<Complex> sab(sb);
  detail::apply_matrix_in_place(sab, mask_a, pauli_along(alpha_hat));

  return inner(psi, sab).real() - inner(psi, sa).real() * inner(psi, sb).real();
}

std::array<std::array<double, 3>, 3> connected_correlation_matrix(const PureState& state, SitePair pair) {
  const int n = state.num_qubits();
  check_pair(n, pair);
  const auto mask_a = site_mask(n, pair.first);
  const auto mask_b = site_mask(n, pair.second);
  const auto psi = state.amplitudes();
  constexpr std::array<Pauli, 3> axes{Pauli::X, Pauli::Y, Pauli::Z};

  std::array<double, 3> mean_a{};
  std::array<double, 3> mean_b{};
  for (int i = 0; i < 3; ++i) {
    mean_a[i] = expect_single(psi, mask_a, axes[i]);
    mean_b[i] = expect_single(psi, mask_b, axes[i]);
  }
  std::array<std::array<double, 3>, 3> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[i][j] = expect_pair(psi, mask_a, axes[i], mask_b, axes[j]) - mean_a[i] * mean_b[j];
  return m;
}

CorrelationResult classical_correlation_q(const PureState& state, SitePair pair) {
  const auto m = connected_correlation_matrix(state, pair);
  Eigen::Matrix3d mat;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mat(i, j) = m[i][j];
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(mat, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d u = svd.matrixU().col(0).normalized();
  const Eigen::Vector3d v = svd.matrixV().col(0).normalized();
  return {svd.singularValues()(0), {u.x(), u.y(), u.z()}, {v.x(), v.y(), v.z()}};
}

double classical_correlation_q_grid(const PureState& state, SitePair pair, int resolution) {
  if (resolution < 8) throw InputError("grid resolution must be at least 8");
  const double step = std::numbers::pi / resolution;
  const BlochDirection ex{1.0, 0.0, 0.0};
  const BlochDirection ey{0.0, 1.0, 0.0};
  const BlochDirection ez{0.0, 0.0, 1.0};
  double best = 0.0;
  for (int row = 0; row <= resolution; ++row) {
    // The poles are single points.
    const int columns = (row == 0 || row == resolution) ? 1 : 2 * resolution;
    for (int col = 0; col < columns; ++col) {
      const auto a = BlochDirection::from_angles(row * step, col * step);
      // Correlator is linear in beta_hat: its gradient in b is these three values.
      const std::array<double, 3> v{correlation_at(state, pair, a, ex), correlation_at(state, pair, a, ey),
                                    correlation_at(state, pair, a, ez)};
      best = std::max(best, best_grid_alignment(v, resolution));
    }
  }
  return best;
}

}  // namespace locent
