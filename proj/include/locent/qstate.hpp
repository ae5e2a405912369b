#pragma once

// Dense pure states of small qubit registers.
//
// Bit ordering: qubit 1 is the most significant bit of the amplitude index,
// so for n qubits site k corresponds to the mask 1 << (n - k).

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace locent {

using Complex = std::complex<double>;

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxQubits = 10;

/// Branches whose probability falls below this are treated as non-occurring.
inline constexpr double kZeroProbability = 1e-12;

/// 1-based site label.
struct QubitIndex {
  int value;

  constexpr explicit QubitIndex(int v) : value(v) {}
  friend constexpr bool operator==(QubitIndex, QubitIndex) = default;
  friend constexpr auto operator<=>(QubitIndex, QubitIndex) = default;
};

struct SitePair {
  QubitIndex first;
  QubitIndex second;
};

/// u = diag(e^{i theta1}, e^{i theta2}) * [[cos a, -sin a e^{-i b}], [sin a e^{i b}, cos a]]
struct SingleQubitUnitary {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  /// Row-major 2x2 matrix {u00, u01, u10, u11}.
  std::array<Complex, 4> matrix() const;

  /// Parameters of u^{-1} in the same factorized form.
  SingleQubitUnitary inverse() const;
};

class PureState {
 public:
  /// Throws InputError unless the amplitudes have length 2^n and unit norm (1e-10).
  PureState(int num_qubits, std::vector<Complex> amplitudes);

  /// Rescales to unit norm; throws InputError on a zero vector.
  static PureState normalized(int num_qubits, std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t index) const { return amplitudes_[index]; }
  double norm() const;

 private:
  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

/// Two-qubit pure state as (a, b, c, d): the coefficients of |11>, |10>, |01>, |00>.
/// The first qubit of each ket is the lower-numbered site.
struct PairState {
  std::array<Complex, 4> coefficients{};

  Complex a() const { return coefficients[0]; }
  Complex b() const { return coefficients[1]; }
  Complex c() const { return coefficients[2]; }
  Complex d() const { return coefficients[3]; }
  double norm() const;

  static PairState from_register(const PureState& two_qubits);
  PureState to_register() const;
};

/// Index mask of a site in an n-qubit register. Throws InputError when out of range.
std::size_t site_mask(int num_qubits, QubitIndex site);

void check_site(int num_qubits, QubitIndex site);
void check_pair(int num_qubits, SitePair pair);

PureState make_basis_state(int num_qubits, std::string_view bits);
PureState ghz(int num_qubits);
/// i.i.d. standard complex Gaussian amplitudes, normalized. Deterministic in seed.
PureState haar_random_state(int num_qubits, std::uint64_t seed);

PureState apply_local_unitary(const PureState& state, QubitIndex site, const SingleQubitUnitary& u);

struct Projection {
  double probability = 0.0;
  std::optional<PureState> post_state;  // empty when probability < kZeroProbability
};

Projection project_qubit(const PureState& state, QubitIndex site, int outcome);

struct MeasuredSite {
  QubitIndex site;
  int outcome;
};

/// Projects every listed site onto its outcome and returns the normalized
/// state of the two remaining sites.
PairState reduce_to_pair(const PureState& state, std::span<const MeasuredSite> measured);

/// Tr(rho^2) of the reduced density operator on the given pair.
double reduced_density_purity(const PureState& state, SitePair pair);

}  // namespace locent
