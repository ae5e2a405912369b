#pragma once

#include <array>

#include "locent/qstate.hpp"

namespace locent {

/// Unit vector on the Bloch sphere.
struct BlochDirection {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  /// Polar angle theta from +z, azimuth phi from +x.
  static BlochDirection from_angles(double theta, double phi);
  /// Throws InputError if the vector is not unit length within 1e-10.
  void check() const;
};

struct CorrelationResult {
  double q = 0.0;
  BlochDirection alpha_hat;
  BlochDirection beta_hat;
};

/// 2|ad - bc| for a normalized pair state. Throws InputError if the norm is off by more than 1e-6.
double concurrence(const PairState& pair);

/// sqrt(2 (1 - Tr rho_A^2)), computed from the single-qubit reduced density matrix.
double concurrence_purity_oracle(const PairState& pair);

/// Connected correlator <s_a (x) s_b> - <s_a><s_b> between the two sites.
double correlation_at(const PureState& state, SitePair pair, const BlochDirection& alpha_hat,
                      const BlochDirection& beta_hat);

/// M_ij = <s_i (x) s_j> - <s_i><s_j>, i, j in {x, y, z}, evaluated from Pauli strings.
std::array<std::array<double, 3>, 3> connected_correlation_matrix(const PureState& state, SitePair pair);

/// Max over both Bloch directions of correlation_at. Since the correlator is
/// bilinear in the two directions this is the top singular value of M.
CorrelationResult classical_correlation_q(const PureState& state, SitePair pair);

/// Same maximum by search over a (theta, phi) grid on each sphere, with
/// resolution + 1 polar rows and 2 * resolution azimuth columns.
double classical_correlation_q_grid(const PureState& state, SitePair pair, int resolution);

}  // namespace locent
