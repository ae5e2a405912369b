#pragma once

// Open Ising chain H = J sum_k sx_k sx_{k+1} with hbar = 1; time is in units of hbar/J.

#include <Eigen/Dense>

#include "locent/qstate.hpp"

namespace locent {

class IsingChain {
 public:
  /// Throws InputError for fewer than two sites or a zero/non-finite coupling.
  explicit IsingChain(int num_qubits, double coupling_j = 1.0);

  int num_qubits() const { return num_qubits_; }
  double coupling_j() const { return coupling_j_; }
  int num_bonds() const { return num_qubits_ - 1; }

 private:
  int num_qubits_;
  double coupling_j_;
};

/// exp(-i H t)|psi>. The bond terms commute, so this is the product over bonds
/// of cos(Jt) I - i sin(Jt) sx_k sx_{k+1}.
PureState evolve(const IsingChain& chain, const PureState& state, double time);

/// Dense H in the computational basis (real symmetric).
Eigen::MatrixXd dense_hamiltonian(const IsingChain& chain);

/// Diagonal of W H W with W the n-fold Hadamard product; H is diagonal in that basis.
Eigen::VectorXd x_basis_spectrum(const IsingChain& chain);

/// Verification route: W diag(exp(-i lambda t)) W |psi> from the dense Hamiltonian. n <= 8.
PureState evolve_dense_oracle(const IsingChain& chain, const PureState& state, double time);

}  // namespace locent
