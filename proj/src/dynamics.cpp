#include "locent/dynamics.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "locent/errors.hpp"

namespace locent {

namespace {

void check_dimensions(const IsingChain& chain, const PureState& state) {
  if (chain.num_qubits() != state.num_qubits()) {
    throw InputError("chain has " + std::to_string(chain.num_qubits()) + " sites but state has " +
                     std::to_string(state.num_qubits()) + " qubits");
  }
}

Eigen::MatrixXd hadamard_product(int n) {
  const auto dim = Eigen::Index{1} << n;
  Eigen::MatrixXd w(dim, dim);
  const double scale = std::pow(2.0, -0.5 * n);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) w(r, c) = (std::popcount(static_cast<unsigned>(r & c)) % 2 ? -scale : scale);
  return w;
}

}  // namespace

IsingChain::IsingChain(int num_qubits, double coupling_j) : num_qubits_(num_qubits), coupling_j_(coupling_j) {
  if (num_qubits < kMinQubits || num_qubits > kMaxQubits) throw InputError("Ising chain needs 2 to 10 sites");
  if (!std::isfinite(coupling_j) || coupling_j == 0.0) throw InputError("coupling J must be finite and nonzero");
}

PureState evolve(const IsingChain& chain, const PureState& state, double time) {
  check_dimensions(chain, state);
  if (!std::isfinite(time)) throw InputError("evolution time must be finite");
  const int n = chain.num_qubits();
  const double c = std::cos(chain.coupling_j() * time);
  const Complex mis(0.0, -std::sin(chain.coupling_j() * time));
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  std::vector<Complex> next(amps.size());
  for (int k = 1; k < n; ++k) {
    const std::size_t flip = (std::size_t{1} << (n - k)) | (std::size_t{1} << (n - k - 1));
    for (std::size_t i = 0; i < amps.size(); ++i) next[i] = c * amps[i] + mis * amps[i ^ flip];
    amps.swap(next);
  }
  return PureState(n, std::move(amps));
}

Eigen::MatrixXd dense_hamiltonian(const IsingChain& chain) {
  const int n = chain.num_qubits();
  const auto dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 1; k < n; ++k) {
    const auto flip = (Eigen::Index{1} << (n - k)) | (Eigen::Index{1} << (n - k - 1));
    for (Eigen::Index i = 0; i < dim; ++i) h(i ^ flip, i) += chain.coupling_j();
  }
  return h;
}

Eigen::VectorXd x_basis_spectrum(const IsingChain& chain) {
  const auto w = hadamard_product(chain.num_qubits());
  const Eigen::MatrixXd d = w * dense_hamiltonian(chain) * w;
  const Eigen::MatrixXd off = d - Eigen::MatrixXd(d.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() > 1e-10) throw NumericalError("Hamiltonian is not diagonal in the X basis");
  return d.diagonal();
}

PureState evolve_dense_oracle(const IsingChain& chain, const PureState& state, double time) {
  check_dimensions(chain, state);
  if (chain.num_qubits() > 8) throw InputError("dense oracle supports at most 8 qubits");
  const auto w = hadamard_product(chain.num_qubits());
  const Eigen::VectorXd spectrum = x_basis_spectrum(chain);
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(state.dimension()));
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = state[static_cast<std::size_t>(i)];
  Eigen::VectorXcd phased = w.cast<Complex>() * psi;
  for (Eigen::Index i = 0; i < phased.size(); ++i) phased(i) *= std::polar(1.0, -spectrum(i) * time);
  const Eigen::VectorXcd out = w.cast<Complex>() * phased;
  return PureState(chain.num_qubits(), std::vector<Complex>(out.data(), out.data() + out.size()));
}

}  // namespace locent
