#pragma once

#include <array>
#include <complex>
#include <span>

namespace locent::detail {

/// Applies the row-major 2x2 matrix m to the qubit selected by mask, in place.
inline void apply_matrix_in_place(std::span<std::complex<double>> amps, std::size_t mask,
                                  const std::array<std::complex<double>, 4>& m) {
  for (std::size_t block = 0; block < amps.size(); block += 2 * mask) {
    for (std::size_t i = block; i < block + mask; ++i) {
      const auto a0 = amps[i];
      const auto a1 = amps[i + mask];
      amps[i] = m[0] * a0 + m[1] * a1;
      amps[i + mask] = m[2] * a0 + m[3] * a1;
    }
  }
}

}  // namespace locent::detail
