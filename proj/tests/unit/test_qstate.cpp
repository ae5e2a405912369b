#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "locent/errors.hpp"
#include "locent/qstate.hpp"
#include "test_helpers.hpp"

using namespace locent;
using locent::testing::sites;

TEST_CASE("basis states use qubit 1 as the most significant bit") {
  CHECK(make_basis_state(3, "000")[0] == Complex(1.0));
  CHECK(make_basis_state(3, "111")[7] == Complex(1.0));
  const auto s = make_basis_state(2, "10");
  CHECK(s[2] == Complex(1.0));
  CHECK(std::abs(s[0]) + std::abs(s[1]) + std::abs(s[3]) == 0.0);

  for (int n = 2; n <= 5; ++n) {
    for (std::size_t label = 0; label < (std::size_t{1} << n); ++label) {
      std::string bits;
      for (int k = n - 1; k >= 0; --k) bits.push_back(((label >> k) & 1U) ? '1' : '0');
      CHECK(make_basis_state(n, bits)[label] == Complex(1.0));
    }
  }
  CHECK_THROWS_AS(make_basis_state(3, "01"), InputError);
  CHECK_THROWS_AS(make_basis_state(2, "0x"), InputError);
}

TEST_CASE("GHZ states") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto g3 = ghz(3);
  CHECK(g3[0].real() == doctest::Approx(r));
  CHECK(g3[7].real() == doctest::Approx(r));
  for (std::size_t i = 1; i < 7; ++i) CHECK(std::abs(g3[i]) == 0.0);
  const auto g2 = ghz(2);
  CHECK(g2[0].real() == doctest::Approx(r));
  CHECK(g2[3].real() == doctest::Approx(r));
  const auto g4 = ghz(4);
  CHECK(g4[15].real() == doctest::Approx(r));
  CHECK_THROWS_AS(ghz(1), InputError);
}

TEST_CASE("PureState validates shape and norm") {
  CHECK_THROWS_AS(PureState(2, {1.0, 0.0, 0.0}), InputError);
  CHECK_THROWS_AS(PureState(2, {1.0, 1.0, 0.0, 0.0}), InputError);
  CHECK_THROWS_AS(PureState(11, std::vector<Complex>(2048, 0.0)), InputError);
  CHECK_THROWS_AS(PureState::normalized(2, {0.0, 0.0, 0.0, 0.0}), InputError);
  CHECK(PureState::normalized(2, {1.0, 1.0, 0.0, 0.0}).norm() == doctest::Approx(1.0));
}

TEST_CASE("Haar sampling is deterministic, normalized and has the right marginal") {
  const auto a = haar_random_state(3, 42);
  const auto b = haar_random_state(3, 42);
  CHECK(testing::max_amplitude_error(a, b) == 0.0);
  CHECK(std::abs(haar_random_state(4, 7).norm() - 1.0) <= 1e-12);

  // Monte Carlo: E|a_0|^2 = 1/8 for three qubits.
  constexpr int kSeeds = 10000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int s = 0; s < kSeeds; ++s) {
    const double p = std::norm(haar_random_state(3, static_cast<std::uint64_t>(s))[0]);
    sum += p;
    sum_sq += p * p;
  }
  const double mean = sum / kSeeds;
  const double se = std::sqrt((sum_sq / kSeeds - mean * mean) / kSeeds);
  CHECK(std::abs(mean - 0.125) <= 3.0 * se);
}

TEST_CASE("single-qubit unitaries") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = testing::random_unitary(rng);
    const auto m = u.matrix();
    // U^dagger U = I
    const Complex d00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
    const Complex d01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    const Complex d11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    CHECK(std::abs(d00 - 1.0) <= 1e-12);
    CHECK(std::abs(d01) <= 1e-12);
    CHECK(std::abs(d11 - 1.0) <= 1e-12);
  }

  SUBCASE("identity parameters leave the state unchanged") {
    const auto s = haar_random_state(3, 1);
    CHECK(testing::max_amplitude_error(apply_local_unitary(s, QubitIndex(2), {}), s) <= 1e-15);
  }
  SUBCASE("alpha = pi/2 flips a bit up to phase") {
    const SingleQubitUnitary flip{0.0, 0.0, std::numbers::pi / 2, 0.0};
    const auto out = apply_local_unitary(make_basis_state(3, "000"), QubitIndex(2), flip);
    CHECK(testing::phase_free_error(out, make_basis_state(3, "010")) <= 1e-12);
  }
  SUBCASE("norm is preserved and the inverse undoes the unitary") {
    for (int trial = 0; trial < 50; ++trial) {
      const auto s = haar_random_state(4, static_cast<std::uint64_t>(trial));
      const auto u = testing::random_unitary(rng);
      const QubitIndex site(1 + trial % 4);
      const auto moved = apply_local_unitary(s, site, u);
      CHECK(std::abs(moved.norm() - 1.0) <= 1e-12);
      CHECK(testing::max_amplitude_error(apply_local_unitary(moved, site, u.inverse()), s) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(apply_local_unitary(ghz(3), QubitIndex(4), {}), InputError);
  CHECK_THROWS_AS(apply_local_unitary(ghz(3), QubitIndex(0), {}), InputError);
}

TEST_CASE("projective collapse") {
  SUBCASE("GHZ site 3 outcome 0") {
    const auto p = project_qubit(ghz(3), QubitIndex(3), 0);
    CHECK(p.probability == doctest::Approx(0.5));
    REQUIRE(p.post_state);
    CHECK(testing::max_amplitude_error(*p.post_state, make_basis_state(3, "000")) <= 1e-12);
  }
  SUBCASE("orthogonal outcome is null") {
    const auto p = project_qubit(make_basis_state(3, "000"), QubitIndex(1), 1);
    CHECK(p.probability == 0.0);
    CHECK_FALSE(p.post_state);
  }
  SUBCASE("GHZ in the X basis leaves a Bell pair") {
    const SingleQubitUnitary hadamard_like{0.0, 0.0, std::numbers::pi / 4, 0.0};
    const auto rotated = apply_local_unitary(ghz(3), QubitIndex(3), hadamard_like);
    const double r = 1.0 / std::sqrt(2.0);
    for (int outcome : {0, 1}) {
      const auto p = project_qubit(rotated, QubitIndex(3), outcome);
      CHECK(p.probability == doctest::Approx(0.5));
      REQUIRE(p.post_state);
      std::vector<Complex> expected(8);
      expected[outcome] = r;
      expected[6 + outcome] = outcome == 0 ? -r : r;  // u|1> = (-|0> + |1>)/sqrt2
      CHECK(testing::phase_free_error(*p.post_state, PureState(3, expected)) <= 1e-12);
    }
  }
  SUBCASE("branch probabilities are complete and projection is idempotent") {
    for (int s = 0; s < 30; ++s) {
      const auto state = haar_random_state(4, static_cast<std::uint64_t>(100 + s));
      const QubitIndex site(1 + s % 4);
      const auto p0 = project_qubit(state, site, 0);
      const auto p1 = project_qubit(state, site, 1);
      CHECK(std::abs(p0.probability + p1.probability - 1.0) <= 1e-10);
      const auto again = project_qubit(*p0.post_state, site, 0);
      CHECK(again.probability == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(testing::max_amplitude_error(*again.post_state, *p0.post_state) <= 1e-12);
    }
  }
}

TEST_CASE("reduce_to_pair extracts (a, b, c, d) = (|11>, |10>, |01>, |00>)") {
  const SingleQubitUnitary x_basis{0.0, 0.0, std::numbers::pi / 4, 0.0};
  const auto rotated = apply_local_unitary(ghz(3), QubitIndex(3), x_basis);
  const std::vector<MeasuredSite> plus{{QubitIndex(3), 0}};
  const auto pair = reduce_to_pair(rotated, plus);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(pair.a() + r) <= 1e-12);
  CHECK(std::abs(pair.b()) <= 1e-12);
  CHECK(std::abs(pair.c()) <= 1e-12);
  CHECK(std::abs(pair.d() - r) <= 1e-12);

  const std::vector<MeasuredSite> m{{QubitIndex(2), 1}, {QubitIndex(3), 0}};
  const auto product = reduce_to_pair(make_basis_state(4, "0101"), m);
  CHECK(std::abs(product.c() - 1.0) <= 1e-12);
  CHECK(std::abs(product.a()) + std::abs(product.b()) + std::abs(product.d()) <= 1e-12);

  for (int s = 0; s < 20; ++s) {
    const auto st = haar_random_state(5, static_cast<std::uint64_t>(s));
    const std::vector<MeasuredSite> ms{{QubitIndex(2), s % 2}, {QubitIndex(3), 1}, {QubitIndex(5), 0}};
    CHECK(std::abs(reduce_to_pair(st, ms).norm() - 1.0) <= 1e-12);
  }

  const std::vector<MeasuredSite> wrong{{QubitIndex(2), 1}};
  CHECK_THROWS_AS(reduce_to_pair(make_basis_state(4, "0101"), wrong), InputError);
  const std::vector<MeasuredSite> impossible{{QubitIndex(2), 0}, {QubitIndex(3), 0}};
  CHECK_THROWS_AS(reduce_to_pair(make_basis_state(4, "0101"), impossible), InputError);
}

TEST_CASE("PairState round-trips through the register ordering") {
  const auto reg = haar_random_state(2, 3);
  const auto pair = PairState::from_register(reg);
  CHECK(pair.a() == reg[3]);
  CHECK(pair.d() == reg[0]);
  CHECK(testing::max_amplitude_error(pair.to_register(), reg) == 0.0);
}

TEST_CASE("reduced density purity") {
  CHECK(reduced_density_purity(make_basis_state(4, "0000"), sites(1, 4)) == doctest::Approx(1.0));
  CHECK(reduced_density_purity(ghz(3), sites(1, 2)) == doctest::Approx(0.5));
  // Bell pair on sites 1,2 with site 3 in |0>.
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Complex> amps(8);
  amps[0b000] = r;
  amps[0b110] = r;
  CHECK(reduced_density_purity(PureState(3, amps), sites(1, 2)) == doctest::Approx(1.0));
  for (int s = 0; s < 20; ++s) {
    const double p = reduced_density_purity(haar_random_state(5, static_cast<std::uint64_t>(s)), sites(2, 4));
    CHECK(p >= 0.25 - 1e-12);
    CHECK(p <= 1.0 + 1e-12);
  }
  CHECK_THROWS_AS(reduced_density_purity(ghz(3), sites(2, 2)), InputError);
  CHECK_THROWS_AS(reduced_density_purity(ghz(3), sites(1, 4)), InputError);
}
