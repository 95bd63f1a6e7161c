// Copyright 2026 The rotlog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "rotlog/logical_states.hpp"
#include "rotlog/rng.hpp"
#include "rotlog/serialize.hpp"

namespace {

using rotlog::AngleConvention;
using rotlog::ComplexMatrix;
using rotlog::cplx;
using rotlog::Encoding;
using rotlog::LogicalAmplitudes;
using rotlog::Pauli;
using rotlog::PauliSum;
using rotlog::RotationParams;
using rotlog::StateVector;

const double kPi = std::acos(-1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("logical basis states", "[logical_states]") {
  SECTION("GHZ mode: both basis states are the shared GHZ state") {
    const auto [zero_l, one_l] = rotlog::stabilizer_logical_basis(3, Encoding::ghz);
    CHECK(std::abs(zero_l[0] - cplx{kInvSqrt2, 0.0}) < 1e-15);
    CHECK(std::abs(zero_l[7] - cplx{kInvSqrt2, 0.0}) < 1e-15);
    for (std::size_t i = 1; i < 7; ++i) CHECK(std::abs(zero_l[i]) == 0.0);
    CHECK(rotlog::fidelity(zero_l, one_l) == Catch::Approx(1.0).margin(1e-14));
  }

  SECTION("n=2: the printed 1/sqrt(2^(n-1)) prefactor is already normalized") {
    const auto [zero_l, one_l] = rotlog::stabilizer_logical_basis(2, Encoding::ghz);
    const double printed_prefactor = 1.0 / std::sqrt(std::pow(2.0, 2 - 1));
    CHECK(std::abs(zero_l[0] - cplx{printed_prefactor, 0.0}) < 1e-15);
    CHECK(zero_l.is_normalized());
    CHECK(one_l.is_normalized());
  }

  SECTION("repetition mode: distinguishable |0^n> and |1^n>") {
    const auto [zero_l, one_l] = rotlog::stabilizer_logical_basis(3, Encoding::repetition);
    CHECK(std::abs(zero_l[0] - cplx{1.0, 0.0}) == 0.0);
    CHECK(std::abs(one_l[7] - cplx{1.0, 0.0}) == 0.0);
    CHECK(rotlog::fidelity(zero_l, one_l) == 0.0);
  }

  SECTION("qubit-count guard") {
    CHECK_THROWS_AS(rotlog::stabilizer_logical_basis(1, Encoding::ghz), std::invalid_argument);
    CHECK_THROWS_AS(rotlog::stabilizer_logical_basis(13, Encoding::ghz), std::invalid_argument);
  }

  SECTION("encoding names round-trip") {
    CHECK(rotlog::encoding_from_string("ghz") == Encoding::ghz);
    CHECK(rotlog::encoding_from_string("repetition") == Encoding::repetition);
    CHECK_THROWS_AS(rotlog::encoding_from_string("steane"), std::invalid_argument);
  }
}

TEST_CASE("rotated basis states", "[logical_states]") {
  SECTION("zero rotation is the identity") {
    const RotationParams rot{};
    const auto [zero_r, one_r] = rotlog::rotated_basis(2, rot, Encoding::repetition);
    const auto [zero_l, one_l] = rotlog::stabilizer_logical_basis(2, Encoding::repetition);
    CHECK(rotlog::distance2(zero_r, zero_l) < 1e-15);
    CHECK(rotlog::distance2(one_r, one_l) < 1e-15);
  }

  SECTION("n=2 amplitudes equal the tensor-product matrix action") {
    RotationParams rot;
    rot.theta = kPi / 2.0;
    const auto [zero_r, one_r] = rotlog::rotated_basis(2, rot, Encoding::ghz);

    const ComplexMatrix rx = rotation(Pauli::X, rot.theta, AngleConvention::half_angle);
    const ComplexMatrix u2 = rotlog::tensor({rx, rx});
    // GHZ amplitudes (|00> + |11>)/sqrt(2) as a column, then u2 applied.
    std::vector<cplx> want(4, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < 4; ++r) {
      want[r] = (u2(r, 0) + u2(r, 3)) * kInvSqrt2;
    }
    for (std::size_t r = 0; r < 4; ++r) {
      CAPTURE(r);
      CHECK(std::abs(zero_r[r] - want[r]) < 1e-12);
    }
  }

  SECTION("a 2 pi rotation flips the global sign only") {
    RotationParams rot;
    rot.theta = 2.0 * kPi;
    const auto [zero_r, one_r] = rotlog::rotated_basis(3, rot, Encoding::repetition);
    const auto [zero_l, one_l] = rotlog::stabilizer_logical_basis(3, Encoding::repetition);
    // Per qubit the rotation is -I, so the state picks up (-1)^3.
    CHECK(std::abs(zero_r[0] - cplx{-1.0, 0.0}) < 1e-12);
    CHECK(std::abs(rotlog::overlap(zero_r, zero_l)) == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("rotated logical superpositions", "[logical_states]") {
  SECTION("trivial amplitudes reproduce the GHZ state") {
    const StateVector psi =
        rotlog::rotated_logical_state(LogicalAmplitudes{}, 3, RotationParams{}, Encoding::ghz);
    CHECK(std::abs(psi[0] - cplx{kInvSqrt2, 0.0}) < 1e-14);
    CHECK(std::abs(psi[7] - cplx{kInvSqrt2, 0.0}) < 1e-14);
  }

  SECTION("superposition form equals the per-qubit product form") {
    LogicalAmplitudes amps;
    amps.a0 = kInvSqrt2;
    amps.a1 = kInvSqrt2;
    RotationParams rot;
    rot.theta = kPi / 4.0;
    rot.phi = kPi / 3.0;
    const StateVector psi = rotlog::rotated_logical_state(amps, 2, rot, Encoding::ghz);

    // Product form: (|R_0>|R_0> + |R_1>|R_1>)/sqrt(2) with |R_b> = R_x R_z |b>.
    const ComplexMatrix u = rotation(Pauli::X, rot.theta, AngleConvention::half_angle) *
                            rotation(Pauli::Z, rot.phi, AngleConvention::half_angle);
    std::vector<cplx> amps_prod(4);
    for (std::size_t i = 0; i < 4; ++i) {
      const std::size_t b0 = i & 1, b1 = (i >> 1) & 1;
      amps_prod[i] = (u(b0, 0) * u(b1, 0) + u(b0, 1) * u(b1, 1)) * kInvSqrt2;
    }
    const StateVector product(2, amps_prod);
    CHECK(rotlog::fidelity(psi, product) == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("a0 + a1 = 0 is rejected in the GHZ encoding") {
    LogicalAmplitudes amps;
    amps.a0 = kInvSqrt2;
    amps.a1 = -kInvSqrt2;
    CHECK_THROWS_AS(rotlog::rotated_logical_state(amps, 3, RotationParams{}, Encoding::ghz),
                    std::invalid_argument);
    // The repetition encoding keeps such superpositions.
    CHECK_NOTHROW(rotlog::rotated_logical_state(amps, 3, RotationParams{}, Encoding::repetition));
  }

  SECTION("superposition closure against the rotated basis") {
    LogicalAmplitudes amps;
    amps.a0 = cplx{0.6, 0.0};
    amps.a1 = cplx{0.0, 0.8};
    RotationParams rot;
    rot.theta = 0.37;
    rot.phi = 1.21;
    const StateVector direct = rotlog::rotated_logical_state(amps, 3, rot, Encoding::repetition);
    const auto [zero_r, one_r] = rotlog::rotated_basis(3, rot, Encoding::repetition);
    std::vector<cplx> mix(direct.dim());
    for (std::size_t i = 0; i < direct.dim(); ++i) {
      mix[i] = amps.a0 * zero_r[i] + amps.a1 * one_r[i];
    }
    const StateVector recombined(3, mix);
    CHECK(rotlog::distance2(direct, recombined) < 1e-12);
  }
}

TEST_CASE("rotation preserves inner products", "[logical_states]") {
  rotlog::CounterRng rng(41, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(rng.next_u64() % 3);
    RotationParams rot;
    rot.theta = kPi * rng.uniform();
    rot.phi = kPi * rng.uniform();

    std::vector<cplx> a(std::size_t{1} << n), b(std::size_t{1} << n);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = cplx{rng.normal(), rng.normal()};
      b[i] = cplx{rng.normal(), rng.normal()};
    }
    StateVector sa(n, a), sb(n, b);
    const cplx before = rotlog::overlap(sa, sb);

    const ComplexMatrix u = rotation(Pauli::X, rot.theta, AngleConvention::half_angle) *
                            rotation(Pauli::Z, rot.phi, AngleConvention::half_angle);
    for (unsigned q = 0; q < n; ++q) {
      rotlog::apply_single_qubit(sa, u, q);
      rotlog::apply_single_qubit(sb, u, q);
    }
    REQUIRE(std::abs(rotlog::overlap(sa, sb) - before) < 1e-12);
  }
}

TEST_CASE("chain generators", "[logical_states]") {
  const auto gens3 = rotlog::chain_generators(3);
  REQUIRE(gens3.size() == 2);
  CHECK(gens3[0].letters_string() == "ZZI");
  CHECK(gens3[1].letters_string() == "IZZ");
  CHECK(gens3[0].phase() == cplx{1.0, 0.0});

  const auto gens2 = rotlog::chain_generators(2);
  REQUIRE(gens2.size() == 1);
  CHECK(gens2[0].letters_string() == "ZZ");

  CHECK(rotlog::chain_generators(5).size() == 4);
  CHECK_THROWS_AS(rotlog::chain_generators(1), std::invalid_argument);
}

TEST_CASE("rotated generators", "[logical_states]") {
  SECTION("zero angle leaves the generator alone, for any phi") {
    RotationParams rot;
    rot.phi = 2.17;
    const PauliSum g = rotlog::rotated_generator(0, 3, rot);
    REQUIRE(g.size() == 1);
    CHECK(std::abs(g.coeff("ZZI") - cplx{1.0, 0.0}) < 1e-12);
  }

  SECTION("full-angle pi/8 gives the {0.5, -0.5, -0.5, 0.5} pattern") {
    RotationParams rot;
    rot.theta = kPi / 8.0;
    rot.convention = AngleConvention::full_angle;
    const PauliSum g = rotlog::rotated_generator(0, 2, rot);
    CHECK(g.coeff("ZZ").real() == Catch::Approx(0.5).margin(1e-12));
    CHECK(g.coeff("ZY").real() == Catch::Approx(-0.5).margin(1e-12));
    CHECK(g.coeff("YZ").real() == Catch::Approx(-0.5).margin(1e-12));
    CHECK(g.coeff("YY").real() == Catch::Approx(0.5).margin(1e-12));
  }

  SECTION("full-angle pi/4 rotates ZZ into YY") {
    RotationParams rot;
    rot.theta = kPi / 4.0;
    rot.convention = AngleConvention::full_angle;
    const PauliSum g = rotlog::rotated_generator(0, 2, rot);
    CHECK(std::abs(g.coeff("YY") - cplx{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(g.coeff("ZZ")) < 1e-12);
  }

  SECTION("coefficients are real and norm-preserving") {
    rotlog::CounterRng rng(43, 0);
    for (int trial = 0; trial < 20; ++trial) {
      RotationParams rot;
      rot.theta = 2.0 * kPi * rng.uniform();
      rot.phi = 2.0 * kPi * rng.uniform();
      const PauliSum g = rotlog::rotated_generator(0, 2, rot);
      double norm2 = 0.0;
      for (const auto& [letters, c] : g.terms()) {
        REQUIRE(std::abs(c.imag()) < 1e-10);
        norm2 += std::norm(c);
      }
      REQUIRE(norm2 == Catch::Approx(1.0).margin(1e-10));
    }
  }

  SECTION("generator index guard") {
    CHECK_THROWS_AS(rotlog::rotated_generator(2, 3, RotationParams{}), std::invalid_argument);
  }
}

TEST_CASE("rotated logical operators", "[logical_states]") {
  SECTION("zero rotation: X_L = X^n and Z_L = Z_0") {
    const auto ops = rotlog::rotated_logical_operators(3, RotationParams{});
    REQUIRE(ops.x_logical.size() == 1);
    CHECK(std::abs(ops.x_logical.coeff("XXX") - cplx{1.0, 0.0}) < 1e-12);
    REQUIRE(ops.z_logical.size() == 1);
    CHECK(std::abs(ops.z_logical.coeff("ZII") - cplx{1.0, 0.0}) < 1e-12);
  }

  SECTION("single-site sanity: conjugating X by R_z(phi) full-angle") {
    const double phi = 0.63;
    const PauliSum mixed = rotlog::pauli_decompose(
        rotlog::conjugate(rotation(Pauli::Z, phi, AngleConvention::full_angle),
                          pauli_matrix(Pauli::X)),
        1);
    CHECK(std::abs(mixed.coeff("X") - cplx{std::cos(2.0 * phi), 0.0}) < 1e-12);
    CHECK(std::abs(mixed.coeff("Y") - cplx{std::sin(2.0 * phi), 0.0}) < 1e-12);
  }

  SECTION("X_L is untouched by a pure X rotation") {
    RotationParams rot;
    rot.theta = kPi / 8.0;
    const auto ops = rotlog::rotated_logical_operators(2, rot);
    REQUIRE(ops.x_logical.size() == 1);
    CHECK(std::abs(ops.x_logical.coeff("XX") - cplx{1.0, 0.0}) < 1e-12);
  }

  SECTION("the printed Z_L sandwich differs from plain conjugation when both angles act") {
    RotationParams rot;
    rot.theta = 0.4;
    rot.phi = 0.9;
    const auto ops = rotlog::rotated_logical_operators(2, rot);
    const PauliSum exact = rotlog::rotated_logical_z_exact(2, rot);
    // Both are unitary conjugations of Z_0 (unit norm, real coefficients)...
    double norm_printed = 0.0, norm_exact = 0.0;
    for (const auto& [l, c] : ops.z_logical.terms()) norm_printed += std::norm(c);
    for (const auto& [l, c] : exact.terms()) norm_exact += std::norm(c);
    CHECK(norm_printed == Catch::Approx(1.0).margin(1e-10));
    CHECK(norm_exact == Catch::Approx(1.0).margin(1e-10));
    // ...but the operator orders do not commute, so the results differ.
    double diff = 0.0;
    for (const char* letters : {"XI", "YI", "ZI"}) {
      diff = std::max(diff, std::abs(ops.z_logical.coeff(letters) - exact.coeff(letters)));
    }
    CHECK(diff > 1e-3);
  }
}

TEST_CASE("stabilization checks", "[logical_states]") {
  const auto [ghz, unused] = rotlog::stabilizer_logical_basis(3, Encoding::ghz);

  PauliSum zzi(3);
  zzi.add_term("ZZI", 1.0);
  CHECK(rotlog::stabilizes(zzi, ghz));
  CHECK(rotlog::stabilization_residual(zzi, ghz) < 1e-12);

  PauliSum xii(3);
  xii.add_term("XII", 1.0);
  CHECK_FALSE(rotlog::stabilizes(xii, ghz));
}

TEST_CASE("rotated generators stabilize rotated logical states", "[logical_states]") {
  rotlog::CounterRng rng(47, 0);
  for (int trial = 0; trial < 12; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(rng.next_u64() % 7);  // 2..8
    RotationParams rot;
    rot.theta = kPi * rng.uniform();
    rot.phi = kPi * rng.uniform();
    LogicalAmplitudes amps;
    amps.a0 = cplx{rng.normal(), rng.normal()};
    amps.a1 = cplx{rng.normal(), rng.normal()};
    const Encoding enc = (trial % 2 == 0) ? Encoding::repetition : Encoding::ghz;
    if (enc == Encoding::ghz && std::abs(amps.a0 + amps.a1) < 1e-6) amps.a1 = amps.a0;

    const StateVector psi = rotlog::rotated_logical_state(amps, n, rot, enc);
    for (unsigned j = 0; j + 1 < n; ++j) {
      const PauliSum g = rotlog::rotated_generator(j, n, rot);
      CAPTURE(n, j, rot.theta, rot.phi);
      REQUIRE(rotlog::stabilization_residual(g, psi) < 1e-10);
    }
  }
}

TEST_CASE("state JSON document", "[logical_states]") {
  // Amplitudes are serialized in basis-index order with qubit 0 as the least
  // significant bit: X on qubit 0 of |00> populates index 1, not index 2.
  StateVector flipped(2);
  rotlog::apply_single_qubit(flipped, rotlog::pauli_matrix(Pauli::X), 0);
  const rotlog::ordered_json jf = rotlog::state_to_json(flipped);
  CHECK(jf.at("n") == 2);
  REQUIRE(jf.at("amps").size() == 4);
  CHECK(jf.at("amps")[1][0].get<double>() == 1.0);
  CHECK(jf.at("amps")[2][0].get<double>() == 0.0);

  const StateVector ghz = rotlog::stabilizer_logical_basis(2, Encoding::ghz).first;
  const rotlog::ordered_json j = rotlog::state_to_json(ghz);
  CHECK(j.at("amps")[0][0].get<double>() == Catch::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(j.at("amps")[3][0].get<double>() == Catch::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(j.at("amps")[1][0].get<double>() == 0.0);

  // Round trip is exact, including phases.
  RotationParams rot;
  rot.theta = 0.37;
  rot.phi = 1.21;
  const StateVector psi =
      rotlog::rotated_logical_state(LogicalAmplitudes{{0.6, 0.1}, {0.2, -0.7}}, 3, rot,
                                    Encoding::repetition);
  const StateVector back = rotlog::state_from_json(rotlog::state_to_json(psi));
  REQUIRE(back.n_qubits() == 3);
  for (std::size_t i = 0; i < psi.dim(); ++i) CHECK(back[i] == psi[i]);

  CHECK_THROWS_AS(rotlog::state_from_json({{"n", 2}, {"amps", {{1.0, 0.0}}}}),
                  std::invalid_argument);
}
