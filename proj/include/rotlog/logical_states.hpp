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

#pragma once

/**
 * @file logical_states.hpp
 * @brief Chain-code logical states, their rotated images, and stabilizers.
 *
 * Two encodings are provided:
 *
 *  - Encoding::ghz ("GHZ-type"): both logical basis states are built from the
 *    XOR rule over the codeword set {0^n, 1^n}, which makes |0_L> and |1_L>
 *    the SAME normalized GHZ state (|0^n> + |1^n>)/sqrt(2). The encoding is
 *    degenerate by construction: a logical superposition a0|0_L> + a1|1_L>
 *    collapses to (a0 + a1) times the GHZ state, and a0 + a1 == 0 yields the
 *    null vector, which is rejected.
 *
 *  - Encoding::repetition: |0_L> = |0^n>, |1_L> = |1^n>. Non-degenerate, and
 *    the natural choice when a logical-error rate is to be measured.
 *
 * All rotated objects use the per-qubit unitary U = R_x(theta) R_z(phi),
 * with R_z acting first on the state, under the convention carried by
 * RotationParams.
 */

#include <string>
#include <utility>
#include <vector>

#include "rotlog/pauli.hpp"
#include "rotlog/rotation.hpp"
#include "rotlog/statevector.hpp"

namespace rotlog {

enum class Encoding { ghz, repetition };

inline const char* to_string(Encoding e) { return e == Encoding::ghz ? "ghz" : "repetition"; }

inline Encoding encoding_from_string(const std::string& s) {
  if (s == "ghz") return Encoding::ghz;
  if (s == "repetition") return Encoding::repetition;
  throw std::invalid_argument("unknown encoding '" + s + "' (expected ghz or repetition)");
}

/// Logical amplitudes (a0, a1) for a0|0_L> + a1|1_L>.
struct LogicalAmplitudes {
  cplx a0{1.0, 0.0};
  cplx a1{0.0, 0.0};
};

namespace detail {
inline void require_n(unsigned n, const char* fn) {
  if (n < 2 || n > 12) {
    throw std::invalid_argument(std::string(fn) + ": qubit count must be in [2, 12]");
  }
}

/// Per-qubit rotation U = R_x(theta) * R_z(phi) (R_z acts first).
inline ComplexMatrix site_rotation(const RotationParams& rot) {
  return rotation(Pauli::X, rot.theta, rot.convention) *
         rotation(Pauli::Z, rot.phi, rot.convention);
}

/// Reversed-order per-qubit rotation V = R_z(phi) * R_x(theta).
inline ComplexMatrix site_rotation_reversed(const RotationParams& rot) {
  return rotation(Pauli::Z, rot.phi, rot.convention) *
         rotation(Pauli::X, rot.theta, rot.convention);
}

/// Decompose a 2x2 operator into single-qubit Pauli coefficients.
inline PauliSum site_decompose(const ComplexMatrix& m) { return pauli_decompose(m, 1); }
}  // namespace detail

/**
 * The two logical basis states of the n-qubit chain code.
 * For Encoding::ghz both returned states are the same GHZ state (see file
 * comment); for Encoding::repetition they are |0^n> and |1^n>.
 */
inline std::pair<StateVector, StateVector> stabilizer_logical_basis(unsigned n,
                                                                    Encoding encoding) {
  detail::require_n(n, "stabilizer_logical_basis");
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t all_ones = dim - 1;
  StateVector zero_l(n), one_l(n);
  if (encoding == Encoding::repetition) {
    // |0_L> = |0^n> is the constructor default; |1_L> = |1^n>.
    one_l[0] = 0.0;
    one_l[all_ones] = 1.0;
    return {zero_l, one_l};
  }
  // XOR rule over the codeword set V = {0^n, 1^n}: |x_L> = sum_v |v XOR x^n>,
  // normalized. Both logical states come out identical.
  zero_l[0] = 0.0;
  for (std::size_t v : {std::size_t{0}, all_ones}) zero_l[v] = 1.0;
  zero_l.normalize();
  one_l[0] = 0.0;
  for (std::size_t v : {std::size_t{0}, all_ones}) one_l[v ^ all_ones] = 1.0;
  one_l.normalize();
  return {zero_l, one_l};
}

/// Rotated logical basis: per-qubit U = R_x(theta) R_z(phi) applied to both
/// logical basis states.
inline std::pair<StateVector, StateVector> rotated_basis(unsigned n, const RotationParams& rot,
                                                         Encoding encoding) {
  auto [zero_l, one_l] = stabilizer_logical_basis(n, encoding);
  const ComplexMatrix u = detail::site_rotation(rot);
  for (unsigned q = 0; q < n; ++q) {
    apply_single_qubit(zero_l, u, q);
    apply_single_qubit(one_l, u, q);
  }
  return {std::move(zero_l), std::move(one_l)};
}

/**
 * Rotated logical state a0|0_L^R> + a1|1_L^R>, renormalized.
 * In the GHZ encoding the two rotated basis states coincide, so the result is
 * the rotated GHZ state scaled by (a0 + a1); amplitudes with a0 + a1 == 0
 * therefore describe the null vector and are rejected.
 */
inline StateVector rotated_logical_state(const LogicalAmplitudes& amps, unsigned n,
                                         const RotationParams& rot, Encoding encoding) {
  if (encoding == Encoding::ghz && std::abs(amps.a0 + amps.a1) < kStateNormTol) {
    throw std::invalid_argument(
        "rotated_logical_state: a0 + a1 = 0 yields the null vector in the GHZ encoding");
  }
  auto [zero_r, one_r] = rotated_basis(n, rot, encoding);
  StateVector out(n);
  for (std::size_t i = 0; i < out.dim(); ++i) {
    out[i] = amps.a0 * zero_r[i] + amps.a1 * one_r[i];
  }
  out.normalize();
  return out;
}

/// Chain stabilizer generators S_j = Z_j Z_{j+1}, j in [0, n-2].
inline std::vector<PauliString> chain_generators(unsigned n) {
  detail::require_n(n, "chain_generators");
  std::vector<PauliString> out;
  out.reserve(n - 1);
  for (unsigned j = 0; j + 1 < n; ++j) {
    std::vector<Pauli> letters(n, Pauli::I);
    letters[j] = Pauli::Z;
    letters[j + 1] = Pauli::Z;
    out.emplace_back(std::move(letters), 0);
  }
  return out;
}

/**
 * Rotated stabilizer generator S_j^R = U S_j U^dag with U the per-qubit
 * rotation tensor, expanded in the Pauli-string basis. Computed per site
 * (conjugation factorizes over the tensor product), so it scales to the full
 * supported qubit range. Under the full_angle convention with angle theta the
 * two-site coefficients are
 *   ZZ: cos^2(2 theta), ZY and YZ: -cos(2 theta) sin(2 theta), YY: sin^2(2 theta)
 * and are independent of phi (the Z rotation commutes with Z).
 */
inline PauliSum rotated_generator(unsigned j, unsigned n, const RotationParams& rot) {
  detail::require_n(n, "rotated_generator");
  if (j + 1 >= n) {
    throw std::invalid_argument("rotated_generator: generator index out of range");
  }
  const ComplexMatrix u = detail::site_rotation(rot);
  const PauliSum site = detail::site_decompose(conjugate(u, pauli_matrix(Pauli::Z)));
  PauliSum out(n);
  for (const auto& [la, ca] : site.terms()) {
    for (const auto& [lb, cb] : site.terms()) {
      std::string letters(n, 'I');
      letters[j] = la[0];
      letters[j + 1] = lb[0];
      out.add_term(letters, ca * cb);
    }
  }
  return out;
}

/// Rotated logical operators, expanded in the Pauli-string basis.
struct RotatedLogicalOps {
  PauliSum x_logical;  // sandwich order U X_L U^dag with U = R_x R_z per site
  PauliSum z_logical;  // sandwich order V Z_L V^dag with V = R_z R_x per site
};

/**
 * Rotated images of X_L = X^(x)n and Z_L = Z_0.
 * The two printed sandwich orders differ: X_L is conjugated by
 * U = R_x(theta) R_z(phi) per site, while Z_L is conjugated by the reversed
 * product V = R_z(phi) R_x(theta) per site. Both are proper unitary
 * conjugations; rotated_logical_z_exact gives the U-conjugated Z_L for
 * comparison.
 */
inline RotatedLogicalOps rotated_logical_operators(unsigned n, const RotationParams& rot) {
  detail::require_n(n, "rotated_logical_operators");
  RotatedLogicalOps ops;

  // X_L: same single-site factor on every qubit; expand the tensor power.
  const PauliSum site_x =
      detail::site_decompose(conjugate(detail::site_rotation(rot), pauli_matrix(Pauli::X)));
  PauliSum acc(1);
  for (const auto& [l, c] : site_x.terms()) acc.add_term(l, c);
  for (unsigned q = 1; q < n; ++q) {
    PauliSum next(q + 1);
    for (const auto& [prefix, cp] : acc.terms()) {
      for (const auto& [l, c] : site_x.terms()) {
        next.add_term(prefix + l, cp * c);
      }
    }
    acc = std::move(next);
  }
  ops.x_logical = std::move(acc);

  // Z_L = Z on qubit 0, conjugated by the reversed product.
  const PauliSum site_z = detail::site_decompose(
      conjugate(detail::site_rotation_reversed(rot), pauli_matrix(Pauli::Z)));
  PauliSum zl(n);
  for (const auto& [l, c] : site_z.terms()) {
    std::string letters(n, 'I');
    letters[0] = l[0];
    zl.add_term(letters, c);
  }
  ops.z_logical = std::move(zl);
  return ops;
}

/// Z_L conjugated by the same U = R_x R_z as X_L (exact-conjugation variant).
inline PauliSum rotated_logical_z_exact(unsigned n, const RotationParams& rot) {
  detail::require_n(n, "rotated_logical_z_exact");
  const PauliSum site_z =
      detail::site_decompose(conjugate(detail::site_rotation(rot), pauli_matrix(Pauli::Z)));
  PauliSum zl(n);
  for (const auto& [l, c] : site_z.terms()) {
    std::string letters(n, 'I');
    letters[0] = l[0];
    zl.add_term(letters, c);
  }
  return zl;
}

/// Residual ||op|psi> - |psi>||_2 of the eigenvalue-(+1) condition.
inline double stabilization_residual(const PauliSum& op, const StateVector& state) {
  const StateVector mapped = apply_pauli_sum(op, state);
  return distance2(mapped, state);
}

/// True when op stabilizes the state: ||op|psi> - |psi>||_2 < tol.
inline bool stabilizes(const PauliSum& op, const StateVector& state, double tol = 1e-10) {
  return stabilization_residual(op, state) < tol;
}

}  // namespace rotlog
