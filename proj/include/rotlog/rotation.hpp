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
 * @file rotation.hpp
 * @brief Single-qubit rotation operators and conjugation identities.
 *
 * Two angle conventions coexist in the rotated-code literature and both are
 * supported explicitly rather than silently normalized:
 *
 *   half_angle:  R_a(t) = cos(t/2) I - i sin(t/2) sigma_a   (exp(-i t/2 sigma_a))
 *   full_angle:  R_a(t) = cos(t)   I - i sin(t)   sigma_a
 *
 * A full_angle operator with parameter t equals the half_angle operator with
 * parameter 2t, so conjugation identities derived in one convention carry
 * over with a doubled angle. Every function below takes the convention
 * explicitly or fixes it in its name.
 */

#include <array>
#include <cmath>

#include "rotlog/complex_matrix.hpp"
#include "rotlog/pauli.hpp"

namespace rotlog {

enum class AngleConvention { half_angle, full_angle };

/// Rotation-angle bundle shared by the state constructions and the sampler:
/// theta is the X-rotation angle, phi the Z-rotation angle, lambda_dec the
/// decay rate entering the distance deformation exp(-lambda (theta^2+phi^2)).
struct RotationParams {
  double theta = 0.0;
  double phi = 0.0;
  double lambda_dec = 1.0;
  AngleConvention convention = AngleConvention::half_angle;
};

namespace detail {
inline void require_axis(Pauli axis, const char* fn) {
  if (axis == Pauli::I) {
    throw std::invalid_argument(std::string(fn) + ": axis must be X, Y or Z");
  }
}
}  // namespace detail

/// Single-qubit rotation about a Pauli axis under the given convention.
inline ComplexMatrix rotation(Pauli axis, double angle, AngleConvention convention) {
  detail::require_axis(axis, "rotation");
  const double half = (convention == AngleConvention::half_angle) ? angle / 2.0 : angle;
  return ComplexMatrix::identity(2) * cplx{std::cos(half), 0.0} +
         pauli_matrix(axis) * cplx{0.0, -std::sin(half)};
}

/**
 * Rotation about an arbitrary unit axis: exp(-i theta/2 n.sigma).
 * The axis is normalized here; a near-zero axis vector is an error.
 */
inline ComplexMatrix rotation_axis(const std::array<double, 3>& axis, double theta) {
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (len < 1e-12) throw std::invalid_argument("rotation_axis: axis vector is zero");
  const double h = theta / 2.0;
  const cplx ims{0.0, -std::sin(h)};
  ComplexMatrix out = ComplexMatrix::identity(2) * cplx{std::cos(h), 0.0};
  out = out + pauli_matrix(Pauli::X) * (ims * (axis[0] / len));
  out = out + pauli_matrix(Pauli::Y) * (ims * (axis[1] / len));
  out = out + pauli_matrix(Pauli::Z) * (ims * (axis[2] / len));
  return out;
}

/// Exact unitary conjugation u m u^dagger. u must be unitary.
inline ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) {
  if (u.rows() != u.cols() || m.rows() != m.cols() || u.rows() != m.rows()) {
    throw std::invalid_argument("conjugate: operands must be square and same size");
  }
  if (!u.is_unitary(1e-10)) throw std::invalid_argument("conjugate: u is not unitary");
  return u * m * u.adjoint();
}

/**
 * Closed-form axis-mixing rule for conjugating a Pauli by a rotation:
 *   R_n(t) sigma_m R_n(t)^dag = cos(t) sigma_m + sin(t) (sigma_n x sigma_m)
 *                               + (1 - cos(t)) (n.m) sigma_n
 * with the cross product resolved as eps_{nmc} sigma_c (no imaginary unit).
 * This matches exact conjugation under the half_angle convention; see
 * conjugate_2theta for the full_angle counterpart.
 */
inline PauliSum rodrigues_conjugate(Pauli axis, Pauli target, double theta) {
  detail::require_axis(axis, "rodrigues_conjugate");
  detail::require_axis(target, "rodrigues_conjugate (target)");
  PauliSum out(1);
  if (axis == target) {
    out.add_term(std::string(1, pauli_char(target)), 1.0);
    return out;
  }
  Pauli third;
  const int e = epsilon(axis, target, third);
  out.add_term(std::string(1, pauli_char(target)), std::cos(theta));
  out.add_term(std::string(1, pauli_char(third)), e * std::sin(theta));
  return out;
}

/// Axis-mixing rule under the full_angle convention: R(theta)_full equals
/// R(2 theta)_half, so the mixing angle doubles.
inline PauliSum conjugate_2theta(Pauli axis, Pauli target, double theta) {
  return rodrigues_conjugate(axis, target, 2.0 * theta);
}

/**
 * Literal first-order commutator mixing rule
 *   [R_a(alpha), sigma_b] = (cos(alpha) - 1) sigma_b + sin(alpha) (sigma_a x sigma_b)
 * with the cross product resolved as i eps_{abc} sigma_c. An aligned target
 * (a == b) commutes, so that case is the zero matrix exactly. The exact
 * operator commutator is available as commutator(rotation(...), ...).
 */
inline ComplexMatrix paper_commutator(Pauli a, Pauli b, double alpha) {
  detail::require_axis(a, "paper_commutator");
  detail::require_axis(b, "paper_commutator (target)");
  if (a == b) return ComplexMatrix::zeros(2, 2);
  ComplexMatrix out = pauli_matrix(b) * cplx{std::cos(alpha) - 1.0, 0.0};
  Pauli third;
  const int e = epsilon(a, b, third);
  out = out + pauli_matrix(third) * (cplx{0.0, 1.0} * cplx{e * std::sin(alpha), 0.0});
  return out;
}

}  // namespace rotlog
