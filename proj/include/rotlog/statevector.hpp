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
 * @file statevector.hpp
 * @brief Little-endian n-qubit state vectors and dense gate application.
 *
 * Basis indexing is little-endian throughout: bit q of a basis index is the
 * value of qubit q, so |index 1> on three qubits means qubit 0 is |1> and
 * qubits 1,2 are |0>.
 */

#include <cstdint>
#include <vector>

#include "rotlog/complex_matrix.hpp"
#include "rotlog/pauli.hpp"

namespace rotlog {

/// Norm tolerance: states are kept normalized to this accuracy.
inline constexpr double kStateNormTol = 1e-12;

class StateVector {
 public:
  StateVector() = default;

  /// All-zeros computational basis state |0...0> on n qubits.
  explicit StateVector(unsigned n_qubits)
      : n_(n_qubits), amps_(check_dim(n_qubits), cplx{0.0, 0.0}) {
    amps_[0] = 1.0;
  }

  StateVector(unsigned n_qubits, std::vector<cplx> amps)
      : n_(n_qubits), amps_(std::move(amps)) {
    if (amps_.size() != check_dim(n_qubits)) {
      throw std::invalid_argument("StateVector: amplitude count does not match qubit count");
    }
  }

  unsigned n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amps() const { return amps_; }
  std::vector<cplx>& amps() { return amps_; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  /// Rescale to unit norm; a numerically null state is an error.
  void normalize() {
    const double nrm = norm();
    if (nrm < kStateNormTol) {
      throw std::invalid_argument("StateVector: cannot normalize a null state");
    }
    for (cplx& a : amps_) a /= nrm;
  }

  bool is_normalized(double tol = kStateNormTol) const {
    return std::abs(norm() - 1.0) <= tol;
  }

 private:
  static std::size_t check_dim(unsigned n) {
    if (n == 0 || n > 12) {
      throw std::invalid_argument("StateVector: qubit count must be in [1, 12]");
    }
    return std::size_t{1} << n;
  }

  unsigned n_ = 0;
  std::vector<cplx> amps_;
};

/// Inner product <a|b>.
inline cplx overlap(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("overlap: qubit counts differ");
  }
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// |<a|b>|^2.
inline double fidelity(const StateVector& a, const StateVector& b) {
  const cplx o = overlap(a, b);
  return std::norm(o);
}

inline double distance2(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("distance2: qubit counts differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

/**
 * Apply a dense 2^k x 2^k gate to the listed target qubits, in place.
 * targets[0] addresses the least significant axis of the gate's index, i.e.
 * gate index bits are (targets[k-1] ... targets[1] targets[0]).
 */
inline void apply_gate_matrix(StateVector& state, const ComplexMatrix& gate,
                              const std::vector<unsigned>& targets) {
  const unsigned k = static_cast<unsigned>(targets.size());
  const std::size_t sub = std::size_t{1} << k;
  if (gate.rows() != sub || gate.cols() != sub) {
    throw std::invalid_argument("apply_gate_matrix: gate shape does not match target count");
  }
  std::uint64_t tmask = 0;
  for (unsigned t : targets) {
    if (t >= state.n_qubits()) {
      throw std::invalid_argument("apply_gate_matrix: target qubit out of range");
    }
    if (tmask & (std::uint64_t{1} << t)) {
      throw std::invalid_argument("apply_gate_matrix: duplicate target qubit");
    }
    tmask |= std::uint64_t{1} << t;
  }
  std::vector<cplx> scratch(sub);
  const std::size_t dim = state.dim();
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & tmask) continue;  // visit each target-cleared block once
    // Gather the 2^k amplitudes of this block.
    for (std::size_t s = 0; s < sub; ++s) {
      std::size_t idx = base;
      for (unsigned a = 0; a < k; ++a) {
        if (s & (std::size_t{1} << a)) idx |= std::size_t{1} << targets[a];
      }
      scratch[s] = state[idx];
    }
    // Multiply and scatter back.
    for (std::size_t r = 0; r < sub; ++r) {
      cplx acc{0.0, 0.0};
      for (std::size_t s = 0; s < sub; ++s) acc += gate(r, s) * scratch[s];
      std::size_t idx = base;
      for (unsigned a = 0; a < k; ++a) {
        if (r & (std::size_t{1} << a)) idx |= std::size_t{1} << targets[a];
      }
      state[idx] = acc;
    }
  }
}

/// Apply a single-qubit gate in place (fast path).
inline void apply_single_qubit(StateVector& state, const ComplexMatrix& gate, unsigned q) {
  if (gate.rows() != 2 || gate.cols() != 2) {
    throw std::invalid_argument("apply_single_qubit: gate must be 2x2");
  }
  if (q >= state.n_qubits()) {
    throw std::invalid_argument("apply_single_qubit: qubit out of range");
  }
  const std::size_t bit = std::size_t{1} << q;
  const cplx g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
  const std::size_t dim = state.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const cplx a0 = state[i];
    const cplx a1 = state[i | bit];
    state[i] = g00 * a0 + g01 * a1;
    state[i | bit] = g10 * a0 + g11 * a1;
  }
}

/// Apply a phased Pauli string: out = P |in>.
inline StateVector apply_pauli_string(const PauliString& p, const StateVector& in) {
  if (p.n_qubits() != in.n_qubits()) {
    throw std::invalid_argument("apply_pauli_string: qubit counts differ");
  }
  const detail::PauliAction act = detail::pauli_action(p.letters_string());
  StateVector out(in.n_qubits());
  out[0] = 0.0;
  const cplx base = p.phase() * detail::i_power(act.y_count);
  for (std::size_t b = 0; b < in.dim(); ++b) {
    const int sgn = __builtin_parityll(b & act.sign_mask) ? -1 : 1;
    out[b ^ act.flip_mask] = base * static_cast<double>(sgn) * in[b];
  }
  return out;
}

/// Apply a weighted Pauli-string sum: out = (sum_s c_s S) |in>.
/// The result is generally not normalized.
inline StateVector apply_pauli_sum(const PauliSum& op, const StateVector& in) {
  if (op.n_qubits() != in.n_qubits()) {
    throw std::invalid_argument("apply_pauli_sum: qubit counts differ");
  }
  StateVector out(in.n_qubits());
  out[0] = 0.0;
  for (const auto& [letters, coeff] : op.terms()) {
    const detail::PauliAction act = detail::pauli_action(letters);
    const cplx base = coeff * detail::i_power(act.y_count);
    for (std::size_t b = 0; b < in.dim(); ++b) {
      const int sgn = __builtin_parityll(b & act.sign_mask) ? -1 : 1;
      out[b ^ act.flip_mask] += base * static_cast<double>(sgn) * in[b];
    }
  }
  return out;
}

}  // namespace rotlog
