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
 * @file pauli.hpp
 * @brief Phased Pauli strings, Pauli-basis decomposition, and group counting.
 *
 * Conventions used throughout:
 *  - A PauliString carries a global phase restricted to {+1, +i, -1, -i},
 *    stored as the exponent k of i^k.
 *  - Letter position q in a string refers to qubit q; basis states are
 *    indexed little-endian (bit q of the index is the value of qubit q).
 *  - Two phase-normalized strings either commute or anticommute, so the
 *    commutation scalar is always +1 or -1; phases cancel between pq and qp.
 */

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rotlog/complex_matrix.hpp"

namespace rotlog {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
  }
}

/// The four single-qubit Pauli matrices.
inline const ComplexMatrix& pauli_matrix(Pauli p) {
  static const ComplexMatrix kI{{1.0, 0.0}, {0.0, 1.0}};
  static const ComplexMatrix kX{{0.0, 1.0}, {1.0, 0.0}};
  static const ComplexMatrix kY{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}};
  static const ComplexMatrix kZ{{1.0, 0.0}, {0.0, -1.0}};
  switch (p) {
    case Pauli::I: return kI;
    case Pauli::X: return kX;
    case Pauli::Y: return kY;
    case Pauli::Z: return kZ;
  }
  throw std::invalid_argument("pauli_matrix: invalid letter");
}

/**
 * Levi-Civita symbol over Pauli letters (X,Y,Z as 1,2,3).
 * Returns +1/-1 for cyclic/anticyclic triples and 0 otherwise, together with
 * the completing letter for a distinct pair.
 */
inline int epsilon(Pauli a, Pauli b, Pauli& third) {
  if (a == Pauli::I || b == Pauli::I || a == b) {
    third = Pauli::I;
    return 0;
  }
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  // Remaining letter index: {1,2,3} \ {ia, ib}.
  const int ic = 6 - ia - ib;
  third = static_cast<Pauli>(ic);
  // (1,2,3), (2,3,1), (3,1,2) are the cyclic (+1) triples.
  const bool cyclic = (ib - ia == 1) || (ib - ia == -2);
  return cyclic ? 1 : -1;
}

/// A tensor product of Pauli letters with a global phase i^k, k in {0,1,2,3}.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(std::vector<Pauli> letters, int phase_exponent = 0)
      : letters_(std::move(letters)), phase_exp_(normalize_exp(phase_exponent)) {}

  /// Parse from letters like "XZI" (position 0 = qubit 0), optional phase
  /// prefix "+", "-", "+i", "-i", "i".
  explicit PauliString(const std::string& text) {
    std::size_t pos = 0;
    int k = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') k = 2;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      k += 1;
      ++pos;
    }
    for (; pos < text.size(); ++pos) letters_.push_back(pauli_from_char(text[pos]));
    phase_exp_ = normalize_exp(k);
  }

  std::size_t n_qubits() const { return letters_.size(); }
  const std::vector<Pauli>& letters() const { return letters_; }
  Pauli letter(std::size_t q) const { return letters_.at(q); }

  /// Global phase as a complex number (one of +1, +i, -1, -i).
  cplx phase() const {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_exp_];
  }

  int phase_exponent() const { return phase_exp_; }

  /// Letters without the phase, e.g. "XZI".
  std::string letters_string() const {
    std::string s;
    s.reserve(letters_.size());
    for (Pauli p : letters_) s.push_back(pauli_char(p));
    return s;
  }

  std::string to_string() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    return prefix[phase_exp_] + letters_string();
  }

  /// Dense matrix representation (phase included).
  ComplexMatrix matrix() const {
    if (letters_.empty()) throw std::invalid_argument("PauliString: empty string has no matrix");
    ComplexMatrix m = pauli_matrix(letters_.back());
    // Qubit 0 is the least significant bit, so it sits rightmost in the kron.
    for (std::size_t q = letters_.size() - 1; q-- > 0;) {
      m = kron(m, pauli_matrix(letters_[q]));
    }
    // kron(high, low): iterate from the top qubit down.
    // (The loop above builds letters_[n-1] (x) ... (x) letters_[0].)
    return m * phase();
  }

  bool operator==(const PauliString& other) const {
    return phase_exp_ == other.phase_exp_ && letters_ == other.letters_;
  }

 private:
  static int normalize_exp(int k) { return ((k % 4) + 4) % 4; }

  std::vector<Pauli> letters_;
  int phase_exp_ = 0;
};

/**
 * Product of two Pauli strings with exact phase tracking.
 * Site-wise: sigma_a * sigma_b = delta_ab I + i eps_abc sigma_c, so the result
 * phase is always a power of i.
 */
inline PauliString mul(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("mul: Pauli strings act on different qubit counts");
  }
  std::vector<Pauli> out(a.n_qubits());
  int k = a.phase_exponent() + b.phase_exponent();
  for (std::size_t q = 0; q < a.n_qubits(); ++q) {
    const Pauli pa = a.letter(q), pb = b.letter(q);
    if (pa == Pauli::I) {
      out[q] = pb;
    } else if (pb == Pauli::I) {
      out[q] = pa;
    } else if (pa == pb) {
      out[q] = Pauli::I;
    } else {
      Pauli third;
      const int e = epsilon(pa, pb, third);
      out[q] = third;
      k += (e == 1) ? 1 : 3;  // i or -i
    }
  }
  return PauliString(std::move(out), k);
}

/**
 * Commutation scalar of two phase-normalized Pauli strings: +1 if they
 * commute, -1 if they anticommute. Global phases cancel between the two
 * orderings, so the result is independent of them.
 */
inline int commutation_scalar(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("commutation_scalar: qubit counts differ");
  }
  int anti = 0;
  for (std::size_t q = 0; q < a.n_qubits(); ++q) {
    const Pauli pa = a.letter(q), pb = b.letter(q);
    if (pa != Pauli::I && pb != Pauli::I && pa != pb) ++anti;
  }
  return (anti % 2 == 0) ? 1 : -1;
}

/**
 * Enumerate the n-qubit Pauli group: all 4^n letter assignments, times the
 * four global phases when include_phases is set. Intended for the small-n
 * regime only (n must be at most 3); the group sizes grow exponentially.
 */
inline std::vector<PauliString> enumerate_pauli_group(unsigned n, bool include_phases) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("enumerate_pauli_group: n must be between 1 and 3");
  }
  std::vector<PauliString> out;
  const std::size_t combos = std::size_t{1} << (2 * n);
  out.reserve(combos * (include_phases ? 4 : 1));
  for (std::size_t code = 0; code < combos; ++code) {
    std::vector<Pauli> letters(n);
    std::size_t c = code;
    for (unsigned q = 0; q < n; ++q) {
      letters[q] = static_cast<Pauli>(c & 3);
      c >>= 2;
    }
    if (include_phases) {
      for (int k = 0; k < 4; ++k) out.emplace_back(letters, k);
    } else {
      out.emplace_back(letters, 0);
    }
  }
  return out;
}

/// Exact decimal rendering of 2^exponent (digit-doubling; no bigint needed).
inline std::string pow2_decimal(unsigned exponent) {
  std::vector<int> digits{1};  // little-endian decimal digits
  for (unsigned e = 0; e < exponent; ++e) {
    int carry = 0;
    for (int& d : digits) {
      const int v = d * 2 + carry;
      d = v % 10;
      carry = v / 10;
    }
    if (carry) digits.push_back(carry);
  }
  std::string s;
  s.reserve(digits.size());
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) s.push_back(char('0' + *it));
  return s;
}

/**
 * Orders of the phased Pauli group and the Clifford hierarchy groups built on
 * it, recorded as exact powers of two:
 *   pauli_ext     = 2^(2n+2)
 *   clifford      = 2^(n^2+2n)
 *   clifford_ext  = 2^(n^2+2n+1)
 * The exponents grow quadratically, so the orders are exposed both as
 * exponents and as exact decimal strings.
 */
struct GroupOrders {
  unsigned n = 0;
  unsigned pauli_ext_log2 = 0;
  unsigned clifford_log2 = 0;
  unsigned clifford_ext_log2 = 0;

  std::string pauli_ext() const { return pow2_decimal(pauli_ext_log2); }
  std::string clifford() const { return pow2_decimal(clifford_log2); }
  std::string clifford_ext() const { return pow2_decimal(clifford_ext_log2); }
};

inline GroupOrders group_orders(unsigned n) {
  if (n < 1) throw std::invalid_argument("group_orders: n must be >= 1");
  GroupOrders g;
  g.n = n;
  g.pauli_ext_log2 = 2 * n + 2;
  g.clifford_log2 = n * n + 2 * n;
  g.clifford_ext_log2 = n * n + 2 * n + 1;
  return g;
}

/// Coefficient magnitudes below this are dropped from PauliSum terms.
inline constexpr double kPauliSumPruneTol = 1e-12;

/**
 * A real- or complex-weighted sum of phase-free Pauli strings, keyed by the
 * letters string ("ZZ", "ZY", ...; position q = qubit q). std::map keeps the
 * term order deterministic for printing and tests.
 */
class PauliSum {
 public:
  using TermMap = std::map<std::string, cplx>;

  PauliSum() = default;
  explicit PauliSum(unsigned n_qubits) : n_(n_qubits) {}

  unsigned n_qubits() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add_term(const std::string& letters, cplx coeff) {
    if (n_ == 0) n_ = static_cast<unsigned>(letters.size());
    if (letters.size() != n_) {
      throw std::invalid_argument("PauliSum: term '" + letters + "' has wrong length");
    }
    for (char c : letters) pauli_from_char(c);  // validate
    auto [it, inserted] = terms_.try_emplace(letters, coeff);
    if (!inserted) it->second += coeff;
    if (std::abs(it->second) < kPauliSumPruneTol) terms_.erase(it);
  }

  cplx coeff(const std::string& letters) const {
    auto it = terms_.find(letters);
    return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
  }

  PauliSum operator+(const PauliSum& other) const {
    if (n_ != other.n_ && !terms_.empty() && !other.terms_.empty()) {
      throw std::invalid_argument("PauliSum: qubit counts differ");
    }
    PauliSum out = *this;
    for (const auto& [letters, c] : other.terms_) out.add_term(letters, c);
    return out;
  }

  PauliSum operator*(cplx scalar) const {
    PauliSum out(n_);
    for (const auto& [letters, c] : terms_) {
      const cplx v = c * scalar;
      if (std::abs(v) >= kPauliSumPruneTol) out.terms_.emplace(letters, v);
    }
    return out;
  }

  /// Dense matrix; only viable for small n.
  ComplexMatrix matrix() const {
    if (n_ == 0) throw std::invalid_argument("PauliSum: empty operator");
    const std::size_t dim = std::size_t{1} << n_;
    ComplexMatrix out(dim, dim);
    for (const auto& [letters, c] : terms_) {
      out = out + PauliString(letters).matrix() * c;
    }
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [letters, c] : terms_) {
      if (!first) os << " + ";
      os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)*" << letters;
      first = false;
    }
    return first ? std::string("0") : os.str();
  }

 private:
  unsigned n_ = 0;
  TermMap terms_;
};

namespace detail {

/// Signed-permutation form of a phase-free Pauli string:
/// P|b> = i^y * (-1)^popcount(b & sign_mask) |b ^ flip_mask>.
struct PauliAction {
  std::uint64_t flip_mask = 0;
  std::uint64_t sign_mask = 0;
  int y_count = 0;
};

inline PauliAction pauli_action(const std::string& letters) {
  PauliAction a;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    switch (letters[q]) {
      case 'I': break;
      case 'X': a.flip_mask |= std::uint64_t{1} << q; break;
      case 'Y':
        a.flip_mask |= std::uint64_t{1} << q;
        a.sign_mask |= std::uint64_t{1} << q;
        ++a.y_count;
        break;
      case 'Z': a.sign_mask |= std::uint64_t{1} << q; break;
      default: throw std::invalid_argument("pauli_action: bad letter");
    }
  }
  return a;
}

inline cplx i_power(int k) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

}  // namespace detail

/**
 * Decompose a 2^n x 2^n matrix in the Pauli-string basis:
 * M = sum_s coeff_s * S with coeff_s = tr(S M) / 2^n (strings are Hermitian).
 * Coefficients below the prune tolerance are dropped.
 */
inline PauliSum pauli_decompose(const ComplexMatrix& m, unsigned n) {
  const std::size_t dim = std::size_t{1} << n;
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("pauli_decompose: matrix is not 2^n x 2^n");
  }
  PauliSum out(n);
  const std::size_t combos = std::size_t{1} << (2 * n);
  std::string letters(n, 'I');
  for (std::size_t code = 0; code < combos; ++code) {
    std::size_t c = code;
    for (unsigned q = 0; q < n; ++q) {
      letters[q] = "IXYZ"[c & 3];
      c >>= 2;
    }
    const detail::PauliAction act = detail::pauli_action(letters);
    // With S|b> = f(b)|b ^ flip>, tr(S M) = sum_col f(row) M(row, col) where
    // row = col ^ flip; the factor is evaluated at the row index.
    cplx t{0.0, 0.0};
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t row = col ^ act.flip_mask;
      const int sgn = __builtin_parityll(row & act.sign_mask) ? -1 : 1;
      t += detail::i_power(act.y_count) * static_cast<double>(sgn) * m(row, col);
    }
    const cplx coeff = t / static_cast<double>(dim);
    if (std::abs(coeff) >= kPauliSumPruneTol) out.add_term(letters, coeff);
  }
  return out;
}

}  // namespace rotlog
