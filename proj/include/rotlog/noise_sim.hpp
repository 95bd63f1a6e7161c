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
 * @file noise_sim.hpp
 * @brief Statevector Monte-Carlo simulation of rotated-logical-state circuits
 *        under depolarizing (SD) and biased-dephasing (SI) Pauli channels.
 *
 * The simulated circuit, read left to right per qubit row:
 *
 *   RX(theta) RZ(phi) | CH  T  CS | CNOT chain | X Z | E | RZ(-phi) RX(-theta)
 *
 * CH and CS pair qubit q with qubit (q+1) mod n (nearest-neighbour completion
 * of the row diagram); the CNOT chain couples q -> q+1 for q < n-1; the X and
 * Z correction boxes are applied unconditionally, exactly as drawn (this is
 * not a syndrome-conditioned recovery). E marks the noise location: one
 * channel application per qubit per run. A per-gate noise placement is
 * available behind a flag for circuit-level-noise studies.
 *
 * Failure rule: a trial fails when the fidelity against the noiseless run of
 * the same circuit drops below 0.5. The degenerate logical basis admits no
 * projective logical-Z readout, so a fidelity threshold is used; it is
 * well-defined for either encoding mode.
 *
 * Channels (single uniform draw, thresholds in X, Y, Z order):
 *   SD: X, Y, Z each with probability p/3
 *   SI: Z with probability p*eta/(eta+1), X and Y each with p/(2(eta+1))
 *
 * Trials are embarrassingly parallel: trial t draws from the dedicated
 * substream CounterRng(seed, t), and failures are reduced by an
 * order-independent sum, so results are identical for any worker count.
 */

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rotlog/logical_states.hpp"
#include "rotlog/pauli.hpp"
#include "rotlog/rng.hpp"
#include "rotlog/rotation.hpp"
#include "rotlog/scaling.hpp"
#include "rotlog/statevector.hpp"

namespace rotlog {

enum class GateKind { rx, rz, rx_inv, rz_inv, t, ch, cs, cnot, ccnot, x, z, noise };

inline const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::rx: return "RX";
    case GateKind::rz: return "RZ";
    case GateKind::rx_inv: return "RX_INV";
    case GateKind::rz_inv: return "RZ_INV";
    case GateKind::t: return "T";
    case GateKind::ch: return "CH";
    case GateKind::cs: return "CS";
    case GateKind::cnot: return "CNOT";
    case GateKind::ccnot: return "CCNOT";
    case GateKind::x: return "X";
    case GateKind::z: return "Z";
    case GateKind::noise: return "NOISE";
  }
  return "?";
}

/// Number of target qubits a gate kind acts on.
inline unsigned gate_arity(GateKind k) {
  switch (k) {
    case GateKind::ch:
    case GateKind::cs:
    case GateKind::cnot: return 2;
    case GateKind::ccnot: return 3;
    default: return 1;
  }
}

/**
 * One circuit element. For controlled gates the control convention is
 * targets[0] = control (= the least significant axis of the gate matrix);
 * for CCNOT, targets[0] and targets[1] are the controls. angle is meaningful
 * for the rotation kinds only and stores the positive layer angle: the _INV
 * kinds negate it internally.
 */
struct Gate {
  GateKind kind = GateKind::noise;
  std::vector<unsigned> targets;
  double angle = 0.0;
};

/// Validate one gate against a circuit width; throws on violation.
inline void validate_gate(const Gate& g, unsigned n_qubits) {
  if (g.targets.size() != gate_arity(g.kind)) {
    throw std::invalid_argument(std::string("gate ") + to_string(g.kind) + " expects " +
                                std::to_string(gate_arity(g.kind)) + " target(s), got " +
                                std::to_string(g.targets.size()));
  }
  for (std::size_t i = 0; i < g.targets.size(); ++i) {
    if (g.targets[i] >= n_qubits) {
      throw std::invalid_argument(std::string("gate ") + to_string(g.kind) +
                                  ": target qubit out of range");
    }
    for (std::size_t j = i + 1; j < g.targets.size(); ++j) {
      if (g.targets[i] == g.targets[j]) {
        throw std::invalid_argument(std::string("gate ") + to_string(g.kind) +
                                    ": duplicate target qubit");
      }
    }
  }
}

/// Default Z-bias of the SI channel.
inline constexpr double kDefaultBiasEta = 10.0;

/// A biased Pauli channel applied once per qubit at the marked noise sites.
struct NoiseChannel {
  NoiseModel model = NoiseModel::sd;
  double p = 0.0;
  double bias_eta = kDefaultBiasEta;  // SI only; ignored for SD
};

inline void validate_channel(const NoiseChannel& c) {
  if (c.p < 0.0 || c.p >= 1.0) {
    throw std::invalid_argument("NoiseChannel: p must be in [0, 1)");
  }
  if (c.model == NoiseModel::si && c.bias_eta <= 0.0) {
    throw std::invalid_argument("NoiseChannel: bias eta must be positive");
  }
}

/// Per-Pauli error probabilities (pX, pY, pZ) of a channel; sums to p.
inline std::array<double, 3> channel_weights(const NoiseChannel& c) {
  validate_channel(c);
  if (c.model == NoiseModel::sd) {
    return {c.p / 3.0, c.p / 3.0, c.p / 3.0};
  }
  const double denom = c.bias_eta + 1.0;
  return {c.p / (2.0 * denom), c.p / (2.0 * denom), c.p * c.bias_eta / denom};
}

/**
 * Sample one Pauli from the channel with a single uniform draw: thresholds in
 * X, Y, Z order inside [0, p), identity on [p, 1).
 */
inline Pauli sample_pauli(const NoiseChannel& c, CounterRng& rng) {
  const std::array<double, 3> w = channel_weights(c);
  const double u = rng.uniform();
  if (u >= c.p) return Pauli::I;
  if (u < w[0]) return Pauli::X;
  if (u < w[0] + w[1]) return Pauli::Y;
  return Pauli::Z;
}

/// Apply one channel sample to a qubit in place (identity draws are free).
inline void apply_channel(StateVector& state, const NoiseChannel& c, unsigned qubit,
                          CounterRng& rng) {
  const Pauli draw = sample_pauli(c, rng);
  if (draw != Pauli::I) apply_single_qubit(state, pauli_matrix(draw), qubit);
}

struct TrialOutcome {
  double fidelity = 1.0;
  bool failed = false;
};

/// Fidelity threshold of the failure rule.
inline constexpr double kFailThreshold = 0.5;

/**
 * Build the n-qubit circuit in layer order: RX, RZ, CH, T, CS, the CNOT
 * chain, X, Z, one NOISE marker per qubit, RZ_INV, RX_INV. Within each layer
 * the qubits appear in index order, so trial randomness consumes one draw per
 * qubit 0..n-1 at the noise layer.
 */
inline std::vector<Gate> build_circuit(unsigned n, const RotationParams& rot) {
  if (n < 2 || n > 10) {
    throw std::invalid_argument("build_circuit: qubit count must be in [2, 10]");
  }
  std::vector<Gate> circuit;
  circuit.reserve(9 * n + (n - 1));
  for (unsigned q = 0; q < n; ++q) circuit.push_back({GateKind::rx, {q}, rot.theta});
  for (unsigned q = 0; q < n; ++q) circuit.push_back({GateKind::rz, {q}, rot.phi});
  for (unsigned q = 0; q < n; ++q) circuit.push_back({GateKind::ch, {q, (q + 1) % n}, 0.0});
  for (unsigned q = 0; q < n; ++q) circuit.push_back({GateKind::t, {q}, 0.0});
  for (unsigned q = 0; q < n; ++q) circuit.push_back({GateKind::cs, {q, (q + 1) % n}, 0.0});
  for (unsigned q = 0; q + 1 < n; ++q) circuit.push_back({GateKind::cnot, {q, q + 1}, 0.0});
  for (unsigned q = 0; q < n; ++q) circuit.push_back({GateKind::x, {q}, 0.0});
  for (unsigned q = 0; q < n; ++q) circuit.push_back({GateKind::z, {q}, 0.0});
  for (unsigned q = 0; q < n; ++q) circuit.push_back({GateKind::noise, {q}, 0.0});
  for (unsigned q = 0; q < n; ++q) circuit.push_back({GateKind::rz_inv, {q}, rot.phi});
  for (unsigned q = 0; q < n; ++q) circuit.push_back({GateKind::rx_inv, {q}, rot.theta});
  for (const Gate& g : circuit) validate_gate(g, n);
  return circuit;
}

/**
 * Unitary of a gate. NOISE markers map to the identity (they are placeholders
 * resolved at simulation time). Controlled gates put the control on the
 * matrix's least significant index bit, matching targets[0].
 */
inline ComplexMatrix gate_matrix(const Gate& g) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::rx: return rotation(Pauli::X, g.angle, AngleConvention::half_angle);
    case GateKind::rz: return rotation(Pauli::Z, g.angle, AngleConvention::half_angle);
    case GateKind::rx_inv: return rotation(Pauli::X, -g.angle, AngleConvention::half_angle);
    case GateKind::rz_inv: return rotation(Pauli::Z, -g.angle, AngleConvention::half_angle);
    case GateKind::t: {
      ComplexMatrix m = ComplexMatrix::zeros(2, 2);
      m(0, 0) = 1.0;
      m(1, 1) = std::exp(cplx{0.0, std::acos(-1.0) / 4.0});
      return m;
    }
    case GateKind::x: return pauli_matrix(Pauli::X);
    case GateKind::z: return pauli_matrix(Pauli::Z);
    case GateKind::noise: return ComplexMatrix::identity(2);
    case GateKind::ch: {
      // Index bits (b1 b0) with b0 = control, b1 = target.
      ComplexMatrix m = ComplexMatrix::zeros(4, 4);
      m(0, 0) = 1.0;
      m(2, 2) = 1.0;
      m(1, 1) = inv_sqrt2;
      m(3, 1) = inv_sqrt2;
      m(1, 3) = inv_sqrt2;
      m(3, 3) = -inv_sqrt2;
      return m;
    }
    case GateKind::cs: {
      ComplexMatrix m = ComplexMatrix::identity(4);
      m(3, 3) = cplx{0.0, 1.0};
      return m;
    }
    case GateKind::cnot: {
      // Flips the target bit b1 when the control bit b0 is set: 1 <-> 3.
      ComplexMatrix m = ComplexMatrix::zeros(4, 4);
      m(0, 0) = 1.0;
      m(2, 2) = 1.0;
      m(3, 1) = 1.0;
      m(1, 3) = 1.0;
      return m;
    }
    case GateKind::ccnot: {
      // Flips the target bit b2 when both control bits are set: 3 <-> 7.
      ComplexMatrix m = ComplexMatrix::zeros(8, 8);
      for (std::size_t i = 0; i < 8; ++i) {
        const std::size_t j = (i == 3) ? 7 : (i == 7) ? 3 : i;
        m(j, i) = 1.0;
      }
      return m;
    }
  }
  throw std::invalid_argument("gate_matrix: unknown gate kind");
}

/// Where channel samples are inserted during a noisy run.
enum class NoisePlacement {
  markers,   // once per qubit, exactly at the drawn E positions
  per_gate,  // after every non-marker gate, on each of its targets
};

/**
 * Run a circuit on an input state. With a null channel the run is noiseless
 * and NOISE markers are skipped; otherwise channel samples are inserted per
 * the placement mode (markers are ignored in per_gate mode).
 */
inline StateVector run_circuit(const std::vector<Gate>& circuit, const StateVector& input,
                               const NoiseChannel* channel = nullptr, CounterRng* rng = nullptr,
                               NoisePlacement placement = NoisePlacement::markers) {
  StateVector state = input;
  const bool noisy = channel != nullptr && rng != nullptr;
  for (const Gate& g : circuit) {
    if (g.kind == GateKind::noise) {
      if (noisy && placement == NoisePlacement::markers) {
        apply_channel(state, *channel, g.targets[0], *rng);
      }
      continue;
    }
    if (g.targets.size() == 1) {
      apply_single_qubit(state, gate_matrix(g), g.targets[0]);
    } else {
      apply_gate_matrix(state, gate_matrix(g), g.targets);
    }
    if (noisy && placement == NoisePlacement::per_gate) {
      for (unsigned q : g.targets) apply_channel(state, *channel, q, *rng);
    }
  }
  return state;
}

/**
 * One Monte-Carlo trial: simulate the circuit with channel samples, compare
 * against the noiseless run of the same circuit, apply the failure rule.
 */
inline TrialOutcome run_trial(const std::vector<Gate>& circuit, const StateVector& input,
                              const NoiseChannel& channel, CounterRng& rng,
                              NoisePlacement placement = NoisePlacement::markers) {
  const StateVector ideal = run_circuit(circuit, input);
  const StateVector noisy = run_circuit(circuit, input, &channel, &rng, placement);
  TrialOutcome out;
  out.fidelity = fidelity(ideal, noisy);
  out.failed = out.fidelity < kFailThreshold;
  return out;
}

/// Wilson 95% score interval for failures out of trials.
inline std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be positive");
  if (failures > trials) {
    throw std::invalid_argument("wilson_interval: failures exceed trials");
  }
  constexpr double z = 1.959963984540054;  // 97.5% standard-normal quantile
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {center - half, center + half};
}

/// Monte-Carlo estimate with its configuration, ready for serialization.
struct SimResult {
  NoiseModel model = NoiseModel::sd;
  unsigned n = 0;
  double theta = 0.0;
  double phi = 0.0;
  double p = 0.0;
  double eta = kDefaultBiasEta;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t failures = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

struct SimOptions {
  /// Input encoding. The repetition mode is the default estimation input: the
  /// degenerate mode fails on nearly every error draw, so its estimates track
  /// the raw any-error rate and the channels become hard to tell apart.
  Encoding encoding = Encoding::repetition;
  LogicalAmplitudes amps{};
  NoisePlacement placement = NoisePlacement::markers;
  /// Worker threads. Results are identical for every value (per-trial
  /// substreams + order-independent reduction).
  unsigned jobs = 1;
};

/**
 * Estimate the logical error rate of the width-n circuit at rotation `rot`
 * under `channel`: the mean failure rate over `trials` Monte-Carlo trials
 * with a Wilson 95% interval. Trial t draws from CounterRng(seed, t), so the
 * estimate is reproducible bit-for-bit for any `jobs` value.
 */
inline SimResult estimate_plog(unsigned n, const RotationParams& rot,
                               const NoiseChannel& channel, std::uint64_t trials,
                               std::uint64_t seed, const SimOptions& opts = {}) {
  if (trials < 100) {
    throw std::invalid_argument("estimate_plog: need at least 100 trials");
  }
  validate_channel(channel);
  const std::vector<Gate> circuit = build_circuit(n, rot);
  const StateVector input = rotated_logical_state(opts.amps, n, RotationParams{}, opts.encoding);

  // Split the circuit at the noise layer. The markers are one contiguous
  // layer by construction; everything before it is noise-free in marker mode,
  // so the pre-noise state and the ideal output are shared across trials.
  std::size_t first_marker = circuit.size();
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    if (circuit[i].kind == GateKind::noise) {
      first_marker = i;
      break;
    }
  }
  const std::vector<Gate> prefix(circuit.begin(),
                                 circuit.begin() + static_cast<std::ptrdiff_t>(first_marker));
  std::vector<unsigned> noise_qubits;
  std::size_t suffix_start = first_marker;
  while (suffix_start < circuit.size() && circuit[suffix_start].kind == GateKind::noise) {
    noise_qubits.push_back(circuit[suffix_start].targets[0]);
    ++suffix_start;
  }
  const std::vector<Gate> suffix(circuit.begin() + static_cast<std::ptrdiff_t>(suffix_start),
                                 circuit.end());

  const StateVector state_pre = run_circuit(prefix, input);
  const StateVector ideal = run_circuit(suffix, state_pre);

  // Pre-resolve the suffix unitaries (all single-qubit inverse rotations).
  std::vector<std::pair<ComplexMatrix, unsigned>> suffix_ops;
  suffix_ops.reserve(suffix.size());
  for (const Gate& g : suffix) {
    if (g.kind == GateKind::noise) continue;
    suffix_ops.emplace_back(gate_matrix(g), g.targets[0]);
  }

  auto marker_trial = [&](std::uint64_t t) -> bool {
    CounterRng rng(seed, t);
    // Draw the full error pattern first; error-free trials need no algebra.
    std::array<Pauli, 16> pattern{};
    bool any = false;
    for (std::size_t i = 0; i < noise_qubits.size(); ++i) {
      pattern[i] = sample_pauli(channel, rng);
      any = any || pattern[i] != Pauli::I;
    }
    if (!any) return false;
    StateVector state = state_pre;
    for (std::size_t i = 0; i < noise_qubits.size(); ++i) {
      if (pattern[i] != Pauli::I) {
        apply_single_qubit(state, pauli_matrix(pattern[i]), noise_qubits[i]);
      }
    }
    for (const auto& [m, q] : suffix_ops) apply_single_qubit(state, m, q);
    return fidelity(ideal, state) < kFailThreshold;
  };
  auto per_gate_trial = [&](std::uint64_t t) -> bool {
    CounterRng rng(seed, t);
    const StateVector noisy =
        run_circuit(circuit, input, &channel, &rng, NoisePlacement::per_gate);
    return fidelity(ideal, noisy) < kFailThreshold;
  };

  const bool markers = opts.placement == NoisePlacement::markers;
  const unsigned jobs = std::max(1u, opts.jobs);
  std::uint64_t failures = 0;
  if (jobs == 1) {
    for (std::uint64_t t = 0; t < trials; ++t) {
      failures += (markers ? marker_trial(t) : per_gate_trial(t)) ? 1 : 0;
    }
  } else {
    std::vector<std::uint64_t> partial(jobs, 0);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w]() {
        std::uint64_t local = 0;
        for (std::uint64_t t = w; t < trials; t += jobs) {
          local += (markers ? marker_trial(t) : per_gate_trial(t)) ? 1 : 0;
        }
        partial[w] = local;
      });
    }
    for (std::thread& th : workers) th.join();
    for (std::uint64_t f : partial) failures += f;
  }

  SimResult res;
  res.model = channel.model;
  res.n = n;
  res.theta = rot.theta;
  res.phi = rot.phi;
  res.p = channel.p;
  res.eta = channel.model == NoiseModel::si ? channel.bias_eta : 0.0;
  res.trials = trials;
  res.seed = seed;
  res.failures = failures;
  res.p_hat = static_cast<double>(failures) / static_cast<double>(trials);
  const auto [lo, hi] = wilson_interval(failures, trials);
  res.ci_lo = lo;
  res.ci_hi = hi;
  return res;
}

}  // namespace rotlog
