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
 * @file serialize.hpp
 * @brief JSON forms of the simulation and fit results.
 *
 * All emission is deterministic: keys are ordered (nlohmann::ordered_json),
 * doubles round-trip exactly, and nothing time- or host-dependent is written,
 * so identical runs produce byte-identical documents.
 */

#include <string>
#include <vector>

#include <json.hpp>

#include "rotlog/fitting.hpp"
#include "rotlog/noise_sim.hpp"
#include "rotlog/scaling.hpp"

namespace rotlog {

using ordered_json = nlohmann::ordered_json;

/// State document: {"n": ..., "amps": [[re, im], ...]} with amplitudes in
/// basis-index order; qubit 0 is the least significant bit of the index.
inline ordered_json state_to_json(const StateVector& state) {
  ordered_json amps = ordered_json::array();
  for (const cplx& a : state.amps()) amps.push_back({a.real(), a.imag()});
  ordered_json j;
  j["n"] = state.n_qubits();
  j["amps"] = std::move(amps);
  return j;
}

/// Inverse of state_to_json; the amplitude count must match the qubit count.
inline StateVector state_from_json(const ordered_json& j) {
  const unsigned n = j.at("n").get<unsigned>();
  const auto& amps = j.at("amps");
  if (!amps.is_array()) {
    throw std::invalid_argument("state_from_json: amps must be an array");
  }
  std::vector<cplx> out;
  out.reserve(amps.size());
  for (const auto& pair : amps) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("state_from_json: each amplitude must be [re, im]");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return StateVector(n, std::move(out));
}

/// Monte-Carlo result document; the scalar keys double as the config echo.
inline ordered_json sim_result_to_json(const SimResult& r) {
  ordered_json j;
  j["model"] = to_string(r.model);
  j["n"] = r.n;
  j["theta"] = r.theta;
  j["phi"] = r.phi;
  j["p"] = r.p;
  j["eta"] = r.eta;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["p_log_hat"] = r.p_hat;
  j["ci95"] = {r.ci_lo, r.ci_hi};
  return j;
}

/// One fit row in the published column order, with diagnostics appended.
inline ordered_json fit_result_to_json(const FitResult& r) {
  ordered_json j;
  j["model"] = to_string(r.params.model);
  j["regime"] = to_string(r.params.regime);
  j["parity"] = to_string(r.params.parity);
  j["d_R"] = r.d_r;
  j["alpha"] = r.params.alpha;
  j["beta"] = r.params.beta;
  j["gamma"] = r.params.gamma;
  j["delta"] = r.params.delta;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["n_points"] = r.n_points;
  j["residual_rms"] = r.residual_rms;
  j["covariance_diag"] = r.covariance_diag;
  j["message"] = r.message;
  return j;
}

/// Inverse of fit_result_to_json; unknown keys are rejected.
inline FitResult fit_result_from_json(const ordered_json& j) {
  static const std::vector<std::string> known = {
      "model",      "regime",   "parity",   "d_R",          "alpha",
      "beta",       "gamma",    "delta",    "converged",    "iterations",
      "n_points",   "residual_rms", "covariance_diag", "message"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const std::string& k : known) ok = ok || k == key;
    if (!ok) throw std::invalid_argument("fit_result_from_json: unknown key '" + key + "'");
  }
  FitResult r;
  r.params.model = noise_model_from_string(j.at("model").get<std::string>());
  r.params.regime = regime_from_string(j.at("regime").get<std::string>());
  r.params.parity = parity_from_string(j.at("parity").get<std::string>());
  r.params.p_th = default_threshold(r.params.model);
  r.d_r = j.at("d_R").get<double>();
  r.params.alpha = j.at("alpha").get<double>();
  r.params.beta = j.at("beta").get<double>();
  r.params.gamma = j.at("gamma").get<double>();
  r.params.delta = j.at("delta").get<double>();
  r.converged = j.at("converged").get<bool>();
  r.iterations = j.at("iterations").get<int>();
  r.n_points = j.at("n_points").get<std::size_t>();
  r.residual_rms = j.at("residual_rms").get<double>();
  const auto cov = j.at("covariance_diag");
  if (!cov.is_array() || cov.size() != 4) {
    throw std::invalid_argument("fit_result_from_json: covariance_diag must have 4 entries");
  }
  for (std::size_t i = 0; i < 4; ++i) r.covariance_diag[i] = cov[i].get<double>();
  r.message = j.at("message").get<std::string>();
  return r;
}

/// Array form for a whole report.
inline ordered_json fit_results_to_json(const std::vector<FitResult>& results) {
  ordered_json arr = ordered_json::array();
  for (const FitResult& r : results) arr.push_back(fit_result_to_json(r));
  return arr;
}

inline std::vector<FitResult> fit_results_from_json(const ordered_json& arr) {
  if (!arr.is_array()) {
    throw std::invalid_argument("fit_results_from_json: expected a JSON array");
  }
  std::vector<FitResult> out;
  out.reserve(arr.size());
  for (const auto& item : arr) out.push_back(fit_result_from_json(item));
  return out;
}

}  // namespace rotlog
