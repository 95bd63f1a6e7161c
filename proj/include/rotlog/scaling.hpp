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
 * @file scaling.hpp
 * @brief Logical-error scaling laws for rotated chain codes.
 *
 * Angle-driven distance deformation and the family of logical-error-rate
 * models built on it:
 *
 *   f(theta, phi) = exp(-lambda (theta^2 + phi^2)),  d_R = d * f
 *   power law        p_log = A p^xi, xi = (d_R+1)/2 (SD) or (d_R+2)/2 (SI)
 *   threshold form   x = (p - p_th) d_R^(1/nu0)
 *   series form      p_log = sum_i alpha_i (p/p_th_i)^(d_R+i)
 *   fitted form      p_log = alpha (p/beta)^(gamma d_R - delta)
 *
 * Sign convention for the fitted form: delta is stored SIGNED as published
 * (negative for the supported d_R range), and the exponent is evaluated as
 * gamma*d_R - delta, which reproduces the published "gamma d_R + |delta|"
 * equation strings. All published parameter sets below keep that convention.
 *
 * Probabilities are never clamped: models evaluated outside their fitted
 * domain may return values above 1, and callers that emit data flag this
 * instead of silently truncating (see probability_in_range).
 */

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rotlog {

enum class NoiseModel { sd, si };
enum class Regime { small_angle, large_angle, combined };
enum class ParityClass { none, even, odd };

inline const char* to_string(NoiseModel m) { return m == NoiseModel::sd ? "sd" : "si"; }

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::small_angle: return "small";
    case Regime::large_angle: return "large";
    case Regime::combined: return "combined";
  }
  return "?";
}

inline const char* to_string(ParityClass p) {
  switch (p) {
    case ParityClass::none: return "none";
    case ParityClass::even: return "even";
    case ParityClass::odd: return "odd";
  }
  return "?";
}

inline NoiseModel noise_model_from_string(const std::string& s) {
  if (s == "sd") return NoiseModel::sd;
  if (s == "si") return NoiseModel::si;
  throw std::invalid_argument("unknown noise model '" + s + "' (expected sd or si)");
}

inline Regime regime_from_string(const std::string& s) {
  if (s == "small") return Regime::small_angle;
  if (s == "large") return Regime::large_angle;
  if (s == "combined") return Regime::combined;
  throw std::invalid_argument("unknown regime '" + s + "' (expected small, large or combined)");
}

inline ParityClass parity_from_string(const std::string& s) {
  if (s == "none") return ParityClass::none;
  if (s == "even") return ParityClass::even;
  if (s == "odd") return ParityClass::odd;
  throw std::invalid_argument("unknown parity '" + s + "' (expected none, even or odd)");
}

/// Default thresholds and exponents for the two noise channels.
inline constexpr double kThresholdSD = 0.018;
inline constexpr double kThresholdSI = 0.015;
inline constexpr double kNu0 = 1.01;
/// Default amplitude prefactor for the bare power law (plot-scale choice).
inline constexpr double kPowerLawAmplitude = 0.1;

inline double default_threshold(NoiseModel m) {
  return m == NoiseModel::sd ? kThresholdSD : kThresholdSI;
}

/// Parameter bundle for the fitted scaling form.
struct ScalingParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;  // stored signed; exponent is gamma*d_R - delta
  double nu0 = kNu0;
  double p_th = kThresholdSD;
  double amplitude = kPowerLawAmplitude;
  NoiseModel model = NoiseModel::sd;
  Regime regime = Regime::small_angle;
  ParityClass parity = ParityClass::none;
};

/// Angle-driven deformation factor f = exp(-lambda (theta^2 + phi^2)) in (0, 1].
inline double deformation(double lambda, double theta, double phi) {
  if (lambda < 0.0) throw std::invalid_argument("deformation: lambda must be >= 0");
  return std::exp(-lambda * (theta * theta + phi * phi));
}

/// Effective (rotated) code distance d_R = d * f(theta, phi).
inline double effective_distance(double d, double lambda, double theta, double phi) {
  if (d <= 0.0) throw std::invalid_argument("effective_distance: d must be positive");
  return d * deformation(lambda, theta, phi);
}

/**
 * Optional parity adjustment applied to the code distance BEFORE the d_R map:
 * even d -> d/2, odd d -> (d+1)/2. Requires an integral d of matching parity.
 */
inline double parity_adjust(double d, ParityClass parity) {
  if (parity == ParityClass::none) return d;
  const double rounded = std::round(d);
  if (std::abs(d - rounded) > 1e-9 || rounded < 1.0) {
    throw std::invalid_argument("parity_adjust: d must be a positive integer");
  }
  const long long di = static_cast<long long>(rounded);
  const bool is_even = (di % 2 == 0);
  if (parity == ParityClass::even && !is_even) {
    throw std::invalid_argument("parity_adjust: even adjustment requested for odd d");
  }
  if (parity == ParityClass::odd && is_even) {
    throw std::invalid_argument("parity_adjust: odd adjustment requested for even d");
  }
  return is_even ? d / 2.0 : (d + 1.0) / 2.0;
}

/// Bare power law p_log = A p^xi with xi = (d_R+1)/2 (SD) or (d_R+2)/2 (SI).
inline double plog_power_law(double p, double d_r, double amplitude, NoiseModel model) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("plog_power_law: p must be in [0, 1]");
  if (d_r <= 0.0) throw std::invalid_argument("plog_power_law: d_R must be positive");
  if (amplitude <= 0.0) throw std::invalid_argument("plog_power_law: amplitude must be positive");
  const double xi = (model == NoiseModel::sd) ? (d_r + 1.0) / 2.0 : (d_r + 2.0) / 2.0;
  return amplitude * std::pow(p, xi);
}

/// Threshold scaling variable x = (p - p_th) d_R^(1/nu0). Signed: negative
/// below threshold. This is the collapse coordinate, not a probability.
inline double plog_threshold_form(double p, double p_th, double d_r, double nu0) {
  if (p_th <= 0.0 || p_th >= 1.0) {
    throw std::invalid_argument("plog_threshold_form: p_th must be in (0, 1)");
  }
  if (d_r <= 0.0) throw std::invalid_argument("plog_threshold_form: d_R must be positive");
  if (nu0 <= 0.0) throw std::invalid_argument("plog_threshold_form: nu0 must be positive");
  return (p - p_th) * std::pow(d_r, 1.0 / nu0);
}

/// Rotation-adjusted threshold p_th^R = p_th d_R^(-1/nu0).
inline double threshold_rotated(double p_th, double d_r, double nu0) {
  if (p_th <= 0.0 || p_th >= 1.0) {
    throw std::invalid_argument("threshold_rotated: p_th must be in (0, 1)");
  }
  if (d_r <= 0.0) throw std::invalid_argument("threshold_rotated: d_R must be positive");
  if (nu0 <= 0.0) throw std::invalid_argument("threshold_rotated: nu0 must be positive");
  return p_th * std::pow(d_r, -1.0 / nu0);
}

/// Series term (alpha_i, p_th_i).
using SeriesTerm = std::pair<double, double>;

/// Series model p_log = sum_{i=1}^{m} alpha_i (p / p_th_i)^(d_R + i).
inline double plog_series(double p, double d_r, const std::vector<SeriesTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("plog_series: term list is empty");
  if (p < 0.0) throw std::invalid_argument("plog_series: p must be >= 0");
  if (d_r <= 0.0) throw std::invalid_argument("plog_series: d_R must be positive");
  double sum = 0.0;
  int i = 1;
  for (const auto& [alpha_i, p_th_i] : terms) {
    if (p_th_i <= 0.0 || p_th_i >= 1.0) {
      throw std::invalid_argument("plog_series: each p_th_i must be in (0, 1)");
    }
    sum += alpha_i * std::pow(p / p_th_i, d_r + i);
    ++i;
  }
  return sum;
}

/**
 * Model-dependent exponent maps:
 *   SD: gamma = 1/2 + 1/(2 d_R), delta = 1/2 - d_R/2
 *   SI: gamma = 1/2 + 1/d_R,     delta = 1 - d_R/2
 * Returned delta is signed (negative for d_R above 1 resp. 2), matching the
 * stored-parameter convention of the fitted form.
 */
inline std::pair<double, double> gamma_delta(double d_r, NoiseModel model) {
  if (d_r < 1e-9) {
    throw std::invalid_argument("gamma_delta: d_R below 1e-9 makes gamma singular");
  }
  if (model == NoiseModel::sd) {
    return {0.5 + 1.0 / (2.0 * d_r), 0.5 - d_r / 2.0};
  }
  return {0.5 + 1.0 / d_r, 1.0 - d_r / 2.0};
}

/// Convenience overload computing d_R from the deformation map first.
inline std::pair<double, double> gamma_delta(double d, double lambda, double theta, double phi,
                                             NoiseModel model) {
  return gamma_delta(effective_distance(d, lambda, theta, phi), model);
}

/// Fitted scaling form p_log = alpha (p / beta)^(gamma d_R - delta).
inline double plog_fitted(double p, const ScalingParams& params, double d_r) {
  if (p <= 0.0) throw std::invalid_argument("plog_fitted: p must be positive");
  if (params.alpha <= 0.0 || params.beta <= 0.0) {
    throw std::invalid_argument("plog_fitted: alpha and beta must be positive");
  }
  return params.alpha * std::pow(p / params.beta, params.gamma * d_r - params.delta);
}

/// All fitted curves of one parameter set pass through (p, p_log) = (beta, alpha)
/// regardless of d_R.
inline std::pair<double, double> crossing_point(const ScalingParams& params) {
  if (params.alpha <= 0.0 || params.beta <= 0.0) {
    throw std::invalid_argument("crossing_point: alpha and beta must be positive");
  }
  return {params.beta, params.alpha};
}

/// True when a model value is a valid probability. Values outside [0, 1] are
/// legitimate extrapolation artifacts and are emitted with a warning upstream.
inline bool probability_in_range(double p) { return p >= 0.0 && p <= 1.0; }

namespace detail {
inline ScalingParams make_params(double a, double b, double g, double d, NoiseModel m, Regime r,
                                 ParityClass parity) {
  ScalingParams out;
  out.alpha = a;
  out.beta = b;
  out.gamma = g;
  out.delta = d;
  out.model = m;
  out.regime = r;
  out.parity = parity;
  out.p_th = default_threshold(m);
  return out;
}
}  // namespace detail

/**
 * The four published headline equations (rounded coefficients), one per
 * (model, regime) with regime in {small, large}:
 *   SD small: 0.065 (p/0.0044)^(0.68 d_R + 0.87)
 *   SD large: 0.063 (p/0.0064)^(0.65 d_R + 1.12)
 *   SI small: 0.064 (p/0.0042)^(0.81 d_R + 0.62)
 *   SI large: 0.034 (p/0.0057)^(0.77 d_R + 0.87)
 * (delta stored signed, so gamma*d_R - delta reproduces the printed exponent.)
 */
inline ScalingParams headline_params(NoiseModel model, Regime regime) {
  using detail::make_params;
  if (regime == Regime::combined) {
    throw std::invalid_argument(
        "headline_params: the headline set has small/large regimes only; "
        "use fitted_params for combined rows");
  }
  if (model == NoiseModel::sd) {
    return regime == Regime::small_angle
               ? make_params(0.065, 0.0044, 0.68, -0.87, model, regime, ParityClass::none)
               : make_params(0.063, 0.0064, 0.65, -1.12, model, regime, ParityClass::none);
  }
  return regime == Regime::small_angle
             ? make_params(0.064, 0.0042, 0.81, -0.62, model, regime, ParityClass::none)
             : make_params(0.034, 0.0057, 0.77, -0.87, model, regime, ParityClass::none);
}

/// One row of the full-precision fitted-parameter table.
struct FittedRow {
  NoiseModel model;
  Regime regime;
  ParityClass parity;
  double d_r;  // representative rotated distance of the fit
  ScalingParams params;
};

/// The twelve published full-precision fits: (model) x (regime) x (parity).
inline const std::vector<FittedRow>& fitted_rows() {
  using detail::make_params;
  static const std::vector<FittedRow> rows = {
      {NoiseModel::sd, Regime::small_angle, ParityClass::even, 2.7498,
       make_params(0.0644, 0.0044, 0.6818, -0.8749, NoiseModel::sd, Regime::small_angle,
                   ParityClass::even)},
      {NoiseModel::sd, Regime::small_angle, ParityClass::odd, 3.2497,
       make_params(0.0622, 0.0064, 0.6539, -1.1249, NoiseModel::sd, Regime::small_angle,
                   ParityClass::odd)},
      {NoiseModel::sd, Regime::large_angle, ParityClass::even, 2.7445,
       make_params(0.0645, 0.0062, 0.6822, -0.8723, NoiseModel::sd, Regime::large_angle,
                   ParityClass::even)},
      {NoiseModel::sd, Regime::large_angle, ParityClass::odd, 3.2435,
       make_params(0.0978, 0.0042, 0.6542, -1.1218, NoiseModel::sd, Regime::large_angle,
                   ParityClass::odd)},
      {NoiseModel::sd, Regime::combined, ParityClass::even, 2.7400,
       make_params(0.0645, 0.0044, 0.6825, -0.8700, NoiseModel::sd, Regime::combined,
                   ParityClass::even)},
      {NoiseModel::sd, Regime::combined, ParityClass::odd, 3.2380,
       make_params(0.0623, 0.0064, 0.6544, -1.1190, NoiseModel::sd, Regime::combined,
                   ParityClass::odd)},
      {NoiseModel::si, Regime::small_angle, ParityClass::even, 3.2497,
       make_params(0.0643, 0.0042, 0.8077, -0.6249, NoiseModel::si, Regime::small_angle,
                   ParityClass::even)},
      {NoiseModel::si, Regime::small_angle, ParityClass::odd, 3.7497,
       make_params(0.0664, 0.0039, 0.7667, -0.8749, NoiseModel::si, Regime::small_angle,
                   ParityClass::odd)},
      {NoiseModel::si, Regime::large_angle, ParityClass::even, 3.2435,
       make_params(0.0357, 0.0042, 0.8083, -0.6218, NoiseModel::si, Regime::large_angle,
                   ParityClass::even)},
      {NoiseModel::si, Regime::large_angle, ParityClass::odd, 3.7425,
       make_params(0.0664, 0.0039, 0.7672, -0.8713, NoiseModel::si, Regime::large_angle,
                   ParityClass::odd)},
      {NoiseModel::si, Regime::combined, ParityClass::even, 3.2390,
       make_params(0.0643, 0.0042, 0.8087, -0.6195, NoiseModel::si, Regime::combined,
                   ParityClass::even)},
      {NoiseModel::si, Regime::combined, ParityClass::odd, 3.7370,
       make_params(0.0336, 0.0057, 0.7676, -0.8685, NoiseModel::si, Regime::combined,
                   ParityClass::odd)},
  };
  return rows;
}

/// Full-precision fitted parameters for a (model, regime, parity) cell.
inline ScalingParams fitted_params(NoiseModel model, Regime regime, ParityClass parity) {
  for (const FittedRow& row : fitted_rows()) {
    if (row.model == model && row.regime == regime && row.parity == parity) return row.params;
  }
  throw std::invalid_argument("fitted_params: no published row for this combination");
}

/// A single (p_phy, p_log) sample.
struct DataPoint {
  double p_phy = 0.0;
  double p_log = 0.0;
};

/// One fitted or synthetic curve: fixed (model, regime, d, d_R) with samples.
struct DataSeries {
  NoiseModel model = NoiseModel::sd;
  Regime regime = Regime::small_angle;
  double d = 0.0;
  double d_r = 0.0;
  std::vector<DataPoint> points;
};

/// Log-spaced grid helper (count >= 2, endpoints included).
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (lo <= 0.0 || hi <= 0.0 || hi <= lo) {
    throw std::invalid_argument("log_grid: need 0 < lo < hi");
  }
  if (count < 2) throw std::invalid_argument("log_grid: need at least 2 points");
  std::vector<double> out(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

/**
 * Evaluate the fitted form over a list of code distances and a p grid.
 * d_R = d * deform_factor per series (factor 1 keeps d_R = d).
 */
inline std::vector<DataSeries> curve_sweep(const ScalingParams& params,
                                           const std::vector<double>& d_values,
                                           const std::vector<double>& p_grid,
                                           double deform_factor = 1.0) {
  if (d_values.empty() || p_grid.empty()) {
    throw std::invalid_argument("curve_sweep: empty distance list or p grid");
  }
  if (deform_factor <= 0.0 || deform_factor > 1.0) {
    throw std::invalid_argument("curve_sweep: deformation factor must be in (0, 1]");
  }
  std::vector<DataSeries> out;
  out.reserve(d_values.size());
  for (double d : d_values) {
    DataSeries series;
    series.model = params.model;
    series.regime = params.regime;
    series.d = d;
    series.d_r = d * deform_factor;
    series.points.reserve(p_grid.size());
    for (double p : p_grid) {
      series.points.push_back({p, plog_fitted(p, params, series.d_r)});
    }
    out.push_back(std::move(series));
  }
  return out;
}

/// Fixed-width scientific formatting, 6 significant digits.
inline std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

/**
 * Emit series as CSV: header `model,regime,d,d_R,p_phy,p_log`, probabilities
 * in 6-significant-digit scientific notation. Comment lines (leading '#')
 * carry caller-provided metadata such as the resolved configuration.
 */
inline void write_series_csv(std::ostream& os, const std::vector<DataSeries>& series,
                             const std::vector<std::string>& comments = {}) {
  for (const std::string& c : comments) os << "# " << c << "\n";
  os << "model,regime,d,d_R,p_phy,p_log\n";
  for (const DataSeries& s : series) {
    for (const DataPoint& pt : s.points) {
      os << to_string(s.model) << ',' << to_string(s.regime) << ',' << format_sci(s.d) << ','
         << format_sci(s.d_r) << ',' << format_sci(pt.p_phy) << ',' << format_sci(pt.p_log)
         << "\n";
    }
  }
}

}  // namespace rotlog
