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
 * @file fitting.hpp
 * @brief Deterministic least-squares fitting of the scaling form.
 *
 * Fits p_log = alpha (p/beta)^(gamma d_R - delta) in log-log space:
 *
 *   log p_log = a + (gamma d_R - delta) (L - b),  a = log alpha, b = log beta,
 *   L = log p_phy
 *
 * using damped Gauss-Newton with the analytic Jacobian. Any subset of
 * {alpha, beta, gamma, delta} may be held fixed. When beta is free the solver
 * runs a deterministic multi-start over a log-spaced beta grid and keeps the
 * best residual (ties broken toward the smallest recovered beta). There is no
 * random state anywhere in the solver, so refits are bit-reproducible and
 * invariant under permutations of the input data.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rotlog/rng.hpp"
#include "rotlog/scaling.hpp"

namespace rotlog {

/// Which of (alpha, beta, gamma, delta) the solver may move.
struct FreeMask {
  bool alpha = true;
  bool beta = true;
  bool gamma = true;
  bool delta = true;

  int count() const { return int(alpha) + int(beta) + int(gamma) + int(delta); }
};

struct FitOptions {
  FreeMask free;
  int max_iterations = 500;
  /// Stop when the largest relative parameter step falls below this...
  double param_tol = 1e-10;
  /// ...or the gradient inf-norm falls below this (defines `converged`).
  double grad_tol = 1e-8;
  int multistart_count = 10;
  double beta_grid_lo = 1e-4;
  double beta_grid_hi = 1e-1;
  /// Optional domain filters applied to the samples before fitting. Both are
  /// off by default; callers opt into either published reading.
  std::optional<double> min_d;
  std::optional<double> max_p;
};

struct FitResult {
  ScalingParams params;
  /// Representative rotated distance: the largest d_R among the fitted data.
  double d_r = 0.0;
  /// Root-mean-square log-space residual at the solution.
  double residual_rms = 0.0;
  std::size_t n_points = 0;
  /// True iff the residual gradient inf-norm fell below grad_tol.
  bool converged = false;
  int iterations = 0;
  /// Sum of squared log-space residuals at the solution.
  double cost = 0.0;
  /// Cost after each accepted iteration (non-increasing by construction).
  std::vector<double> cost_trace;
  /// Gauss-Newton variance estimates in (alpha, beta, gamma, delta) order;
  /// zero for parameters that were held fixed.
  std::array<double, 4> covariance_diag{0.0, 0.0, 0.0, 0.0};
  std::string message;
};

namespace detail {

struct FitSample {
  double d_r;
  double log_p;   // log p_phy
  double log_pl;  // log p_log
};

inline std::vector<FitSample> flatten_series(const std::vector<DataSeries>& series,
                                             const FitOptions& opt) {
  std::vector<FitSample> samples;
  for (const DataSeries& s : series) {
    if (opt.min_d && s.d < *opt.min_d) continue;
    std::size_t kept = 0;
    for (const DataPoint& pt : s.points) {
      if (opt.max_p && pt.p_phy > *opt.max_p) continue;
      if (pt.p_phy <= 0.0 || pt.p_log <= 0.0) {
        throw std::invalid_argument("fit_scaling: samples must have positive p_phy and p_log");
      }
      samples.push_back({s.d_r, std::log(pt.p_phy), std::log(pt.p_log)});
      ++kept;
    }
    if (kept < 4) {
      throw std::invalid_argument(
          "fit_scaling: each series needs at least 4 points after filtering");
    }
  }
  return samples;
}

/// Solve the damped k x k system (A + mu diag(A)) x = g by Gaussian
/// elimination with partial pivoting. Returns false when singular.
inline bool solve_damped(std::array<std::array<double, 4>, 4> a, std::array<double, 4> g,
                         double mu, int k, std::array<double, 4>& x) {
  for (int i = 0; i < k; ++i) a[i][i] += mu * std::max(a[i][i], 1e-12);
  std::array<int, 4> piv{0, 1, 2, 3};
  for (int col = 0; col < k; ++col) {
    int best = col;
    for (int r = col + 1; r < k; ++r) {
      if (std::abs(a[piv[r]][col]) > std::abs(a[piv[best]][col])) best = r;
    }
    std::swap(piv[col], piv[best]);
    const double pivot = a[piv[col]][col];
    if (std::abs(pivot) < 1e-300) return false;
    for (int r = col + 1; r < k; ++r) {
      const double f = a[piv[r]][col] / pivot;
      if (f == 0.0) continue;
      for (int c = col; c < k; ++c) a[piv[r]][c] -= f * a[piv[col]][c];
      g[piv[r]] -= f * g[piv[col]];
    }
  }
  for (int col = k - 1; col >= 0; --col) {
    double acc = g[piv[col]];
    for (int c = col + 1; c < k; ++c) acc -= a[piv[col]][c] * x[c];
    x[col] = acc / a[piv[col]][col];
  }
  return true;
}

/// Diagonal of the inverse of the k x k leading block of a symmetric matrix
/// (zeros when singular).
inline std::array<double, 4> inverse_diag(const std::array<std::array<double, 4>, 4>& a, int k) {
  std::array<double, 4> diag{0.0, 0.0, 0.0, 0.0};
  for (int col = 0; col < k; ++col) {
    std::array<double, 4> e{0.0, 0.0, 0.0, 0.0};
    e[col] = 1.0;
    std::array<double, 4> x{};
    if (!solve_damped(a, e, 0.0, k, x)) return {0.0, 0.0, 0.0, 0.0};
    diag[col] = x[col];
  }
  return diag;
}

struct CoreResult {
  std::array<double, 4> theta{};  // (a, b, gamma, delta)
  double cost = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
  std::array<std::array<double, 4>, 4> jtj{};  // at the solution
  std::string message;
};

/// Damped Gauss-Newton from one starting point. Parameters are packed in the
/// fixed order (a, b, gamma, delta) with frozen entries skipped.
inline CoreResult fit_core(const std::vector<FitSample>& samples, std::array<double, 4> theta,
                           const FreeMask& free, const FitOptions& opt) {
  const std::array<bool, 4> is_free{free.alpha, free.beta, free.gamma, free.delta};
  std::array<int, 4> map{};  // packed index -> parameter index
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    if (is_free[i]) map[k++] = i;
  }

  auto eval_cost = [&](const std::array<double, 4>& th) {
    double c = 0.0;
    for (const FitSample& s : samples) {
      const double r = th[0] + (th[2] * s.d_r - th[3]) * (s.log_p - th[1]) - s.log_pl;
      c += r * r;
    }
    return c;
  };
  auto eval_normal_eq = [&](const std::array<double, 4>& th,
                            std::array<std::array<double, 4>, 4>& jtj,
                            std::array<double, 4>& jtr) {
    jtj = {};
    jtr = {};
    for (const FitSample& s : samples) {
      const double slope = th[2] * s.d_r - th[3];
      const double x = s.log_p - th[1];
      const double r = th[0] + slope * x - s.log_pl;
      // d r / d (a, b, gamma, delta):
      const std::array<double, 4> grad{1.0, -slope, s.d_r * x, -x};
      for (int i = 0; i < k; ++i) {
        jtr[i] += grad[map[i]] * r;
        for (int j = 0; j <= i; ++j) jtj[i][j] += grad[map[i]] * grad[map[j]];
      }
    }
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) jtj[i][j] = jtj[j][i];
    }
  };

  CoreResult res{};
  double cost = eval_cost(theta);
  res.trace.push_back(cost);
  double mu = 1e-3;
  int iter = 0;
  bool stalled = false;
  std::array<std::array<double, 4>, 4> jtj{};
  std::array<double, 4> jtr{};
  for (; iter < opt.max_iterations; ++iter) {
    eval_normal_eq(theta, jtj, jtr);
    double gmax = 0.0;
    for (int i = 0; i < k; ++i) gmax = std::max(gmax, std::abs(jtr[i]));
    if (gmax < opt.grad_tol) {
      res.converged = true;
      break;
    }
    // Inner damping loop: grow mu until the step reduces the cost.
    bool accepted = false;
    double rel_step = 0.0;
    while (mu <= 1e14) {
      std::array<double, 4> step{};
      if (!solve_damped(jtj, jtr, mu, k, step)) {
        mu *= 10.0;
        continue;
      }
      std::array<double, 4> trial = theta;
      for (int i = 0; i < k; ++i) trial[map[i]] -= step[i];
      const double trial_cost = eval_cost(trial);
      if (trial_cost <= cost) {
        rel_step = 0.0;
        for (int i = 0; i < k; ++i) {
          const double denom = std::max(1.0, std::abs(theta[map[i]]));
          rel_step = std::max(rel_step, std::abs(step[i]) / denom);
        }
        theta = trial;
        cost = trial_cost;
        res.trace.push_back(cost);
        mu = std::max(mu / 3.0, 1e-14);
        accepted = true;
        break;
      }
      mu *= 10.0;
    }
    if (!accepted || rel_step < opt.param_tol) {
      stalled = true;
      ++iter;
      break;
    }
  }
  // The convergence flag is defined by the gradient at the final point, so a
  // parameter-step stop still reports converged when it landed at a stationary
  // point (and honestly reports false when it merely stalled).
  eval_normal_eq(theta, jtj, jtr);
  if (!res.converged) {
    double gmax = 0.0;
    for (int i = 0; i < k; ++i) gmax = std::max(gmax, std::abs(jtr[i]));
    res.converged = gmax < opt.grad_tol;
  }
  res.theta = theta;
  res.cost = cost;
  res.iterations = iter;
  res.jtj = jtj;
  if (res.converged) {
    res.message = "converged";
  } else if (stalled) {
    res.message = "stalled: step size below tolerance with gradient above tolerance";
  } else {
    res.message = "iteration limit reached";
  }
  return res;
}

}  // namespace detail

/**
 * Fit the scaling form to one or more data series.
 *
 * Requirements: at least two distinct d_R values whenever beta or delta is
 * free (they are not separately identifiable from a single distance) and at
 * least 4 points per series. init supplies starting values and the held
 * values of any frozen parameters; model/regime/parity tags are carried
 * through to the result.
 */
inline FitResult fit_scaling(const std::vector<DataSeries>& series, const ScalingParams& init,
                             const FitOptions& opt = {}) {
  const std::vector<detail::FitSample> samples = detail::flatten_series(series, opt);
  if (samples.size() < static_cast<std::size_t>(std::max(4, opt.free.count()))) {
    throw std::invalid_argument("fit_scaling: not enough samples after filtering");
  }
  double dr_min = samples.front().d_r, dr_max = samples.front().d_r;
  for (const auto& s : samples) {
    dr_min = std::min(dr_min, s.d_r);
    dr_max = std::max(dr_max, s.d_r);
  }
  if ((opt.free.beta || opt.free.delta) && dr_max - dr_min < 1e-9) {
    throw std::invalid_argument(
        "fit_scaling: need at least two distinct d_R values (beta and delta "
        "are unidentifiable from a single distance)");
  }
  if (init.alpha <= 0.0 || init.beta <= 0.0) {
    throw std::invalid_argument("fit_scaling: init alpha and beta must be positive");
  }

  std::vector<double> beta_starts;
  if (opt.free.beta) {
    beta_starts = log_grid(opt.beta_grid_lo, opt.beta_grid_hi,
                           static_cast<std::size_t>(std::max(2, opt.multistart_count)));
  } else {
    beta_starts = {init.beta};
  }

  bool have_best = false;
  detail::CoreResult best{};
  for (double bstart : beta_starts) {
    const std::array<double, 4> start{std::log(init.alpha), std::log(bstart), init.gamma,
                                      init.delta};
    detail::CoreResult r = detail::fit_core(samples, start, opt.free, opt);
    // Keep the lowest cost; break near-ties toward the smaller recovered beta.
    constexpr double kTieRel = 1e-12;
    const bool better = !have_best || r.cost < best.cost - kTieRel * (1.0 + best.cost) ||
                        (r.cost <= best.cost + kTieRel * (1.0 + best.cost) &&
                         r.theta[1] < best.theta[1]);
    if (better) {
      best = std::move(r);
      have_best = true;
    }
  }

  FitResult out;
  out.params = init;
  out.params.alpha = std::exp(best.theta[0]);
  out.params.beta = std::exp(best.theta[1]);
  out.params.gamma = best.theta[2];
  out.params.delta = best.theta[3];
  out.d_r = dr_max;
  out.converged = best.converged;
  out.iterations = best.iterations;
  out.cost = best.cost;
  out.cost_trace = std::move(best.trace);
  out.n_points = samples.size();
  out.residual_rms = std::sqrt(best.cost / static_cast<double>(samples.size()));
  out.message = best.message;

  // Gauss-Newton covariance: s^2 (J^T J)^-1, mapped back to the natural
  // parameters (alpha and beta were fitted in log space).
  const int k = opt.free.count();
  if (k > 0 && samples.size() > static_cast<std::size_t>(k)) {
    const double s2 = best.cost / static_cast<double>(samples.size() - k);
    const std::array<double, 4> inv_diag = detail::inverse_diag(best.jtj, k);
    const std::array<bool, 4> is_free{opt.free.alpha, opt.free.beta, opt.free.gamma,
                                      opt.free.delta};
    const std::array<double, 4> jac_scale{out.params.alpha, out.params.beta, 1.0, 1.0};
    int packed = 0;
    for (int i = 0; i < 4; ++i) {
      if (!is_free[i]) continue;
      out.covariance_diag[i] = s2 * inv_diag[packed] * jac_scale[i] * jac_scale[i];
      ++packed;
    }
  }
  return out;
}

/**
 * Generate synthetic series from a parameter set: exact model values times an
 * optional multiplicative lognormal factor exp(noise_rel * z), z ~ N(0,1),
 * drawn from the counter-based generator (deterministic in the seed; one
 * substream per distance so series are independent).
 */
inline std::vector<DataSeries> generate_synthetic(const ScalingParams& params,
                                                  const std::vector<double>& d_r_values,
                                                  const std::vector<double>& p_grid,
                                                  double noise_rel = 0.0,
                                                  std::uint64_t seed = 0) {
  if (d_r_values.empty() || p_grid.empty()) {
    throw std::invalid_argument("generate_synthetic: empty distance list or p grid");
  }
  if (noise_rel < 0.0) {
    throw std::invalid_argument("generate_synthetic: noise level must be >= 0");
  }
  std::vector<DataSeries> out;
  out.reserve(d_r_values.size());
  std::uint64_t stream = 0;
  for (double d_r : d_r_values) {
    DataSeries s;
    s.model = params.model;
    s.regime = params.regime;
    s.d = d_r;
    s.d_r = d_r;
    CounterRng rng(seed, ++stream);
    s.points.reserve(p_grid.size());
    for (double p : p_grid) {
      double v = plog_fitted(p, params, d_r);
      if (noise_rel > 0.0) v *= std::exp(noise_rel * rng.normal());
      s.points.push_back({p, v});
    }
    out.push_back(std::move(s));
  }
  return out;
}

/**
 * Render fit results as a fixed-column text table in the published layout:
 * model, regime, parity, d_R, alpha, beta, gamma, delta. An empty input
 * yields the header line alone.
 */
inline std::string fit_report(const std::vector<FitResult>& results) {
  std::ostringstream os;
  os << "model  regime    parity  d_R          alpha        beta         gamma        delta\n";
  for (const FitResult& r : results) {
    char line[192];
    std::snprintf(line, sizeof(line), "%-6s %-9s %-7s %-12.5g %-12.5g %-12.5g %-12.5g %-12.5g\n",
                  to_string(r.params.model), to_string(r.params.regime),
                  to_string(r.params.parity), r.d_r, r.params.alpha, r.params.beta,
                  r.params.gamma, r.params.delta);
    os << line;
  }
  return os.str();
}

/// One-result detail block (status, residuals, crossing point).
inline std::string fit_detail(const FitResult& r) {
  std::ostringstream os;
  os << "fit status     : " << r.message << "\n"
     << "points         : " << r.n_points << "\n"
     << "iterations     : " << r.iterations << "\n"
     << "residual rms   : " << format_sci(r.residual_rms) << "\n"
     << "model / regime : " << to_string(r.params.model) << " / " << to_string(r.params.regime)
     << "\n"
     << "alpha          : " << format_sci(r.params.alpha) << "\n"
     << "beta           : " << format_sci(r.params.beta) << "\n"
     << "gamma          : " << format_sci(r.params.gamma) << "\n"
     << "delta          : " << format_sci(r.params.delta) << "\n"
     << "crossing point : (" << format_sci(r.params.beta) << ", " << format_sci(r.params.alpha)
     << ")\n";
  return os.str();
}

namespace detail {
inline double parse_double_field(const std::string& field, std::size_t line_no,
                                 const char* column) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || (end && *end != '\0')) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": malformed " + column +
                             " value '" + field + "'");
  }
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}
}  // namespace detail

/**
 * Parse fit input CSV. Two layouts are accepted:
 *   d,p_phy,p_log                      (d doubles as d_R)
 *   model,regime,d,d_R,p_phy,p_log     (as written by the sweep generator)
 * Comment lines (leading '#'), blank lines, and a single header row are
 * skipped. Errors name the offending 1-based line.
 */
inline std::vector<DataSeries> parse_fit_csv(std::istream& is) {
  std::vector<DataSeries> series;
  auto series_for = [&series](NoiseModel m, Regime r, double d, double d_r) -> DataSeries& {
    for (DataSeries& s : series) {
      if (s.model == m && s.regime == r && s.d == d && s.d_r == d_r) return s;
    }
    series.push_back(DataSeries{m, r, d, d_r, {}});
    return series.back();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = detail::split_csv_line(line);
    try {
      if (fields.size() == 3) {
        if (fields[0] == "d" && fields[1] == "p_phy") continue;  // header
        const double d = detail::parse_double_field(fields[0], line_no, "d");
        const double p = detail::parse_double_field(fields[1], line_no, "p_phy");
        const double pl = detail::parse_double_field(fields[2], line_no, "p_log");
        series_for(NoiseModel::sd, Regime::small_angle, d, d).points.push_back({p, pl});
      } else if (fields.size() == 6) {
        if (fields[0] == "model") continue;  // header
        const NoiseModel m = noise_model_from_string(fields[0]);
        const Regime r = regime_from_string(fields[1]);
        const double d = detail::parse_double_field(fields[2], line_no, "d");
        const double d_r = detail::parse_double_field(fields[3], line_no, "d_R");
        const double p = detail::parse_double_field(fields[4], line_no, "p_phy");
        const double pl = detail::parse_double_field(fields[5], line_no, "p_log");
        series_for(m, r, d, d_r).points.push_back({p, pl});
      } else {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": expected 3 or 6 comma-separated fields, got " +
                                 std::to_string(fields.size()));
      }
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (series.empty()) throw std::runtime_error("no data rows found in fit input");
  return series;
}

}  // namespace rotlog
