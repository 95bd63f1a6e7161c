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

/**
 * rotlog — command-line frontend for the rotated-logical-state toolkit.
 *
 * Subcommands: distance, scaling, fit, simulate, dr-sweep. Every run is
 * deterministic given its flags, config file, and seed: outputs carry no
 * timestamps or host information and re-runs are byte-identical.
 *
 * Config layering: `--config file.json` loads a flat JSON object whose keys
 * are the long option names of the subcommand (without the leading dashes).
 * Explicit command-line flags override config values; unknown keys are
 * rejected. The resolved configuration is echoed into every output (CSV
 * comment header / JSON fields).
 *
 * Exit codes: 0 success, 1 usage or runtime error, 2 numerical
 * non-convergence (fit).
 */

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotlog/fitting.hpp"
#include "rotlog/logical_states.hpp"
#include "rotlog/noise_sim.hpp"
#include "rotlog/scaling.hpp"
#include "rotlog/serialize.hpp"

namespace {

using rotlog::DataPoint;
using rotlog::DataSeries;
using rotlog::ScalingParams;

/// Exact-round-trip double formatting for config echoes.
std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  os << content;
  if (!os) throw std::runtime_error("failed writing output file '" + path + "'");
}

/// Write to --out when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

/// Emit a ready-to-run gnuplot script alongside the CSV (<out>.gp).
void maybe_gnuplot(bool enabled, const std::string& out_path, const std::string& body) {
  if (!enabled) return;
  if (out_path.empty()) {
    throw std::runtime_error("--gnuplot requires --out (the script references the CSV file)");
  }
  write_file(out_path + ".gp", body);
}

std::string gnuplot_script(const std::string& csv, const std::string& xlabel,
                           const std::string& ylabel, int xcol, int ycol,
                           const std::string& logscale) {
  std::ostringstream os;
  os << "set datafile separator ','\n";
  if (!logscale.empty()) os << "set logscale " << logscale << "\n";
  os << "set xlabel '" << xlabel << "'\n"
     << "set ylabel '" << ylabel << "'\n"
     << "set key outside\n"
     << "plot '" << csv << "' using " << xcol << ":" << ycol << " with points title '" << ylabel
     << "'\n";
  return os.str();
}

/// Key=value piece of a config echo line.
std::string kv(const std::string& key, const std::string& value) { return key + "=" + value; }
std::string kv(const std::string& key, double value) { return key + "=" + fmt_full(value); }
std::string kv(const std::string& key, std::uint64_t value) {
  return key + "=" + std::to_string(value);
}

/// True when the user passed --name (or --name=...) explicitly.
bool user_passed(const std::vector<std::string>& args, const std::string& name) {
  const std::string flag = "--" + name;
  for (const std::string& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

std::string json_scalar_to_string(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean() || v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return fmt_full(v.get<double>());
  throw std::runtime_error("config key '" + key + "' must be a scalar or array of scalars");
}

/**
 * Turn a flat JSON config into extra command-line tokens for `sub`, skipping
 * keys the user passed explicitly (flags override file values). Unknown keys
 * and non-flat values are rejected.
 */
std::vector<std::string> config_to_args(const std::string& path, const CLI::App* sub,
                                        const std::vector<std::string>& user_args) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json cfg;
  try {
    is >> cfg;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("config file '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) {
    throw std::runtime_error("config file '" + path + "' must hold a flat JSON object");
  }
  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config" || key == "help") {
      throw std::runtime_error("config file: key '" + key + "' is not allowed");
    }
    const std::string flag = "--" + key;
    if (sub->get_option_no_throw(flag) == nullptr) {
      throw std::runtime_error("config file: unknown key '" + key + "' for subcommand '" +
                               sub->get_name() + "'");
    }
    if (user_passed(user_args, key)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& el : value) {
        injected.push_back(flag);
        injected.push_back(json_scalar_to_string(el, key));
      }
    } else {
      injected.push_back(flag);
      injected.push_back(json_scalar_to_string(value, key));
    }
  }
  return injected;
}

/// Extract the value of --config from raw args (either token form).
std::string find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

rotlog::FreeMask parse_free_mask(const std::string& names) {
  rotlog::FreeMask mask{false, false, false, false};
  std::stringstream ss(names);
  std::string tok;
  bool any = false;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (tok == "alpha") {
      mask.alpha = true;
    } else if (tok == "beta") {
      mask.beta = true;
    } else if (tok == "gamma") {
      mask.gamma = true;
    } else if (tok == "delta") {
      mask.delta = true;
    } else {
      throw std::runtime_error("--free: unknown parameter '" + tok +
                               "' (expected a comma list of alpha,beta,gamma,delta)");
    }
    any = true;
  }
  if (!any) throw std::runtime_error("--free: at least one parameter must be free");
  return mask;
}

double lerp(double lo, double hi, std::size_t i, std::size_t count) {
  if (count <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotated-logical-state scaling toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- distance ------------------------------------------------------
  auto* dist = app.add_subcommand(
      "distance", "Sweep the effective distance d_R = d exp(-lambda (theta^2 + phi^2))");
  struct {
    double d = 5.0;
    double lambda = 1.0;
    double theta_min = 0.1, theta_max = 1.5;
    double phi_min = 0.1, phi_max = 1.5;
    std::size_t grid = 50;
    std::string out;
    std::string config;
    bool gnuplot = false;
  } dargs;
  dist->add_option("--d", dargs.d, "Code distance d")->capture_default_str();
  dist->add_option("--lambda", dargs.lambda, "Decay constant lambda")->capture_default_str();
  dist->add_option("--theta-min", dargs.theta_min, "Sweep start for theta")
      ->capture_default_str();
  dist->add_option("--theta-max", dargs.theta_max, "Sweep end for theta")->capture_default_str();
  dist->add_option("--phi-min", dargs.phi_min, "Sweep start for phi")->capture_default_str();
  dist->add_option("--phi-max", dargs.phi_max, "Sweep end for phi")->capture_default_str();
  dist->add_option("--grid", dargs.grid, "Number of sweep points")->capture_default_str();
  dist->add_option("--out", dargs.out, "Output CSV path (stdout when omitted)");
  dist->add_option("--config", dargs.config, "Flat JSON config file");
  dist->add_flag("--gnuplot", dargs.gnuplot, "Also write a gnuplot script (<out>.gp)");
  dist->callback([&]() {
    if (dargs.grid < 1) throw std::runtime_error("distance: --grid must be at least 1");
    if (dargs.theta_max < dargs.theta_min || dargs.phi_max < dargs.phi_min) {
      throw std::runtime_error("distance: range end must not be below its start");
    }
    std::ostringstream os;
    os << "# config: " << kv("command", "distance") << ' ' << kv("d", dargs.d) << ' '
       << kv("lambda", dargs.lambda) << ' ' << kv("theta-min", dargs.theta_min) << ' '
       << kv("theta-max", dargs.theta_max) << ' ' << kv("phi-min", dargs.phi_min) << ' '
       << kv("phi-max", dargs.phi_max) << ' '
       << kv("grid", static_cast<std::uint64_t>(dargs.grid)) << "\n";
    os << "theta,phi,lambda,d,d_R\n";
    for (std::size_t i = 0; i < dargs.grid; ++i) {
      const double t = lerp(dargs.theta_min, dargs.theta_max, i, dargs.grid);
      const double ph = lerp(dargs.phi_min, dargs.phi_max, i, dargs.grid);
      const double dr = rotlog::effective_distance(dargs.d, dargs.lambda, t, ph);
      os << rotlog::format_sci(t) << ',' << rotlog::format_sci(ph) << ','
         << rotlog::format_sci(dargs.lambda) << ',' << rotlog::format_sci(dargs.d) << ','
         << rotlog::format_sci(dr) << "\n";
    }
    emit(dargs.out, os.str());
    maybe_gnuplot(dargs.gnuplot, dargs.out,
                  gnuplot_script(dargs.out, "theta", "d_R", 1, 5, ""));
  });

  // ---- scaling -------------------------------------------------------
  auto* scal = app.add_subcommand(
      "scaling", "Evaluate the fitted scaling form over code distances and a p_phy grid");
  struct {
    std::string model = "sd";
    std::string regime = "small";
    std::string params = "headline";
    std::string parity = "none";
    std::vector<double> d;
    double p_min = 1e-4, p_max = 1e-2;
    std::size_t grid = 25;
    double deform_factor = 1.0;
    double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
    std::string out;
    std::string config;
    bool gnuplot = false;
  } sargs;
  scal->add_option("--model", sargs.model, "Noise model: sd or si")->capture_default_str();
  scal->add_option("--regime", sargs.regime, "Angle regime: small, large or combined")
      ->capture_default_str();
  scal->add_option("--params", sargs.params,
                   "Parameter source: headline (rounded) or fitted (full precision)")
      ->check(CLI::IsMember({"headline", "fitted"}))
      ->capture_default_str();
  scal->add_option("--parity", sargs.parity, "Parity row for --params fitted: even or odd")
      ->capture_default_str();
  scal->add_option("--d", sargs.d, "Code distances (repeat or comma-separate)")
      ->required()
      ->delimiter(',');
  scal->add_option("--p-min", sargs.p_min, "Lower p_phy bound")->capture_default_str();
  scal->add_option("--p-max", sargs.p_max, "Upper p_phy bound")->capture_default_str();
  scal->add_option("--grid", sargs.grid, "Grid points per distance")->capture_default_str();
  scal->add_option("--deform-factor", sargs.deform_factor,
                   "d_R = d * factor, in (0, 1]")
      ->capture_default_str();
  scal->add_option("--alpha", sargs.alpha, "Override alpha");
  scal->add_option("--beta", sargs.beta, "Override beta");
  scal->add_option("--gamma", sargs.gamma, "Override gamma");
  scal->add_option("--delta", sargs.delta, "Override delta (signed)");
  scal->add_option("--out", sargs.out, "Output CSV path (stdout when omitted)");
  scal->add_option("--config", sargs.config, "Flat JSON config file");
  scal->add_flag("--gnuplot", sargs.gnuplot, "Also write a gnuplot script (<out>.gp)");
  scal->callback([&]() {
    const rotlog::NoiseModel model = rotlog::noise_model_from_string(sargs.model);
    const rotlog::Regime regime = rotlog::regime_from_string(sargs.regime);
    ScalingParams params;
    if (sargs.params == "headline") {
      params = rotlog::headline_params(model, regime);
    } else {
      params = rotlog::fitted_params(model, regime, rotlog::parity_from_string(sargs.parity));
    }
    if (scal->count("--alpha") > 0) params.alpha = sargs.alpha;
    if (scal->count("--beta") > 0) params.beta = sargs.beta;
    if (scal->count("--gamma") > 0) params.gamma = sargs.gamma;
    if (scal->count("--delta") > 0) params.delta = sargs.delta;
    if (sargs.p_max >= 1.0) throw std::runtime_error("scaling: --p-max must be below 1");
    const std::vector<double> grid = rotlog::log_grid(sargs.p_min, sargs.p_max, sargs.grid);
    const std::vector<DataSeries> series =
        rotlog::curve_sweep(params, sargs.d, grid, sargs.deform_factor);

    std::size_t out_of_range = 0;
    for (const DataSeries& s : series) {
      for (const DataPoint& pt : s.points) {
        if (!rotlog::probability_in_range(pt.p_log)) ++out_of_range;
      }
    }
    std::ostringstream dlist;
    for (std::size_t i = 0; i < sargs.d.size(); ++i) {
      dlist << (i ? ";" : "") << fmt_full(sargs.d[i]);
    }
    std::vector<std::string> comments;
    {
      std::ostringstream c;
      c << kv("command", "scaling") << ' ' << kv("model", sargs.model) << ' '
        << kv("regime", sargs.regime) << ' ' << kv("params", sargs.params) << ' '
        << kv("parity", sargs.parity) << ' ' << kv("d", dlist.str()) << ' '
        << kv("p-min", sargs.p_min) << ' ' << kv("p-max", sargs.p_max) << ' '
        << kv("grid", static_cast<std::uint64_t>(sargs.grid)) << ' '
        << kv("deform-factor", sargs.deform_factor) << ' ' << kv("alpha", params.alpha) << ' '
        << kv("beta", params.beta) << ' ' << kv("gamma", params.gamma) << ' '
        << kv("delta", params.delta);
      comments.push_back("config: " + c.str());
    }
    const auto [cx, cy] = rotlog::crossing_point(params);
    comments.push_back("crossing: p_phy=" + rotlog::format_sci(cx) +
                       " p_log=" + rotlog::format_sci(cy));
    if (out_of_range > 0) {
      comments.push_back("warning: " + std::to_string(out_of_range) +
                         " value(s) outside [0, 1] (extrapolated regime)");
    }
    std::ostringstream os;
    rotlog::write_series_csv(os, series, comments);
    emit(sargs.out, os.str());
    maybe_gnuplot(sargs.gnuplot, sargs.out,
                  gnuplot_script(sargs.out, "p_phy", "p_log", 5, 6, "xy"));
  });

  // ---- fit -----------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "Fit the scaling form to CSV data");
  struct {
    std::string input;
    std::string model = "sd";
    std::string regime = "small";
    std::string parity = "none";
    std::string free = "alpha,beta,gamma,delta";
    double init_alpha = 0.05, init_beta = 0.005, init_gamma = 0.7, init_delta = -0.9;
    double d_min = 0.0, p_max = 0.0;
    std::string out;
    std::string config;
  } fargs;
  fit->add_option("--input", fargs.input, "Input CSV (d,p_phy,p_log or the sweep CSV layout)")
      ->required();
  fit->add_option("--model", fargs.model, "Tag for the fitted row: sd or si")
      ->capture_default_str();
  fit->add_option("--regime", fargs.regime, "Tag for the fitted row")->capture_default_str();
  fit->add_option("--parity", fargs.parity, "Tag for the fitted row")->capture_default_str();
  fit->add_option("--free", fargs.free, "Comma list of free parameters")->capture_default_str();
  fit->add_option("--init-alpha", fargs.init_alpha, "Initial / held alpha")
      ->capture_default_str();
  fit->add_option("--init-beta", fargs.init_beta, "Initial / held beta")->capture_default_str();
  fit->add_option("--init-gamma", fargs.init_gamma, "Initial / held gamma")
      ->capture_default_str();
  fit->add_option("--init-delta", fargs.init_delta, "Initial / held delta (signed)")
      ->capture_default_str();
  fit->add_option("--d-min", fargs.d_min, "Keep only series with d >= this");
  fit->add_option("--p-max", fargs.p_max, "Keep only points with p_phy <= this");
  fit->add_option("--out", fargs.out, "Write the JSON report here (text goes to stdout)");
  fit->add_option("--config", fargs.config, "Flat JSON config file");
  fit->callback([&]() {
    std::ifstream is(fargs.input);
    if (!is) throw std::runtime_error("cannot open input file '" + fargs.input + "'");
    const std::vector<DataSeries> series = rotlog::parse_fit_csv(is);

    rotlog::FitOptions opt;
    opt.free = parse_free_mask(fargs.free);
    if (fit->count("--d-min") > 0) opt.min_d = fargs.d_min;
    if (fit->count("--p-max") > 0) opt.max_p = fargs.p_max;

    ScalingParams init;
    init.alpha = fargs.init_alpha;
    init.beta = fargs.init_beta;
    init.gamma = fargs.init_gamma;
    init.delta = fargs.init_delta;
    init.model = rotlog::noise_model_from_string(fargs.model);
    init.regime = rotlog::regime_from_string(fargs.regime);
    init.parity = rotlog::parity_from_string(fargs.parity);
    init.p_th = rotlog::default_threshold(init.model);

    const rotlog::FitResult res = rotlog::fit_scaling(series, init, opt);

    std::ostringstream txt;
    txt << "# config: " << kv("command", "fit") << ' ' << kv("input", fargs.input) << ' '
        << kv("model", fargs.model) << ' ' << kv("regime", fargs.regime) << ' '
        << kv("parity", fargs.parity) << ' ' << kv("free", fargs.free);
    if (opt.min_d) txt << ' ' << kv("d-min", *opt.min_d);
    if (opt.max_p) txt << ' ' << kv("p-max", *opt.max_p);
    txt << "\n" << rotlog::fit_report({res}) << "\n" << rotlog::fit_detail(res);
    std::cout << txt.str();
    if (!fargs.out.empty()) {
      write_file(fargs.out, rotlog::fit_results_to_json({res}).dump(2) + "\n");
    }
    if (!res.converged) exit_code = 2;
  });

  // ---- simulate ------------------------------------------------------
  auto* sim = app.add_subcommand(
      "simulate", "Monte-Carlo logical error rate of the rotated-state circuit");
  struct {
    unsigned n = 7;
    double theta = 0.1, phi = 0.1;
    std::string model = "sd";
    double p = 0.0;
    double eta = rotlog::kDefaultBiasEta;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string encoding = "repetition";
    bool noise_per_gate = false;
    std::string out;
    std::string config;
  } margs;
  sim->add_option("--n", margs.n, "Qubit count (2..10)")->capture_default_str();
  sim->add_option("--theta", margs.theta, "Rotation angle theta")->capture_default_str();
  sim->add_option("--phi", margs.phi, "Rotation angle phi")->capture_default_str();
  sim->add_option("--model", margs.model, "Noise model: sd or si")->capture_default_str();
  sim->add_option("--p", margs.p, "Physical error probability")->required();
  sim->add_option("--eta", margs.eta, "Z bias (si model only)")->capture_default_str();
  sim->add_option("--trials", margs.trials, "Monte-Carlo trials (>= 100)")
      ->capture_default_str();
  sim->add_option("--seed", margs.seed, "Base RNG seed")
      ->envname("ROTLOG_SEED")
      ->capture_default_str();
  sim->add_option("--jobs", margs.jobs, "Worker threads (result is jobs-invariant)")
      ->capture_default_str();
  sim->add_option("--encoding", margs.encoding, "Input encoding: repetition or ghz")
      ->capture_default_str();
  sim->add_flag("--noise-per-gate", margs.noise_per_gate,
                "Insert channel samples after every gate instead of at the markers");
  sim->add_option("--out", margs.out, "Output JSON path (stdout when omitted)");
  sim->add_option("--config", margs.config, "Flat JSON config file");
  sim->callback([&]() {
    rotlog::RotationParams rot;
    rot.theta = margs.theta;
    rot.phi = margs.phi;
    rotlog::NoiseChannel channel;
    channel.model = rotlog::noise_model_from_string(margs.model);
    channel.p = margs.p;
    channel.bias_eta = margs.eta;
    rotlog::SimOptions opts;
    opts.encoding = rotlog::encoding_from_string(margs.encoding);
    opts.jobs = margs.jobs;
    opts.placement = margs.noise_per_gate ? rotlog::NoisePlacement::per_gate
                                          : rotlog::NoisePlacement::markers;
    const rotlog::SimResult res =
        rotlog::estimate_plog(margs.n, rot, channel, margs.trials, margs.seed, opts);
    emit(margs.out, rotlog::sim_result_to_json(res).dump(2) + "\n");
  });

  // ---- dr-sweep ------------------------------------------------------
  auto* drs = app.add_subcommand(
      "dr-sweep", "Tabulate p_log against d_R for both headline equations of a model");
  struct {
    std::string model = "si";
    double dr_min = 2.0, dr_max = 22.0;
    std::size_t grid = 41;
    std::vector<double> p{1e-3, 1e-4};
    std::string out;
    std::string config;
    bool gnuplot = false;
  } rargs;
  drs->add_option("--model", rargs.model, "Noise model: sd or si")->capture_default_str();
  drs->add_option("--dr-min", rargs.dr_min, "Sweep start for d_R")->capture_default_str();
  drs->add_option("--dr-max", rargs.dr_max, "Sweep end for d_R")->capture_default_str();
  drs->add_option("--grid", rargs.grid, "Number of d_R points")->capture_default_str();
  drs->add_option("--p", rargs.p, "Physical error rates (repeat or comma-separate)")
      ->delimiter(',');
  drs->add_option("--out", rargs.out, "Output CSV path (stdout when omitted)");
  drs->add_option("--config", rargs.config, "Flat JSON config file");
  drs->add_flag("--gnuplot", rargs.gnuplot, "Also write a gnuplot script (<out>.gp)");
  drs->callback([&]() {
    const rotlog::NoiseModel model = rotlog::noise_model_from_string(rargs.model);
    if (rargs.grid < 1) throw std::runtime_error("dr-sweep: --grid must be at least 1");
    if (rargs.dr_max < rargs.dr_min || rargs.dr_min < 0.0) {
      throw std::runtime_error("dr-sweep: need 0 <= dr-min <= dr-max");
    }
    if (rargs.p.empty()) throw std::runtime_error("dr-sweep: need at least one --p value");
    for (double p : rargs.p) {
      if (p <= 0.0 || p >= 1.0) {
        throw std::runtime_error("dr-sweep: every p must lie in (0, 1)");
      }
    }
    std::ostringstream plist;
    for (std::size_t i = 0; i < rargs.p.size(); ++i) {
      plist << (i ? ";" : "") << fmt_full(rargs.p[i]);
    }
    std::ostringstream os;
    os << "# config: " << kv("command", "dr-sweep") << ' ' << kv("model", rargs.model) << ' '
       << kv("dr-min", rargs.dr_min) << ' ' << kv("dr-max", rargs.dr_max) << ' '
       << kv("grid", static_cast<std::uint64_t>(rargs.grid)) << ' ' << kv("p", plist.str())
       << "\n";
    os << "model,regime,p_phy,d_R,p_log\n";
    for (const rotlog::Regime regime : {rotlog::Regime::small_angle, rotlog::Regime::large_angle}) {
      const ScalingParams params = rotlog::headline_params(model, regime);
      for (double p : rargs.p) {
        for (std::size_t i = 0; i < rargs.grid; ++i) {
          const double dr = lerp(rargs.dr_min, rargs.dr_max, i, rargs.grid);
          os << rotlog::to_string(model) << ',' << rotlog::to_string(regime) << ','
             << rotlog::format_sci(p) << ',' << rotlog::format_sci(dr) << ','
             << rotlog::format_sci(rotlog::plog_fitted(p, params, dr)) << "\n";
        }
      }
    }
    emit(rargs.out, os.str());
    maybe_gnuplot(rargs.gnuplot, rargs.out,
                  gnuplot_script(rargs.out, "d_R", "p_log", 4, 5, "y"));
  });

  // ---- config layering + parse ---------------------------------------
  std::vector<std::string> raw_args(argv + 1, argv + argc);
  std::vector<std::string> full_args;
  full_args.reserve(raw_args.size() + 8);
  try {
    const std::string config_path = find_config_path(raw_args);
    std::size_t sub_index = raw_args.size();
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
      if (!raw_args[i].empty() && raw_args[i][0] != '-') {
        sub_index = i;
        break;
      }
    }
    full_args = raw_args;
    if (!config_path.empty() && sub_index < raw_args.size()) {
      const CLI::App* sub = app.get_subcommand_no_throw(raw_args[sub_index]);
      if (sub != nullptr) {
        const std::vector<std::string> injected =
            config_to_args(config_path, sub, raw_args);
        full_args.insert(full_args.begin() + static_cast<std::ptrdiff_t>(sub_index) + 1,
                         injected.begin(), injected.end());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::vector<const char*> cargv;
  cargv.reserve(full_args.size() + 1);
  cargv.push_back(argv[0]);
  for (const std::string& s : full_args) cargv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends: exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage errors are exit 1 regardless of CLI11's own code
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
