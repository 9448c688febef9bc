// SPDX-License-Identifier: Apache-2.0
//
// wideband-outage: outage exponents of wideband slow-fading parallel channels
// Copyright (C) 2026 The wideband-outage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// wideband_outage: command-line front end.
//
//   exponent   scalar fading exponent vs eta (closed form and numeric)
//   mimo       white / Kronecker / config-file MIMO exponent vs eta
//   feedback   etabar-sweep | onoff-curves | mesh
//   simulate   Monte Carlo outage counts and slope fit (or the Gamma oracle)
//   shape      two-antenna input-correlation optimisation
//
// Exit codes: 0 ok, 2 bad arguments, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cli_io.hpp"
#include "wideband/wideband.hpp"

namespace {

using namespace wideband;
using cli::fmt;

constexpr int kExitBadArgs = 2;
constexpr int kExitNumeric = 3;

// Numerical failure flagged in an output row; turned into exit status 3.
bool g_numeric_failure = false;

struct EtaInput {
  std::vector<double> eta;
  std::vector<double> eta_db;
  std::string eta_grid;
  std::string eta_db_grid;

  void add_to(CLI::App* app, bool required = true) {
    auto* g = app->add_option_group("energy per nat", "eta in linear units or dB");
    g->add_option("--eta", eta, "eta (linear), comma list")->delimiter(',');
    g->add_option("--eta-db", eta_db, "eta in dB, comma list")->delimiter(',');
    g->add_option("--eta-grid", eta_grid, "linear grid start:stop:count");
    g->add_option("--eta-db-grid", eta_db_grid, "dB grid start:stop:count");
    if (required)
      g->require_option(1);
    else
      g->require_option(0, 1);
  }

  // dB inputs are converted here, once.
  std::vector<double> values() const {
    std::vector<double> out;
    if (!eta.empty()) out = eta;
    for (double d : eta_db) out.push_back(cli::db_to_linear(d));
    if (!eta_grid.empty()) out = cli::parse_linspace(eta_grid);
    if (!eta_db_grid.empty())
      for (double d : cli::parse_linspace(eta_db_grid)) out.push_back(cli::db_to_linear(d));
    for (double e : out)
      if (!(e > 0.0) || !std::isfinite(e)) throw invalid_param("eta must be positive and finite");
    return out;
  }
};

// Output sink: file if given, else stdout. Always LF line endings.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw invalid_param("cannot open output file '" + path + "'");
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }
  void row(const std::vector<std::string>& cells) {
    auto& o = out();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) o << ',';
      o << cells[i];
    }
    o << '\n';
  }

 private:
  std::ofstream file_;
};

std::string status_cell(ExponentStatus s) {
  if (s == ExponentStatus::no_convergence) g_numeric_failure = true;
  return to_string(s);
}

// ---------------------------------------------------------------- exponent

struct ScalarArgs {
  std::string model = "rayleigh";
  double kappa = 0.0;
  double m = 1.0;

  void add_to(CLI::App* app) {
    app->add_option("--model", model, "rayleigh | rician | nakagami")
        ->check(CLI::IsMember({"rayleigh", "rician", "nakagami"}));
    app->add_option("--kappa", kappa, "Rician line-of-sight amplitude, [0, 1)");
    app->add_option("--m", m, "Nakagami shape, >= 0.5");
  }

  scalar::ScalarFadingModel build() const {
    if (model == "rician") return scalar::ScalarFadingModel::rician(kappa);
    if (model == "nakagami") return scalar::ScalarFadingModel::nakagami(m);
    return scalar::ScalarFadingModel::rayleigh();
  }
};

void run_exponent(const ScalarArgs& args, const EtaInput& eta_in, const std::string& output) {
  const auto model = args.build();
  const auto mgf = scalar::log_mgf(model);
  const auto etas = eta_in.values();
  Sink sink(output);
  sink.row({"eta", "eta_db", "eta_bit_db", "closed_form", "numeric", "lambda_star", "status"});
  for (double eta : etas) {
    const auto r = wideband_exponent(mgf, eta);
    const std::string closed = eta >= 1.0 ? fmt(scalar::closed_form_exponent(model, eta)) : "";
    sink.row({fmt(eta), fmt(cli::linear_to_db(eta)), fmt(cli::eta_bit_db(eta)), closed,
              fmt(r.exponent), fmt(r.lambda_star), status_cell(r.status)});
  }
}

// -------------------------------------------------------------------- mimo

struct MimoArgs {
  int n_t = 1;
  int n_r = 1;
  std::optional<double> delta;
  std::string config;

  void add_to(CLI::App* app) {
    app->add_option("--n-t", n_t, "transmit antennas (white model)");
    app->add_option("--n-r", n_r, "receive antennas (white model)");
    app->add_option("--delta", delta,
                    "2x2 Kronecker model with factors [[1,d],[d,1]] and white input");
    app->add_option("--config", config, "JSON matrix config (psi/sigma or psi_t/psi_r/sigma)");
  }

  bool is_white() const { return !delta && config.empty(); }

  mimo::CovariancePair build() const {
    if (!config.empty()) return cli::load_covariance_file(config);
    if (delta) return mimo::kronecker_example(*delta);
    if (n_t < 1 || n_r < 1 || n_t * n_r > 64) throw invalid_param("need 1 <= n_t n_r <= 64");
    return mimo::CovariancePair::full(
        HermitianMatrix(CMatrix::identity(static_cast<std::size_t>(n_t * n_r))),
        mimo::white_input(n_t), n_t, n_r);
  }
};

void run_mimo(const MimoArgs& args, const EtaInput& eta_in, const std::string& output) {
  if (!args.config.empty() && args.delta) throw invalid_param("give either --config or --delta");
  const auto pair = args.build();
  const auto mgf = mimo::correlated_log_mgf(pair);
  const auto etas = eta_in.values();
  Sink sink(output);
  sink.row({"eta", "eta_db", "eta_bit_db", "eta_bar", "closed_form", "numeric", "lambda_star",
            "status"});
  for (double eta : etas) {
    const auto r = wideband_exponent(mgf, eta);
    const std::string closed =
        args.is_white() ? fmt(mimo::white_exponent(args.n_t, args.n_r, eta).exponent) : "";
    sink.row({fmt(eta), fmt(cli::linear_to_db(eta)), fmt(cli::eta_bit_db(eta)), fmt(r.eta_bar),
              closed, fmt(r.exponent), fmt(r.lambda_star), status_cell(r.status)});
  }
}

// ---------------------------------------------------------------- feedback

struct FeedbackArgs {
  std::string g0 = "0";
  std::string tau = "1";
  std::string g0_grid = "0:0.9:0.1";
  std::string tau_grid = "0.1:5:0.1";
  bool envelope = false;
  unsigned workers = 0;
};

void run_etabar_sweep(const FeedbackArgs& args, const std::string& output) {
  const auto g0s = cli::parse_list_or_range(args.g0);
  const auto taus = cli::parse_list_or_range(args.tau);
  Sink sink(output);
  sink.row({"g0", "tau", "eta_bar", "eta_bar_db"});
  for (double g0 : g0s)
    for (double tau : taus) {
      const double eb = feedback::feedback_eta_bar(feedback::FeedbackProtocol(tau, g0));
      sink.row({fmt(g0), fmt(tau), fmt(eb), fmt(cli::linear_to_db(eb))});
    }
}

void run_onoff_curves(const FeedbackArgs& args, const EtaInput& eta_in, const std::string& output) {
  const auto etas = eta_in.values();
  const auto taus = cli::parse_list_or_range(args.tau);
  Sink sink(output);
  sink.row({"curve", "tau", "eta", "eta_db", "exponent", "x_star", "status"});
  for (double tau : taus)
    for (double eta : etas) {
      if (eta < 1.0 / (tau + 1.0)) {
        sink.row({"onoff", fmt(tau), fmt(eta), fmt(cli::linear_to_db(eta)), fmt(0.0), "",
                  "BELOW_ETA_BAR"});
        continue;
      }
      sink.row({"onoff", fmt(tau), fmt(eta), fmt(cli::linear_to_db(eta)),
                fmt(feedback::onoff_exponent(tau, eta)), fmt(feedback::onoff_x_star(tau, eta)),
                "OK"});
    }
  if (args.envelope)
    for (double eta : etas) {
      const auto env = feedback::onoff_envelope(eta);
      sink.row({"envelope", fmt(env.tau_star), fmt(eta), fmt(cli::linear_to_db(eta)),
                fmt(env.exponent), fmt(1.0), "OK"});
    }
}

void run_mesh(const FeedbackArgs& args, const EtaInput& eta_in, const std::string& output) {
  const auto etas = eta_in.values();
  const auto g0_grid = cli::parse_list_or_range(args.g0_grid);
  const auto tau_grid = cli::parse_list_or_range(args.tau_grid);
  const unsigned workers = args.workers ? args.workers : std::max(1u, std::thread::hardware_concurrency());
  Sink sink(output);
  sink.row({"g0", "tau", "eta", "exponent", "status"});
  for (double eta : etas) {
    const auto m = feedback::mesh(eta, g0_grid, tau_grid, workers);
    for (const auto& e : m.entries)
      sink.row({fmt(e.g0), fmt(e.tau), fmt(e.eta), fmt(e.exponent), status_cell(e.status)});
    const auto& best = m.entries[m.argmax];
    sink.row({fmt(best.g0), fmt(best.tau), fmt(best.eta), fmt(best.exponent), "ARGMAX"});
  }
}

// ---------------------------------------------------------------- simulate

struct SimArgs {
  std::string model = "rayleigh";
  double kappa = 0.0;
  double m = 1.0;
  int n_t = 1;
  int n_r = 1;
  std::string config;
  double tau = 1.0;
  double g0 = 0.0;
  std::string mode = "linear";
  double rho = 1.0;
  std::string K = "10,20,30,40";
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string oracle;
  std::string slope_json;
};

void write_slope_json(const SimArgs& args, const nlohmann::ordered_json& j) {
  const std::string text = j.dump(2) + "\n";
  if (args.slope_json.empty()) {
    std::cerr << text;
    return;
  }
  std::ofstream f(args.slope_json, std::ios::binary);
  if (!f) throw invalid_param("cannot open '" + args.slope_json + "'");
  f << text;
}

double theoretical_exponent(const mc::ChannelModel& model, double eta) {
  if (const auto* s = std::get_if<scalar::ScalarFadingModel>(&model))
    return wideband_exponent(scalar::log_mgf(*s), eta).exponent;
  if (const auto* p = std::get_if<mimo::CovariancePair>(&model))
    return mimo::correlated_exponent(*p, eta).exponent;
  const auto& proto = std::get<feedback::FeedbackProtocol>(model);
  if (eta < feedback::feedback_eta_bar(proto)) return 0.0;
  return feedback::general_exponent(proto, eta).exponent;
}

void run_simulate(const SimArgs& args, const EtaInput& eta_in, const std::string& output) {
  const auto etas = eta_in.values();
  if (etas.size() != 1) throw invalid_param("simulate takes a single eta");
  const double eta = etas.front();
  const auto K_list = cli::parse_k_list(args.K);

  if (!args.oracle.empty()) {
    if (args.oracle != "gamma") throw invalid_param("unknown oracle '" + args.oracle + "'");
    GammaFamily fam = GammaFamily::rayleigh();
    if (args.model == "nakagami") fam = GammaFamily::nakagami(args.m);
    else if (args.model == "white") fam = GammaFamily::white_mimo(args.n_t, args.n_r);
    else if (args.model != "rayleigh")
      throw invalid_param("the Gamma oracle covers rayleigh, nakagami and white only");
    Sink sink(output);
    sink.row({"K", "p_oracle", "neg_log_p_over_K"});
    std::vector<double> y;
    for (int K : K_list) {
      const double p = gamma_oracle(K, eta, fam);
      y.push_back(-std::log(p));
      sink.row({std::to_string(K), fmt(p), fmt(-std::log(p) / K)});
    }
    double theory = 0.0;
    if (args.model == "white")
      theory = mimo::white_exponent(args.n_t, args.n_r, eta).exponent;
    else
      theory = fam.shape * (eta >= 1.0 ? scalar::rayleigh_exponent(eta) : 0.0);
    nlohmann::ordered_json j;
    j["theoretical_exponent"] = theory;
    if (K_list.size() >= 3) {
      const auto fit = mc::fit_decay(K_list, y);
      j["exponent_hat"] = fit.exponent_hat;
      j["stderr"] = fit.stderr_;
      j["points_used"] = fit.K_used;
    } else {
      j["exponent_hat"] = nullptr;
      j["note"] = "slope needs at least 3 K values";
    }
    write_slope_json(args, j);
    return;
  }

  mc::ChannelModel model = scalar::ScalarFadingModel::rayleigh();
  if (args.model == "rician") model = scalar::ScalarFadingModel::rician(args.kappa);
  else if (args.model == "nakagami") model = scalar::ScalarFadingModel::nakagami(args.m);
  else if (args.model == "white")
    model = mimo::CovariancePair::full(
        HermitianMatrix(CMatrix::identity(static_cast<std::size_t>(args.n_t * args.n_r))),
        mimo::white_input(args.n_t), args.n_t, args.n_r);
  else if (args.model == "config") model = cli::load_covariance_file(args.config);
  else if (args.model == "feedback") model = feedback::FeedbackProtocol(args.tau, args.g0);
  else if (args.model != "rayleigh") throw invalid_param("unknown model '" + args.model + "'");

  mc::SimulationConfig cfg;
  cfg.rho = args.rho;
  cfg.eta = eta;
  cfg.K_list = K_list;
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  cfg.rate_mode = args.mode == "exact" ? mc::RateMode::exact : mc::RateMode::linear;
  cfg.workers = args.workers;

  const auto estimates = mc::estimate_outage(model, cfg);
  Sink sink(output);
  sink.row({"K", "trials", "outages", "p_hat", "ci_lo", "ci_hi"});
  for (const auto& e : estimates)
    sink.row({std::to_string(e.K), std::to_string(e.trials), std::to_string(e.outage_count),
              fmt(e.p_hat), fmt(e.ci_lo), fmt(e.ci_hi)});
  sink.out().flush();

  nlohmann::ordered_json j;
  j["theoretical_exponent"] = theoretical_exponent(model, eta);
  try {
    const auto fit = mc::fit_slope(estimates);
    j["exponent_hat"] = fit.exponent_hat;
    j["stderr"] = fit.stderr_;
    j["points_used"] = fit.K_used;
  } catch (const insufficient_data&) {
    write_slope_json(args, j);
    throw;
  }
  write_slope_json(args, j);
}

// ------------------------------------------------------------------- shape

void run_shape(double delta, const EtaInput& eta_in, const std::string& output) {
  const auto etas = eta_in.values();
  Sink sink(output);
  sink.row({"eta", "eta_db", "xi_star", "exponent_opt", "exponent_xi0", "exponent_xi1"});
  for (double eta : etas) {
    const auto s = mimo::two_antenna_shaping(delta, eta);
    const auto e0 = mimo::two_antenna_exponent(delta, 0.0, eta);
    const auto e1 = mimo::two_antenna_exponent(delta, 1.0, eta);
    sink.row({fmt(eta), fmt(cli::linear_to_db(eta)), fmt(s.xi_star), fmt(s.exponent),
              fmt(e0.exponent), fmt(e1.exponent)});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wideband outage exponents of slow-fading parallel channels"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "write CSV here instead of stdout");

  EtaInput exp_eta, mimo_eta, onoff_eta, mesh_eta, sim_eta, shape_eta;

  auto* exp_cmd = app.add_subcommand("exponent", "scalar fading exponent over an eta grid");
  ScalarArgs scalar_args;
  scalar_args.add_to(exp_cmd);
  exp_eta.add_to(exp_cmd);

  auto* mimo_cmd = app.add_subcommand("mimo", "MIMO exponent over an eta grid");
  MimoArgs mimo_args;
  mimo_args.add_to(mimo_cmd);
  mimo_eta.add_to(mimo_cmd);

  auto* fb_cmd = app.add_subcommand("feedback", "one-bit feedback protocol");
  fb_cmd->require_subcommand(1);
  FeedbackArgs fb_args;
  auto* etabar_cmd = fb_cmd->add_subcommand("etabar-sweep", "eta_bar over (g0, tau)");
  etabar_cmd->add_option("--g0", fb_args.g0, "g0 list or start:stop:step");
  etabar_cmd->add_option("--tau", fb_args.tau, "tau list or start:stop:step");
  auto* onoff_cmd = fb_cmd->add_subcommand("onoff-curves", "on-off exponent curves");
  onoff_cmd->add_option("--tau", fb_args.tau, "tau list or start:stop:step");
  onoff_cmd->add_flag("--envelope", fb_args.envelope, "append the upper envelope");
  onoff_eta.add_to(onoff_cmd);
  auto* mesh_cmd = fb_cmd->add_subcommand("mesh", "general exponent over a (g0, tau) grid");
  mesh_cmd->add_option("--g0-grid", fb_args.g0_grid, "g0 list or start:stop:step");
  mesh_cmd->add_option("--tau-grid", fb_args.tau_grid, "tau list or start:stop:step");
  mesh_cmd->add_option("--workers", fb_args.workers, "threads (0 = hardware)");
  mesh_eta.add_to(mesh_cmd);

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo outage estimation");
  SimArgs sim;
  sim_cmd->add_option("--model", sim.model, "rayleigh | rician | nakagami | white | config | feedback")
      ->check(CLI::IsMember({"rayleigh", "rician", "nakagami", "white", "config", "feedback"}));
  sim_cmd->add_option("--kappa", sim.kappa, "Rician line-of-sight amplitude");
  sim_cmd->add_option("--m", sim.m, "Nakagami shape");
  sim_cmd->add_option("--n-t", sim.n_t, "transmit antennas (white)");
  sim_cmd->add_option("--n-r", sim.n_r, "receive antennas (white)");
  sim_cmd->add_option("--config", sim.config, "JSON matrix config for --model config");
  sim_cmd->add_option("--tau", sim.tau, "feedback threshold");
  sim_cmd->add_option("--g0", sim.g0, "feedback weak-channel power fraction");
  sim_cmd->add_option("--mode", sim.mode, "exact | linear")->check(CLI::IsMember({"exact", "linear"}));
  sim_cmd->add_option("--rho", sim.rho, "total power (linear)");
  sim_cmd->add_option("--K", sim.K, "K list or start:stop:step");
  sim_cmd->add_option("--trials", sim.trials, "trials per K");
  sim_cmd->add_option("--seed", sim.seed, "RNG seed");
  sim_cmd->add_option("--workers", sim.workers, "worker threads (part of the stream layout)");
  sim_cmd->add_option("--oracle", sim.oracle, "gamma: exact incomplete-gamma values instead")
      ->check(CLI::IsMember({"gamma"}));
  sim_cmd->add_option("--slope-json", sim.slope_json, "slope report path (default stderr)");
  sim_eta.add_to(sim_cmd);

  auto* shape_cmd = app.add_subcommand("shape", "two-antenna input correlation optimisation");
  double delta = 0.0;
  shape_cmd->add_option("--delta", delta, "channel correlation, [0, 1)")->required();
  shape_eta.add_to(shape_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }

  try {
    if (*exp_cmd) run_exponent(scalar_args, exp_eta, output);
    else if (*mimo_cmd) run_mimo(mimo_args, mimo_eta, output);
    else if (*etabar_cmd) run_etabar_sweep(fb_args, output);
    else if (*onoff_cmd) run_onoff_curves(fb_args, onoff_eta, output);
    else if (*mesh_cmd) run_mesh(fb_args, mesh_eta, output);
    else if (*sim_cmd) run_simulate(sim, sim_eta, output);
    else if (*shape_cmd) run_shape(delta, shape_eta, output);
  } catch (const insufficient_data& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const numeric_failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const invalid_param& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  }
  std::cout.flush();
  return g_numeric_failure ? kExitNumeric : 0;
}
