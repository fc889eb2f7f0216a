#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ppact/config.hpp"
#include "ppact/csv.hpp"

using namespace ppact;

namespace {

const char* status_token(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::contact: return "contact";
    case RunStatus::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

std::string num_token(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  body(out);
  out.flush();
  if (!out) throw IoError("cannot write output file '" + path + "'");
}

std::string setpoint_path(const std::string& base, double setpoint) {
  const std::string tok = "_sp" + num_token(setpoint);
  const size_t slash = base.find_last_of('/');
  const size_t dot = base.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return base + tok;
  return base.substr(0, dot) + tok + base.substr(dot);
}

int cmd_cap_sweep(const RunConfig& cfg, const std::string& out_path, int points,
                  double gap_min_frac, double gap_max_frac) {
  const DeviceGeometry& g = cfg.geometry;
  const double c_ref = palmer_capacitance(g, g.gap0);
  const SerialSweep sweep = sweep_serial(g, palmer_model(g), c_ref, g.gap0 * gap_min_frac,
                                         g.gap0 * gap_max_frac, points);
  write_file(out_path, [&](std::ostream& os) { write_sweep_csv(os, g, sweep); });
  std::cout << "C_ser_min_F=" << format_sig9(sweep.c_ser_min)
            << " rho_s_bar=" << format_sig9(sweep.rho_s_bar) << '\n';
  return 0;
}

int cmd_pullin(const RunConfig& cfg) {
  for (const double rho : {0.0, cfg.controller.rho_s_bar}) {
    const PullIn pi = static_pullin(rho);
    char buf[64];
    std::snprintf(buf, sizeof buf, "x_pi=%.4f u_pi=%.4f\n", pi.x1, pi.u);
    std::cout << buf;
  }
  return 0;
}

struct RunResult {
  double setpoint = 0.0;
  double final_error = std::numeric_limits<double>::quiet_NaN();
  double settle_time = std::numeric_limits<double>::quiet_NaN();
  RunStatus status = RunStatus::completed;
  std::string io_error;
};

RunResult run_one(const Scenario& sc, double setpoint, const std::string& path) {
  RunResult res;
  res.setpoint = setpoint;
  const SimTrace trace = run_closed_loop(sc);
  res.status = trace.status;
  try {
    const SettleMetrics m = settle_metrics(trace, sc.trajectory);
    res.final_error = m.final_error;
    res.settle_time = m.settle_time;
  } catch (const std::invalid_argument&) {
    // trace ended before the hold phase; metrics stay NaN
  }
  try {
    write_file(path, [&](std::ostream& os) { write_trace_csv(os, trace); });
  } catch (const IoError& e) {
    res.io_error = e.what();
  }
  return res;
}

int cmd_simulate(const RunConfig& cfg, const std::vector<double>& setpoints,
                 const std::string& out_path, int jobs) {
  const bool single = setpoints.size() == 1;
  std::vector<Scenario> scenarios;
  scenarios.reserve(setpoints.size());
  for (const double sp : setpoints) scenarios.push_back(cfg.scenario(sp));

  std::vector<RunResult> results(setpoints.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (size_t i; (i = cursor.fetch_add(1)) < setpoints.size();) {
      const std::string path = single ? out_path : setpoint_path(out_path, setpoints[i]);
      results[i] = run_one(scenarios[i], setpoints[i], path);
    }
  };

  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(setpoints.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  int rc = 0;
  for (const auto& res : results) {
    std::cout << "setpoint=" << format_sig9(res.setpoint)
              << " final_error=" << format_sig9(res.final_error)
              << " settle_time=" << format_sig9(res.settle_time)
              << " status=" << status_token(res.status) << '\n';
    if (!res.io_error.empty()) {
      std::cerr << "io error: " << res.io_error << '\n';
      rc = 3;
    }
    if (rc == 0 && res.status == RunStatus::numerical_failure) rc = 4;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"electrostatic parallel-plate actuator: capacitance sweeps, pull-in "
               "points and closed-loop set-point simulations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;

  auto* sweep = app.add_subcommand(
      "cap-sweep", "tabulate ideal/fringing capacitance and its series split vs gap");
  int points = 10000;
  double gap_min_frac = 1e-3;
  double gap_max_frac = 1.0;
  sweep->add_option("--config", config_path, "run configuration file")->required();
  sweep->add_option("--out", out_path, "output CSV path")->capture_default_str();
  sweep->add_option("--points", points, "grid size")->capture_default_str();
  sweep->add_option("--gap-min-frac", gap_min_frac, "smallest gap as a fraction of gap0")
      ->capture_default_str();
  sweep->add_option("--gap-max-frac", gap_max_frac, "largest gap as a fraction of gap0")
      ->capture_default_str();

  auto* sim = app.add_subcommand(
      "simulate", "closed-loop transfer to one or more set-points, trace CSV per run");
  double setpoint = 0.5;
  std::vector<double> setpoints;
  int jobs = 1;
  sim->add_option("--config", config_path, "run configuration file")->required();
  auto* single_opt = sim->add_option("--setpoint", setpoint, "target deflection in [0,1]");
  auto* multi_opt = sim->add_option("--setpoints", setpoints,
                                    "comma-separated target deflections")
                        ->delimiter(',');
  single_opt->excludes(multi_opt);
  multi_opt->excludes(single_opt);
  sim->add_option("--out", out_path, "trace CSV path (suffixed per set-point)")
      ->capture_default_str();
  sim->add_option("--jobs", jobs, "worker threads for multi-set-point runs")
      ->capture_default_str();

  auto* pull = app.add_subcommand(
      "pullin", "static pull-in point, ideal and at the configured serial bound");
  pull->add_option("--config", config_path, "run configuration file")->required();

  try {
    app.parse(argc, argv);
    const RunConfig cfg = RunConfig::parse_file(config_path);
    if (sweep->parsed()) {
      if (out_path.empty()) out_path = "cap_sweep.csv";
      return cmd_cap_sweep(cfg, out_path, points, gap_min_frac, gap_max_frac);
    }
    if (pull->parsed()) return cmd_pullin(cfg);
    if (out_path.empty()) out_path = "trace.csv";
    std::vector<double> targets;
    if (!setpoints.empty()) targets = setpoints;
    else if (single_opt->count() > 0) targets.push_back(setpoint);
    else targets.push_back(cfg.trajectory.y_target);
    return cmd_simulate(cfg, targets, out_path, jobs);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
