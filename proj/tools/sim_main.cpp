#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icnsim/analytic.hpp"
#include "icnsim/metrics.hpp"
#include "icnsim/scenarios.hpp"

namespace {

int cmd_list() {
  for (const auto& id : icnsim::scenario_ids()) {
    icnsim::Scenario sc = icnsim::make_scenario(id);
    std::cout << id << "  -  " << sc.description << "\n";
  }
  return 0;
}

int cmd_run(const std::string& id, const std::string& config_path,
            std::uint64_t seed, bool seed_set, const std::string& out_dir,
            bool desk_scale) {
  icnsim::ConfigMap overrides;
  if (!config_path.empty()) {
    overrides = icnsim::load_config(config_path);
  }
  if (seed_set) {
    overrides["seed"] = std::to_string(seed);
  }
  icnsim::Scenario sc = icnsim::make_scenario(id, desk_scale, overrides);
  std::cout << "running " << sc.id << " (seed " << sc.params.seed
            << ", duration " << sc.params.duration_s << " s"
            << (desk_scale ? ", desk scale" : "") << ")\n";
  icnsim::RunResult result = icnsim::run_scenario(sc);

  std::filesystem::create_directories(out_dir);
  icnsim::export_csv(result.series, out_dir);
  icnsim::RunSummary summary = icnsim::summarize(result.series);
  icnsim::write_summary_text(summary, out_dir + "/summary.txt");

  auto verdicts = icnsim::evaluate_properties(sc, result);
  std::ofstream assertions(out_dir + "/assertions.txt", std::ios::binary);
  bool all_pass = true;
  for (const auto& v : verdicts) {
    const char* status = v.pass ? "pass" : "fail";
    assertions << sc.id << "." << v.name << " = " << status << "  # "
               << v.detail << "\n";
    std::cout << "  [" << (v.pass ? "PASS" : "FAIL") << "] " << v.name << ": "
              << v.detail << "\n";
    if (!v.pass) all_pass = false;
  }
  std::cout << (all_pass ? "all assertions passed" : "assertion failures")
            << "; outputs in " << out_dir << "\n";
  return all_pass ? 0 : 1;
}

int cmd_analytic(const std::string& table, double kappa, double rtt_mean,
                 double rtt_std, double packet_bits, double timeout,
                 const std::vector<double>& line_rates,
                 const std::vector<double>& alphas) {
  using namespace icnsim;
  RttModel rtt = rtt_std > 0 ? RttModel::gamma(rtt_mean, rtt_std)
                             : RttModel::deterministic(rtt_mean);
  if (table == "memory") {
    std::cout << "line_rate_bps,pit_entries\n";
    for (double c : line_rates) {
      std::cout << c << "," << memory_requirement(c) << "\n";
    }
    return 0;
  }
  if (table == "states") {
    std::cout << "alpha_per_s,mean_states\n";
    for (double a : alphas) {
      std::cout << a << "," << state_from_rate(a, rtt, kappa, timeout) << "\n";
    }
    return 0;
  }
  if (table == "rate-limit-gap") {
    std::cout << "limit,mean_util,p5,p95\n";
    double limit = optimal_state_limit(line_rates.front(), rtt, packet_bits);
    UtilizationGap gap = rate_limit_utilization_gap(
        limit, rtt, line_rates.front(), packet_bits, 10000, 7);
    std::cout << limit << "," << gap.mean_util << "," << gap.p5 << ","
              << gap.p95 << "\n";
    return 0;
  }
  std::cerr << "unknown table: " << table << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information-centric forwarding chain simulator"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list scenario ids");

  auto* run = app.add_subcommand("run", "run a scenario and export metrics");
  std::string scenario_id;
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  bool desk = false;
  run->add_option("scenario", scenario_id, "scenario id (see `sim list`)")
      ->required();
  run->add_option("--config", config_path, "key=value override file");
  auto* seed_opt = run->add_option("--seed", seed, "master seed");
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--desk-scale", desk, "fast desk-scale parameter set");

  auto* analytic = app.add_subcommand("analytic", "closed-form sizing tables");
  std::string table = "memory";
  double kappa = 4, rtt_mean = 0.25, rtt_std = 0.25, packet_bits = 8000;
  double timeout = 1e9;
  std::vector<double> line_rates = {1e9, 1e10, 1e11};
  std::vector<double> alphas = {100, 1000, 10000, 100000};
  analytic->add_option("--table", table, "memory | states | rate-limit-gap");
  analytic->add_option("--kappa", kappa, "deviation weight");
  analytic->add_option("--rtt-mean", rtt_mean, "RTT mean (s)");
  analytic->add_option("--rtt-std", rtt_std, "RTT std (s); 0 = deterministic");
  analytic->add_option("--packet-bits", packet_bits, "packet length (bits)");
  analytic->add_option("--timeout", timeout, "state timeout (s)");
  analytic->add_option("--line-rates", line_rates, "link capacities (bit/s)");
  analytic->add_option("--alphas", alphas, "request rates (1/s)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) return cmd_list();
    if (run->parsed()) {
      return cmd_run(scenario_id, config_path, seed, seed_opt->count() > 0,
                     out_dir, desk);
    }
    if (analytic->parsed()) {
      return cmd_analytic(table, kappa, rtt_mean, rtt_std, packet_bits,
                          timeout, line_rates, alphas);
    }
  } catch (const icnsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
