#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sepsim/config.hpp"
#include "sepsim/errors.hpp"
#include "sepsim/instance.hpp"
#include "sepsim/montecarlo.hpp"
#include "sepsim/report.hpp"
#include "sepsim/scaling.hpp"
#include "sepsim/svg.hpp"

namespace {

using namespace sepsim;

struct GlobalFlags {
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::uint64_t trials = 0;
  bool trials_set = false;
  std::string format;
  std::string out_path;
  std::string plot_path;
  bool timing = false;
  unsigned threads = 0;
};

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + out_path);
}

void apply_overrides(RunConfig& config, const GlobalFlags& flags) {
  if (flags.seed_set) config.spec.master_seed = flags.seed;
  if (flags.trials_set) config.spec.trials = flags.trials;
  if (!flags.format.empty()) config.format = flags.format;
  if (flags.timing) config.spec.collect_timing = true;
}

struct ThresholdRow {
  std::string name;
  std::string formula;
  double value;
};

// Flags for the thresholds command; mirrors ExperimentSpec but keeps every
// closed form reachable regardless of sensor_rule.
struct ThresholdQuery {
  std::string scenario_str = "grid-full";
  int dimension = 1;
  std::uint64_t n = 1;
  double a = 1.0;
  bool a_set = false;
  double c = 3.0;
  double c_n = 0.0;
  double alpha = 0.9;
  double beta = 0.9;
  double alpha1 = 0.0;
  double theta1 = 0.5;
  double theta2 = 0.5;
  double gamma = 0.2;
  double eps = 0.5;
  double m = 0.0;
  double d = 0.0;
};

std::vector<ThresholdRow> threshold_rows(const ThresholdQuery& q) {
  const Scenario scenario = scenario_from_name(q.scenario_str);
  const double n = static_cast<double>(q.n);
  if (q.n == 0) throw std::invalid_argument("n must be positive");
  const double c_n = q.c_n > 0.0 ? q.c_n : std::log(n);
  const double alpha1 = q.alpha1 > 0.0 ? q.alpha1 : (q.alpha + 1.0) / 2.0;
  const bool two_d = q.dimension == 2;
  if (q.dimension != 1 && q.dimension != 2)
    throw std::invalid_argument("dimension must be 1 or 2");

  std::vector<ThresholdRow> rows;
  auto grid_radius_rows = [&] {
    if (two_d) {
      rows.push_back({"radius", "1/(2*sqrt(n))", grid_radius_2d(n)});
    } else {
      rows.push_back({"radius", "a/(2n)", grid_radius(n, q.a)});
      rows.push_back({"radius_wide", "(2-a)/(2n)", grid_radius(n, q.a, true)});
    }
  };

  switch (scenario) {
    case Scenario::GridFull: {
      grid_radius_rows();
      if (two_d) {
        rows.push_back({"m_sufficient", "(4n/pi)*(ln(4n/pi)+c)",
                        grid_full_m_2d(n, q.c, Sign::Plus)});
        rows.push_back({"m_insufficient", "(4n/pi)*(ln(4n/pi)-c)",
                        grid_full_m_2d(n, q.c, Sign::Minus)});
      } else {
        GridParams p{n, q.a, q.alpha, q.beta, q.c};
        rows.push_back({"m_sufficient", "(n/a)*(ln(n/a)+c)", grid_full_m(p, Sign::Plus)});
        rows.push_back(
            {"m_insufficient", "(n/a)*(ln(n/a)-c)", grid_full_m(p, Sign::Minus)});
      }
      break;
    }
    case Scenario::GridPartial: {
      grid_radius_rows();
      if (two_d) {
        rows.push_back({"m_sufficient", "(4n/pi)*ln(1/((1-alpha)(1-beta)))",
                        grid_partial_m_2d_sufficient(n, q.alpha, q.beta)});
        rows.push_back({"m_necessary", "(4n/pi-1)*ln(1/(1-alpha*beta))",
                        grid_partial_m_2d_necessary(n, q.alpha, q.beta)});
      } else {
        GridParams p{n, q.a, q.alpha, q.beta, q.c};
        rows.push_back({"m_sufficient", "(n/a)*ln(1/((1-alpha)(1-beta)))",
                        grid_partial_m_sufficient(p)});
        rows.push_back({"m_necessary", "(n/a-1)*ln(1/(1-alpha*beta))",
                        grid_partial_m_necessary(p)});
      }
      break;
    }
    case Scenario::RandomFull: {
      if (two_d) {
        rows.push_back({"radius", "sqrt(1/(pi*n*c_n))", random_full_r_2d(n, c_n)});
        rows.push_back({"m_sufficient", "(n*c_n)*(ln(n*c_n)+g_n)",
                        random_full_m_2d(n, c_n, q.c, Sign::Plus)});
        rows.push_back({"m_insufficient", "(n*c_n)*(ln(n*c_n)-g_n)",
                        random_full_m_2d(n, c_n, q.c, Sign::Minus)});
      } else {
        rows.push_back({"radius", "1/(c_n*n^2)", random_full_r(n, c_n)});
        rows.push_back({"m_sufficient", "(1/(2r))*(ln(1/(2r))+f_n)",
                        random_full_m(n, c_n, q.c, Sign::Plus)});
        rows.push_back({"m_insufficient", "(1/(2r))*(ln(1/(2r))-f_n)",
                        random_full_m(n, c_n, q.c, Sign::Minus)});
      }
      break;
    }
    case Scenario::RandomPartial: {
      const double a = q.a_set ? q.a : 2.0;
      RandomParams rp{n, c_n, q.c, q.alpha, q.beta, alpha1, q.theta1, q.theta2, a};
      if (two_d) {
        rows.push_back({"r_sufficient", "sqrt(1/(pi*a^2*((n-1)/c1+1)))",
                        random_partial_r_sufficient_2d(n, alpha1, q.beta, a)});
        rows.push_back({"r_necessary", "sqrt(ln(1/(alpha1*beta))/(pi*a^2*n))",
                        random_partial_r_necessary_2d(n, alpha1, q.beta, a)});
        rows.push_back({"m_sufficient",
                        "(n/(theta1*(a-1)^2*c1))*ln(1+1/(c2-a^2*theta2*c1))",
                        random_partial_m_sufficient_2d(rp)});
        rows.push_back({"m_necessary",
                        "(n/(theta2*(a-1)^2*c1)-1)*ln(1/(c3-a^2*theta1*c1))",
                        random_partial_m_necessary_2d(rp)});
      } else {
        rows.push_back({"r_sufficient", "0.5/(n/c1+1)",
                        random_partial_r_sufficient(n, alpha1, q.beta)});
        rows.push_back({"r_necessary", "ln(1/(alpha1*beta))/(2n)",
                        random_partial_r_necessary(n, alpha1, q.beta)});
        rows.push_back({"m_sufficient",
                        "(n/(theta1*(a-1)*c1))*ln(1+1/(c2-a*theta2*c1))",
                        random_partial_m_sufficient(rp)});
        rows.push_back({"m_necessary",
                        "(n/(theta2*(a-1)*c1)-1)*ln(1/(c3-a*theta1*c1))",
                        random_partial_m_necessary(rp)});
      }
      break;
    }
    case Scenario::AdversarialFull:
    case Scenario::AdversarialPartial: {
      if (two_d) throw std::invalid_argument("adversarial scenarios are 1D only");
      rows.push_back({"radius", "1/(2n)", 1.0 / (2.0 * n)});
      double m_suff;
      if (scenario == Scenario::AdversarialFull) {
        m_suff = adversarial_full_m(n, q.gamma, q.eps);
        rows.push_back(
            {"m_sufficient", "((1+eps)/(1-2*sqrt(gamma*(1-gamma))))*n*ln(n)", m_suff});
      } else {
        m_suff = adversarial_partial_m(n, q.gamma, q.eps, q.alpha, q.beta);
        rows.push_back({"m_sufficient",
                        "((1+eps)/(1-2*sqrt(gamma*(1-gamma))))*n*ln(1/((1-alpha)(1-beta)))",
                        m_suff});
      }
      const double m_used = q.m > 0.0 ? q.m : m_suff;
      const double lambda = m_used / n;
      rows.push_back({"lambda", "m/n", lambda});
      rows.push_back({"per_target_bound", "1-exp(-(1-2*sqrt(gamma*(1-gamma)))*lambda)",
                      chernoff_success_bound(q.gamma, lambda)});
      break;
    }
    case Scenario::MinSpacing: {
      const double d = q.d > 0.0 ? q.d : 1.0 / (n * n * std::log(n));
      rows.push_back({"d", q.d > 0.0 ? "explicit" : "1/(n^2*ln(n))", d});
      rows.push_back({"probability", "(1-(n-1)d)^n", min_spacing_prob(q.n, d)});
      break;
    }
    case Scenario::Coupon: {
      const double m_used = q.m > 0.0 ? q.m : n * (std::log(n) + q.c);
      rows.push_back({"m", q.m > 0.0 ? "explicit" : "n*(ln(n)+c)", m_used});
      rows.push_back({"exact", "sum_k (-1)^k*C(n,k)*(1-k/n)^m",
                      coupon_all_collected_prob(q.n, m_used)});
      rows.push_back({"asymptotic", "exp(-exp(-c))", coupon_asymptotic(q.n, q.c)});
      break;
    }
  }
  return rows;
}

std::string format_threshold_table(const std::vector<ThresholdRow>& rows) {
  std::size_t name_w = 4, formula_w = 7;
  for (const ThresholdRow& row : rows) {
    name_w = std::max(name_w, row.name.size());
    formula_w = std::max(formula_w, row.formula.size());
  }
  std::string out;
  auto emit = [&](const std::string& name, const std::string& formula,
                  const std::string& value) {
    out += name + std::string(name_w - name.size() + 2, ' ');
    out += formula + std::string(formula_w - formula.size() + 2, ' ');
    out += value + "\n";
  };
  emit("name", "formula", "value");
  for (const ThresholdRow& row : rows)
    emit(row.name, row.formula, format_double(row.value));
  return out;
}

int cmd_thresholds(const ThresholdQuery& q, const GlobalFlags& flags) {
  write_output(format_threshold_table(threshold_rows(q)), flags.out_path);
  return 0;
}

std::string emit_rows(const std::vector<EstimateRow>& rows, const std::string& format) {
  if (format == "json") return rows_to_json(rows);
  return rows_to_csv(rows);
}

int cmd_estimate(const std::string& config_path, const GlobalFlags& flags) {
  RunConfig config = load_run_config(config_path);
  apply_overrides(config, flags);
  if (!config.sweep_axis.empty())
    throw std::runtime_error("config defines a sweep; use the sweep command");
  std::vector<EstimateRow> rows{estimate(config.spec, flags.threads)};
  write_output(emit_rows(rows, config.format), flags.out_path);
  return 0;
}

int cmd_sweep(const std::string& config_path, const GlobalFlags& flags) {
  RunConfig config = load_run_config(config_path);
  apply_overrides(config, flags);
  if (config.sweep_axis.empty())
    throw std::runtime_error(
        "config does not define a sweep; set sweep_axis and sweep_values");
  std::vector<EstimateRow> rows =
      sweep(config.spec, config.sweep_axis, config.sweep_values, flags.threads);
  const std::string csv = rows_to_csv(rows);
  write_output(config.format == "json" ? rows_to_json(rows) : csv, flags.out_path);
  if (!flags.plot_path.empty()) {
    std::vector<EstimateRow> replotted = rows_from_csv(csv);
    std::string svg = render_sweep_svg(replotted, config.sweep_axis, config.markers);
    std::ofstream out(flags.plot_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open plot file: " + flags.plot_path);
    out << svg;
    if (!out) throw std::runtime_error("write failed: " + flags.plot_path);
  }
  return 0;
}

int cmd_check(const std::string& instance_path, const GlobalFlags& flags) {
  Instance instance = load_instance(instance_path);
  SeparabilityReport report = analyze(instance.layout, instance.field);
  write_output(report_to_json(instance, report), flags.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo separability laboratory for binary proximity sensing"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "Master RNG seed (overrides config)");
  app.add_option("--trials", flags.trials, "Trial count (overrides config)");
  app.add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", flags.out_path, "Write results to this path (default stdout)");
  app.add_option("--plot", flags.plot_path, "Write an SVG plot here (sweep only)");
  app.add_flag("--timing", flags.timing, "Record wall-clock time per row");
  app.add_option("--threads", flags.threads,
                 "Worker threads (0 = hardware; SEPSIM_THREADS caps both)");

  ThresholdQuery query;
  CLI::App* thresholds =
      app.add_subcommand("thresholds", "Print the closed-form thresholds for a scenario");
  thresholds->fallthrough();
  thresholds->add_option("--scenario", query.scenario_str, "Scenario name")->required();
  thresholds->add_option("--n", query.n, "Number of targets")->required();
  thresholds->add_option("--dimension", query.dimension, "1 or 2");
  thresholds->add_option("--a", query.a, "Radius scale (grid) / constant > 1 (random)");
  thresholds->add_option("--c", query.c, "Additive constant c / f_n / g_n");
  thresholds->add_option("--c_n", query.c_n, "Radius divergence term (0 = ln n)");
  thresholds->add_option("--alpha", query.alpha, "Identifiable fraction target");
  thresholds->add_option("--beta", query.beta, "Confidence level");
  thresholds->add_option("--alpha1", query.alpha1, "Intermediate fraction (0 = (alpha+1)/2)");
  thresholds->add_option("--theta1", query.theta1, "Lower occupancy fraction");
  thresholds->add_option("--theta2", query.theta2, "Upper occupancy fraction");
  thresholds->add_option("--gamma", query.gamma, "Adversarial sensor probability");
  thresholds->add_option("--eps", query.eps, "Intensity margin");
  thresholds->add_option("--m", query.m, "Explicit sensor count / draw count");
  thresholds->add_option("--d", query.d, "Min-spacing threshold (0 = 1/(n^2 ln n))");

  std::string estimate_config, sweep_config, check_instance;
  CLI::App* estimate_cmd =
      app.add_subcommand("estimate", "Run one Monte Carlo estimate from a config file");
  estimate_cmd->fallthrough();
  estimate_cmd->add_option("config", estimate_config, "Config file path")->required();

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Sweep a parameter axis from a config file");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("config", sweep_config, "Config file path")->required();

  CLI::App* check_cmd =
      app.add_subcommand("check", "Analyze one explicit instance file");
  check_cmd->fallthrough();
  check_cmd->add_option("instance", check_instance, "Instance file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  flags.seed_set = app.count("--seed") > 0;
  flags.trials_set = app.count("--trials") > 0;

  try {
    if (thresholds->parsed()) return cmd_thresholds(query, flags);
    if (estimate_cmd->parsed()) return cmd_estimate(estimate_config, flags);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_config, flags);
    if (check_cmd->parsed()) return cmd_check(check_instance, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
