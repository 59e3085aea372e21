// Batch experiment runner for exchangeable binary laws: bound sweeps, oracle
// verification, rate and convergence studies. Exit codes: 0 success, 1 an
// inequality or verification suite failed, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "definetti/families.hpp"
#include "definetti/harness.hpp"

namespace {

using namespace definetti;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("output: cannot open '" + path + "' for writing");
  out << payload;
  if (!out.good()) throw std::runtime_error("output: write to '" + path + "' failed");
}

std::vector<int> parse_int_list(const std::string& text, const char* field) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(field) + ": bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string(field) + ": empty list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text, const char* field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(field) + ": bad number '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string(field) + ": empty list");
  return out;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw std::invalid_argument("format: expected csv or json");
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& family_labels,
              const std::string& n_grid_text, const std::string& k_text,
              const std::string& k_fractions_text, const std::string& format_text,
              const std::string& out_path) {
  SweepConfig config;
  if (!config_path.empty()) {
    config = sweep_config_from_json(read_file(config_path));
  } else {
    for (const auto& label : family_labels) {
      config.families.push_back(parse_family_label(label));
    }
    if (n_grid_text.empty()) throw std::invalid_argument("n_grid: missing (--n-grid)");
    config.n_grid = parse_int_list(n_grid_text, "n_grid");
    if (!k_fractions_text.empty()) {
      config.k_rule.mode = KRule::Mode::fractions;
      config.k_rule.fractions = parse_real_list(k_fractions_text, "k_rule");
    } else if (!k_text.empty() && k_text != "all") {
      config.k_rule.mode = KRule::Mode::list;
      config.k_rule.ks = parse_int_list(k_text, "k_rule");
    }
    config.format = parse_format(format_text);
    config.output_path = out_path;
    validate_config(config);
  }

  const auto rows = run_sweep(config);
  const std::string payload =
      config.format == OutputFormat::csv ? sweep_to_csv(rows) : sweep_to_json(rows);
  write_output(config.output_path, payload);
  if (!sweep_within_bound(rows)) {
    std::cerr << "sweep: divergence exceeded the theorem bound\n";
    return 1;
  }
  return 0;
}

int cmd_verify(int max_n, int seeds) {
  const VerifyReport report = run_verify(max_n, seeds);
  std::cout << verify_to_text(report);
  return report.pass ? 0 : 1;
}

int cmd_rate(const std::string& family_label, int k, const std::string& n_grid_text,
             const std::string& format_text, const std::string& out_path) {
  const RateResult r = run_rate(parse_family_label(family_label), k,
                                parse_int_list(n_grid_text, "n_grid"));
  const OutputFormat format = parse_format(format_text);
  write_output(out_path, format == OutputFormat::csv ? rate_to_csv(r) : rate_to_json(r));
  if (r.slope) {
    std::cerr << "rate: log-log slope " << *r.slope << "\n";
  } else {
    std::cerr << "rate: degenerate fit (some tv is zero), slope omitted\n";
  }
  return 0;
}

int cmd_converge(double a, double b, int k, const std::string& n_grid_text,
                 const std::string& format_text, const std::string& out_path) {
  const auto rows = run_converge(a, b, k, parse_int_list(n_grid_text, "n_grid"));
  const OutputFormat format = parse_format(format_text);
  write_output(out_path, format == OutputFormat::csv ? converge_to_csv(a, b, k, rows)
                                                     : converge_to_json(a, b, k, rows));
  return 0;
}

int cmd_extremal(int n, int k, int batch, std::uint64_t seed, const std::string& format_text,
                 const std::string& out_path) {
  if (format_text != "text" && format_text != "json") {
    throw std::invalid_argument("format: expected text or json");
  }
  const ExtremalResult r = run_extremal(n, k, batch, seed);
  write_output(out_path,
               format_text == "json" ? extremal_to_json(r) : extremal_to_text(r));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap_from_env();

  CLI::App app{"exact finite de Finetti quantities for exchangeable binary vectors"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "bound report over families, n grid and k rule");
  std::string config_path, n_grid_text, k_text = "all", k_fractions_text;
  std::string format_text = "csv", out_path;
  std::vector<std::string> family_labels;
  sweep->add_option("--config", config_path, "JSON config file; overrides the other flags");
  sweep->add_option("--family", family_labels, "family label, repeatable (e.g. iid(0.3))");
  sweep->add_option("--n-grid", n_grid_text, "comma-separated n values");
  sweep->add_option("--k", k_text, "'all' or comma-separated k values");
  sweep->add_option("--k-fractions", k_fractions_text, "comma-separated fractions of n");
  sweep->add_option("--format", format_text, "csv or json");
  sweep->add_option("--out", out_path, "output path, '-' for stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "engine vs brute-force oracle plus identity suites");
  int max_n = 10, seeds = 5;
  verify->add_option("--max-n", max_n, "largest n to enumerate (<= 20)");
  verify->add_option("--seeds", seeds, "number of seeded random families");

  // rate
  auto* rate = app.add_subcommand("rate", "total variation decay rate across n");
  std::string rate_family = "iid(0.3)", rate_grid, rate_format = "csv", rate_out;
  int rate_k = 4;
  rate->add_option("--family", rate_family, "family label");
  rate->add_option("--k", rate_k, "marginal length");
  rate->add_option("--n-grid", rate_grid, "comma-separated n values")->required();
  rate->add_option("--format", rate_format, "csv or json");
  rate->add_option("--out", rate_out, "output path, '-' for stdout");

  // converge
  auto* converge = app.add_subcommand("converge", "divergence of an urn family as n grows");
  double cv_a = 1.0, cv_b = 1.0;
  int cv_k = 3;
  std::string cv_grid, cv_format = "csv", cv_out;
  converge->add_option("--a", cv_a, "urn weight a > 0");
  converge->add_option("--b", cv_b, "urn weight b > 0");
  converge->add_option("--k", cv_k, "marginal length");
  converge->add_option("--n-grid", cv_grid, "comma-separated n values")->required();
  converge->add_option("--format", cv_format, "csv or json");
  converge->add_option("--out", cv_out, "output path, '-' for stdout");

  // extremal
  auto* extremal = app.add_subcommand("extremal", "worst divergence/bound ratio at fixed (n,k)");
  int ex_n = 16, ex_k = 8, ex_batch = 32;
  std::uint64_t ex_seed = 1000;
  std::string ex_format = "text", ex_out;
  extremal->add_option("--n", ex_n, "vector length");
  extremal->add_option("--k", ex_k, "marginal length");
  extremal->add_option("--batch", ex_batch, "seeded random candidates");
  extremal->add_option("--seed", ex_seed, "base seed for the random batch");
  extremal->add_option("--format", ex_format, "text or json");
  extremal->add_option("--out", ex_out, "output path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sweep->parsed()) {
      return cmd_sweep(config_path, family_labels, n_grid_text, k_text, k_fractions_text,
                       format_text, out_path);
    }
    if (verify->parsed()) return cmd_verify(max_n, seeds);
    if (rate->parsed()) return cmd_rate(rate_family, rate_k, rate_grid, rate_format, rate_out);
    if (converge->parsed()) {
      return cmd_converge(cv_a, cv_b, cv_k, cv_grid, cv_format, cv_out);
    }
    if (extremal->parsed()) {
      return cmd_extremal(ex_n, ex_k, ex_batch, ex_seed, ex_format, ex_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
