#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "deltak/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"broken k-diamond partition toolkit: exact coefficient tables, "
               "inequality scans, and certified analytic bound checks"};
  app.require_subcommand(1);
  app.fallthrough();

  deltak::RunConfig config;
  std::string format = "csv";
  std::string cache;
  app.add_option("--k", config.k, "sequence selector (1 or 2)")->check(CLI::Range(1, 2));
  app.add_option("--horizon", config.horizon, "table/scan horizon");
  app.add_option("--precision", config.precision_bits, "working precision in bits (>= 64)");
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache", cache, "coefficient cache file (line-oriented JSON)");
  app.add_option("--jobs", config.jobs, "worker threads for scans")->check(CLI::Range(1, 256));

  auto* coeffs = app.add_subcommand("coeffs", "emit Delta_k(0..horizon)");

  auto* check = app.add_subcommand("check", "per-n verdicts for one inequality family");
  std::string family = "laguerre";
  int order = 2;
  std::int64_t from = 1, to = 100;
  bool with_values = false;
  check->add_option("--family", family,
                    "laguerre|toeplitz_det|turan_jensen|invariant_A|invariant_B|invariant_I");
  check->add_option("--order", order, "order m (degree d for turan_jensen)");
  check->add_option("--from", from, "first n");
  check->add_option("--to", to, "last n");
  check->add_flag("--values", with_values, "include exact values");

  auto* scan = app.add_subcommand("scan", "threshold tables for laguerre and toeplitz_det");
  int m_max = 14;
  scan->add_option("--m-max", m_max, "largest order to scan")->check(CLI::Range(1, 14));

  auto* verify = app.add_subcommand("verify-bounds", "run the analytic bound verifiers");
  std::string suite = "all";
  verify->add_option("--suite", suite, "lemmas|sandwich|proof-checks|all")
      ->check(CLI::IsMember({"lemmas", "sandwich", "proof-checks", "all"}));

  CLI11_PARSE(app, argc, argv);

  config.format = format == "json" ? deltak::RunConfig::Format::kJson
                                   : deltak::RunConfig::Format::kCsv;
  if (!cache.empty()) config.cache_path = cache;

  try {
    if (coeffs->parsed()) {
      return deltak::cmd_coeffs(config, config.horizon, std::cout);
    }
    if (check->parsed()) {
      return deltak::cmd_check(config, family, order, from, to, with_values, std::cout);
    }
    if (scan->parsed()) {
      return deltak::cmd_scan(config, m_max, std::cout, std::cerr);
    }
    if (verify->parsed()) {
      return deltak::cmd_verify_bounds(config, suite, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
