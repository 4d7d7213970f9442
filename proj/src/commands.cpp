#include "deltak/commands.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "deltak/bessel.hpp"
#include "deltak/cache.hpp"
#include "deltak/inequality.hpp"

namespace deltak {

namespace {

using nlohmann::json;

json config_json(const RunConfig& config) {
  json j;
  j["k"] = config.k;
  j["horizon"] = config.horizon;
  j["precision_bits"] = config.precision_bits;
  j["format"] = config.format == RunConfig::Format::kCsv ? "csv" : "json";
  j["cache"] = config.cache_path ? json(*config.cache_path) : json(nullptr);
  j["jobs"] = config.jobs;
  return j;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void emit_json(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

mpfr_prec_t prec_of(const RunConfig& config) {
  return static_cast<mpfr_prec_t>(config.precision_bits);
}

// --- verify-bounds suite assembly ---------------------------------------

std::vector<HPReal> log_grid(double lo, double hi, int count, mpfr_prec_t prec) {
  std::vector<HPReal> grid;
  grid.reserve(static_cast<std::size_t>(count));
  const double ratio = std::pow(hi / lo, 1.0 / (count - 1));
  double value = lo;
  for (int i = 0; i < count; ++i) {
    grid.push_back(HPReal(mpq_class(value), prec));
    value *= ratio;
  }
  return grid;
}

CheckItem strict_item(const std::string& name, const HPReal& lhs, const HPReal& rhs,
                      mpfr_prec_t prec) {
  // passes when lhs < rhs with margin beyond the error budget
  CheckItem item;
  item.name = name;
  item.margin = rhs - lhs;
  item.budget = abs(rhs) * HPReal::two_pow(-static_cast<long>(prec / 2) + 2, 64);
  item.pass = item.margin > item.budget;
  return item;
}

CheckReport lemmas_enclosure_report(mpfr_prec_t prec) {
  CheckReport report;
  report.title = "i2_enclosures";
  for (auto variant : {I2Enclosure::kOrder5, I2Enclosure::kOrder11}) {
    const bool short_form = variant == I2Enclosure::kOrder5;
    const double lo = short_form ? 28.0 : 50.0;
    for (const auto& s : log_grid(lo, 2000.0, 40, prec)) {
      const BoundPair pair = i2_bounds(s, variant, prec);
      const HPReal mid = i2_series(s, prec);
      const std::string tag = std::string(short_form ? "order5" : "order11") +
                              " s=" + s.str(6);
      report.items.push_back(strict_item(tag + " lower", pair.lower, mid, prec));
      report.items.push_back(strict_item(tag + " upper", mid, pair.upper, prec));
    }
  }
  // Nesting: the long-form pair sits inside the short-form pair for s >= 50.
  for (const auto& s : log_grid(50.0, 2000.0, 12, prec)) {
    const BoundPair wide = i2_bounds(s, I2Enclosure::kOrder5, prec);
    const BoundPair tight = i2_bounds(s, I2Enclosure::kOrder11, prec);
    report.items.push_back(
        strict_item("nested lower s=" + s.str(6), wide.lower, tight.lower, prec));
    report.items.push_back(
        strict_item("nested upper s=" + s.str(6), tight.upper, wide.upper, prec));
  }
  return report;
}

CheckReport lemmas_g_report(mpfr_prec_t prec) {
  CheckReport report;
  report.title = "g_checkpoint";
  const HPReal g28 = g_checkpoint(HPReal(28L, prec), prec);
  report.items.push_back(strict_item("g(28) above 26.0915",
                                     HPReal(mpq_class(260915, 10000), prec), g28, prec));
  report.items.push_back(strict_item("g(28) below 26.0917", g28,
                                     HPReal(mpq_class(260917, 10000), prec), prec));
  report.items.push_back(strict_item("g(28) below 27", g28, HPReal(27L, prec), prec));
  HPReal prev = g28;
  for (long s : {40L, 100L, 1000L}) {
    HPReal cur = g_checkpoint(HPReal(s, prec), prec);
    report.items.push_back(
        strict_item("g decreasing at s=" + std::to_string(s), cur, prev, prec));
    prev = cur;
  }
  for (const char* s : {"7.9", "8", "10", "28", "100", "1000"}) {
    const HPReal factor = g_decay_factor(HPReal::from_str(s, prec), prec);
    report.items.push_back(strict_item(std::string("decay factor positive s=") + s,
                                       HPReal(0L, prec), factor, prec));
  }
  return report;
}

CheckReport lemmas_agreement_report(mpfr_prec_t prec) {
  CheckReport report;
  report.title = "series_vs_integral";
  for (long s : {1L, 2L, 5L, 10L, 28L, 40L}) {
    const HPReal sv(s, prec);
    const HPReal a = i2_series(sv, prec);
    const HPReal b = i2_integral(sv, prec);
    CheckItem item;
    item.name = "s=" + std::to_string(s);
    item.margin = HPReal(mpq_class(1, 1000000000000000L), prec) - rel_diff(a, b);
    item.budget = HPReal(0L, prec);
    item.pass = item.margin > item.budget;
    report.items.push_back(std::move(item));
  }
  return report;
}

CheckReport lemmas_gamma_report(mpfr_prec_t prec) {
  CheckReport report;
  report.title = "gamma_tail";
  const struct {
    mpq_class a;
    long s;
  } points[] = {
      {mpq_class(1), 1},       {mpq_class(5, 2), 28},  {mpq_class(7, 2), 28},
      {mpq_class(9, 2), 28},   {mpq_class(11, 2), 28}, {mpq_class(13, 2), 28},
      {mpq_class(15, 2), 28},  {mpq_class(15, 2), 50},
  };
  for (const auto& pt : points) {
    const HPReal a(pt.a, prec);
    const HPReal s(pt.s, prec);
    CheckItem item;
    item.name = "a=" + pt.a.get_str() + " s=" + std::to_string(pt.s);
    const HPReal value = upper_gamma(a, s, prec);
    HPReal exponent = a - 1;
    HPReal spow(prec);
    mpfr_pow(spow.raw(), s.raw(), exponent.raw(), MPFR_RNDN);
    const HPReal bound = a * spow * exp(-s);
    item.margin = bound - value;
    item.budget = (abs(bound) + abs(value)) *
                  HPReal::two_pow(-static_cast<long>(prec / 2) + 2, 64);
    item.pass = gamma_tail_check(a, s, prec);
    report.items.push_back(std::move(item));
  }
  return report;
}

std::vector<CheckReport> suite_lemmas(mpfr_prec_t prec) {
  std::vector<CheckReport> reports;
  reports.push_back(lemmas_enclosure_report(prec));
  reports.push_back(lemmas_g_report(prec));
  reports.push_back(lemmas_agreement_report(prec));
  reports.push_back(lemmas_gamma_report(prec));
  return reports;
}

std::vector<CheckReport> suite_sandwich(const RunConfig& config) {
  const mpfr_prec_t prec = prec_of(config);
  if (config.horizon < 3512) {
    throw std::invalid_argument(
        "sandwich suite needs --horizon >= 3512 so the sampled coefficients exist");
  }
  std::vector<std::int64_t> samples;
  for (std::int64_t n : {3512, 4000, 6000, 10000}) {
    if (n <= config.horizon) samples.push_back(n);
  }
  std::vector<CheckReport> reports;
  for (int k : {1, 2}) {
    RunConfig per_k = config;
    per_k.k = k;
    // Cache files are per-k; a shared path would thrash between the two.
    if (config.cache_path && config.k != k) per_k.cache_path.reset();
    const CoeffTable table = obtain_table(per_k, samples.back());

    CheckReport report;
    report.title = "sandwich k=" + std::to_string(k);
    const ModelParams geom(k, 3512, prec);
    report.items.push_back(
        strict_item("x(3512) above 152", HPReal(152L, prec), geom.x, prec));
    for (std::int64_t n : samples) {
      const ModelParams params(k, n, prec);
      const HPReal exact(table.at(n), 2 * prec);
      for (auto width : {SandwichWidth::kPow6, SandwichWidth::kPow10}) {
        const BoundPair pair = delta_sandwich(params, width, prec);
        const std::string tag = "n=" + std::to_string(n) + " " + pair.variant;
        report.items.push_back(strict_item(tag + " lower", pair.lower, exact, prec));
        report.items.push_back(strict_item(tag + " upper", exact, pair.upper, prec));
      }
      for (auto variant : {FgVariant::kDeg12, FgVariant::kDeg20}) {
        const BoundPair pair = fg_bounds(params, variant, prec);
        const std::string tag = "n=" + std::to_string(n) + " " + pair.variant;
        report.items.push_back(strict_item(tag + " lower", pair.lower, exact, prec));
        report.items.push_back(strict_item(tag + " upper", exact, pair.upper, prec));
      }
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<CheckReport> suite_proof_checks(mpfr_prec_t prec) {
  std::vector<CheckReport> reports;
  reports.push_back(exp_tail_check(
      {HPReal(152L, prec), HPReal(200L, prec), HPReal(500L, prec)}, prec));
  for (int k : {1, 2}) {
    for (std::int64_t n : {122, 500, 1578, 3512, 5000, 10000}) {
      reports.push_back(expansion_sandwich_check(k, n, ProofFamily::kLaguerre, prec));
    }
    for (std::int64_t n : {2404, 3000, 3891, 5000, 8000, 10000}) {
      reports.push_back(expansion_sandwich_check(k, n, ProofFamily::kDeterminant, prec));
    }
  }
  reports.push_back(phi_bound_check({HPReal(mpq_class(-1, 10), prec), HPReal(-1L, prec),
                                     HPReal(-5L, prec), HPReal(-10L, prec)},
                                    prec));
  for (int k : {1, 2}) {
    const mpq_class alpha = alpha_of(k);
    for (auto family : {ProofFamily::kLaguerre, ProofFamily::kDeterminant}) {
      CheckReport lead = leading_coeff_signs(alpha, family, prec);
      lead.title += " k=" + std::to_string(k);
      reports.push_back(std::move(lead));
      const std::vector<HPReal> grid =
          family == ProofFamily::kLaguerre
              ? std::vector<HPReal>{HPReal(mpq_class(1015, 100), prec),
                                    HPReal(mpq_class(102, 10), prec)}
              : std::vector<HPReal>{HPReal(mpq_class(1266, 100), prec),
                                    HPReal(mpq_class(127, 10), prec)};
      CheckReport tail = quartic_tail_check(family, alpha, grid, prec);
      tail.title += " k=" + std::to_string(k);
      reports.push_back(std::move(tail));
    }
  }
  return reports;
}

}  // namespace

void RunConfig::validate() const {
  if (k != 1 && k != 2) throw std::invalid_argument("--k must be 1 or 2");
  if (horizon < 0) throw std::invalid_argument("--horizon must be >= 0");
  if (precision_bits < 64) throw std::invalid_argument("--precision must be >= 64");
  if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
}

CoeffTable obtain_table(const RunConfig& config, std::int64_t needed) {
  config.validate();
  if (!config.cache_path) {
    return expand_coeffs(config.k, needed);
  }
  const std::string& path = *config.cache_path;
  CoeffTable table;
  bool from_cache = false;
  if (std::filesystem::exists(path)) {
    table = load_cache(path);
    if (table.k != config.k) {
      throw CacheError("cache " + path + " holds k=" + std::to_string(table.k) +
                       " but the run requests k=" + std::to_string(config.k));
    }
    from_cache = true;
  } else {
    table.k = config.k;
    table.coeffs.assign(1, mpz_class(1));
  }
  const std::int64_t before = table.horizon();
  extend_coeffs(table, needed);
  if (!from_cache || table.horizon() > before) {
    store_cache(path, table);
  }
  return table;
}

int cmd_coeffs(const RunConfig& config, std::int64_t n_max, std::ostream& out) {
  config.validate();
  if (n_max < 0) throw std::invalid_argument("coefficient horizon must be >= 0");
  const CoeffTable table = obtain_table(config, n_max);
  if (config.format == RunConfig::Format::kCsv) {
    out << "n,delta\n";
    for (std::int64_t n = 0; n <= n_max; ++n) {
      out << n << "," << csv_quote(table.at(n).get_str()) << "\n";
    }
  } else {
    json doc;
    doc["command"] = "coeffs";
    doc["config"] = config_json(config);
    json rows = json::array();
    for (std::int64_t n = 0; n <= n_max; ++n) {
      rows.push_back({{"n", n}, {"delta", table.at(n).get_str()}});
    }
    doc["rows"] = rows;
    doc["status"] = "ok";
    emit_json(out, doc);
  }
  return 0;
}

int cmd_check(const RunConfig& config, const std::string& family_name, int order,
              std::int64_t from, std::int64_t to, bool with_values, std::ostream& out) {
  config.validate();
  const auto family = family_from_name(family_name);
  if (!family) throw std::invalid_argument("unknown family: " + family_name);
  const FamilySpec spec{*family, order, config.k};
  if (from > to) throw std::invalid_argument("empty range");
  if (from < structural_min(spec.family, spec.order)) {
    throw std::invalid_argument("range begins before the family's window is defined (n >= " +
                                std::to_string(structural_min(spec.family, spec.order)) +
                                ")");
  }
  const CoeffTable table = obtain_table(config, to + window_span(spec.family, spec.order));

  auto value_string = [&](std::int64_t n) -> std::optional<std::string> {
    switch (spec.family) {
      case Family::kLaguerre: return laguerre_value(table, n, spec.order).get_str();
      case Family::kToeplitzDet: return toeplitz_det(table, n, spec.order).get_str();
      case Family::kTuranJensen:
        if (spec.order == 3) return turan3_value(table, n).get_str();
        return std::nullopt;  // hyperbolicity has no scalar witness
      case Family::kInvariantA:
      case Family::kInvariantB:
      case Family::kInvariantI: {
        const auto& c = table.coeffs;
        const std::size_t u = static_cast<std::size_t>(n);
        const QuarticInvariants inv =
            quartic_invariants(c[u], c[u + 1], c[u + 2], c[u + 3], c[u + 4]);
        if (spec.family == Family::kInvariantA) return inv.A.get_str();
        if (spec.family == Family::kInvariantB) return inv.B.get_str();
        return inv.I.get_str();
      }
    }
    return std::nullopt;
  };

  bool all_true = true;
  if (config.format == RunConfig::Format::kCsv) {
    out << (with_values ? "n,family,order,verdict,value\n" : "n,family,order,verdict\n");
    for (std::int64_t n = from; n <= to; ++n) {
      const bool verdict = predicate_eval(spec, table, n);
      all_true = all_true && verdict;
      out << n << "," << family_name << "," << order << ","
          << (verdict ? "true" : "false");
      if (with_values) {
        const auto value = value_string(n);
        out << "," << (value ? csv_quote(*value) : std::string());
      }
      out << "\n";
    }
  } else {
    json doc;
    doc["command"] = "check";
    doc["config"] = config_json(config);
    doc["family"] = family_name;
    doc["order"] = order;
    json rows = json::array();
    for (std::int64_t n = from; n <= to; ++n) {
      const bool verdict = predicate_eval(spec, table, n);
      all_true = all_true && verdict;
      json row{{"n", n}, {"verdict", verdict}};
      if (with_values) {
        const auto value = value_string(n);
        row["value"] = value ? json(*value) : json(nullptr);
      }
      rows.push_back(row);
    }
    doc["rows"] = rows;
    doc["status"] = all_true ? "ok" : "fail";
    emit_json(out, doc);
  }
  return all_true ? 0 : 1;
}

int cmd_scan(const RunConfig& config, int m_max, std::ostream& out, std::ostream& warn) {
  config.validate();
  const CoeffTable table = obtain_table(config, config.horizon + 2 * m_max);
  const auto reports = scan_tables(table, m_max, config.horizon, config.jobs);

  bool censored = false;
  for (const auto& report : reports) {
    if (report.censored()) {
      censored = true;
    } else if (*report.threshold * 2 > config.horizon) {
      warn << "warning: " << family_name(report.spec.family) << " m=" << report.spec.order
           << " threshold " << *report.threshold << " exceeds half the horizon "
           << config.horizon << "; rerun with a larger --horizon for margin\n";
    }
  }

  if (config.format == RunConfig::Format::kCsv) {
    out << "family,m,admissible_min,threshold,horizon,failure_count,censored\n";
    for (const auto& report : reports) {
      out << family_name(report.spec.family) << "," << report.spec.order << ","
          << report.admissible_min << ",";
      if (report.threshold) out << *report.threshold;
      out << "," << report.horizon << "," << report.failures.size() << ","
          << (report.censored() ? "true" : "false") << "\n";
    }
  } else {
    json doc;
    doc["command"] = "scan";
    doc["config"] = config_json(config);
    json rows = json::array();
    for (const auto& report : reports) {
      json row;
      row["family"] = family_name(report.spec.family);
      row["m"] = report.spec.order;
      row["admissible_min"] = report.admissible_min;
      row["threshold"] = report.threshold ? json(*report.threshold) : json(nullptr);
      row["horizon"] = report.horizon;
      row["failures"] = report.failures;
      row["censored"] = report.censored();
      rows.push_back(row);
    }
    doc["rows"] = rows;
    doc["status"] = censored ? "fail" : "ok";
    emit_json(out, doc);
  }
  return censored ? 1 : 0;
}

int cmd_verify_bounds(const RunConfig& config, const std::string& suite, std::ostream& out) {
  config.validate();
  const mpfr_prec_t prec = prec_of(config);
  std::vector<CheckReport> reports;
  if (suite == "lemmas") {
    reports = suite_lemmas(prec);
  } else if (suite == "sandwich") {
    reports = suite_sandwich(config);
  } else if (suite == "proof-checks") {
    reports = suite_proof_checks(prec);
  } else if (suite == "all") {
    reports = suite_lemmas(prec);
    for (auto& r : suite_sandwich(config)) reports.push_back(std::move(r));
    for (auto& r : suite_proof_checks(prec)) reports.push_back(std::move(r));
  } else {
    throw std::invalid_argument("unknown suite: " + suite +
                                " (expected lemmas|sandwich|proof-checks|all)");
  }

  bool all_pass = true;
  for (const auto& report : reports) all_pass = all_pass && report.all_pass();

  if (config.format == RunConfig::Format::kCsv) {
    out << "suite,check,pass,margin,budget\n";
    for (const auto& report : reports) {
      for (const auto& item : report.items) {
        out << csv_quote(report.title) << "," << csv_quote(item.name) << ","
            << (item.pass ? "true" : "false") << "," << item.margin.str(8) << ","
            << item.budget.str(8) << "\n";
      }
    }
  } else {
    json doc;
    doc["command"] = "verify-bounds";
    doc["config"] = config_json(config);
    doc["suite"] = suite;
    json checks = json::array();
    for (const auto& report : reports) {
      for (const auto& item : report.items) {
        checks.push_back({{"suite", report.title},
                          {"check", item.name},
                          {"pass", item.pass},
                          {"margin", item.margin.str(8)},
                          {"budget", item.budget.str(8)}});
      }
    }
    doc["checks"] = checks;
    doc["status"] = all_pass ? "ok" : "fail";
    emit_json(out, doc);
  }
  return all_pass ? 0 : 1;
}

}  // namespace deltak
