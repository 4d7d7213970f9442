#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "deltak/series.hpp"

// Command layer behind the CLI: table acquisition through the cache, and the
// four subcommands with deterministic CSV/JSON emission.  Exit-code contract:
// 0 iff every requested check/scan succeeded and no threshold was
// horizon-censored; 1 for a failed verdict; usage and I/O errors surface as
// exceptions for the CLI wrapper to report (exit 2).

namespace deltak {

struct RunConfig {
  enum class Format { kCsv, kJson };

  int k = 1;
  std::int64_t horizon = 10000;
  int precision_bits = 256;
  Format format = Format::kCsv;
  std::optional<std::string> cache_path;
  int jobs = 1;

  void validate() const;
};

// Table for config.k with horizon >= needed.  When a cache path is set, the
// cached prefix is reused and extended, and the file is rewritten atomically
// whenever it grew.
CoeffTable obtain_table(const RunConfig& config, std::int64_t needed);

int cmd_coeffs(const RunConfig& config, std::int64_t n_max, std::ostream& out);

int cmd_check(const RunConfig& config, const std::string& family_name, int order,
              std::int64_t from, std::int64_t to, bool with_values, std::ostream& out);

int cmd_scan(const RunConfig& config, int m_max, std::ostream& out, std::ostream& warn);

// suite: lemmas | sandwich | proof-checks | all
int cmd_verify_bounds(const RunConfig& config, const std::string& suite, std::ostream& out);

}  // namespace deltak
