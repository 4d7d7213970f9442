#include "deltak/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace deltak {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& cause) {
  throw CacheError("cache " + path + ": " + cause);
}

}  // namespace

CoeffTable load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open for reading");
  std::string line;
  if (!std::getline(in, line)) fail(path, "missing header line");

  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.is_object()) fail(path, "unparsable header");
  if (!header.contains("format_version") || !header["format_version"].is_number_integer()) {
    fail(path, "header lacks format_version");
  }
  const int version = header["format_version"].get<int>();
  if (version != kCacheFormatVersion) {
    fail(path, "format_version " + std::to_string(version) + " unsupported (expected " +
                   std::to_string(kCacheFormatVersion) + ")");
  }
  if (!header.contains("k") || !header.contains("horizon")) {
    fail(path, "header lacks k/horizon");
  }
  const int k = header["k"].get<int>();
  const std::int64_t horizon = header["horizon"].get<std::int64_t>();
  if (horizon < 0) fail(path, "negative horizon");

  CoeffTable table;
  table.k = k;
  table.coeffs.reserve(static_cast<std::size_t>(horizon) + 1);
  for (std::int64_t n = 0; n <= horizon; ++n) {
    if (!std::getline(in, line)) {
      fail(path, "truncated at coefficient " + std::to_string(n));
    }
    json cell = json::parse(line, nullptr, false);
    if (cell.is_discarded() || !cell.is_string()) {
      fail(path, "coefficient line " + std::to_string(n) + " is not a JSON string");
    }
    const std::string digits = cell.get<std::string>();
    mpz_class value;
    if (mpz_set_str(value.get_mpz_t(), digits.c_str(), 10) != 0) {
      fail(path, "coefficient " + std::to_string(n) + " is not a decimal integer");
    }
    table.coeffs.push_back(std::move(value));
  }
  return table;
}

void store_cache(const std::string& path, const CoeffTable& table) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(tmp, "cannot open for writing");
    json header;
    header["format_version"] = kCacheFormatVersion;
    header["k"] = table.k;
    header["horizon"] = table.horizon();
    out << header.dump() << "\n";
    for (const auto& c : table.coeffs) {
      out << json(c.get_str()).dump() << "\n";
    }
    out.flush();
    if (!out) fail(tmp, "write failure");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(path, "rename failed: " + ec.message());
}

}  // namespace deltak
