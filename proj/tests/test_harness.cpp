#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "deltak/cache.hpp"
#include "deltak/commands.hpp"
#include "deltak/inequality.hpp"

using namespace deltak;
using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("deltak_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("cache round trip is exact") {
  TempDir dir;
  const std::string path = dir.file("k1.cache");
  const CoeffTable table = expand_coeffs(1, 64);
  store_cache(path, table);
  const CoeffTable loaded = load_cache(path);
  CHECK(loaded.k == table.k);
  CHECK(loaded.horizon() == table.horizon());
  CHECK(loaded.coeffs == table.coeffs);
  CHECK(!std::filesystem::exists(path + ".tmp"));
}

TEST_CASE("cache version mismatch is a load error") {
  TempDir dir;
  const std::string path = dir.file("bad.cache");
  {
    std::ofstream out(path);
    out << "{\"format_version\":99,\"horizon\":1,\"k\":1}\n\"1\"\n\"3\"\n";
  }
  CHECK_THROWS_AS(load_cache(path), CacheError);
}

TEST_CASE("corrupt caches are load errors") {
  TempDir dir;
  {
    std::ofstream out(dir.file("trunc.cache"));
    out << "{\"format_version\":1,\"horizon\":3,\"k\":1}\n\"1\"\n\"3\"\n";
  }
  CHECK_THROWS_AS(load_cache(dir.file("trunc.cache")), CacheError);
  {
    std::ofstream out(dir.file("notnum.cache"));
    out << "{\"format_version\":1,\"horizon\":0,\"k\":1}\n\"xyz\"\n";
  }
  CHECK_THROWS_AS(load_cache(dir.file("notnum.cache")), CacheError);
  {
    std::ofstream out(dir.file("nostr.cache"));
    out << "{\"format_version\":1,\"horizon\":0,\"k\":1}\n17\n";
  }
  CHECK_THROWS_AS(load_cache(dir.file("nostr.cache")), CacheError);
  CHECK_THROWS_AS(load_cache(dir.file("missing.cache")), CacheError);
}

TEST_CASE("obtain_table reuses and extends the cache") {
  TempDir dir;
  RunConfig config;
  config.k = 2;
  config.cache_path = dir.file("k2.cache");

  const CoeffTable first = obtain_table(config, 40);
  CHECK(first.horizon() == 40);
  const CoeffTable cached = load_cache(*config.cache_path);
  CHECK(cached.horizon() == 40);

  // asking for less keeps the longer cache content intact
  const CoeffTable shorter = obtain_table(config, 10);
  CHECK(shorter.horizon() == 40);

  const CoeffTable extended = obtain_table(config, 90);
  CHECK(extended.horizon() == 90);
  CHECK(load_cache(*config.cache_path).horizon() == 90);
  // cached prefix identical to a fresh computation
  const CoeffTable fresh = expand_coeffs(2, 90);
  CHECK(extended.coeffs == fresh.coeffs);

  // cache holds k=2; asking for k=1 through the same file must fail loudly
  RunConfig other = config;
  other.k = 1;
  CHECK_THROWS_AS(obtain_table(other, 10), CacheError);
}

TEST_CASE("cmd_coeffs emits exact rows deterministically") {
  RunConfig config;
  config.k = 1;
  std::ostringstream a, b;
  CHECK(cmd_coeffs(config, 1, a) == 0);
  CHECK(cmd_coeffs(config, 1, b) == 0);
  CHECK(a.str() == b.str());
  CHECK(a.str() == "n,delta\n0,\"1\"\n1,\"3\"\n");

  std::ostringstream single;
  CHECK(cmd_coeffs(config, 0, single) == 0);
  CHECK(single.str() == "n,delta\n0,\"1\"\n");

  config.format = RunConfig::Format::kJson;
  std::ostringstream js;
  CHECK(cmd_coeffs(config, 2, js) == 0);
  const json doc = json::parse(js.str());
  CHECK(doc["command"] == "coeffs");
  CHECK(doc["status"] == "ok");
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["rows"][2]["delta"] == "8");
  CHECK(doc["config"]["k"] == 1);
}

TEST_CASE("cmd_coeffs with a cache is byte-identical across runs") {
  TempDir dir;
  RunConfig config;
  config.k = 2;
  config.cache_path = dir.file("c.cache");
  std::ostringstream first, second;
  CHECK(cmd_coeffs(config, 30, first) == 0);
  CHECK(cmd_coeffs(config, 30, second) == 0);
  CHECK(first.str() == second.str());
}

TEST_CASE("cmd_check verdicts and exit codes") {
  RunConfig config;
  config.k = 1;
  std::ostringstream ok;
  CHECK(cmd_check(config, "laguerre", 2, 12, 100, false, ok) == 0);

  std::ostringstream bad;
  CHECK(cmd_check(config, "toeplitz_det", 3, 18, 19, false, bad) == 1);
  CHECK(bad.str().find("19,toeplitz_det,3,false") != std::string::npos);

  // exact arithmetic: the I invariant fails at 14..16, then holds
  std::ostringstream inv;
  CHECK(cmd_check(config, "invariant_I", 1, 14, 100, false, inv) == 1);
  CHECK(inv.str().find("14,invariant_I,1,false") != std::string::npos);
  CHECK(inv.str().find("16,invariant_I,1,false") != std::string::npos);
  CHECK(inv.str().find("17,invariant_I,1,true") != std::string::npos);
  std::ostringstream inv_ok;
  CHECK(cmd_check(config, "invariant_I", 1, 17, 100, false, inv_ok) == 0);

  CHECK_THROWS_AS(cmd_check(config, "nope", 2, 1, 5, false, ok), std::invalid_argument);
  CHECK_THROWS_AS(cmd_check(config, "toeplitz_det", 3, 0, 5, false, ok),
                  std::invalid_argument);

  config.format = RunConfig::Format::kJson;
  std::ostringstream js;
  CHECK(cmd_check(config, "laguerre", 2, 11, 12, true, js) == 1);
  const json doc = json::parse(js.str());
  CHECK(doc["status"] == "fail");
  CHECK(doc["rows"][0]["verdict"] == false);
  CHECK(doc["rows"][0]["value"] == "-877");
  CHECK(doc["rows"][1]["verdict"] == true);
  CHECK(doc["rows"][1]["value"] == "109201");
}

TEST_CASE("cmd_scan emits threshold rows and honors the exit contract") {
  RunConfig config;
  config.k = 1;
  config.horizon = 600;
  config.jobs = 2;
  std::ostringstream out, warn;
  CHECK(cmd_scan(config, 5, out, warn) == 0);
  const std::string csv = out.str();
  CHECK(csv.find("laguerre,2,1,12,600,6,false") != std::string::npos);
  CHECK(csv.find("laguerre,5,1,251,600,125,false") != std::string::npos);
  CHECK(csv.find("toeplitz_det,5,4,194,600,93,false") != std::string::npos);
  // 2*251 < 600, but 2*194 < 600 as well: no warnings expected
  CHECK(warn.str().empty());

  // a horizon below a threshold censors the row and fails the run
  RunConfig tight = config;
  tight.horizon = 19;
  std::ostringstream out2, warn2;
  CHECK(cmd_scan(tight, 3, out2, warn2) == 1);
  CHECK(out2.str().find("toeplitz_det,3,2,,19") != std::string::npos);

  // near-horizon thresholds draw an advisory warning
  RunConfig close = config;
  close.horizon = 300;
  std::ostringstream out3, warn3;
  CHECK(cmd_scan(close, 5, out3, warn3) == 0);
  CHECK(warn3.str().find("laguerre m=5") != std::string::npos);

  config.format = RunConfig::Format::kJson;
  std::ostringstream js, jwarn;
  CHECK(cmd_scan(config, 2, js, jwarn) == 0);
  const json doc = json::parse(js.str());
  CHECK(doc["command"] == "scan");
  CHECK(doc["rows"].size() == 4);
  CHECK(doc["rows"][1]["threshold"] == 12);
  CHECK(doc["rows"][1]["failures"].size() == 6);
  CHECK(doc["status"] == "ok");
}

TEST_CASE("cmd_verify_bounds rejects unknown suites and emits json") {
  RunConfig config;
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_verify_bounds(config, "bogus", out), std::invalid_argument);

  // 256 bits certifies every proof-check margin; lower precision leaves the
  // thinnest far-horizon strand margins inside the error budget and the
  // suite refuses to certify them
  config.precision_bits = 256;
  config.format = RunConfig::Format::kJson;
  std::ostringstream js;
  const int rc = cmd_verify_bounds(config, "proof-checks", js);
  const json doc = json::parse(js.str());
  CHECK(doc["command"] == "verify-bounds");
  CHECK(doc["checks"].size() > 0);
  CHECK(doc["status"] == "ok");
  CHECK(rc == 0);
}

TEST_CASE("run config validation") {
  RunConfig config;
  config.k = 3;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig();
  config.precision_bits = 32;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig();
  config.jobs = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}
