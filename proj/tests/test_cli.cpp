#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <stdlib.h>

#include <nlohmann/json.hpp>

#include "csg/cli.hpp"

using namespace csg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempCache {
  fs::path dir;
  TempCache() {
    std::string pattern = (fs::temp_directory_path() / "csg-test-XXXXXX").string();
    dir = ::mkdtemp(pattern.data());
    ::setenv(kCacheEnvVar, dir.c_str(), 1);
  }
  ~TempCache() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::size_t entries() const {
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator()));
  }
};

long csv_total(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  long total = 0;
  while (std::getline(in, line))
    total += std::stol(line.substr(line.rfind(',') + 1));
  return total;
}

}  // namespace

TEST_CASE("documented examples") {
  TempCache cache;
  const Run tab = run({"tabulate", "--n", "4", "--format", "csv"});
  CHECK(tab.code == 0);
  CHECK(tab.out.rfind("n,t,r,count\r\n", 0) == 0);
  CHECK(csv_total(tab.out) == 25);
  CHECK(run({"formula", "eval", "--id", "cs_2_total", "--n", "10"}).out == "839\n");
  CHECK(run({"maxr", "--n", "15"}).out == "722\n");
  CHECK(run({"formula", "eval", "--id", "cs_32", "--n", "6"}).out == "172\n");
  CHECK(run({"enumerate", "--n", "6", "--count"}).out == "1171\n");
  CHECK(run({"enumerate", "--n", "5", "--t", "3", "--r", "3"}).out == "6\n");
  CHECK(run({"subcases", "--t", "3", "--r", "2", "--count"}).out == "9\n");
  CHECK(run({"ilp", "--model", "bigm", "--n", "5", "--t", "3", "--r", "2"}).out == "38\n");
  CHECK(run({"ilp", "--model", "compact", "--n", "6", "--r", "2"}).out == "40\n");
}

TEST_CASE("listing prints one canonical game per line") {
  TempCache cache;
  const Run r = run({"enumerate", "--n", "4", "--t", "2", "--r", "2", "--list"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
  CHECK(r.out.find("csg n=4 t=2 r=2; nvec=[1,3]; M=[[1,1],[0,3]]\n") != std::string::npos);
  const Run j = run({"enumerate", "--n", "3", "--list", "--format", "json"});
  CHECK(nlohmann::json::parse(j.out).size() == 8);
}

TEST_CASE("exit codes") {
  TempCache cache;
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"tabulate"}).code == 2);
  CHECK(run({"tabulate", "--n", "4", "--format", "xml"}).code == 2);
  CHECK(run({"formula", "eval", "--id", "nope", "--n", "3"}).code == 2);
  const Run limit = run({"enumerate", "--n", "10", "--count"});
  CHECK(limit.code == 3);
  CHECK(limit.err.find("n <= 9") != std::string::npos);
  CHECK(run({"enumerate", "--n", "9", "--list"}).code == 3);
  CHECK(run({"fit", "--t", "4", "--r", "3", "--degree", "3", "--period", "2", "--samples", "6..60"}).code == 3);
  CHECK(run({"fit", "--t", "3", "--r", "2", "--degree", "1", "--period", "1", "--samples", "4..9"}).code == 1);
  CHECK(run({"verify", "--suite", "max_rows"}).code == 0);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("a failing verification bundle exits 1 with the mismatches") {
  TempCache cache;
  const Run r = run({"verify", "--suite", "quasi_polynomials"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("FAIL  5 quasi_polynomials", 0) == 0);
  CHECK(r.out.find("    - ") != std::string::npos);
}

TEST_CASE("cache transparency") {
  TempCache cache;
  const std::vector<std::vector<std::string>> commands{
      {"tabulate", "--n", "6"},
      {"tabulate", "--n", "5", "--format", "json", "--engine", "antichain"},
      {"enumerate", "--n", "7", "--count"},
      {"enumerate", "--n", "9", "--t", "3", "--format", "json"},
      {"subcases", "--t", "3", "--r", "3", "--list"},
      {"fit", "--t", "3", "--r", "2", "--degree", "8", "--period", "2", "--samples", "6..23"},
      {"ilp", "--n", "4", "--t", "2", "--r", "2"},
  };
  for (const auto& c : commands) {
    auto uncached = c;
    uncached.push_back("--no-cache");
    const Run fresh = run(c);
    const Run hit = run(c);
    const Run bypass = run(uncached);
    CHECK(fresh.code == 0);
    CHECK(fresh.out == hit.out);
    CHECK(fresh.out == bypass.out);
  }
  CHECK(cache.entries() == commands.size());
  for (const auto& entry : fs::directory_iterator(cache.dir)) {
    std::ifstream in(entry.path());
    const auto j = nlohmann::json::parse(in);
    CHECK(j.contains("created_at"));
    CHECK(j["key"].get<std::string>().find(kEngineVersion) != std::string::npos);
  }
}

TEST_CASE("a corrupt cache entry is recomputed") {
  TempCache cache;
  const Run first = run({"enumerate", "--n", "6", "--count"});
  for (const auto& entry : fs::directory_iterator(cache.dir))
    std::ofstream(entry.path()) << "{not json";
  CHECK(run({"enumerate", "--n", "6", "--count"}).out == first.out);
}

TEST_CASE("JSON output has sorted keys and integers as strings") {
  TempCache cache;
  const Run r = run({"tabulate", "--n", "4", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["total"] == "25");
  CHECK(j["rows"][0]["count"].is_string());
  CHECK(r.out.find("\"n\"") < r.out.find("\"rows\""));
  CHECK(r.out.find("\"rows\"") < r.out.find("\"total\""));
  const auto big = nlohmann::json::parse(run({"maxr", "--n", "60", "--format", "json"}).out);
  CHECK(big["maxr"].get<std::string>().find_first_not_of("0123456789") == std::string::npos);
  CHECK(big["maxr"].get<std::string>().size() > 10);
}

TEST_CASE("--out writes the result to a file") {
  TempCache cache;
  const fs::path file = cache.dir / "out.csv";
  const Run r = run({"maxr", "--n", "6", "--table", "--out", file.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(file);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str() == "n,maxr\r\n1,1\r\n2,1\r\n3,2\r\n4,2\r\n5,3\r\n6,5\r\n");
}

TEST_CASE("global flags work after the subcommand and --jobs keeps output identical") {
  TempCache cache;
  CHECK(run({"tabulate", "--n", "7", "--jobs", "4", "--no-cache"}).out ==
        run({"--jobs", "1", "tabulate", "--n", "7", "--no-cache"}).out);
}

TEST_CASE("formula listing and display") {
  TempCache cache;
  const Run list = run({"formula", "list"});
  CHECK(list.out.rfind("id,parameters,validity,expression\r\n", 0) == 0);
  CHECK(list.out.find("\ncs_52,") != std::string::npos);
  const Run show = run({"formula", "show", "--id", "cs_32"});
  CHECK(show.out.find("1/26880*n^8") == 0);
  const Run latex = run({"formula", "show", "--id", "cs_32", "--latex"});
  CHECK(latex.out.find("\\frac{1}{26880}n^{8}") == 0);
}

TEST_CASE("fit emits the stored cs(n,3,2)") {
  TempCache cache;
  const Run pretty = run({"fit", "--t", "3", "--r", "2", "--degree", "8", "--period", "2", "--samples", "6..23"});
  CHECK(pretty.out == run({"formula", "show", "--id", "cs_32"}).out);
  const Run searched = run({"fit", "--t", "3", "--r", "2", "--degree", "8", "--samples", "6..23", "--emit", "json"});
  CHECK(nlohmann::json::parse(searched.out)["fitted_period"] == "2");
}

TEST_CASE("RFC 4180 quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"x\"") == "\"say \"\"x\"\"\"");
}
