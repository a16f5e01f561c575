#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../../tools/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "wigner-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = wigner::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::string without_comments(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, body;
  while (std::getline(in, line))
    if (line.rfind('#', 0) != 0) body += line + '\n';
  return body;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("wigner_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("help and error exit codes") {
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"census", "--help"}).out.find("--coarser") != std::string::npos);

  const Result unknown = invoke({"census", "--kind", "iid", "--n", "4", "--bogus", "1"});
  CHECK(unknown.code == 2);
  const json e = json::parse(unknown.err);
  CHECK(e.contains("error"));
  CHECK(e.contains("message"));

  const Result bad = invoke({"census", "--kind", "nonsense", "--n", "4"});
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.err)["error"] == "validation");

  const Result budget = invoke({"census", "--kind", "iid", "--n", "30", "--k", "6", "--budget", "100"});
  CHECK(budget.code == 3);
  CHECK(json::parse(budget.err)["error"] == "budget_exceeded");

  CHECK(invoke({"freeness", "--word", "x^9", "--n", "10", "--samples", "2"}).code == 3);
  CHECK(invoke({}).code == 2);
}

TEST_CASE("census csv") {
  const Result r = invoke({"--no-timestamp", "census", "--kind", "iid", "--n", "4", "--k", "4"});
  REQUIRE(r.code == 0);
  CHECK(first_line(r.out) == "n,k,pi,s_count,ps_count,ns_count,s_over_scale");
  CHECK(r.out.find("\"1-2,3-4\"") != std::string::npos);
  const Result stamped = invoke({"census", "--kind", "iid", "--n", "4", "--k", "4"});
  CHECK(stamped.out.rfind("# timestamp: ", 0) == 0);
  CHECK(without_comments(stamped.out) == r.out);
}

TEST_CASE("json documents") {
  const Result rel = invoke({"--no-timestamp", "relations", "check", "--kind", "flip", "--n", "6"});
  REQUIRE(rel.code == 0);
  const json d = json::parse(rel.out);
  for (const char* key : {"kind", "n", "c1", "c2", "c3"}) CHECK(d.contains(key));
  CHECK_FALSE(d.contains("timestamp"));
  CHECK(json::parse(invoke({"relations", "check", "--kind", "iid", "--n", "4"}).out).contains("timestamp"));

  const Result orc = invoke({"--no-timestamp", "oracle", "exact-moment", "--kind", "iid", "--n", "2", "--k", "4"});
  REQUIRE(orc.code == 0);
  const json o = json::parse(orc.out);
  CHECK(o["numerator"] == 9);
  CHECK(o["denominator"] == 4);
  CHECK(o["value"].get<double>() == doctest::Approx(2.25));

  const Result sh = invoke({"--no-timestamp", "fermi", "shell", "--L", "16"});
  REQUIRE(sh.code == 0);
  const json s = json::parse(sh.out);
  CHECK(s["n"] == 28);
  CHECK(s["points"].size() == 28);
}

TEST_CASE("sample, store and summarize") {
  TempDir tmp;
  const std::string bin = (tmp.path / "x.bin").string();
  REQUIRE(invoke({"--seed", "5", "--out", bin, "ensemble", "sample", "--kind", "violating", "--n", "40", "--count", "3"})
              .code == 0);
  CHECK(slurp(bin).substr(0, 4) == "WGNR");

  const Result sp = invoke({"--no-timestamp", "spectrum", "--in", bin, "--law", "mixture", "--K", "4"});
  REQUIRE(sp.code == 0);
  CHECK(first_line(sp.out) == "sample_index,k,empirical_moment,reference_moment,ks_distance,atom_mass");
  std::istringstream rows(sp.out);
  std::string line;
  std::getline(rows, line);
  int count = 0;
  while (std::getline(rows, line)) {
    ++count;
    CHECK(line.substr(line.rfind(',') + 1) == "0.5");
  }
  CHECK(count == 12);

  // Sampling without --out is a validation error.
  CHECK(invoke({"ensemble", "sample", "--kind", "iid", "--n", "4"}).code == 2);
  for (const auto& entry : fs::directory_iterator(tmp.path))
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);
}

TEST_CASE("same seed, same bytes") {
  TempDir tmp;
  const auto a = tmp.path / "a.bin", b = tmp.path / "b.bin", c = tmp.path / "c.bin";
  for (const auto& p : {a, b})
    invoke({"--seed", "77", "--out", p.string(), "ensemble", "sample", "--kind", "flip", "--n", "12", "--count", "2"});
  invoke({"--seed", "78", "--out", c.string(), "ensemble", "sample", "--kind", "flip", "--n", "12", "--count", "2"});
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));

  const std::vector<std::string> fr{"--no-timestamp", "--seed", "3", "freeness", "--word", "x d x d", "--n", "20",
                                    "--samples", "4"};
  const Result r1 = invoke(fr), r2 = invoke(fr);
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(first_line(r1.out) == "word,n,estimate,std_error,prediction,z_score");
}

TEST_CASE("config file and precedence") {
  TempDir tmp;
  const auto cfg = tmp.path / "cfg.json";
  std::ofstream(cfg) << R"({"no-timestamp": true, "census": {"kind": "iid", "n": 3, "k": 2}})";
  const Result from_file = invoke({"--config", cfg.string(), "census"});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out.find("\n3,2,") != std::string::npos);
  const Result overridden = invoke({"--config", cfg.string(), "census", "--n", "5"});
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out.find("\n5,2,") != std::string::npos);

  const auto bad = tmp.path / "bad.json";
  std::ofstream(bad) << R"({"census": {"kind": "iid", "n": 3, "nope": 1}})";
  CHECK(invoke({"--config", bad.string(), "census"}).code == 2);
}

TEST_CASE("output file written atomically") {
  TempDir tmp;
  const auto target = tmp.path / "census.csv";
  REQUIRE(invoke({"--out", target.string(), "census", "--kind", "iid", "--n", "3", "--k", "2"}).code == 0);
  CHECK(slurp(target).find("n,k,pi") != std::string::npos);
  int files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(tmp.path)) ++files;
  CHECK(files == 1);
}

TEST_CASE("format_double") {
  CHECK(wigner::cli::format_double(0.5) == "0.5");
  CHECK(wigner::cli::format_double(0.1) == "0.10000000000000001");
  CHECK(wigner::cli::format_double(-INFINITY) == "-inf");
}
