#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "axial/cli.hpp"

using namespace axial;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("axial_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path add_model() {
  const auto path = temp_file("add.json");
  std::ofstream f(path);
  f << R"({"alphabet":["A","B","C","D","E","F","G","H","I","J","K","L","M","N","O","P","Q","R","S","T","U","V","W","X","Y","Z"],)"
    << R"("forbidden":["ADD"]})";
  return path;
}

}  // namespace

TEST_CASE("hind on a model file") {
  const auto path = add_model();
  const auto r = run({"hind", "file:" + path.string()});
  REQUIRE(r.code == kExitOk);
  const auto j = r.doc();
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["p"] == "650");
  CHECK(j["n"] == 2);
  CHECK(j["nats"].get<double>() == doctest::Approx(std::log(650.0) / 2));
  std::filesystem::remove(path);
}

TEST_CASE("log base") {
  const auto bits = run({"hind", "hard_square", "--log-base", "2"});
  REQUIRE(bits.code == kExitOk);
  CHECK(bits.doc()["value"].get<double>() == doctest::Approx(0.5));
  const auto ten = run({"hind", "full:10", "--log-base", "10"});
  CHECK(ten.doc()["value"].get<double>() == doctest::Approx(1.0));
  CHECK(run({"hind", "hard_square", "--log-base", "3"}).code == kExitInvalid);
}

TEST_CASE("classify output") {
  const auto r = run({"classify", "coloring:3"});
  REQUIRE(r.code == kExitOk);
  const auto j = r.doc();
  CHECK(j["verdict"] == "exactly_k");
  CHECK(j["k"] == 3);
  CHECK(j["cycles"].size() == 3);

  const auto m = run({"classify", "rll:2,inf"}).doc();
  CHECK(m["verdict"] == "multiple");
  CHECK(m["counterexample"]["t"] == 1);
  CHECK(m["counterexample"]["drift"] == 2);
  CHECK(run({"classify", "hard_square"}).doc()["verdict"] == "unique");
}

TEST_CASE("exit codes") {
  const auto bad = run({"hind", "coloring:1"});
  CHECK(bad.code == kExitInvalid);
  CHECK(bad.err.find("invalid input") != std::string::npos);
  CHECK(run({"hind", "file:/nonexistent.json"}).code == kExitInvalid);
  CHECK(run({"frobnicate", "hard_square"}).code == kExitInvalid);
  CHECK(run({"count", "hard_square"}).code == kExitInvalid);
  CHECK(run({"hind", "hard_square", "--caps", "bogus=1"}).code == kExitInvalid);
  CHECK(run({"pressure", "hard_square", "--weights", "1=0"}).code == kExitInvalid);

  const auto capped = run({"count", "hard_square", "--n", "5", "--d", "3"});
  CHECK(capped.code == kExitCapExceeded);
  CHECK(capped.err.find("cap") != std::string::npos);
  CHECK(run({"count", "hard_square", "--n", "3", "--d", "3", "--caps", "sites=27"}).code == kExitOk);
  CHECK(run({"hind", "rll:1,9"}).code == kExitInvalid);
  CHECK(run({"hind", "rll:1,9", "--caps", "forbidden=10"}).code == kExitOk);

  const auto unknown = run({"classify", "coloring:3", "--max-count", "1"});
  CHECK(unknown.code == kExitUnknown);
  CHECK(unknown.doc()["verdict"] == "unknown_within_bounds");
  CHECK(run({"cycles", "coloring:3", "--max-count", "1"}).code == kExitUnknown);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("float renditions agree with the exact score") {
  for (const auto* model : {"hard_square", "coloring:5", "beach:2", "rll:2,5", "plastic"}) {
    CAPTURE(model);
    const auto j = run({"hind", model}).doc();
    const double p = std::stod(j["p"].get<std::string>());
    CHECK(j["nats"].get<double>() == doctest::Approx(std::log(p) / j["n"].get<double>()));
  }
}

TEST_CASE("pressure command") {
  const auto j = run({"pressure", "hard_square", "--weights", "0=1,1=8"}).doc();
  // (1/2) ln 9 in lowest terms
  CHECK(j["p"] == "3");
  CHECK(j["n"] == 1);
  CHECK(j["witness"] == "{0}{0,1}");
  const auto half = run({"pressure", "full:2", "--weights", "0=1/2,1=1/2"}).doc();
  CHECK(half["p"] == "1");
}

TEST_CASE("count, table and entropy1d") {
  const auto c = run({"count", "hard_square", "--n", "3", "--d", "2"}).doc();
  CHECK(c["count"] == "63");
  CHECK(run({"count", "hard_square", "--n", "3", "--d", "2", "--method", "backtrack"}).doc()["count"] == "63");

  const auto csv = temp_file("table.csv");
  const auto t = run({"table", "hard_square", "--n", "2,4", "--d", "1,2", "--csv", csv.string()});
  REQUIRE(t.code == kExitOk);
  const auto j = t.doc();
  CHECK(j["rows"].size() == 4);
  CHECK(j["sandwich"] == true);
  const auto text = slurp(csv);
  CHECK(text.rfind("n,d,count,estimate_nats,h_ind_nats\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  CHECK(text.find("\n2,2,7,") != std::string::npos);
  std::filesystem::remove(csv);

  const auto skipped = run({"table", "hard_square", "--n", "2,5", "--d", "3", "--skip-capped"}).doc();
  CHECK(skipped["skipped"].size() == 1);
  CHECK(run({"table", "hard_square", "--n", "2,5", "--d", "3"}).code == kExitCapExceeded);

  const auto e = run({"entropy1d", "plastic"}).doc();
  CHECK(std::abs(e["nats"].get<double>() - 0.2811995743) < 1e-6);
}

TEST_CASE("sample command is deterministic") {
  const auto csv = temp_file("samples.csv");
  const std::vector<std::string> args{"sample", "hard_square", "--n", "3", "--d", "2", "--count", "50", "--seed", "9",
                                      "--emit", csv.string()};
  const auto a = run(args);
  REQUIRE(a.code == kExitOk);
  const auto first = slurp(csv);
  const auto b = run(args);
  CHECK(a.out == b.out);
  CHECK(slurp(csv) == first);
  CHECK(first.rfind("sample,phase,s0,", 0) == 0);
  CHECK(std::count(first.begin(), first.end(), '\n') == 51);
  const auto j = a.doc();
  CHECK(j["violations"] == 0);
  CHECK(j["parity_rate"] == 1.0);
  CHECK(j["seed"] == 9);
  std::filesystem::remove(csv);
}

TEST_CASE("reruns are byte-identical") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"hind", "coloring:5"}, {"cycles", "coloring:5"}, {"classify", "rll:1,3"}, {"dump-graph", "hard_square"}}) {
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("graph dumps") {
  const auto r = run({"dump-graph", "hard_square"});
  REQUIRE(r.code == kExitOk);
  CHECK_FALSE(r.out.empty());
  const auto path = temp_file("graph.txt");
  CHECK(run({"hind", "hard_square", "--dump-graph", path.string()}).code == kExitOk);
  CHECK(slurp(path) == r.out);
  CHECK(run({"dump-graph", "hard_square", "-o", path.string()}).code == kExitOk);
  CHECK(slurp(path) == r.out);
  std::filesystem::remove(path);
  CHECK(run({"dump-graph", "hard_square", "--universe", "exhaustive"}).code == kExitOk);
  CHECK(run({"dump-graph", "hard_square", "--universe", "nope"}).code == kExitInvalid);
}

TEST_CASE("text format") {
  const auto r = run({"hind", "hard_square", "--format", "text"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("witness {0}{0,1}") != std::string::npos);
  CHECK(run({"hind", "hard_square", "--format", "xml"}).code == kExitInvalid);
}
