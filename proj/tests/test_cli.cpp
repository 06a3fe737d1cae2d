#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ssn/cli.hpp"
#include "ssn/error.hpp"
#include "ssn/io.hpp"

using namespace ssn;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ssn_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

fs::path write_ifs(const fs::path& dir, const std::string& body) {
  const fs::path p = dir / "ifs.json";
  write_text_file(p.string(), body);
  return p;
}

const char* kCantor = R"({"maps": [{"s": "1/3", "t": "0"}, {"s": "1/3", "t": "2/3"}], "weights": ["1/2", "1/2"]})";
}  // namespace

TEST_CASE("ifs json round trip") {
  const SimilarityIFS ifs = ifs_from_json(json::parse(
      R"({"maps": [{"s": "1/phi^2", "t": 0}, {"s": "-1/phi^2", "t": "1"}], "weights": ["1/3", "2/3"]})"));
  const json back = ifs_to_json(ifs);
  const SimilarityIFS again = ifs_from_json(back);
  REQUIRE(again.size() == 2);
  CHECK(again.maps()[1].s == ifs.maps()[1].s);
  CHECK(again.weights()[1] == mpq_class(2, 3));
  CHECK(ifs_from_json(json::parse(kCantor)).weights()[0] == mpq_class(1, 2));
  CHECK_THROWS_AS(ifs_from_json(json::parse(R"({"maps": [{"s": 0.5, "t": "0"}]})")), Error);
  CHECK_THROWS_AS(ifs_from_json(json::parse(R"({"m": []})")), Error);
}

TEST_CASE("model json round trip") {
  const Model m = build_model(ifs_from_json(json::parse(R"({"maps": [{"s": "1/2", "t": "0"}, {"s": "1/3", "t": "2/3"}]})")));
  const Model b = model_from_json(model_to_json(m));
  CHECK(model_to_json(b) == model_to_json(m));
  CHECK(b.m == m.m);
  REQUIRE(b.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(b.index(i).r == m.index(i).r);
    CHECK(b.q()[i] == m.q()[i]);
  }
}

TEST_CASE("beta from json") {
  CHECK(beta_from_json("golden").value() == beta_from_json(json::array({1, -1, -1})).value());
  CHECK(std::abs(beta_from_json(json::array({1, -1, -1, -1})).to_double() - 1.839286755214161) < 1e-12);
  CHECK(std::abs(beta_from_json(json::array({1, 0, -2})).to_double() - std::sqrt(2.0)) < 1e-12);
  CHECK(beta_from_json(3).to_double() == 3.0);
  CHECK(beta_from_json("5/2").to_double() == 2.5);
  CHECK_THROWS_AS(beta_from_json(json::array({0, 0})), Error);
  CHECK_THROWS_AS(beta_from_json(2.5), Error);
}

TEST_CASE("cli output is byte identical under a fixed seed") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const fs::path ifs = write_ifs(a, kCantor);
  for (const auto& dir : {a, b}) {
    CHECK(cli({"--seed", "7", "--out-dir", dir.string(), "normality", "--ifs", ifs.string(), "--beta", "golden",
               "--points", "8", "--digits", "200"}) == 0);
    CHECK(cli({"--seed", "7", "--out-dir", dir.string(), "disintegration", "--ifs", ifs.string(), "--n", "2000",
               "--ks-tol", "0.1"}) == 0);
  }
  for (const char* f : {"normality.csv", "normality_report.json", "disintegration_report.json", "config.json"})
    CHECK(slurp(a / f) == slurp(b / f));
  const fs::path c = scratch("det_c");
  CHECK(cli({"--seed", "8", "--out-dir", c.string(), "normality", "--ifs", ifs.string(), "--beta", "golden",
             "--points", "8", "--digits", "200"}) == 0);
  CHECK(slurp(a / "normality.csv") != slurp(c / "normality.csv"));
}

TEST_CASE("cli config precedence and echo") {
  const fs::path d = scratch("cfg");
  const fs::path ifs = write_ifs(d, kCantor);
  const fs::path cfg = d / "cfg.json";
  write_text_file(cfg.string(), json{{"command", "expand"}, {"beta", "2"}, {"x", "1/3"}, {"n", 6}}.dump());
  std::string out;
  CHECK(cli({"--config", cfg.string(), "--out-dir", d.string()}, &out) == 0);
  CHECK(out.rfind("010101\n", 0) == 0);
  CHECK(cli({"--config", cfg.string(), "--out-dir", d.string(), "expand", "--n", "4"}, &out) == 0);
  CHECK(out.rfind("0101\n", 0) == 0);
  const json echo = load_json_file((d / "config.json").string());
  CHECK(echo["n"] == 4);
  CHECK(echo["x"] == "1/3");
  CHECK(echo["seed"] == 1);

  // referenced files are inlined in the echo
  CHECK(cli({"--out-dir", d.string(), "model", "--ifs", ifs.string()}) == 0);
  CHECK(load_json_file((d / "config.json").string())["ifs"]["maps"].size() == 2);
  const json report = load_json_file((d / "model_report.json").string());
  CHECK(report["results"]["weights_preserved"] == true);
  CHECK(report["versions"]["ssnormal"] == kVersion);

  write_text_file(cfg.string(), json{{"command", "expand"}, {"bogus", 1}}.dump());
  CHECK(cli({"--config", cfg.string(), "--out-dir", d.string()}) == 1);
}

TEST_CASE("cli exit codes") {
  const fs::path d = scratch("codes");
  const fs::path ifs = write_ifs(d, kCantor);
  CHECK(cli({"--out-dir", d.string()}) == 1);
  CHECK(cli({"--out-dir", d.string(), "spectrum", "--ifs", ifs.string(), "--beta", "3/2"}) == 1);
  CHECK(cli({"--out-dir", d.string(), "disintegration", "--ifs", ifs.string(), "--n", "500", "--ks-tol",
             "0.0001"}) == 2);
  const json r = load_json_file((d / "disintegration_report.json").string());
  CHECK(r["checks"][0]["pass"] == false);
  CHECK(r["checks"][0]["tolerance"] == 0.0001);
  CHECK(cli({"--out-dir", d.string(), "pisot", "x^2 - x - 1"}) == 0);
  CHECK(load_json_file((d / "pisot_report.json").string())["results"]["pisot"] == true);
}

TEST_CASE("cli parry table") {
  const fs::path d = scratch("parry");
  CHECK(cli({"--out-dir", d.string(), "parry", "--beta", "golden", "--grid", "4"}) == 0);
  std::istringstream csv(slurp(d / "parry.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "x,density,cdf");
  std::getline(csv, line);
  const double dens = std::stod(line.substr(line.find(',') + 1));
  CHECK(std::abs(dens - (5 + 3 * std::sqrt(5.0)) / 10) < 1e-12);
}
