#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hexband/cli.hpp"
#include "hexband/report_io.hpp"

using namespace hexband;

namespace {

struct Result {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

const double pi = std::acos(-1.0);

}  // namespace

TEST_CASE("parse_length grammar") {
  CHECK(cli::parse_length("3", "a").to_string() == "3/1");
  CHECK(cli::parse_length(" 6/4 ", "a").to_string() == "3/2");
  CHECK(cli::parse_length("sqrt(2)", "a").is_quadratic());
  CHECK(cli::parse_length("(1+sqrt(5))/2", "a").to_double() == doctest::Approx((1 + std::sqrt(5.0)) / 2));
  CHECK(cli::parse_length("(3-sqrt(2))/7", "a").to_double() == doctest::Approx((3 - std::sqrt(2.0)) / 7));
  CHECK(cli::parse_length("sqrt(9)", "a").to_string() == "3/1");
  CHECK(cli::parse_length("1.25", "a").is_numeric());
  CHECK_THROWS_AS(cli::parse_length("-1", "a"), cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_length("abc", "a"), cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_length("0", "a"), cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_length("(1-sqrt(5))/2", "a"), cli::ConfigError);

  const auto r = cli::ratio_of(cli::parse_length("(1+sqrt(5))/2", "a"), cli::parse_length("1", "b"));
  CHECK(r.is_quadratic());
  const auto s = cli::ratio_of(cli::parse_length("sqrt(8)", "a"), cli::parse_length("sqrt(2)", "b"));
  CHECK(s.to_string() == "2/1");
  CHECK(cli::ratio_of(cli::parse_length("1.5", "a"), cli::parse_length("1", "b")).is_numeric());
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({}).code == cli::kConfigError);
  CHECK(run({"bands", "--a", "0", "--b", "1", "--c", "1"}).code == cli::kConfigError);
  CHECK(run({"bands", "--a", "-1", "--b", "1", "--c", "1"}).code == cli::kConfigError);
  CHECK(run({"bands", "--a", "1", "--b", "1", "--c", "1", "--samples", "1"}).code == cli::kConfigError);
  CHECK(run({"bands", "--a", "1", "--b", "1", "--c", "1", "--bogus", "1"}).code == cli::kConfigError);
  CHECK(run({"bands", "--a", "1", "--b", "1", "--c", "1", "--format", "xml"}).code == cli::kConfigError);

  const auto numeric = run({"bands", "--a", "1e308", "--b", "1", "--c", "1", "--kmax", "10", "--samples", "101"});
  CHECK(numeric.code == cli::kNumericError);
  CHECK(numeric.err.find("numeric error") != std::string::npos);

  const auto ok = run({"verify", "--suite", "det", "--det-samples", "50"});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.json()["pass"] == true);
  const auto fail = run({"verify", "--suite", "det", "--det-samples", "50", "--det-tol", "0"});
  CHECK(fail.code == cli::kVerifyFailure);
  CHECK(fail.json()["pass"] == false);
}

TEST_CASE("verify suites pass on defaults") {
  const auto r = run({"verify", "--suite", "all", "--det-samples", "200", "--envelope-samples", "5",
                      "--trig-samples", "60", "--grid-n", "256"});
  REQUIRE(r.code == cli::kOk);
  const Json j = r.json();
  CHECK(j["suites"].size() == 3);
  for (const auto& s : j["suites"]) CHECK(s["max_deviation"].get<double>() <= s["tolerance"].get<double>());
}

TEST_CASE("config file fills unset flags; flags win") {
  const std::string cfg =
      temp_file("hexband_test_cfg.json", R"({"a": "1", "b": 1, "c": "1", "alpha": 1.0, "kmax": 7, "samples": 301})");
  const auto from_file = run({"bands", "--config", cfg});
  REQUIRE(from_file.code == cli::kOk);
  CHECK(from_file.json()["input"]["alpha"] == 1.0);
  CHECK(from_file.json()["window"]["param_hi"] == 7.0);
  CHECK(from_file.json()["meta"]["n_samples"] == 301);

  const auto overridden = run({"bands", "--config", cfg, "--alpha", "2"});
  REQUIRE(overridden.code == cli::kOk);
  CHECK(overridden.json()["input"]["alpha"] == 2.0);
  CHECK(overridden.json()["meta"]["n_samples"] == 301);

  const std::string bad = temp_file("hexband_test_bad.json", R"({"a": 1, "b": 1, "c": 1, "nonsense": 3})");
  const auto r = run({"bands", "--config", bad});
  CHECK(r.code == cli::kConfigError);
  CHECK(r.err.find("nonsense") != std::string::npos);

  const std::string broken = temp_file("hexband_test_broken.json", "{not json");
  CHECK(run({"bands", "--config", broken}).code == cli::kConfigError);
  CHECK(run({"bands", "--config", "/nonexistent/hexband.json"}).code == cli::kConfigError);
}

TEST_CASE("csv output") {
  const auto r = run({"bands", "--a", "1", "--b", "2", "--c", "3", "--kmax", "5", "--samples", "101",
                      "--format", "csv"});
  REQUIRE(r.code == cli::kOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,E,absD,lower,upper,decision");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
  }
  CHECK(rows >= 101);
}

TEST_CASE("output file option") {
  const auto path = (std::filesystem::temp_directory_path() / "hexband_test_out.json").string();
  std::filesystem::remove(path);
  const auto r = run({"bands", "--a", "1", "--b", "1", "--c", "1", "--kmax", "4", "--samples", "101",
                      "--output", path});
  REQUIRE(r.code == cli::kOk);
  std::ifstream in(path);
  const Json j = Json::parse(in);
  CHECK(j["command"] == "bands");
}

TEST_CASE("json is deterministic and round-trips") {
  const std::vector<std::string> args{"bands", "--a", "1", "--b", "(1+sqrt(5))/2", "--c", "2/3", "--alpha", "2.5",
                                      "--kmax", "12", "--samples", "3001"};
  const auto one = run(args);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "1"});
  const auto two = run(threaded);
  REQUIRE(one.code == cli::kOk);
  CHECK(one.out == run(args).out);
  CHECK(one.out == two.out);

  const Json j = one.json();
  CHECK(j["schema_version"] == kSchemaVersion);
  const SpectrumReport report = spectrum_report_from_json(j);
  Json again = to_json(report);
  for (const auto& [key, value] : again.items()) CHECK(j[key] == value);
  CHECK_FALSE(report.bands.empty());
  CHECK_FALSE(report.gaps.empty());
}

TEST_CASE("bands with the negative branch") {
  const auto r = run({"bands", "--a", "1", "--b", "1", "--c", "1", "--alpha", "-6.5", "--kmax", "4",
                      "--samples", "401", "--negative", "--kappa-samples", "2001"});
  REQUIRE(r.code == cli::kOk);
  const Json j = r.json();
  REQUIRE(j.contains("negative"));
  CHECK(j["negative"]["meta"]["gap_adjacent_to_zero"] == true);

  const auto s = run({"bands", "--a", "1", "--b", "1", "--c", "1", "--alpha", "-5.5", "--kmax", "4",
                      "--samples", "401", "--negative", "--kappa-samples", "2001"});
  REQUIRE(s.code == cli::kOk);
  CHECK(s.json()["negative"]["meta"]["gap_adjacent_to_zero"] == false);
}

TEST_CASE("classify") {
  const auto r = run({"classify", "--a", "3/2", "--b", "1", "--c", "1"});
  REQUIRE(r.code == cli::kOk);
  const Json j = r.json();
  CHECK(j["classification"]["kind"] == "Rational");
  CHECK(j["classification"]["note"].get<std::string>().find("any alpha") != std::string::npos);

  const auto g = run({"classify", "--a", "(1+sqrt(5))/2", "--b", "1", "--c", "1", "--alpha", "6"});
  REQUIRE(g.code == cli::kOk);
  const Json k = g.json();
  CHECK(k["classification"]["kind"] == "BadlyApproximable");
  CHECK(k["classification"]["gamma_lower"].get<double>() == doctest::Approx(1 / std::sqrt(5.0)).epsilon(0.05));
  CHECK(k["continued_fraction"]["period"]["start"] == 1);
  CHECK(k["continued_fraction"]["period"]["length"] == 1);

  const auto n = run({"classify", "--a", "1.7182818", "--b", "1", "--c", "1"});
  REQUIRE(n.code == cli::kOk);
  CHECK(n.json()["classification"]["kind"] == "UnknownNumeric");
}

TEST_CASE("flatbands") {
  const auto r = run({"flatbands", "--a", "1", "--b", "2", "--c", "3", "--n-max", "2"});
  REQUIRE(r.code == cli::kOk);
  const Json j = r.json();
  CHECK(j["witness"]["exact"] == true);
  CHECK(j["witness"]["d"] == 1.0);
  REQUIRE(j["flat_bands"].size() == 2);
  CHECK(j["flat_bands"][0]["k"].get<double>() == doctest::Approx(2 * pi));
  CHECK(j["flat_bands"][1]["k"].get<double>() == doctest::Approx(4 * pi));
  for (const auto& f : j["flat_bands"]) CHECK(f["residual"].get<double>() <= 1e-12);

  const auto half = run({"flatbands", "--a", "1/2", "--b", "3/2", "--c", "1", "--n-max", "1"});
  REQUIRE(half.code == cli::kOk);
  CHECK(half.json()["witness"]["d"] == 0.5);
  CHECK(half.json()["flat_bands"][0]["k"].get<double>() == doctest::Approx(4 * pi));

  const auto none = run({"flatbands", "--a", "1", "--b", "sqrt(2)", "--c", "1"});
  CHECK(none.code == cli::kOk);
  CHECK(none.json()["flat_bands"].empty());
  CHECK_FALSE(none.err.empty());

  const auto fl = run({"flatbands", "--a", "0.5", "--b", "1.5", "--c", "1", "--n-max", "1"});
  REQUIRE(fl.code == cli::kOk);
  CHECK(fl.json()["witness"]["exact"] == false);
  CHECK(fl.json()["witness"]["d"] == 0.5);
}

TEST_CASE("gaps attribution") {
  const auto eq = run({"gaps", "--a", "1", "--b", "1", "--c", "1", "--alpha", "3", "--kmin", "3",
                       "--kmax", "20", "--samples", "4001"});
  REQUIRE(eq.code == cli::kOk);
  const Json je = eq.json();
  REQUIRE_FALSE(je["gaps"].empty());
  for (const auto& g : je["gaps"]) CHECK(g["attribution"] == "GC1");

  const auto desk = run({"gaps", "--a", "2", "--b", "1", "--c", "1", "--alpha", "4", "--kmax", "3",
                         "--samples", "2001"});
  REQUIRE(desk.code == cli::kOk);
  bool gc2_near = false;
  const Json jd = desk.json();
  for (const auto& g : jd["gaps"]) {
    const double lo = g["param_lo"], hi = g["param_hi"];
    if (g["attribution"] == "GC2" && lo < pi / 2 && hi > pi / 2 - 0.2) gc2_near = true;
  }
  CHECK(gc2_near);

  const auto kirchhoff = run({"gaps", "--a", "2", "--b", "1", "--c", "1", "--alpha", "0", "--kmax", "10",
                              "--samples", "2001"});
  REQUIRE(kirchhoff.code == cli::kOk);
  const Json jk = kirchhoff.json();
  for (const auto& g : jk["gaps"]) CHECK(g["attribution"] != "GC2");

  const auto golden = run({"gaps", "--a", "(1+sqrt(5))/2", "--b", "1", "--c", "1", "--alpha", "6",
                           "--kmax", "45", "--samples", "40001"});
  REQUIRE(golden.code == cli::kOk);
  const Json jg = golden.json();
  CHECK(jg["predicted_centers"].size() >= 3);
  std::size_t matched = 0;
  for (const auto& g : jg["gaps"]) matched += g["predicted_center"].is_null() ? 0 : 1;
  CHECK(matched >= 3);
}
