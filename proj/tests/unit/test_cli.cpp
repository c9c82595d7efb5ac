#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stabma/cli.hpp"
#include "stabma/errors.hpp"
#include "stabma/io.hpp"

using namespace stabma;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "stabma_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("synth writes the paper-sized CSV") {
    const auto file = scratch_dir() / "p.csv";
    const auto r = run({"synth", "--kernel", "rev_ou", "--lambda", "1", "--alpha", "1.8", "--omega",
                        "512", "--Omega", "7", "--n", "7392", "--seed", "42", "--out", file.string()});
    REQUIRE(r.code == 0);
    const std::string text = slurp(file);
    CHECK(text.rfind("index,t,value\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7393);
    CHECK(text.find('\r') == std::string::npos);
    const Path p = io::read_csv(file.string());
    CHECK(p.values.size() == 7392);
    CHECK(p.start_index == 1);
    CHECK(p.dt == 1.0);
  }

  TEST_CASE("identical command lines give identical bytes") {
    const std::vector<std::string> base{"synth", "--kernel", "extime", "--alpha", "1.6", "--omega",
                                        "8", "--Omega", "16", "--n", "500", "--seed", "3"};
    for (const std::string fmt : {"csv", "json"}) {
      auto args = base;
      args.insert(args.end(), {"--format", fmt});
      const auto a = run(args);
      const auto b = run(args);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
    }
    std::vector<std::string> bound{"bound", "--kernel", "lfsn", "--alpha", "1.8", "--omega", "64",
                                   "--Omega", "64"};
    CHECK(run(bound).out == run(bound).out);
  }

  TEST_CASE("CSV round trip keeps every digit") {
    Path p;
    p.start_index = 1;
    p.values = {0.1, -1.0 / 3.0, 6.02214076e23, -2.2250738585072014e-308, 1e-300, 0.0, 123456789.123456789};
    const Path q = io::parse_csv(io::to_csv(p));
    CHECK(q.values == p.values);
    CHECK(io::to_csv(q) == io::to_csv(p));

    const auto r = run({"synth", "--kernel", "lfsn", "--H", "0.7", "--alpha", "1.8", "--omega", "4",
                        "--Omega", "32", "--n", "300", "--seed", "9"});
    REQUIRE(r.code == 0);
    const Path s = io::parse_csv(r.out);
    CHECK(io::to_csv(s) == r.out);
  }

  TEST_CASE("bound report for extime") {
    const auto r = run({"bound", "--kernel", "extime", "--alpha", "1.8", "--omega", "104", "--Omega",
                        "175504", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("err_scale_alpha_norm").get<double>() == doctest::Approx(0.074).epsilon(0.05));
    CHECK(j.at("command") == "bound");
    CHECK(j.at("Omega") == 175504);
    CHECK(j.contains("tool_version"));
    CHECK_FALSE(j.contains("timing_seconds"));
    // Keys come out in lexicographic order.
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(std::is_sorted(keys.begin(), keys.end()));
  }

  TEST_CASE("bound reports both reverse OU formulas") {
    const auto r = run({"bound", "--kernel", "rev_ou", "--lambda", "1", "--alpha", "1.8", "--omega",
                        "512", "--Omega", "7"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("err_scale_alpha_norm").get<double>() == doctest::Approx(0.0018).epsilon(0.15));
    CHECK(j.contains("generic_err_scale_alpha_norm"));
    const auto f = run({"bound", "--kernel", "exfrequency", "--alpha", "1.8", "--omega", "5000",
                        "--Omega", "877"});
    REQUIRE(f.code == 0);
    const auto jf = nlohmann::json::parse(f.out);
    CHECK(jf.at("err_scale_alpha_norm").get<double>() <= 2.172);
    CHECK(jf.contains("generic_status"));
  }

  TEST_CASE("tune") {
    const auto r = run({"tune", "--kernel", "lfsn", "--alpha", "1.8", "--H", "0.5", "--omega", "1024"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("Omega") == 1024);
    const auto e = run({"tune", "--kernel", "extime", "--alpha", "1.8", "--omega", "104"});
    REQUIRE(e.code == 0);
    CHECK(nlohmann::json::parse(e.out).at("Omega_asymptotic_seed").get<double>() ==
          doctest::Approx(175504).epsilon(0.01));
  }

  TEST_CASE("multisynth and svg") {
    const auto dir = scratch_dir();
    const auto r = run({"multisynth", "--kernel", "rev_ou", "--lambda", "0.5", "--omega", "8", "--Omega",
                        "8", "--n", "400", "--seed", "1", "--alpha-grid", "16", "--renormalize",
                        "--out", (dir / "m.csv").string()});
    REQUIRE(r.code == 0);
    CHECK(io::read_csv((dir / "m.csv").string()).values.size() == 400);
    const auto s = run({"multisynth", "--kernel", "extime", "--omega", "4", "--Omega", "8", "--n",
                        "200", "--seed", "1", "--alpha-fn", "table:1:1.3,200:1.9", "--format", "svg"});
    REQUIRE(s.code == 0);
    CHECK(s.out.rfind("<svg", 0) == 0);
    CHECK(s.out.find("<polyline") != std::string::npos);
    const auto j = run({"synth", "--kernel", "extime", "--alpha", "1.7", "--omega", "4", "--Omega", "8",
                        "--n", "50", "--seed", "1", "--integrate", "--format", "json"});
    REQUIRE(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.at("integrated") == "true");
    CHECK(parsed.at("values").size() == 50);
  }

  TEST_CASE("check") {
    const auto r = run({"check", "--kernel", "rev_ou", "--alpha", "1.8"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("converges") == true);
    CHECK(j.at("kernel_alpha_norm").get<double>() == doctest::Approx(std::pow(1.0 / 1.8, 1.0 / 1.8)).epsilon(1e-8));
  }

  TEST_CASE("validation errors exit 1 with a diagnostic") {
    const std::vector<std::string> ok{"--alpha", "1.8", "--omega", "4", "--Omega", "4", "--n", "10"};
    auto with = [&](std::vector<std::string> head, std::vector<std::string> tail) {
      head.insert(head.end(), tail.begin(), tail.end());
      return run(head);
    };
    auto r = with({"synth", "--kernel", "gauss", "--seed", "1"}, ok);
    CHECK(r.code == 1);
    CHECK(r.err.find("unknown kernel") != std::string::npos);
    CHECK(with({"synth", "--kernel", "extime"}, ok).code == 1);  // no --seed
    CHECK(run({"synth", "--kernel", "extime", "--alpha", "2.5", "--omega", "4", "--Omega", "4", "--n",
               "10", "--seed", "1"}).code == 1);
    CHECK(with({"synth", "--kernel", "rev_ou", "--lambda", "-1", "--seed", "1"}, ok).code == 1);
    CHECK(with({"synth", "--kernel", "extime", "--lambda", "2", "--seed", "1"}, ok).code == 1);
    CHECK(with({"synth", "--kernel", "extime", "--seed", "1", "--out", "/nonexistent/dir/p.csv"}, ok).code == 1);
    CHECK(run({"bound", "--kernel", "extime", "--alpha", "1.1", "--omega", "4", "--Omega", "4"}).code == 1);
    CHECK(run({"bound", "--kernel", "extime", "--alpha", "1.8", "--omega", "4", "--Omega", "4",
               "--format", "csv"}).code == 1);
    CHECK(run({"multisynth", "--kernel", "extime", "--omega", "4", "--Omega", "4", "--n", "10",
               "--seed", "1", "--alpha-fn", "wavy:3"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("validate runs selected criteria") {
    const auto r = run({"validate", "--criteria", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(run({"validate", "--criteria", "99"}).code == 1);
  }

  TEST_CASE("alpha function specs") {
    CHECK(std::get<ConstantAlpha>(cli::parse_alpha_fn("constant:1.7", 10)).alpha == 1.7);
    const auto l = std::get<LogisticAlpha>(cli::parse_alpha_fn("logistic", 7392));
    CHECK(l.lo == 1.2);
    CHECK(l.hi == 1.85);
    CHECK(l.rate == 0.005);
    CHECK(l.center == 3696.0);
    const auto l2 = std::get<LogisticAlpha>(cli::parse_alpha_fn("logistic:1.1,1.9,0.1,50", 10));
    CHECK(l2.center == 50.0);
    const auto t = std::get<TableAlpha>(cli::parse_alpha_fn("table:0:1.2,10:1.8", 10));
    CHECK(t.knots.size() == 2);
    CHECK_THROWS_AS(cli::parse_alpha_fn("constant:abc", 10), ValidationError);
    CHECK_THROWS_AS(cli::parse_alpha_fn("constant:2.0", 10), ValidationError);
    CHECK_THROWS_AS(cli::parse_alpha_fn("logistic:1.2,1.8", 10), ValidationError);
    CHECK_THROWS_AS(cli::parse_alpha_fn("table:0-1.2", 10), ValidationError);
  }

  TEST_CASE("atomic writes leave no temporaries") {
    const auto dir = scratch_dir() / "atomic";
    fs::remove_all(dir);
    fs::create_directories(dir);
    io::write_file_atomic((dir / "a.txt").string(), "first\n");
    io::write_file_atomic((dir / "a.txt").string(), "second\n");
    CHECK(slurp(dir / "a.txt") == "second\n");
    int files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
    CHECK(files == 1);
  }
}
