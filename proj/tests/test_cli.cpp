#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "bergman/cli/config.hpp"
#include "bergman/cli/run.hpp"
#include "bergman/errors.hpp"
#include "doctest.h"

using namespace bergman;
using namespace bergman::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bergman_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Table {
  std::string comment;
  std::vector<std::string> columns;
  std::vector<std::map<std::string, std::string>> rows;
  double num(std::size_t r, const std::string& c) const { return std::stod(rows.at(r).at(c)); }
};

Table read_csv(const fs::path& p) {
  std::ifstream in(p);
  Table t;
  std::string line;
  std::getline(in, t.comment);
  std::getline(in, line);
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  t.columns = split(line);
  while (std::getline(in, line)) {
    const auto cells = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < cells.size(); ++i) row[t.columns.at(i)] = cells[i];
    t.rows.push_back(row);
  }
  return t;
}

nlohmann::json summary(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "summary.json")); }

int run_text(const std::string& text, const fs::path& dir, RunOptions opt = {}) {
  opt.out_dir = dir.string();
  return run(parse_config(text), opt);
}

}  // namespace

TEST_CASE("minimal model config takes the documented defaults") {
  const RunConfig c = parse_config(R"j({"command": "model", "lambda": [-1, 2], "q": 1})j");
  CHECK(c.command == Command::model);
  CHECK(c.degree == 16);
  CHECK(c.q == 1);
  CHECK(c.nu == 0.5);
  CHECK(c.tolerances.model == 1e-4);
  CHECK(c.tolerances.model_zero == 1e-8);
  CHECK(c.tolerances.kernel == 1e-6);
  CHECK(c.tolerances.sandwich == 1e-9);
  CHECK(c.tolerances.residual == 1e-12);
  const auto echo = c.echo();
  CHECK(echo["D"] == 16);
  CHECK(echo["nu"] == 0.5);
  CHECK(echo["tolerances"]["trace"] == 1e-6);
  CHECK(echo["output"] == "bergman-out");

  const RunConfig d = parse_config(R"j({"command": "model", "lambda": [-1, -2, 3]})j");
  CHECK(d.q == 2);
}

TEST_CASE("manifold config with a named preset") {
  const RunConfig c =
      parse_config(R"j({"command": "manifold", "preset": "fubini-study", "d": 1, "k_list": [4, 8]})j");
  REQUIRE(c.preset);
  CHECK(c.preset->name == "fubini-study");
  CHECK(c.preset->d == 1);
  CHECK(c.k_list == std::vector<int>{4, 8});
  CHECK(c.q == 0);

  const RunConfig p = parse_config(R"j({"command": "manifold", "preset": "perturbed(1, -2)"})j");
  CHECK(p.preset->s == -2.0);
  CHECK(p.k_list == std::vector<int>{4, 8, 16, 32});

  const RunConfig a = parse_config(R"j({"command": "manifold", "preset": "anti-fubini-study", "q": 1})j");
  CHECK(a.preset->d == -1);
}

TEST_CASE("semantic violations are validation errors") {
  CHECK_THROWS_AS(parse_config(R"j({"command": "manifold", "k_list": [8, 4]})j"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "manifold", "k_list": [4, 4]})j"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "manifold", "preset": "anti-fubini-study"})j"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "manifold", "preset": "fubini-study", "d": -2})j"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "manifold", "preset": "quartic"})j"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "scaling", "preset": "perturbed(1, 2)"})j"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "model", "lambda": [1, 0]})j"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "model", "lambda": [1], "q": 2})j"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "model", "lambda": [1], "D": 1})j"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "model", "lambda": [-2, 1], "nu": 1})j"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "spectral", "lambda": [-1], "k_list": [64, 256]})j"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"j({"command": "spectral", "lambda": [-1, 1, 1], "k_list": [8, 16, 32]})j"),
                  ValidationError);
  for (const char* v : {"0", "-1e-3"}) {
    const std::string doc =
        std::string(R"j({"command": "model", "lambda": [1], "tolerances": {"model": )j") + v + "}}";
    CHECK_THROWS_AS(parse_config(doc), ValidationError);
  }
}

TEST_CASE("schema violations name the field") {
  auto message = [](const std::string& doc) {
    try {
      parse_config(doc);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"j({"command": "model", "lambda": [-1, "x"]})j").rfind("lambda[1]", 0) == 0);
  CHECK(message(R"j({"command": "model"})j").rfind("lambda", 0) == 0);
  CHECK(message(R"j({"command": "model", "lambda": [1], "k_list": [1]})j").rfind("k_list", 0) == 0);
  CHECK(message(R"j({"command": "model", "lambda": [1], "tolerances": {"speed": 1}})j")
            .rfind("tolerances.speed", 0) == 0);
  CHECK(message(R"j({"command": "manifold", "preset": "torus"})j").rfind("preset", 0) == 0);
  CHECK(message(R"j({"command": "manifold", "preset": "perturbed(1)"})j").rfind("preset", 0) == 0);
  CHECK(message(R"j({"command": "manifold", "k_list": [4.5]})j").rfind("k_list[0]", 0) == 0);
  CHECK(message(R"j({"command": "spectral", "lambda": [1], "grid": {"radial": "many"}})j")
            .rfind("grid.radial", 0) == 0);
  CHECK(message(R"j({"command": "plot"})j").rfind("command", 0) == 0);
  CHECK(message(R"j({"lambda": [1]})j").rfind("command", 0) == 0);
  CHECK(message("[1, 2]").rfind("document", 0) == 0);
  CHECK(message("{\"command\": ").rfind("document", 0) == 0);
  CHECK(message(R"j({"command": "report-all", "manifold": {"preset": "torus"}})j")
            .rfind("manifold.preset", 0) == 0);
}

TEST_CASE("report-all fills every section") {
  const RunConfig c = parse_config(R"j({"command": "report-all", "tolerances": {"kernel": 1e-5},
                                       "scaling": {"k_list": [10, 20]}})j");
  REQUIRE(c.parts.size() == 4);
  CHECK(c.parts[0].command == Command::model);
  CHECK(c.parts[1].command == Command::manifold);
  CHECK(c.parts[1].preset->name == "perturbed");
  CHECK(c.parts[1].k_list == std::vector<int>{16, 32, 64});
  CHECK(c.parts[2].k_list == std::vector<int>{10, 20});
  CHECK(c.parts[3].k_list == std::vector<int>{64, 256, 1024});
  for (const auto& p : c.parts) CHECK(p.tolerances.kernel == 1e-5);
  CHECK_THROWS_AS(parse_config(R"j({"command": "report-all", "spectral": {"command": "model"}})j"),
                  ParseError);
}

TEST_CASE("model run reports the closed form and the Galerkin value") {
  const auto dir = scratch("model");
  CHECK(run_text(R"j({"command": "model", "lambda": [-1, 2, 3], "q": 1})j", dir) == kPassed);
  const auto s = summary(dir);
  const double oracle = 6.0 / std::pow(std::numbers::pi, 3);
  CHECK(std::round(s["values"]["closed_form"].get<double>() * 1e5) / 1e5 == 0.19351);
  CHECK(s["values"]["closed_form"].get<double>() == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(s["values"]["galerkin"].get<double>() == doctest::Approx(oracle).epsilon(1e-6));
  CHECK(s["values"]["abs_diff"].get<double>() <= 1e-4);
  CHECK(s["values"]["pass"] == true);
  CHECK(s["status"] == "pass");
  CHECK(s["config"]["D"] == 16);
  const Table t = read_csv(dir / "model.csv");
  CHECK(t.comment.rfind("# ", 0) == 0);
  CHECK(t.num(0, "closed_form") == doctest::Approx(oracle));
}

TEST_CASE("manifold run on the round sphere") {
  const auto dir = scratch("fs");
  CHECK(run_text(R"j({"command": "manifold", "preset": "fubini-study", "d": 1, "k_list": [8]})j", dir) ==
        kPassed);
  const Table t = read_csv(dir / "kernel.csv");
  CHECK(t.columns == std::vector<std::string>{"k", "q", "point_re", "point_im", "B", "S", "density",
                                              "ratio", "dim", "rhs_integral", "excess"});
  REQUIRE(t.rows.size() == 10);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    CHECK(t.num(r, "B") == doctest::Approx(9.0 / std::numbers::pi).epsilon(1e-9));
    CHECK(std::round(t.num(r, "B") * 1e5) / 1e5 == 2.86479);
    CHECK(t.num(r, "dim") == 9);
  }
  const Table i = read_csv(dir / "integrated.csv");
  CHECK(i.num(0, "trace_integral") == doctest::Approx(9.0).epsilon(1e-9));
  const Table st = read_csv(dir / "strong.csv");
  CHECK(st.num(0, "dim0") == 9);
  const auto s = summary(dir);
  bool saw_kernel = false;
  for (const auto& c : s["checks"]) saw_kernel = saw_kernel || c["name"] == "symmetric_kernel";
  CHECK(saw_kernel);
}

TEST_CASE("scaling run follows the quartic closed form") {
  const auto dir = scratch("scaling");
  CHECK(run_text(R"j({"command": "scaling", "preset": "quartic", "k_list": [100, 10000, 1000000]})j",
                 dir) == kPassed);
  const Table t = read_csv(dir / "scaling.csv");
  CHECK(t.columns == std::vector<std::string>{"k", "deviation_order0", "deviation_order1",
                                              "deviation_order2", "localization_ratio"});
  REQUIRE(t.rows.size() == 3);
  for (std::size_t r = 0; r < 3; ++r) {
    const double k = t.num(r, "k");
    CHECK(t.num(r, "deviation_order0") == doctest::Approx(std::pow(std::log(k), 4) / k).epsilon(1e-9));
  }
  CHECK(std::abs(t.num(2, "localization_ratio") - 1.0) < std::abs(t.num(0, "localization_ratio") - 1.0));
}

TEST_CASE("spectral run writes one table per quantity") {
  const auto dir = scratch("spectral");
  CHECK(run_text(R"j({"command": "spectral", "lambda": [-1], "k_list": [64, 256, 1024],
                     "nu_sweep": [0.25, 0.5, 1.5]})j",
                 dir) == kPassed);
  for (const char* f : {"low_energy.csv", "spectrum.csv", "sequence_peak.csv", "sequence_norm.csv",
                        "sequence_rayleigh.csv", "sequence_laplacian.csv", "sequence_hypothesis.csv",
                        "pairing.csv"}) {
    CHECK(fs::exists(dir / f));
  }
  const Table peak = read_csv(dir / "sequence_peak.csv");
  CHECK(peak.columns == std::vector<std::string>{"k", "value", "contract_bound", "pass"});
  CHECK(peak.num(0, "value") == doctest::Approx(64.0 / std::numbers::pi).epsilon(1e-14));
  const Table low = read_csv(dir / "low_energy.csv");
  CHECK(low.columns == std::vector<std::string>{"nu", "value", "contract_bound", "pass"});
  CHECK(low.num(0, "value") == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-9));
  CHECK(low.num(2, "value") > low.num(1, "value"));
}

TEST_CASE("identical configs give identical bytes") {
  const std::string doc = R"j({"command": "manifold", "preset": "perturbed(1, -2)", "k_list": [4, 8]})j";
  const auto a = scratch("det_a"), b = scratch("det_b");
  RunOptions two;
  two.jobs = 2;
  CHECK(run_text(doc, a) == run_text(doc, b, two));
  for (const auto& entry : fs::directory_iterator(a)) {
    CAPTURE(entry.path().filename().string());
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
}

TEST_CASE("tight tolerances fail checks and zero tolerances are rejected") {
  const auto dir = scratch("tight");
  CHECK(run_text(R"j({"command": "manifold", "k_list": [4], "tolerances": {"trace": 1e-300}})j", dir) ==
        kCheckFailed);
  CHECK(summary(dir)["status"] == "fail");

  const auto cfg = scratch("zero_cfg");
  fs::create_directories(cfg);
  std::ofstream(cfg / "run.json") << R"j({"command": "manifold", "tolerances": {"trace": 0}})j";
  RunOptions opt;
  opt.out_dir = (cfg / "out").string();
  CHECK(run_file((cfg / "run.json").string(), opt) == kConfigError);
  const auto err = nlohmann::json::parse(slurp(cfg / "out" / "error.json"));
  CHECK(err["kind"] == "validation");
  CHECK(err["exit_code"] == kConfigError);
  CHECK(run_file((cfg / "missing.json").string(), opt) == kConfigError);
}

TEST_CASE("module errors produce an error record") {
  const auto dir = scratch("capacity");
  fs::create_directories(dir);
  std::ofstream(dir / "summary.json") << "stale";
  CHECK(run_text(R"j({"command": "spectral", "lambda": [-40], "k_list": [64, 128, 256]})j", dir) ==
        kRuntimeError);
  CHECK_FALSE(fs::exists(dir / "summary.json"));
  const auto err = nlohmann::json::parse(slurp(dir / "error.json"));
  CHECK(err["kind"] == "capacity");
  CHECK(err["status"] == "error");
}

TEST_CASE("strict mode turns warnings into failures") {
  // The round sphere has a positive q = 0 strong margin at every k.
  const std::string doc = R"j({"command": "manifold", "k_list": [4, 8]})j";
  CHECK(run_text(doc, scratch("lenient")) == kPassed);
  RunOptions strict;
  strict.strict = true;
  const auto dir = scratch("strict");
  CHECK(run_text(doc, dir, strict) == kCheckFailed);
  CHECK(summary(dir)["warnings"].size() == 1);
}
