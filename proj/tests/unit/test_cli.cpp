#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bzm/cli/commands.hpp"
#include "bzm/cli/config.hpp"
#include "bzm/cli/experiments.hpp"
#include "bzm/cli/field_io.hpp"
#include "bzm/error.hpp"
#include "bzm/spectral/cutoff.hpp"
#include "bzm/spectral/operators.hpp"

using namespace bzm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bzm_test_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST_CASE("field file round trip") {
  const fs::path dir = scratch("io");
  const Grid g = Grid::make(2, 16, 3.0);
  const Field f = Field::sample(g, 2, [](auto x, int c) { return std::sin(x[0]) + c * x[1]; });
  write_field((dir / "f.bzmf").string(), f);
  const Field back = read_field((dir / "f.bzmf").string());
  CHECK(back.grid() == g);
  REQUIRE(back.components() == 2);
  for (int c = 0; c < 2; ++c) {
    auto a = f.samples(c), b = back.samples(c);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
  const std::string bytes = slurp(dir / "f.bzmf");
  CHECK(bytes.size() == 5 + 4 + 4 + 8 + 4 + 4 + 2 * 256 * 8);
  CHECK(bytes.substr(0, 5) == "BZMF1");

  try {
    read_field((dir / "f.bzmf").string(), Grid::make(2, 32, 3.0));
    FAIL("expected a mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::format_mismatch);
    const std::string msg = e.what();
    CHECK(msg.find("16") != std::string::npos);
    CHECK(msg.find("32") != std::string::npos);
  }
  {
    std::ofstream bad(dir / "bad.bzmf", std::ios::binary);
    bad << "BZMF2" << bytes.substr(5);
  }
  CHECK_THROWS_AS(read_field((dir / "bad.bzmf").string()), Error);
  {
    std::ofstream cut(dir / "cut.bzmf", std::ios::binary);
    cut << bytes.substr(0, bytes.size() - 8);
  }
  try {
    read_field((dir / "cut.bzmf").string());
    FAIL("expected truncation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::truncated_file);
  }
  try {
    read_field((dir / "none.bzmf").string());
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io_error);
  }
}

TEST_CASE("config parsing") {
  const Config c = Config::parse("# comment\nseed = 7\n[grid]\nn = 32  # trailing\n[kappa]\nform = constant\n");
  CHECK(c.integer("seed", 0) == 7);
  CHECK(c.integer("grid.n", 64) == 32);
  CHECK(c.text("kappa.form", "") == "constant");
  CHECK(c.number("grid.period", 2.0) == 2.0);
  CHECK(c.effective().at("grid.period") == "2");
  CHECK(c.unused().empty());

  const Config extra = Config::parse("a = 1\nb = 2\n");
  extra.integer("a", 0);
  CHECK(extra.unused() == std::vector<std::string>{"b"});

  for (const char* bad : {"n 32\n", "[grid\n", "a = 1\na = 2\n", " = 3\n"}) {
    try {
      Config::parse(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::config_parse_error);
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  }
  const Config typed = Config::parse("x = abc\nk = 1, z\n");
  CHECK_THROWS_AS(typed.number("x", 0.0), Error);
  CHECK_THROWS_AS(typed.integers("k", {}), Error);
  CHECK(Config::parse("t = inf\n").number("t", 0.0) == INFINITY);
}

TEST_CASE("norm command on a single mode") {
  const fs::path dir = scratch("norm");
  Config cfg = Config::parse(
      "[grid]\nn = 32\n[field]\nprofile = cos-mode\nk = 4, 0\namplitude = 1\noffset = 0\n[besov]\ns = 1\np = 2\nr = 1\n");
  REQUIRE(run_command("norm", cfg, std::nullopt, dir.string()) == 0);
  const auto rows = read_csv(dir / "norm.csv");
  REQUIRE(rows.size() == 2);
  // cos(4x) has mean-square 1/2 and splits between the blocks whose annuli contain 4
  double expect = 0.0;
  for (int j = 0; j <= 4; ++j) expect += std::ldexp(1.0, j) * standard_cutoff().phi(std::ldexp(4.0, -j));
  expect *= std::sqrt(0.5);
  CHECK(std::stod(rows[1][3]) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(std::stod(rows[1][4]) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  const auto m = manifest(dir);
  CHECK(m["status"] == "ok");
  CHECK(m["config"]["besov.s"] == "1");
}

TEST_CASE("decompose reconstructs") {
  const fs::path dir = scratch("decompose");
  Config cfg = Config::parse("[grid]\nn = 64\n[field]\nprofile = random\nkmax = 20\namplitude = 1\n");
  REQUIRE(run_command("decompose", cfg, 5, dir.string()) == 0);
  const auto m = manifest(dir);
  CHECK(m["summary"]["reconstruction_error"].get<double>() <= 1e-12);
  CHECK(read_csv(dir / "blocks.csv").size() == m["summary"]["blocks"].get<std::size_t>() + 1);
}

TEST_CASE("solve on a steady state") {
  const fs::path dir = scratch("solve");
  Config cfg = Config::parse("[grid]\nn = 32\n[solver]\nT = 0.05\ndt = 0.005\nstride = 2\n");
  REQUIRE(run_command("solve", cfg, std::nullopt, dir.string()) == 0);
  const auto rows = read_csv(dir / "timeseries.csv");
  REQUIRE(rows.size() == 7);
  const auto& head = rows[0];
  int interior = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < head.size(); ++c) {
      if (head[c].rfind("res_", 0) == 0 && !rows[i][c].empty()) {
        CHECK(std::abs(std::stod(rows[i][c])) <= 1e-12);
        ++interior;
      }
    }
  }
  CHECK(interior == 4 * 4);
  const Field rho = read_field((dir / "rho_final.bzmf").string());
  CHECK(max_sample(rho) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(min_sample(rho) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("bony-check is deterministic") {
  const Config cfg = Config::parse("[ensemble]\nsamples = 6\nn = 64\n");
  const fs::path a = scratch("bony_a"), b = scratch("bony_b"), c = scratch("bony_c");
  ::setenv("BZM_THREADS", "1", 1);
  REQUIRE(run_command("bony-check", cfg, 11, a.string()) == 0);
  ::setenv("BZM_THREADS", "4", 1);
  REQUIRE(run_command("bony-check", cfg, 11, b.string()) == 0);
  REQUIRE(run_command("bony-check", cfg, 12, c.string()) == 0);
  ::unsetenv("BZM_THREADS");
  CHECK(slurp(a / "bony.csv") == slurp(b / "bony.csv"));
  CHECK(slurp(a / "bony.csv") != slurp(c / "bony.csv"));
  CHECK(manifest(a)["summary"]["max_defect"].get<double>() <= 1e-10);
  CHECK(manifest(b)["threads"] == 4);
}

TEST_CASE("inequality-probe command") {
  const fs::path dir = scratch("probe");
  const Config cfg = Config::parse("[ensemble]\nsamples = 2\nn = 32, 64\nkmax = 8\n[probe]\nids = prod_para, comm_basic\n");
  REQUIRE(run_command("inequality-probe", cfg, 3, dir.string()) == 0);
  CHECK(read_csv(dir / "probe.csv").size() == 1 + 2 * 2 * 2);
  const auto m = manifest(dir);
  CHECK(std::isfinite(m["summary"]["inequalities"]["prod_para"]["growth"].get<double>()));
}

TEST_CASE("failures and continuation exit codes") {
  const fs::path bad = scratch("bad");
  CHECK(run_command("solve", Config::parse("[rho]\nprofile = nope\n"), std::nullopt, bad.string()) == 1);
  CHECK(manifest(bad)["status"] == "error");
  CHECK(run_command("frobnicate", Config{}, std::nullopt, scratch("unknown").string()) == 1);

  const fs::path cont = scratch("continuation");
  const Config cfg = Config::parse(
      "[grid]\nn = 32\n[u]\nprofile = taylor-green\namplitude = 0.5\n[solver]\nT = 0.1\ndt = 0.005\n"
      "[monitor]\nthreshold = 1e-3\n");
  CHECK(run_command("continuation", cfg, std::nullopt, cont.string()) == 2);
  const auto m = manifest(cont);
  CHECK(m["status"] == "continuation-triggered");
  CHECK(m["summary"]["triggered"] == true);
  CHECK(fs::exists(cont / "monitor.csv"));
}

TEST_CASE("picard command") {
  const fs::path dir = scratch("picard");
  const Config cfg = Config::parse(
      "[grid]\nn = 16\n[rho]\nprofile = small\namplitude = 0.05\n[u]\nprofile = small\namplitude = 0.05\n"
      "[picard]\nT_star = 0.02\ndt = 0.005\nn_max = 4\n");
  REQUIRE(run_command("picard", cfg, std::nullopt, dir.string()) == 0);
  const auto rows = read_csv(dir / "picard.csv");
  CHECK(rows.size() >= 2);
  CHECK(rows[0][1] == "B");
}
