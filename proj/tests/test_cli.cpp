#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "commands.hpp"
#include "config.hpp"
#include "cradle/errors.hpp"
#include "output.hpp"

using namespace cradle::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("cradle-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

// Data rows (metadata and header skipped), split on commas.
std::vector<std::vector<std::string>> rows(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  std::vector<std::vector<std::string>> out;
  int n = 0;
  while (std::getline(in, line)) {
    if (n++ < 2) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

double parse(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

RunConfig config(const std::string& text) { return build_config(parse_ini(text)); }

int run_tool(const std::string& args) {
  const std::string cmd = std::string(CRADLE_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kTrapConfig = R"(
[chain]
kind = gaussian-trap
M = 100
tau = 1
center = 50
width = 110

[state]
kind = gaussian
center = 20
width = 10
)";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("ini parsing and diagnostics") {
    const auto ini = parse_ini("# comment\n[chain]\nkind = uniform\n  M=3 \n; other\ntau = 1\n");
    CHECK(ini.sections.at("chain").at("M").value == "3");
    CHECK(ini.sections.at("chain").at("M").line == 4);

    try {
      parse_ini("[chain]\nkind = uniform\nkind = pst\n");
      FAIL("duplicate key accepted");
    } catch (const ConfigError& e) {
      CHECK(e.key() == "chain.kind");
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_ini("M = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_ini("[chain\n"), ConfigError);
    CHECK_THROWS_AS(parse_ini("[chain]\njunk\n"), ConfigError);
  }

  TEST_CASE("validation names the offending key") {
    auto expect_key = [](const std::string& text, const std::string& key) {
      try {
        config(text);
        FAIL("accepted: " << text);
      } catch (const ConfigError& e) {
        CHECK(e.key() == key);
        CHECK(std::string(e.what()).find(key) != std::string::npos);
      }
    };
    expect_key("[chain]\nkind = uniform\nM = 3\ntau = 1\nx = 0.5\n", "chain.x");
    expect_key("[chain]\nkind = uniform\nM = 3\n", "chain.tau");
    expect_key("[chain]\nkind = uniform\nM = three\ntau = 1\n", "chain.M");
    expect_key("[chain]\nkind = spiral\n", "chain.kind");
    expect_key("[chain]\nkind = edge\nM = 6\ntau = 1\nx = 1.5\n", "chain.x");
    expect_key("[chain]\nkind = custom\ncouplings = 1, 2\noffsets = 0, 0\n", "chain.offsets");
    expect_key("[chain]\nkind = uniform\nM = 3\ntau = 1\n[state]\nkind = kick\nsite = 4\n", "state.site");
    expect_key("[state]\nkind = kick\nsite = 1\n", "state");
    expect_key("[tune]\nmode = triple\nM = 10\ntau = 1\n", "tune.mode");
    expect_key("[hubbard]\nM = 3\nhopping = 1\nU = -2\n", "hubbard.U");
    expect_key("[output]\nprecision = 18\n", "output.precision");
    expect_key("[plot]\nwidth = 3\n", "plot");
  }

  TEST_CASE("overrides and hash") {
    auto ini = parse_ini("[chain]\nkind = uniform\nM = 3\ntau = 1\n");
    const auto h0 = config_hash(ini);
    apply_override(ini, "chain.M=4");
    CHECK(ini.sections.at("chain").at("M").value == "4");
    CHECK(config_hash(ini) != h0);
    CHECK(build_config(ini).chain->spec.sites() == 4);
    CHECK_THROWS_AS(apply_override(ini, "M=4"), ConfigError);
    CHECK_THROWS_AS(apply_override(ini, "chain.M"), ConfigError);

    // hash ignores formatting and order
    const auto a = parse_ini("[chain]\nkind=uniform\nM=3\ntau=1\n");
    const auto b = parse_ini("# x\n[chain]\ntau = 1\n  M = 3\nkind = uniform\n");
    CHECK(config_hash(a) == config_hash(b));
  }

  TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.0 * std::cos(0.3), 1e-300, 6.02214076e23, -0.0}) {
      CHECK(parse(format_real(v, 17)) == v);
    }
    CHECK(format_real(0.5, 17) == "0.5");
  }

  TEST_CASE("spectrum: uniform M = 3 and a single site") {
    const auto dir = scratch("spectrum3");
    cmd_spectrum(config("[chain]\nkind = uniform\nM = 3\ntau = 1\n"), dir, ComputeCaps::defaults());
    const auto r = rows(dir / "spectrum.csv");
    REQUIRE(r.size() == 3);
    CHECK(r[0].size() == 2);
    CHECK(parse(r[0][1]) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(parse(r[1][1])) < 1e-14);
    CHECK(parse(r[2][1]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(slurp(dir / "spectrum.csv").rfind("# tool=cradle-", 0) == 0);

    const auto one = scratch("spectrum1");
    cmd_spectrum(config("[chain]\nkind = uniform\nM = 1\ntau = 1\n"), one, ComputeCaps::defaults());
    CHECK(rows(one / "spectrum.csv").size() == 1);
  }

  TEST_CASE("spectrum with overlaps for the trap configuration") {
    const auto dir = scratch("trap");
    cmd_spectrum(config(kTrapConfig), dir, ComputeCaps::defaults());
    const auto r = rows(dir / "spectrum.csv");
    REQUIRE(r.size() == 100);
    double sum = 0.0;
    for (const auto& row : r) sum += parse(row[2]);
    CHECK(std::abs(sum - 1.0) < 1e-10);
    CHECK(slurp(dir / "spectrum.csv").find("trap_sign=-1") != std::string::npos);
  }

  TEST_CASE("evolve writes consistent grids") {
    const auto dir = scratch("evolve");
    const auto rc = config(std::string(kTrapConfig) + "[evolve]\nt_max = 400\nsteps = 81\n");
    cmd_evolve(rc, dir, ComputeCaps::defaults());
    const auto matrix = rows(dir / "grid_matrix.csv");
    const auto longform = rows(dir / "grid.csv");
    REQUIRE(matrix.size() == 81);
    REQUIRE(longform.size() == 81 * 100);
    for (const auto& row : matrix) {
      REQUIRE(row.size() == 100);
      double sum = 0.0;
      for (const auto& c : row) sum += parse(c);
      CHECK(std::abs(sum - 1.0) < 1e-9);
      CHECK(parse(row[0]) + parse(row[99]) < 1e-3);
    }
    CHECK(parse(longform[100 + 5][2]) == parse(matrix[1][5]));
    CHECK(longform[100 + 5][1] == "6");
  }

  TEST_CASE("identical configs give byte-identical files") {
    const auto a = scratch("same-a");
    const auto b = scratch("same-b");
    const auto rc = config("[chain]\nkind = pst\nM = 12\nomega = 0.5\n[state]\nkind = kick\nsite = 1\n"
                           "[evolve]\nt_max = 6.283185307179586\nsteps = 50\n");
    cmd_evolve(rc, a, ComputeCaps::defaults());
    cmd_evolve(rc, b, ComputeCaps::defaults());
    CHECK(slurp(a / "grid.csv") == slurp(b / "grid.csv"));
    CHECK(slurp(a / "grid_matrix.csv") == slurp(b / "grid_matrix.csv"));
  }

  TEST_CASE("grid cap") {
    const auto rc = config(std::string(kTrapConfig) + "[evolve]\nt_max = 400\nsteps = 5000\n");
    CHECK_THROWS_AS(cmd_evolve(rc, scratch("cap"), ComputeCaps::defaults()), cradle::TooLargeError);
    CHECK_NOTHROW(cmd_evolve(rc, scratch("nocap"), ComputeCaps::unlimited()));
  }

  TEST_CASE("tune with a single grid point") {
    const auto dir = scratch("tune1");
    cmd_tune(config("[tune]\nmode = single\nM = 20\ntau = 1\npoints = 1\n"), dir, ComputeCaps::defaults());
    CHECK(rows(dir / "tune.csv").size() == 1);
    const auto best = rows(dir / "tune_best.csv");
    REQUIRE(best.size() == 1);
    CHECK(parse(best[0][0]) == 1.0);
    CHECK(best[0][3] == "1");
  }

  TEST_CASE("oracle runs") {
    const auto dir = scratch("oracle");
    cmd_oracle(config("[hubbard]\nM = 2\nhopping = 1\nU = 20\nsamples = 5\n"), dir, ComputeCaps::defaults());
    CHECK(slurp(dir / "oracle.csv").find("basis_dim=4 ") != std::string::npos);
    CHECK(slurp(dir / "oracle.csv").find("tau_convention=2*t0*t1/U") != std::string::npos);

    const auto frozen = scratch("frozen");
    cmd_oracle(config("[hubbard]\nM = 3\nhopping = 0\nU = 20\nsamples = 4\n"), frozen, ComputeCaps::defaults());
    for (const auto& r : rows(frozen / "oracle.csv")) {
      CHECK(std::abs(parse(r[1])) < 1e-12);
      CHECK(std::abs(parse(r[2])) < 1e-12);
    }

    CHECK_THROWS_AS(cmd_oracle(config("[hubbard]\nM = 6\nhopping = 1\nU = 20\n"), scratch("big"),
                               ComputeCaps::defaults()),
                    cradle::TooLargeError);
  }

  TEST_CASE("atomic write leaves nothing behind on failure") {
    const auto dir = scratch("atomic");
    const auto missing = dir / "no-such-dir" / "out.csv";
    CHECK_THROWS_AS(write_atomic(missing, "x"), IoError);
    CHECK_FALSE(fs::exists(missing));
    write_atomic(dir / "ok.csv", "abc\n");
    CHECK(slurp(dir / "ok.csv") == "abc\n");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
    CHECK(files == 1);
  }

  TEST_CASE("exit codes") {
    const auto dir = scratch("exit");
    spit(dir / "good.ini", "[chain]\nkind = uniform\nM = 4\ntau = 1\n");
    spit(dir / "bad.ini", "[chain]\nkind = uniform\nM = 4\ntau = 1\ncolour = red\n");
    spit(dir / "big.ini", "[hubbard]\nM = 6\nhopping = 1\nU = 30\n");
    const auto out = (dir / "out").string();
    CHECK(run_tool("spectrum --config " + (dir / "good.ini").string() + " --out " + out) == 0);
    CHECK(fs::exists(dir / "out" / "spectrum.csv"));
    CHECK(run_tool("spectrum --config " + (dir / "bad.ini").string() + " --out " + out) == 2);
    CHECK(run_tool("spectrum --config " + (dir / "good.ini").string() + " --out " + out +
                   " --override chain.M=zero") == 2);
    CHECK(run_tool("spectrum --bogus") == 2);
    CHECK(run_tool("oracle --config " + (dir / "big.ini").string() + " --out " + out) == 3);
    CHECK(run_tool("spectrum --config " + (dir / "missing.ini").string() + " --out " + out) == 4);
    spit(dir / "blocker", "not a directory");
    CHECK(run_tool("spectrum --config " + (dir / "good.ini").string() + " --out " + (dir / "blocker" / "x").string()) == 4);
    CHECK(run_tool("evolve --config " + (dir / "good.ini").string() + " --out " + out) == 2);
  }
}
