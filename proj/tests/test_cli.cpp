#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "koch/cantor.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

#ifndef KOCHTUBE_BIN
#define KOCHTUBE_BIN ""
#endif

RunResult run_cli(const std::string& args) {
  const char* override_path = std::getenv("KOCHTUBE_BIN_OVERRIDE");
  const std::string bin = override_path ? override_path : KOCHTUBE_BIN;
  REQUIRE_MESSAGE(!bin.empty(), "CLI binary path not configured");
  static int counter = 0;
  const auto tmp = std::filesystem::temp_directory_path();
  const std::string tag =
      std::to_string(::getpid()) + "_" + std::to_string(counter++);
  const auto out_path = tmp / ("kochtube_out_" + tag + ".txt");
  const auto err_path = tmp / ("kochtube_err_" + tag + ".txt");
  const std::string cmd = std::string("\"") + bin + "\" " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("cli: identical invocations produce identical bytes") {
  const std::string args = "tube --count 5 --N 50 --A-max 100 --h-mode approximate";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("epsilon,V,term_G1,term_G2,h", 0) == 0);
  // The largest admissible radius sits on a jump point: that row reports nan.
  CHECK(a.out.find("nan") != std::string::npos);
  CHECK(a.err.find("note: tube h_mode=approximate") != std::string::npos);
}

TEST_CASE("cli: usage and configuration errors are structured") {
  const RunResult bad_cmd = run_cli("frobnicate");
  CHECK(bad_cmd.code == 2);
  CHECK(bad_cmd.err.find("\"error\":") != std::string::npos);
  CHECK(bad_cmd.err.find("usage") != std::string::npos);

  const RunResult bad_grid = run_cli("tube --eps-max 0.6 --count 3");
  CHECK(bad_grid.code == 2);
  CHECK(bad_grid.err.find("\"error\":") != std::string::npos);
  CHECK(bad_grid.err.find("config") != std::string::npos);

  const RunResult bad_fmt = run_cli("coeffs --format csv");
  CHECK(bad_fmt.code == 2);
  CHECK(bad_fmt.err.find("config") != std::string::npos);
}

TEST_CASE("cli: coefficient dump is valid JSON with the right shapes") {
  const RunResult r = run_cli("coeffs --N 10 --M 20");
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("N_max").get<int>() == 10);
  CHECK(j.at("M").get<int>() == 20);
  CHECK(j.at("D").get<double>() == doctest::Approx(1.2618595071429148));
  CHECK(j.at("p").get<double>() == doctest::Approx(5.7192017347602535).epsilon(1e-12));
  for (const char* key : {"a", "b", "sigma", "tau"}) {
    REQUIRE(j.at(key).size() == 21);
    const auto& mid = j.at(key).at(10);
    REQUIRE(mid.at("n").get<int>() == 0);
    REQUIRE(mid.contains("re"));
    REQUIRE(mid.contains("im"));
  }
  CHECK(j.at("beta").size() == 20);
}

TEST_CASE("cli: complex-dimension listing has 2(2n+1) rows") {
  const RunResult r = run_cli("dims --n 3");
  REQUIRE(r.code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 15);  // header + 14 rows
  CHECK(rows[0] == "n,re,im,magnitude,family");
  int d_count = 0, zero_count = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split_csv(rows[i]);
    REQUIRE(cells.size() == 5);
    if (cells[4] == "D") ++d_count;
    if (cells[4] == "0") ++zero_count;
  }
  CHECK(d_count == 7);
  CHECK(zero_count == 7);
}

TEST_CASE("cli: occupancy profile stays inside its ceiling") {
  const RunResult r = run_cli("h-profile");
  REQUIRE(r.code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 102);  // header + 101 samples
  CHECK(rows[0] == "x,h_geometric,h_tilde");
  const double ceiling = koch::mu();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split_csv(rows[i]);
    REQUIRE(cells.size() == 3);
    const double x = std::stod(cells[0]);
    const double hg = std::stod(cells[1]);
    const double ht = std::stod(cells[2]);
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    REQUIRE(hg >= 0.0);
    REQUIRE(hg <= ceiling);
    if (x <= 0.9) REQUIRE(hg < ceiling);
    REQUIRE(ht >= 0.0);
    REQUIRE(ht <= ceiling);
  }
}

TEST_CASE("cli: JSON rows carry full-precision values and diagnostics") {
  const RunResult r = run_cli(
      "tube --eps-min 0.05 --eps-max 0.4 --count 3 --N 50 --A-max 100 "
      "--h-mode approximate --format json");
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("command").get<std::string>() == "tube");
  CHECK(doc.at("truncation").at("N").get<int>() == 50);
  const nlohmann::json& j = doc.at("rows");
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  for (const auto& row : j) {
    REQUIRE(row.at("V").is_number());
    REQUIRE(row.at("V").get<double>() > 0.0);
    REQUIRE(row.at("imag_residue").get<double>() <= 1e-9);
    REQUIRE(row.at("truncation_note").get<std::string>() ==
            "N=50 M=30 A_max=100");
  }
  // Full 17-significant-digit serialization: the epsilon token must carry
  // more digits than a default %g print would.
  const std::string::size_type pos = r.out.find("\"epsilon\":");
  REQUIRE(pos != std::string::npos);
  const std::string tail = r.out.substr(pos + 10, 25);
  int digits = 0;
  for (char c : tail) {
    if (c >= '0' && c <= '9') ++digits;
    if (c == ',' || c == '}') break;
  }
  CHECK(digits >= 15);
}

TEST_CASE("cli: direct subcommand mirrors the tube schema") {
  const RunResult r = run_cli("direct --eps-min 0.05 --eps-max 0.4 --count 3");
  REQUIRE(r.code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "epsilon,V,term_G1,term_G2,h");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(split_csv(rows[i]).size() == 5);
    REQUIRE(std::stod(split_csv(rows[i])[1]) > 0.0);
  }
}

TEST_CASE("cli: compare verdict passes on a coarse grid") {
  const RunResult r = run_cli(
      "compare --eps-min 0.037 --eps-max 0.24 --count 3 --samples 120000 "
      "--seed 5 --N 50 --A-max 100");
  CHECK(r.code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "epsilon,v_direct,v_tube,oracle_mean,oracle_se,bias");
  CHECK(r.err.find("verdict: PASS (3/3 rows") != std::string::npos);
}

TEST_CASE("cli: selftest passes") {
  const RunResult r = run_cli("selftest");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("ok") != std::string::npos);
}
