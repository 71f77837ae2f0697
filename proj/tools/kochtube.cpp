// kochtube: evaluation, validation, and plot-data export for the inner
// eps-neighborhood area of the Koch snowflake.
//
// Exit codes: 0 success, 1 validation failure (compare/selftest), 2 usage or
// domain/config error (machine-readable JSON record on stderr).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "koch/cantor.hpp"
#include "koch/constants.hpp"
#include "koch/errorblock.hpp"
#include "koch/errors.hpp"
#include "koch/geometry.hpp"
#include "koch/json_io.hpp"
#include "koch/prelim.hpp"
#include "koch/rng.hpp"
#include "koch/scaling.hpp"
#include "koch/tube.hpp"

namespace {

using namespace koch;

struct Options {
  double eps_min = std::pow(3.0, -4.5);
  double eps_max = std::pow(3.0, -0.5);
  int count = 50;
  int N = 200;
  int M = 30;
  int A_max = 400;
  int K = 60;
  std::string h_mode = "geometric";
  std::int64_t samples = 1000000;
  std::uint64_t seed = 7;
  std::string out_path;        // empty: stdout
  std::string format = "csv";  // csv | json
  int dims_n = 10;
  int profile_count = 101;
};

void add_grid_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--eps-min", o.eps_min, "smallest radius of the log-spaced grid")
      ->capture_default_str();
  cmd->add_option("--eps-max", o.eps_max, "largest radius of the log-spaced grid")
      ->capture_default_str();
  cmd->add_option("--count", o.count, "number of grid points")->capture_default_str();
}

void add_truncation_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--N", o.N, "outer Fourier truncation |n| <= N")->capture_default_str();
  cmd->add_option("--M", o.M, "inner block-series truncation")->capture_default_str();
  cmd->add_option("--A-max", o.A_max, "profile-coefficient range |alpha| <= A_max")
      ->capture_default_str();
  cmd->add_option("--K", o.K, "direct block-sum depth")->capture_default_str();
}

void add_hmode_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--h-mode", o.h_mode, "occupancy profile: geometric | approximate")
      ->check(CLI::IsMember({"geometric", "approximate"}))
      ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, Options& o, const char* default_format = "csv") {
  o.format = default_format;
  cmd->add_option("--out", o.out_path, "output file (default: stdout)");
  cmd->add_option("--format", o.format, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_oracle_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--samples", o.samples, "Monte Carlo samples per radius")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "random stream seed")->capture_default_str();
}

HMode parse_mode(const std::string& s) {
  if (s == "geometric") return HMode::geometric;
  if (s == "approximate") return HMode::approximate;
  throw ConfigError("unknown h-mode: " + s);
}

std::vector<double> make_grid(const Options& o) {
  const double cap = std::pow(3.0, -0.5);
  if (!(o.eps_min > 0.0) || !(o.eps_max <= cap * (1.0 + 1e-12)) || !(o.eps_min <= o.eps_max)) {
    throw ConfigError("grid must satisfy 0 < eps-min <= eps-max <= 3^{-1/2}");
  }
  if (o.count < 1) throw ConfigError("count must be >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(o.count));
  if (o.count == 1) {
    grid.push_back(o.eps_min);
    return grid;
  }
  const double llo = std::log(o.eps_min);
  const double lhi = std::log(std::min(o.eps_max, cap));
  for (int i = 0; i < o.count; ++i) {
    const double t = static_cast<double>(i) / (o.count - 1);
    grid.push_back(i == o.count - 1 ? std::min(o.eps_max, cap) : std::exp(llo + t * (lhi - llo)));
  }
  return grid;
}

void write_output(const Options& o, const std::string& payload) {
  if (o.out_path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file: " + o.out_path);
  f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!f) throw ConfigError("failed writing output file: " + o.out_path);
}

double pointwise_h(HMode mode, double epsilon) {
  return mode == HMode::geometric ? h_geometric(epsilon) : h_tilde(epsilon);
}

void json_row_kv(JsonWriter& jw, const char* k, double v) {
  jw.key(k);
  jw.value(v);
}

// ---------------------------------------------------------------- tube/direct

int run_tube(const Options& o) {
  const HMode mode = parse_mode(o.h_mode);
  const CoefficientTable ct = build_coefficients(o.N, o.M);
  const CantorProfile gp = fourier_g(o.A_max, mode);
  const std::vector<double> grid = make_grid(o);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  struct Row {
    double eps, V, g1, g2, h, imag;
    bool jump;
  };
  std::vector<Row> rows;
  std::string note;
  for (double eps : grid) {
    const EpsilonIndex idx = index_of(eps);
    const double h = pointwise_h(mode, eps);
    if (idx.frac == 0.0) {
      rows.push_back({eps, nan, nan, nan, h, nan, true});
      continue;
    }
    const TubeEvaluation ev = v_tube(eps, ct, gp);
    if (note.empty()) note = ev.truncation_note();
    rows.push_back({eps, ev.V, ev.term_G1, ev.term_G2, h, ev.imag_residue, false});
  }
  if (note.empty()) note = "N=" + std::to_string(o.N) + " M=" + std::to_string(o.M) +
                           " A_max=" + std::to_string(o.A_max);

  if (o.format == "csv") {
    CsvWriter csv({"epsilon", "V", "term_G1", "term_G2", "h"});
    for (const Row& r : rows) {
      csv.cell(r.eps);
      csv.cell(r.V);
      csv.cell(r.g1);
      csv.cell(r.g2);
      csv.cell(r.h);
      csv.end_row();
    }
    std::fprintf(stderr, "note: tube h_mode=%s %s\n", o.h_mode.c_str(), note.c_str());
    write_output(o, csv.str());
  } else {
    JsonWriter jw;
    jw.begin_object();
    jw.key("command");
    jw.value("tube");
    jw.key("h_mode");
    jw.value(o.h_mode);
    jw.key("truncation");
    jw.begin_object();
    jw.key("N");
    jw.value(o.N);
    jw.key("M");
    jw.value(o.M);
    jw.key("A_max");
    jw.value(o.A_max);
    jw.end_object();
    jw.key("rows");
    jw.begin_array();
    for (const Row& r : rows) {
      jw.begin_object();
      json_row_kv(jw, "epsilon", r.eps);
      json_row_kv(jw, "V", r.V);
      json_row_kv(jw, "term_G1", r.g1);
      json_row_kv(jw, "term_G2", r.g2);
      json_row_kv(jw, "h", r.h);
      json_row_kv(jw, "imag_residue", r.imag);
      jw.key("truncation_note");
      jw.value(note);
      jw.end_object();
    }
    jw.end_array();
    jw.end_object();
    write_output(o, jw.str() + "\n");
  }
  return 0;
}

int run_direct(const Options& o) {
  const HMode mode = parse_mode(o.h_mode);
  const std::vector<double> grid = make_grid(o);

  std::vector<DirectEvaluation> rows;
  for (double eps : grid) {
    rows.push_back(v_direct_full(eps, pointwise_h(mode, eps), o.M));
  }

  if (o.format == "csv") {
    CsvWriter csv({"epsilon", "V", "term_G1", "term_G2", "h"});
    for (const DirectEvaluation& r : rows) {
      csv.cell(r.epsilon);
      csv.cell(r.V);
      csv.cell(r.term_G1);
      csv.cell(r.term_G2);
      csv.cell(r.h);
      csv.end_row();
    }
    std::fprintf(stderr, "note: direct h_mode=%s M=%d\n", o.h_mode.c_str(), o.M);
    write_output(o, csv.str());
  } else {
    JsonWriter jw;
    jw.begin_object();
    jw.key("command");
    jw.value("direct");
    jw.key("h_mode");
    jw.value(o.h_mode);
    jw.key("M");
    jw.value(o.M);
    jw.key("rows");
    jw.begin_array();
    for (const DirectEvaluation& r : rows) {
      jw.begin_object();
      json_row_kv(jw, "epsilon", r.epsilon);
      json_row_kv(jw, "V", r.V);
      json_row_kv(jw, "term_G1", r.term_G1);
      json_row_kv(jw, "term_G2", r.term_G2);
      json_row_kv(jw, "h", r.h);
      jw.end_object();
    }
    jw.end_array();
    jw.end_object();
    write_output(o, jw.str() + "\n");
  }
  return 0;
}

// -------------------------------------------------------------------- oracle

int run_oracle(const Options& o) {
  const std::vector<double> grid = make_grid(o);
  std::vector<OracleEstimate> rows;
  for (double eps : grid) rows.push_back(oracle_inner_area(eps, o.samples, o.seed));

  if (o.format == "csv") {
    CsvWriter csv({"epsilon", "area_mean", "std_error", "samples", "seed", "bias_bound"});
    for (const OracleEstimate& r : rows) {
      csv.cell(r.epsilon);
      csv.cell(r.area_mean);
      csv.cell(r.std_error);
      csv.cell(r.samples);
      csv.cell(r.seed);
      csv.cell(r.bias_bound);
      csv.end_row();
    }
    write_output(o, csv.str());
  } else {
    JsonWriter jw;
    jw.begin_object();
    jw.key("command");
    jw.value("oracle");
    jw.key("rows");
    jw.begin_array();
    for (const OracleEstimate& r : rows) {
      jw.begin_object();
      json_row_kv(jw, "epsilon", r.epsilon);
      json_row_kv(jw, "area_mean", r.area_mean);
      json_row_kv(jw, "std_error", r.std_error);
      jw.key("samples");
      jw.value(r.samples);
      jw.key("seed");
      jw.value(r.seed);
      json_row_kv(jw, "bias_bound", r.bias_bound);
      jw.key("indeterminate");
      jw.value(r.indeterminate);
      jw.end_object();
    }
    jw.end_array();
    jw.end_object();
    write_output(o, jw.str() + "\n");
  }
  return 0;
}

// ------------------------------------------------------------------- compare

int run_compare(const Options& o) {
  const HMode mode = parse_mode(o.h_mode);
  const CoefficientTable ct = build_coefficients(o.N, o.M);
  const CantorProfile gp = fourier_g(o.A_max, mode);
  const std::vector<double> grid = make_grid(o);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  struct Row {
    double eps, vd, vt, mean, se, bias;
    bool ok;
  };
  std::vector<Row> rows;
  int rows_ok = 0;
  for (double eps : grid) {
    const EpsilonIndex idx = index_of(eps);
    const double vd = v_direct(eps, pointwise_h(mode, eps), o.M);
    const double vt = idx.frac == 0.0 ? nan : v_tube(eps, ct, gp).V;
    const OracleEstimate est = oracle_inner_area(eps, o.samples, o.seed);
    const bool ok = std::abs(vd - est.area_mean) <= 3.0 * est.std_error + est.bias_bound;
    rows_ok += ok ? 1 : 0;
    rows.push_back({eps, vd, vt, est.area_mean, est.std_error, est.bias_bound, ok});
  }
  const bool pass = rows_ok == static_cast<int>(rows.size());

  if (o.format == "csv") {
    CsvWriter csv({"epsilon", "v_direct", "v_tube", "oracle_mean", "oracle_se", "bias"});
    for (const Row& r : rows) {
      csv.cell(r.eps);
      csv.cell(r.vd);
      csv.cell(r.vt);
      csv.cell(r.mean);
      csv.cell(r.se);
      csv.cell(r.bias);
      csv.end_row();
    }
    write_output(o, csv.str());
    std::fprintf(stderr, "verdict: %s (%d/%zu rows within 3*std_error + bias_bound)\n",
                 pass ? "PASS" : "FAIL", rows_ok, rows.size());
  } else {
    JsonWriter jw;
    jw.begin_object();
    jw.key("command");
    jw.value("compare");
    jw.key("h_mode");
    jw.value(o.h_mode);
    jw.key("rows");
    jw.begin_array();
    for (const Row& r : rows) {
      jw.begin_object();
      json_row_kv(jw, "epsilon", r.eps);
      json_row_kv(jw, "v_direct", r.vd);
      json_row_kv(jw, "v_tube", r.vt);
      json_row_kv(jw, "oracle_mean", r.mean);
      json_row_kv(jw, "oracle_se", r.se);
      json_row_kv(jw, "bias", r.bias);
      jw.key("within_tolerance");
      jw.value_bool(r.ok);
      jw.end_object();
    }
    jw.end_array();
    jw.key("verdict");
    jw.begin_object();
    jw.key("pass");
    jw.value_bool(pass);
    jw.key("rows_within");
    jw.value(rows_ok);
    jw.key("rows");
    jw.value(static_cast<int>(rows.size()));
    jw.end_object();
    jw.end_object();
    write_output(o, jw.str() + "\n");
  }
  return pass ? 0 : 1;
}

// -------------------------------------------------------------- coeffs/dims

void json_coeff_array(JsonWriter& jw, const char* name, const CoefficientTable& ct,
                      const std::vector<std::complex<double>>& series) {
  jw.key(name);
  jw.begin_array();
  for (int n = -ct.N_max; n <= ct.N_max; ++n) {
    const std::complex<double> v = series[static_cast<std::size_t>(n + ct.N_max)];
    jw.begin_object();
    jw.key("n");
    jw.value(n);
    jw.key("re");
    jw.value(v.real());
    jw.key("im");
    jw.value(v.imag());
    jw.end_object();
  }
  jw.end_array();
}

int run_coeffs(const Options& o) {
  if (o.format != "json") throw ConfigError("coeffs output is JSON only");
  const CoefficientTable ct = build_coefficients(o.N, o.M);
  JsonWriter jw;
  jw.begin_object();
  jw.key("command");
  jw.value("coeffs");
  jw.key("N_max");
  jw.value(ct.N_max);
  jw.key("M");
  jw.value(ct.M);
  jw.key("D");
  jw.value(ct.D);
  jw.key("p");
  jw.value(ct.p);
  json_coeff_array(jw, "a", ct, ct.a);
  json_coeff_array(jw, "b", ct, ct.b);
  json_coeff_array(jw, "sigma", ct, ct.sigma);
  json_coeff_array(jw, "tau", ct, ct.tau);
  jw.key("beta");
  jw.begin_array();
  for (double bm : ct.beta) jw.value(bm);
  jw.end_array();
  jw.end_object();
  write_output(o, jw.str() + "\n");
  return 0;
}

int run_dims(const Options& o, bool a_max_given) {
  const HMode mode = parse_mode(o.h_mode);
  const int amax = a_max_given ? o.A_max : 2 * o.dims_n;
  const CoefficientTable ct = build_coefficients(o.dims_n, o.M);
  const CantorProfile gp = fourier_g(amax, mode);
  const std::vector<ComplexDimension> dims = complex_dimensions(o.dims_n, ct, gp);

  auto index_of_row = [&](std::size_t i) {
    const int span = 2 * o.dims_n + 1;
    return static_cast<int>(i) % span - o.dims_n;
  };

  if (o.format == "csv") {
    CsvWriter csv({"n", "re", "im", "magnitude", "family"});
    for (std::size_t i = 0; i < dims.size(); ++i) {
      csv.cell(static_cast<std::int64_t>(index_of_row(i)));
      csv.cell(dims[i].omega.real());
      csv.cell(dims[i].omega.imag());
      csv.cell(dims[i].magnitude);
      csv.cell(std::string(1, dims[i].family));
      csv.end_row();
    }
    write_output(o, csv.str());
  } else {
    JsonWriter jw;
    jw.begin_object();
    jw.key("command");
    jw.value("dims");
    jw.key("n");
    jw.value(o.dims_n);
    jw.key("rows");
    jw.begin_array();
    for (std::size_t i = 0; i < dims.size(); ++i) {
      jw.begin_object();
      jw.key("n");
      jw.value(index_of_row(i));
      json_row_kv(jw, "re", dims[i].omega.real());
      json_row_kv(jw, "im", dims[i].omega.imag());
      json_row_kv(jw, "magnitude", dims[i].magnitude);
      jw.key("family");
      jw.value(std::string(1, dims[i].family));
      jw.end_object();
    }
    jw.end_array();
    jw.end_object();
    write_output(o, jw.str() + "\n");
  }
  return 0;
}

// ----------------------------------------------------------------- h-profile

int run_h_profile(const Options& o) {
  if (o.profile_count < 1) throw ConfigError("count must be >= 1");
  const double mu_value = mu();
  struct Row {
    double x, hg, ht;
  };
  std::vector<Row> rows;
  for (int i = 0; i < o.profile_count; ++i) {
    const double x = static_cast<double>(i) / o.profile_count;
    rows.push_back({x, h_geometric_frac(x), x == 0.0 ? 0.0 : mu_value * (1.0 - x)});
  }

  if (o.format == "csv") {
    CsvWriter csv({"x", "h_geometric", "h_tilde"});
    for (const Row& r : rows) {
      csv.cell(r.x);
      csv.cell(r.hg);
      csv.cell(r.ht);
      csv.end_row();
    }
    write_output(o, csv.str());
  } else {
    JsonWriter jw;
    jw.begin_object();
    jw.key("command");
    jw.value("h-profile");
    jw.key("mu");
    jw.value(mu_value);
    jw.key("rows");
    jw.begin_array();
    for (const Row& r : rows) {
      jw.begin_object();
      json_row_kv(jw, "x", r.x);
      json_row_kv(jw, "h_geometric", r.hg);
      json_row_kv(jw, "h_tilde", r.ht);
      jw.end_object();
    }
    jw.end_array();
    jw.end_object();
    write_output(o, jw.str() + "\n");
  }
  return 0;
}

// ------------------------------------------------------------------ selftest

int run_selftest() {
  int failures = 0;
  auto check = [&failures](bool ok, const char* name, const std::string& detail = "") {
    if (ok) {
      std::printf("ok   %s\n", name);
    } else {
      ++failures;
      std::printf("FAIL %s%s%s\n", name, detail.empty() ? "" : ": ", detail.c_str());
    }
  };
  auto rel = [](double a, double b) {
    return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
  };

  // Scale bookkeeping on random radii.
  {
    bool ok = true;
    for (int i = 0; i < 20000 && ok; ++i) {
      const double u = rng_unit(42, static_cast<std::uint64_t>(i));
      const double eps = std::pow(3.0, -0.5 - 4.0 * u);
      const EpsilonIndex idx = index_of(eps);
      const double lo = std::pow(3.0, -(idx.n + 1)) / kSqrt3;
      const double hi = std::pow(3.0, -idx.n) / kSqrt3;
      ok = eps > lo && eps <= hi * (1.0 + 1e-15) && idx.frac >= 0.0 && idx.frac < 1.0;
      if (ok) power_identities(idx);  // throws AccuracyError on mismatch
    }
    check(ok, "scale indexing and power identities");
  }

  // Piece-count recurrence.
  {
    bool ok = true;
    for (int n = 1; n <= 10; ++n) {
      ok = ok && piece_counts(n).wedges == 4 * piece_counts(n - 1).wedges + 2;
    }
    check(ok, "wedge-count recurrence");
  }

  // Block-sum rearrangement: direct vs series.
  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double eps = std::pow(3.0, -0.5 - 0.33 - 0.31 * i);
      const double bd = b_direct(eps, 60).value;
      const double bs = b_series(eps, 150);
      worst = std::max(worst, rel(bd, bs));
      ok = ok && rel(bd, bs) <= 1e-12;
    }
    check(ok, "block-sum rearrangement", "worst rel " + fmt_g17(worst));
  }

  // Dual coefficient formulas.
  {
    bool ok = true;
    for (int n : {0, 1, -1, 5, -5}) {
      ok = ok && std::abs(coeff_b(n, 40, SeriesForm::compact) -
                          coeff_b(n, 40, SeriesForm::expanded)) <=
                     1e-12 * std::abs(coeff_b(n, 40, SeriesForm::compact));
      ok = ok && std::abs(coeff_tau(n, 40, SeriesForm::compact) -
                          coeff_tau(n, 40, SeriesForm::expanded)) <=
                     1e-12 * std::abs(coeff_tau(n, 40, SeriesForm::compact));
    }
    check(ok, "dual coefficient formulas");
  }

  // mu invariance.
  {
    bool ok = mu() > 0.0 && mu() < 1.0;
    for (int k = 2; k <= 4; ++k) ok = ok && std::abs(mu_at(k) - mu()) <= 1e-9;
    check(ok, "occupancy bound mu well-defined");
  }

  // Preliminary area identities.
  {
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
      const double u = rng_unit(43, static_cast<std::uint64_t>(i));
      const double eps = std::pow(3.0, -0.5 - 3.0 * u);
      const PrelimArea pv = pre_v(eps);
      ok = std::abs(pv.rectangles + pv.wedges - pv.triangles + pv.fringe - pv.value) <=
           1e-12 * std::max(1.0, std::abs(pv.value));
      const double inv1 = std::pow(eps, -(2.0 - kD)) * (pv.value + eps * eps * kQ0);
      const PrelimArea pv3 = pre_v(eps / 3.0);
      const double inv2 =
          std::pow(eps / 3.0, -(2.0 - kD)) * (pv3.value + eps * eps / 9.0 * kQ0);
      ok = ok && std::abs(inv1 - inv2) <= 1e-12 * std::max(1.0, std::abs(inv1));
    }
    check(ok, "preliminary-area parts and periodicity");
  }

  // Continuity of the direct path across a scale boundary: approaching the
  // boundary from above (frac -> 1) with the exact-continuity occupancy
  // limit must reproduce the endpoint value (frac == 0, occupancy 0).
  {
    const double eb = std::pow(3.0, -2) / kSqrt3;
    const double above = v_direct(eb * (1.0 + 1e-9), h_sup());
    const double at_end = v_direct(eb, 0.0);
    check(std::abs(above - at_end) <= 1e-6 * at_end,
          "direct-path continuity at scale boundary",
          fmt_g17(std::abs(above - at_end)));
  }

  // Fourier assembly vs direct path (approximate profile for speed).
  {
    const CoefficientTable ct = build_coefficients(50, 30);
    const CantorProfile gp = fourier_g(100, HMode::approximate);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double frac = 0.08 + 0.84 * i / 9.0;
      const double eps = std::pow(3.0, -(1.0 + frac)) / kSqrt3;
      const TubeEvaluation ev = v_tube(eps, ct, gp);
      const double vd = v_direct(eps, h_tilde(eps));
      worst = std::max(worst, rel(ev.V, vd));
      ok = ok && rel(ev.V, vd) <= 0.01 && ev.imag_residue <= 1e-9;
    }
    check(ok, "tube assembly vs direct path", "worst rel " + fmt_g17(worst));
  }

  // Reduced Monte Carlo oracle agreement.
  {
    const double eps = std::pow(3.0, -1.75);
    const OracleEstimate est = oracle_inner_area(eps, 200000, 11);
    const double vd = v_direct(eps, h_geometric(eps));
    const double gap = std::abs(vd - est.area_mean);
    check(gap <= 3.0 * est.std_error + est.bias_bound, "oracle agreement",
          "gap " + fmt_g17(gap) + " allowance " +
              fmt_g17(3.0 * est.std_error + est.bias_bound));
  }

  std::printf("%s (%d failure%s)\n", failures == 0 ? "selftest passed" : "selftest FAILED",
              failures, failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}

void print_error_record(const std::string& kind, const std::string& message) {
  JsonWriter jw;
  jw.begin_object();
  jw.key("error");
  jw.value(kind);
  jw.key("message");
  jw.value(message);
  jw.end_object();
  std::fprintf(stderr, "%s\n", jw.str().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inner neighborhood area of the Koch snowflake: exact tube-formula "
               "evaluation, Monte Carlo validation, and plot-data export"};
  app.require_subcommand(1);
  Options o;

  CLI::App* tube = app.add_subcommand("tube", "Fourier tube-formula V over a radius grid");
  add_grid_flags(tube, o);
  add_truncation_flags(tube, o);
  add_hmode_flag(tube, o);
  add_output_flags(tube, o);

  CLI::App* direct = app.add_subcommand("direct", "closed-form reference V over a radius grid");
  add_grid_flags(direct, o);
  add_truncation_flags(direct, o);
  add_hmode_flag(direct, o);
  add_output_flags(direct, o);

  CLI::App* oracle = app.add_subcommand("oracle", "Monte Carlo area estimates over a grid");
  add_grid_flags(oracle, o);
  add_oracle_flags(oracle, o);
  add_output_flags(oracle, o);

  CLI::App* compare =
      app.add_subcommand("compare", "direct vs Fourier vs Monte Carlo, with verdict");
  add_grid_flags(compare, o);
  add_truncation_flags(compare, o);
  add_hmode_flag(compare, o);
  add_oracle_flags(compare, o);
  add_output_flags(compare, o);

  CLI::App* coeffs = app.add_subcommand("coeffs", "dump the coefficient tables (JSON)");
  add_truncation_flags(coeffs, o);
  add_output_flags(coeffs, o, "json");

  CLI::App* dims = app.add_subcommand("dims", "complex-dimension lines with weights");
  dims->add_option("--n", o.dims_n, "index range |n| <= n")->capture_default_str();
  add_truncation_flags(dims, o);
  add_hmode_flag(dims, o);
  add_output_flags(dims, o);

  CLI::App* hprof = app.add_subcommand("h-profile", "occupancy profile over one period");
  hprof->add_option("--count", o.profile_count, "number of x samples in [0,1)")
      ->capture_default_str();
  add_output_flags(hprof, o);

  app.add_subcommand("selftest", "run the reduced invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error_record("usage", e.what());
    return 2;
  }

  try {
    if (tube->parsed()) return run_tube(o);
    if (direct->parsed()) return run_direct(o);
    if (oracle->parsed()) return run_oracle(o);
    if (compare->parsed()) return run_compare(o);
    if (coeffs->parsed()) {
      // The shared option block registers every subcommand's default; make
      // the JSON default stick for coeffs unless --format was given.
      if (coeffs->count("--format") == 0) o.format = "json";
      return run_coeffs(o);
    }
    if (dims->parsed()) return run_dims(o, dims->count("--A-max") > 0);
    if (hprof->parsed()) return run_h_profile(o);
    return run_selftest();
  } catch (const koch::Error& e) {
    print_error_record(e.kind(), e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error_record("internal", e.what());
    return 2;
  }
}
