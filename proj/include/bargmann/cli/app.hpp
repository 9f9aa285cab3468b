#pragma once

#include "bargmann/algebra.hpp"
#include "bargmann/core.hpp"
#include "bargmann/errors.hpp"
#include "bargmann/exact.hpp"
#include "bargmann/oracle.hpp"
#include "bargmann/recurrence.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bargmann::cli {

using json = nlohmann::json;

inline constexpr const char* version = "1.0.0";

struct Tolerances {
  double root_tol = 1e-10;
  double cf_tol = 1e-14;
  double scan_tol = 1e-13;
};

inline void to_json(json& j, const Tolerances& t) {
  j = json{{"root_tol", t.root_tol}, {"cf_tol", t.cf_tol}, {"scan_tol", t.scan_tol}};
}
inline void from_json(const json& j, Tolerances& t) {
  t.root_tol = j.value("root_tol", t.root_tol);
  t.cf_tol = j.value("cf_tol", t.cf_tol);
  t.scan_tol = j.value("scan_tol", t.scan_tol);
}

/// Everything a subcommand needs. Defaults are resolved before a run so the
/// copy embedded in a report regenerates it exactly.
struct RunConfig {
  std::string command;
  std::string model = "squeezed";
  int k = 2;
  double omega = 1.0;
  double g = std::numeric_limits<double>::quiet_NaN();  // NaN: model default
  std::vector<std::string> sectors;                      // empty: all sectors
  std::size_t kappa_count = default_kappa_sectors;
  Tolerances tolerances;
  double E_min = -0.5;
  double E_max = 3.5;
  std::size_t points = 400;
  std::vector<double> energies;
  std::vector<double> z_points;
  std::size_t levels = 4;
  std::size_t degree = 2;
  std::size_t n_max = 0;  // 0: subcommand default
  std::vector<std::size_t> truncations{50, 100, 200, 400};
  double study_tol = 1e-8;
  std::string format = "json";
  std::string output;
  std::string plot_data;

  ModelSpec model_spec() const {
    switch (parse_model_kind(model)) {
      case ModelKind::displaced: return ModelSpec::displaced(omega, g);
      case ModelKind::squeezed: return ModelSpec::squeezed(omega, g);
      case ModelKind::two_mode: return ModelSpec::two_mode(omega, g);
      case ModelKind::k_harmonic: return ModelSpec::k_harmonic(k, omega, g);
    }
    throw std::invalid_argument("unknown model");
  }

  std::vector<SectorLabel> sector_list() const {
    const auto spec = model_spec();
    if (sectors.empty()) return sector_labels(spec, kappa_count);
    std::vector<SectorLabel> out;
    for (const auto& s : sectors) {
      const Rational r = parse_rational(s);
      out.push_back(spec.kind == ModelKind::two_mode ? SectorLabel::kappa(r) : SectorLabel::q(spec.order(), r));
    }
    return out;
  }

  void validate() const {
    if (!(tolerances.root_tol > 0) || !(tolerances.cf_tol > 0) || !(tolerances.scan_tol > 0) || !(study_tol > 0))
      throw std::invalid_argument("tolerances must be positive");
    if (!(E_min < E_max)) throw std::invalid_argument("E_min must be below E_max");
    if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (format != "json" && format != "csv") throw std::invalid_argument("format must be json or csv");
    model_spec();
  }
};

inline void to_json(json& j, const RunConfig& c) {
  j = json{{"command", c.command},       {"model", c.model},       {"k", c.k},
           {"omega", c.omega},           {"g", c.g},               {"sectors", c.sectors},
           {"kappa_count", c.kappa_count}, {"tolerances", c.tolerances}, {"E_min", c.E_min},
           {"E_max", c.E_max},           {"points", c.points},     {"energies", c.energies},
           {"z_points", c.z_points},     {"levels", c.levels},     {"M", c.degree},
           {"n_max", c.n_max},           {"truncations", c.truncations}, {"study_tol", c.study_tol},
           {"format", c.format}};
}

inline void from_json(const json& j, RunConfig& c) {
  c.command = j.at("command").get<std::string>();
  c.model = j.value("model", c.model);
  c.k = j.value("k", c.k);
  c.omega = j.value("omega", c.omega);
  c.g = j.at("g").is_number() ? j.at("g").get<double>() : std::numeric_limits<double>::quiet_NaN();
  c.sectors = j.value("sectors", c.sectors);
  c.kappa_count = j.value("kappa_count", c.kappa_count);
  if (j.contains("tolerances")) c.tolerances = j.at("tolerances").get<Tolerances>();
  c.E_min = j.value("E_min", c.E_min);
  c.E_max = j.value("E_max", c.E_max);
  c.points = j.value("points", c.points);
  c.energies = j.value("energies", c.energies);
  c.z_points = j.value("z_points", c.z_points);
  c.levels = j.value("levels", c.levels);
  c.degree = j.value("M", c.degree);
  c.n_max = j.value("n_max", c.n_max);
  c.truncations = j.value("truncations", c.truncations);
  c.study_tol = j.value("study_tol", c.study_tol);
  c.format = j.value("format", c.format);
}

inline double default_coupling(ModelKind kind) {
  switch (kind) {
    case ModelKind::displaced: return 0.2;
    case ModelKind::squeezed: return 0.3;
    case ModelKind::two_mode: return 0.6;
    case ModelKind::k_harmonic: return 0.5;
  }
  return 0.5;
}

/// Fills subcommand-dependent defaults in place.
inline void resolve_defaults(RunConfig& c) {
  const ModelKind kind = parse_model_kind(c.model);
  if (kind == ModelKind::displaced) c.k = 1;
  if (kind == ModelKind::squeezed) c.k = 2;
  if (kind == ModelKind::two_mode) c.k = 0;
  if (std::isnan(c.g)) c.g = default_coupling(kind);
  if (c.n_max == 0) {
    if (c.command == "wavefunction") c.n_max = 60;
    else if (c.command == "normcheck") c.n_max = 2000;
    else c.n_max = 5000;
  }
  if (c.energies.empty()) {
    if (c.command == "limsup") c.energies = {1.0, -2.7};
    if (c.command == "normcheck") c.energies = {-1.0, 0.3, 2.0};
  }
  if (c.z_points.empty() && c.command == "wavefunction") c.z_points = {-1.0, -0.5, 0.0, 0.5, 1.0};
}

/// Subcommand output before formatting.
struct Report {
  std::string method;
  json results = json::array();
  json diagnostics = json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  // Blocks of (x, y) pairs; blocks are separated by a blank line.
  std::vector<std::vector<std::pair<double, double>>> plot;
  bool failed_check = false;  // verify disagreement beyond its threshold
};

inline std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline json signed_logs(const std::vector<SignedLog>& v) {
  json out = json::array();
  for (std::size_t n = 0; n < v.size(); ++n)
    out.push_back({{"n", n}, {"log_abs", v[n].is_zero() ? json(nullptr) : json(v[n].log_abs)}, {"sign", v[n].sign}});
  return out;
}

inline Report run_spectrum(const RunConfig& c) {
  Report r;
  r.method = "closed_form";
  r.csv_header = {"sector", "M", "E"};
  for (const auto& lvl : full_spectrum(c.model_spec(), c.levels, c.kappa_count)) {
    r.results.push_back({{"sector", lvl.sector.str()}, {"M", lvl.M}, {"E", lvl.E}});
    r.csv_rows.push_back({lvl.sector.str(), std::to_string(lvl.M), fmt17(lvl.E)});
  }
  return r;
}

inline std::vector<double> ode_sample_points(const ExactEigenstate& st) {
  std::vector<double> pts;
  for (int i = 0; i < 16; ++i) {
    double z = -2.0 + 4.0 * (i + 0.37) / 16.0;
    for (double root : st.roots)
      if (std::abs(z - root) < 1e-6) z += 1e-3;
    pts.push_back(z);
  }
  return pts;
}

inline Report run_roots(const RunConfig& c) {
  Report r;
  r.method = "bethe_newton";
  r.csv_header = {"sector", "M", "E", "index", "root"};
  const auto model = c.model_spec();
  for (const auto& s : c.sector_list()) {
    const auto st = build_eigenstate(model, s, c.degree, c.tolerances.root_tol);
    double bethe_res = 0.0;
    if (model.order() != 1 && model.g != 0.0 && c.degree > 0)
      bethe_res = bargmann::detail::max_abs(bethe_residuals(bethe_system(model, s, c.degree), st.roots));
    const auto pts = ode_sample_points(st);
    r.results.push_back({{"sector", s.str()},
                         {"M", c.degree},
                         {"E", st.energy},
                         {"roots", st.roots},
                         {"prefactor_rate", st.prefactor_rate},
                         {"bethe_residual", bethe_res},
                         {"ode_residual", ode_residual(st, pts)}});
    for (std::size_t i = 0; i < st.roots.size(); ++i)
      r.csv_rows.push_back({s.str(), std::to_string(c.degree), fmt17(st.energy), std::to_string(i), fmt17(st.roots[i])});
  }
  return r;
}

inline Report run_wavefunction(const RunConfig& c) {
  Report r;
  r.method = "bethe_newton";
  r.csv_header = {"sector", "z", "psi"};
  const auto model = c.model_spec();
  for (const auto& s : c.sector_list()) {
    const auto st = build_eigenstate(model, s, c.degree, c.tolerances.root_tol);
    const auto coeffs = taylor_coefficients(st, c.n_max);
    const auto norm = bargmann_norm_sq(coeffs, s, c.n_max);
    json values = json::array();
    std::vector<std::pair<double, double>> block;
    for (double z : c.z_points) {
      const double psi = eval_wavefunction(st, {z, 0.0}).real();
      values.push_back({{"z", z}, {"psi", psi}});
      block.emplace_back(z, psi);
      r.csv_rows.push_back({s.str(), fmt17(z), fmt17(psi)});
    }
    r.plot.push_back(std::move(block));
    r.results.push_back({{"sector", s.str()},
                         {"M", c.degree},
                         {"E", st.energy},
                         {"roots", st.roots},
                         {"prefactor_rate", st.prefactor_rate},
                         {"taylor", signed_logs(coeffs)},
                         {"values", values},
                         {"norm_sq", norm.value()},
                         {"norm_converged", norm.converged}});
  }
  return r;
}

inline ScanOptions scan_options(const RunConfig& c) {
  ScanOptions o;
  o.points = c.points;
  o.cf_tol = c.tolerances.cf_tol;
  o.scan_tol = c.tolerances.scan_tol;
  return o;
}

inline Report run_cf_spectrum(const RunConfig& c) {
  Report r;
  r.method = "continued_fraction";
  r.csv_header = {"sector", "E", "F"};
  const auto model = c.model_spec();
  json brackets = json::array();
  for (const auto& s : c.sector_list()) {
    const auto scan = scan_spectrum(model, s, c.E_min, c.E_max, scan_options(c));
    for (const auto& e : scan.eigenvalues) {
      r.results.push_back({{"sector", s.str()}, {"E", e.E}, {"F", e.F}, {"cf_depth", e.depth}});
      r.csv_rows.push_back({s.str(), fmt17(e.E), fmt17(e.F)});
    }
    for (const auto& b : scan.brackets)
      brackets.push_back({{"sector", s.str()},
                          {"E_lo", b.lo},
                          {"E_hi", b.hi},
                          {"kind", b.kind == BracketKind::zero ? "zero" : "pole"},
                          {"refined", b.refined},
                          {"F_refined", std::isfinite(b.F_refined) ? json(b.F_refined) : json(nullptr)},
                          {"diagnostic", to_string(b.diagnostic)}});
    std::vector<std::pair<double, double>> block;
    for (std::size_t i = 0; i < scan.E_grid.size(); ++i) block.emplace_back(scan.E_grid[i], scan.F_values[i]);
    r.plot.push_back(std::move(block));
  }
  r.diagnostics["brackets"] = brackets;
  return r;
}

inline Report run_classify(const RunConfig& c) {
  Report r;
  r.method = "newton_puiseux";
  r.csv_header = {"k", "sigma", "tau", "verdict", "predicted_limit"};
  const int k = c.k == 0 ? 2 : c.k;
  const auto rep = classify(k);
  json pts = json::array();
  for (const auto& p : rep.points) pts.push_back({p.x, p.y});
  const json limit = rep.predicted_limit ? json(*rep.predicted_limit) : json(nullptr);
  r.results.push_back({{"k", k},
                       {"points", pts},
                       {"sigma", rep.sigma},
                       {"tau", rep.tau},
                       {"verdict", to_string(rep.verdict)},
                       {"minimal_exists", rep.minimal_exists()},
                       {"predicted_limit", limit},
                       {"limit_formula", rep.limit_formula}});
  r.csv_rows.push_back({std::to_string(k), fmt17(rep.sigma), fmt17(rep.tau), std::string(to_string(rep.verdict)),
                        rep.predicted_limit ? fmt17(*rep.predicted_limit) : "nan"});
  return r;
}

inline Report run_limsup(const RunConfig& c) {
  Report r;
  r.method = "forward_recursion";
  r.csv_header = {"sector", "E", "weight", "limit", "L_final"};
  const auto model = c.model_spec();
  for (const auto& s : c.sector_list())
    for (double E : c.energies) {
      const auto est = limsup_estimate(make_generator(model, s, E), c.n_max);
      r.results.push_back({{"sector", s.str()},
                           {"E", E},
                           {"n_max", c.n_max},
                           {"weight", est.weight},
                           {"limit", est.limit},
                           {"L_final", est.L.back()}});
      r.csv_rows.push_back({s.str(), fmt17(E), fmt17(est.weight), fmt17(est.limit), fmt17(est.L.back())});
      std::vector<std::pair<double, double>> block;
      for (std::size_t i = 0; i < est.n.size(); ++i) block.emplace_back(static_cast<double>(est.n[i]), est.L[i]);
      r.plot.push_back(std::move(block));
    }
  const auto rep = classify(model.order() == 0 ? 2 : model.order());
  r.diagnostics["predicted_limit"] = rep.predicted_limit ? json(*rep.predicted_limit) : json(nullptr);
  r.diagnostics["limit_formula"] = rep.limit_formula;
  return r;
}

inline Report run_normcheck(const RunConfig& c) {
  Report r;
  r.method = "forward_recursion";
  r.csv_header = {"sector", "E", "verdict", "examined_terms", "partial_sum"};
  const auto model = c.model_spec();
  for (const auto& s : c.sector_list())
    for (double E : c.energies) {
      const auto d = normalizability_diagnostic(make_generator(model, s, E), s, c.n_max);
      r.results.push_back({{"sector", s.str()},
                           {"E", E},
                           {"verdict", to_string(d.verdict)},
                           {"examined_terms", d.examined_terms},
                           {"log_partial_sum", d.log_partial_sums.back()},
                           {"max_final_ratio", d.max_final_ratio}});
      r.csv_rows.push_back(
          {s.str(), fmt17(E), std::string(to_string(d.verdict)), std::to_string(d.examined_terms), fmt17(d.limit())});
    }
  return r;
}

inline Report run_oracle(const RunConfig& c) {
  Report r;
  r.method = "truncated_matrix";
  r.csv_header = {"sector", "level", "N", "eigenvalue", "converged"};
  const auto model = c.model_spec();
  for (const auto& s : c.sector_list()) {
    const auto study = convergence_study(model, s, c.truncations, c.levels, c.study_tol);
    for (std::size_t i = 0; i < c.levels; ++i) {
      json table = json::array();
      std::vector<std::pair<double, double>> block;
      for (std::size_t t = 0; t < c.truncations.size(); ++t) {
        table.push_back({{"N", c.truncations[t]}, {"eigenvalue", study.eigen_tables[t][i]}});
        block.emplace_back(static_cast<double>(c.truncations[t]), study.eigen_tables[t][i]);
        r.csv_rows.push_back({s.str(), std::to_string(i), std::to_string(c.truncations[t]),
                              fmt17(study.eigen_tables[t][i]), study.levels[i].converged ? "true" : "false"});
      }
      r.plot.push_back(std::move(block));
      r.results.push_back({{"sector", s.str()},
                           {"level", i},
                           {"verdict", study.levels[i].converged ? "converged" : "not_converged"},
                           {"last_gap", study.levels[i].last_gap},
                           {"eigenvalues", table}});
    }
  }
  return r;
}

inline Report run_verify(const RunConfig& c) {
  Report r;
  r.method = "cross_check";
  r.csv_header = {"sector", "M", "E_closed_form", "E_cf", "E_oracle", "max_abs_disagreement"};
  const auto model = c.model_spec();
  const double threshold = 1e-7;
  const std::size_t N = c.truncations.back();
  double worst = 0.0;
  for (const auto& s : c.sector_list()) {
    std::vector<double> closed;
    for (std::size_t M = 0; M < c.levels; ++M) closed.push_back(exact_energy(model, s, M).E);
    const double spacing = c.levels > 1 ? closed[1] - closed[0] : model.omega;
    const auto scan = scan_spectrum(model, s, closed.front() - 0.5 * spacing, closed.back() + 0.5 * spacing,
                                    scan_options(c));
    const auto oracle = eigenvalues_tridiagonal(build_hamiltonian(model, s, N), c.levels);
    for (std::size_t M = 0; M < c.levels; ++M) {
      double cf = std::numeric_limits<double>::quiet_NaN();
      for (const auto& e : scan.eigenvalues)
        if (std::isnan(cf) || std::abs(e.E - closed[M]) < std::abs(cf - closed[M])) cf = e.E;
      const double dis = std::isnan(cf) ? std::numeric_limits<double>::infinity()
                                        : std::max({std::abs(cf - closed[M]), std::abs(oracle[M] - closed[M]),
                                                    std::abs(cf - oracle[M])});
      worst = std::max(worst, dis);
      r.results.push_back({{"sector", s.str()},
                           {"M", M},
                           {"E_closed_form", closed[M]},
                           {"E_cf", std::isnan(cf) ? json(nullptr) : json(cf)},
                           {"E_oracle", oracle[M]},
                           {"max_abs_disagreement", std::isfinite(dis) ? json(dis) : json(nullptr)}});
      r.csv_rows.push_back({s.str(), std::to_string(M), fmt17(closed[M]), fmt17(cf), fmt17(oracle[M]), fmt17(dis)});
    }
  }
  r.diagnostics["truncation"] = N;
  r.diagnostics["threshold"] = threshold;
  r.diagnostics["max_abs_disagreement"] = std::isfinite(worst) ? json(worst) : json(nullptr);
  r.diagnostics["pass"] = worst < threshold;
  r.failed_check = !(worst < threshold);
  return r;
}

}  // namespace detail

/// Runs a resolved configuration.
inline Report execute(const RunConfig& c) {
  c.validate();
  if (c.command == "spectrum") return detail::run_spectrum(c);
  if (c.command == "roots") return detail::run_roots(c);
  if (c.command == "wavefunction") return detail::run_wavefunction(c);
  if (c.command == "cf-spectrum") return detail::run_cf_spectrum(c);
  if (c.command == "classify") return detail::run_classify(c);
  if (c.command == "limsup") return detail::run_limsup(c);
  if (c.command == "normcheck") return detail::run_normcheck(c);
  if (c.command == "oracle") return detail::run_oracle(c);
  if (c.command == "verify") return detail::run_verify(c);
  throw std::invalid_argument("unknown subcommand '" + c.command + "'");
}

inline json report_json(const RunConfig& c, const Report& r) {
  json sectors = json::array();
  if (c.command != "spectrum" && c.command != "classify")
    for (const auto& s : c.sector_list()) sectors.push_back(s.str());
  return json{{"model", c.model},
              {"omega", c.omega},
              {"g", c.g},
              {"sector", sectors},
              {"method", r.method},
              {"tolerances", c.tolerances},
              {"results", r.results},
              {"diagnostics", r.diagnostics},
              {"version", version},
              {"config", c}};
}

inline void write_plot_data(const std::string& path, const Report& r) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open plot-data file '" + path + "'");
  for (std::size_t b = 0; b < r.plot.size(); ++b) {
    if (b) f << "\n";
    for (const auto& [x, y] : r.plot[b]) f << fmt17(x) << " " << fmt17(y) << "\n";
  }
  if (!f) throw std::runtime_error("failed writing plot-data file '" + path + "'");
}

/// Writes the report as JSON or CSV to `out` (or the configured file) and the
/// optional plot data.
inline void emit_report(const RunConfig& c, const Report& r, std::ostream& out) {
  std::ostringstream text;
  if (c.format == "csv") {
    for (std::size_t i = 0; i < r.csv_header.size(); ++i) text << (i ? "," : "") << r.csv_header[i];
    text << "\n";
    for (const auto& row : r.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) text << (i ? "," : "") << row[i];
      text << "\n";
    }
  } else {
    text << report_json(c, r).dump(2) << "\n";
  }
  if (c.output.empty() || c.output == "-") {
    out << text.str();
  } else {
    std::ofstream f(c.output);
    if (!f || !(f << text.str())) throw std::runtime_error("cannot write output file '" + c.output + "'");
  }
  if (!c.plot_data.empty()) write_plot_data(c.plot_data, r);
}

namespace detail {

inline void env_override(const char* name, double& target) {
  if (const char* v = std::getenv(name)) {
    try {
      std::size_t used = 0;
      const double x = std::stod(v, &used);
      if (used != std::string(v).size()) throw std::invalid_argument("");
      target = x;
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("environment variable ") + name + " is not a number");
    }
  }
}

inline void error_object(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << "\n";
}

}  // namespace detail

/// Parses argv-style arguments (without the program name), runs the
/// subcommand and emits the report. Exit codes: 0 success, 1 domain or I/O
/// error, 2 numerical non-convergence, 3 bad arguments.
inline int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    detail::env_override("BARGMANN_ROOT_TOL", cfg.tolerances.root_tol);
    detail::env_override("BARGMANN_CF_TOL", cfg.tolerances.cf_tol);
    detail::env_override("BARGMANN_SCAN_TOL", cfg.tolerances.scan_tol);
  } catch (const std::invalid_argument& e) {
    detail::error_object(err, "bad_arguments", e.what(), 3);
    return 3;
  }

  CLI::App app{"Spectra and Bargmann wavefunctions of exactly solvable oscillators"};
  app.require_subcommand(1);
  std::string config_path;
  std::string model_flag;
  int k_flag = 0;
  double g_flag = std::numeric_limits<double>::quiet_NaN();

  const std::vector<std::pair<std::string, std::string>> commands{
      {"spectrum", "closed-form energies over all sectors"},
      {"roots", "Bethe roots of a polynomial eigenstate"},
      {"wavefunction", "Taylor coefficients, values and Bargmann norm of an eigenstate"},
      {"cf-spectrum", "eigenvalues as zeros of the continued-fraction function F(E)"},
      {"classify", "Perron-Kreuser classification of the k-th order recurrence"},
      {"limsup", "growth limit of the forward series"},
      {"normcheck", "normalizability diagnostic of the forward series"},
      {"oracle", "truncated-matrix convergence study"},
      {"verify", "closed form vs continued fraction vs truncated matrix"}};

  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "rerun the configuration embedded in a JSON report");
    sub->add_option("--model", model_flag, "displaced | squeezed | two-mode | k-harmonic");
    sub->add_option("--k", k_flag, "harmonic order (k-harmonic model)");
    sub->add_option("--omega", cfg.omega, "mode frequency");
    sub->add_option("--g", g_flag, "coupling");
    sub->add_option("--sector", cfg.sectors, "Bargmann index, e.g. 1/4 (repeatable)");
    sub->add_option("--kappa-count", cfg.kappa_count, "two-mode sectors kappa = 1/2, 1, ... used by default");
    sub->add_option("--levels", cfg.levels, "number of levels");
    sub->add_option("--M", cfg.degree, "polynomial degree of the eigenstate");
    sub->add_option("--n-max", cfg.n_max, "series length");
    sub->add_option("--E", cfg.energies, "energies (repeatable)");
    sub->add_option("--E-min", cfg.E_min, "scan lower bound");
    sub->add_option("--E-max", cfg.E_max, "scan upper bound");
    sub->add_option("--points", cfg.points, "scan grid points");
    sub->add_option("--z", cfg.z_points, "evaluation points (repeatable)");
    sub->add_option("--truncations", cfg.truncations, "truncation dimensions");
    sub->add_option("--tol", cfg.study_tol, "convergence tolerance of the oracle study");
    sub->add_option("--root-tol", cfg.tolerances.root_tol, "Bethe residual tolerance");
    sub->add_option("--cf-tol", cfg.tolerances.cf_tol, "continued-fraction relative tolerance");
    sub->add_option("--scan-tol", cfg.tolerances.scan_tol, "bisection width tolerance");
    sub->add_option("--format", cfg.format, "json | csv");
    sub->add_option("--output", cfg.output, "output file (default stdout)");
    sub->add_option("--plot-data", cfg.plot_data, "two-column text file for plotting");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    for (auto* sub : app.get_subcommands())
      if (sub->parsed()) out << sub->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    detail::error_object(err, "bad_arguments", e.what(), 3);
    return 3;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw std::invalid_argument("cannot read config file '" + config_path + "'");
      json j;
      try {
        j = json::parse(f);
      } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config file is not valid JSON: ") + e.what());
      }
      const std::string output = cfg.output, plot = cfg.plot_data;
      cfg = (j.contains("config") ? j.at("config") : j).get<RunConfig>();
      if (cfg.command != command) throw std::invalid_argument("config was produced by '" + cfg.command + "'");
      cfg.output = output;
      cfg.plot_data = plot;
    } else {
      cfg.command = command;
      if (!model_flag.empty()) cfg.model = model_flag;
      else if (k_flag > 0) cfg.model = "k-harmonic";
      if (k_flag > 0) cfg.k = k_flag;
      else if (cfg.model == "k-harmonic" || cfg.model == "k_harmonic") cfg.k = 3;
      cfg.g = g_flag;
      if (k_flag > 0 && cfg.model != "k-harmonic" && cfg.model != "k_harmonic") {
        const auto kind = parse_model_kind(cfg.model);
        const int implied = kind == ModelKind::displaced ? 1 : kind == ModelKind::squeezed ? 2 : 0;
        if (k_flag != implied) throw std::invalid_argument("--k conflicts with --model " + cfg.model);
      }
    }
    resolve_defaults(cfg);
    const Report report = execute(cfg);
    emit_report(cfg, report, out);
    if (report.failed_check) {
      detail::error_object(err, "verification_failed", "cross-method disagreement above threshold", 2);
      return 2;
    }
    return 0;
  } catch (const domain_error& e) {
    detail::error_object(err, "domain_error", e.what(), 1);
    return 1;
  } catch (const convergence_error& e) {
    detail::error_object(err, "convergence_error", e.what(), 2);
    return 2;
  } catch (const std::invalid_argument& e) {
    detail::error_object(err, "bad_arguments", e.what(), 3);
    return 3;
  } catch (const std::out_of_range& e) {
    detail::error_object(err, "bad_arguments", e.what(), 3);
    return 3;
  } catch (const json::exception& e) {
    detail::error_object(err, "bad_arguments", e.what(), 3);
    return 3;
  } catch (const std::exception& e) {
    detail::error_object(err, "error", e.what(), 1);
    return 1;
  }
}

}  // namespace bargmann::cli
