/*
 * Copyright 2026 The banana-gamma Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file harness.hpp
 * @brief Reports, identity-check suites and t-scans behind the command line.
 *
 * Every verdict in a Report is recomputable from its columns: a check line
 * carries the deviation and the tolerance it was compared against.
 */

#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "banana/cohomology.hpp"
#include "banana/quadrature.hpp"
#include "banana/series.hpp"
#include "banana/types.hpp"

namespace banana {

inline constexpr const char* kVersion = "1.0.0";

/// |a - b| / max(|a|, |b|, tiny)
inline double relative_deviation(Complex a, Complex b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

struct MethodOutcome {
  Method method = Method::direct;
  /// ok | not_converged | domain_error | error
  std::string status = "ok";
  AmplitudeResult result;
  double runtime_ms = 0.0;
  std::string message;
};

struct PairDeviation {
  Method a, b;
  double value;
};

struct ReportRow {
  EvalPoint point;
  std::vector<MethodOutcome> outcomes;
  std::vector<PairDeviation> deviations;
};

struct CheckLine {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string command;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<ReportRow> rows;
  std::vector<CheckLine> checks;
  std::vector<std::string> warnings;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline CheckLine make_check(std::string name, double deviation, double tolerance, std::string detail = {}) {
  return {std::move(name), deviation, tolerance, deviation <= tolerance, std::move(detail)};
}

/// Pairwise deviations for one row, over every pair with finite values (a
/// not-converged result still contributes its best estimate). asymptotic_im is
/// compared with imaginary parts, asymptotic_re with real parts; the im/re pair is skipped.
inline std::vector<PairDeviation> pairwise_deviations(const std::vector<MethodOutcome>& outs) {
  std::vector<PairDeviation> devs;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    for (std::size_t j = i + 1; j < outs.size(); ++j) {
      const auto& a = outs[i];
      const auto& b = outs[j];
      if (a.status == "domain_error" || b.status == "domain_error") continue;
      const bool im = a.method == Method::asymptotic_im || b.method == Method::asymptotic_im;
      const bool re = a.method == Method::asymptotic_re || b.method == Method::asymptotic_re;
      if (im && re) continue;
      Complex va = a.result.value, vb = b.result.value;
      if (im) {
        va = va.imag();
        vb = vb.imag();
      } else if (re) {
        va = va.real();
        vb = vb.real();
      }
      devs.push_back({a.method, b.method, relative_deviation(va, vb)});
    }
  }
  return devs;
}

struct EvalOptions {
  Truncation trunc{};
  QuadratureBudget budget{};
  bool deterministic = false;
};

/// Evaluates one method at one point, turning errors into a status.
inline MethodOutcome evaluate_method(const LoopConfig& cfg, const EvalPoint& pt, Method m, const EvalOptions& opt) {
  MethodOutcome out;
  out.method = m;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (m) {
      case Method::direct:
        if (!pt.is_real() || pt.branch != Branch::none)
          throw DomainError("direct: needs real t below the threshold without a branch tag");
        out.result = feynman_direct(cfg, pt.t.real(), opt.budget);
        if (!out.result.converged) {
          out.status = "not_converged";
          std::ostringstream ss;
          ss << "quadrature budget exhausted, err_estimate=" << out.result.err_estimate;
          out.message = ss.str();
        }
        break;
      case Method::series:
        out.result = amplitude_series(cfg, pt, opt.trunc);
        break;
      case Method::asymptotic_leading:
        out.result = asymptotic_leading(cfg, pt);
        break;
      case Method::asymptotic_im:
        if (pt.branch == Branch::none) throw DomainError("asymptotic_im: needs t on the cut");
        out.result.method = m;
        // Im F(t + i0) = -Im F(t - i0)
        out.result.value = Complex(0.0, (pt.branch == Branch::lower ? 1.0 : -1.0) * asymptotic_im(cfg, pt.t.real()));
        break;
      case Method::asymptotic_re:
        if (pt.branch == Branch::none) throw DomainError("asymptotic_re: needs t on the cut");
        out.result.method = m;
        out.result.value = asymptotic_re(cfg, pt.t.real());
        break;
    }
  } catch (const ConvergenceError& e) {
    out.status = "not_converged";
    out.result = e.best();
    out.message = e.what();
  } catch (const DomainError& e) {
    out.status = "domain_error";
    out.result.method = m;
    out.result.value = Complex(std::nan(""), std::nan(""));
    out.result.err_estimate = std::nan("");
    out.message = e.what();
  }
  const auto stop = std::chrono::steady_clock::now();
  out.runtime_ms = opt.deterministic ? 0.0 : std::chrono::duration<double, std::milli>(stop - start).count();
  return out;
}

inline ReportRow evaluate_row(const LoopConfig& cfg, const EvalPoint& pt, const std::vector<Method>& methods,
                              const EvalOptions& opt) {
  ReportRow row;
  row.point = pt;
  for (Method m : methods) row.outcomes.push_back(evaluate_method(cfg, pt, m, opt));
  row.deviations = pairwise_deviations(row.outcomes);
  return row;
}

inline nlohmann::json config_json(const LoopConfig& cfg) { return {{"loops", cfg.loops}, {"q", cfg.q}}; }

inline nlohmann::json options_json(const EvalOptions& opt) {
  return {{"trunc", {{"max_degree", opt.trunc.max_degree}, {"tail_tol", opt.trunc.tail_tol}}},
          {"quadrature",
           {{"rel_tol", opt.budget.rel_tol},
            {"qmc_log2_points", opt.budget.qmc.log2_points},
            {"qmc_randomizations", opt.budget.qmc.randomizations},
            {"qmc_rel_tol", opt.budget.qmc_rel_tol},
            {"qmc_max_log2", opt.budget.qmc_max_log2},
            {"seed", opt.budget.qmc.seed}}},
          {"deterministic", opt.deterministic}};
}

// ---------------------------------------------------------------------------
// amplitude

/// One-row report. Real t below T uses direct quadrature, plus the series
/// when t is inside its convergence region; everything else uses the series.
inline Report cmd_amplitude(const LoopConfig& cfg, EvalPoint pt, const EvalOptions& opt,
                            std::optional<double> tol = std::nullopt) {
  cfg.validate();
  Report rep;
  rep.command = "amplitude";
  rep.metadata = {{"version", kVersion}, {"config", config_json(cfg)}, {"options", options_json(opt)}};
  const double T = threshold_T(cfg);
  rep.metadata["threshold_T"] = T;

  std::vector<Method> methods;
  if (pt.is_real()) {
    const double t = pt.t.real();
    if (t == T) throw DomainError("t equals the threshold T; the amplitude is singular there");
    if (pt.branch != Branch::none && t < T) {
      rep.warnings.push_back("branch tag ignored for t below the threshold");
      pt = EvalPoint(pt.t);
    }
    if (t < T) {
      methods.push_back(Method::direct);
      if (within_series_radius(cfg, pt.t)) methods.push_back(Method::series);
    } else {
      if (pt.branch == Branch::none) throw DomainError("t above the threshold needs --branch upper|lower");
      methods.push_back(Method::series);
    }
  } else {
    methods.push_back(Method::series);
  }
  rep.rows.push_back(evaluate_row(cfg, pt, methods, opt));
  for (const auto& o : rep.rows.back().outcomes)
    if (o.status != "ok") rep.warnings.push_back(std::string(to_string(o.method)) + ": " + o.message);
  if (tol && !rep.rows.back().deviations.empty()) {
    const auto& d = rep.rows.back().deviations.front();
    rep.checks.push_back(make_check("direct_vs_series", d.value, *tol));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// verify suites

struct VerifyOptions {
  std::optional<double> tol;
  double t = -12.0;
  int samples = 10000;
  int max_degree = 12;
  std::uint64_t seed = 1;
  EvalOptions eval{};
};

/// int_F I_F(q, -1) Gamma_F, the series side of the exponential-integral identity.
inline Complex gamma_theorem_series_side(const LoopConfig& cfg, const Truncation& trunc = {}) {
  const SeriesResult s = i_function(IKind::F, cfg, cfg.q, -1.0, trunc);
  return integrate_over_F(s.value * gamma_class_F(cfg.loops));
}

/// Max coefficient deviations of the Gamma-class identities at loop order l:
/// [0] Gamma_F vs e^{-2 gamma c1}/Gamma(1+c1), [1] Gamma_W Gamma(1+c1) vs Gamma_F,
/// [2] Im(e^{+i pi c1} Gamma(1-c1) Gamma_F) vs pi c1 Gamma_W,
/// [3] Im(e^{-i pi c1} Gamma(1-c1) Gamma_F) vs -pi c1 Gamma_W,
/// [4] Re(e^{+i pi c1} ...) and [5] Re(e^{-i pi c1} ...) vs cos(pi c1) Gamma(1-c1)/Gamma(1+c1) e^{-2 gamma c1}.
inline std::array<double, 6> gamma_identity_deviations(int loops) {
  const int n = loops + 1;
  const CohClass c1 = CohClass::c1(n);
  const long double eg = kEulerGammaWide;
  const CohClass gF = gamma_class_F(loops);
  const CohClass gW = gamma_class_W(loops);
  const CohClass g_plus = gamma_one_plus(c1, +1);
  const CohClass g_minus = gamma_one_plus(c1, -1);
  const CohClass alt = exp_nilpotent(c1 * (-2.0L * eg)) * invert(g_plus);
  const CohClass kf = g_minus * gF;
  const CohClass rot_p = exp_i_pi(c1, +1);
  const CohClass rot_m = exp_i_pi(c1, -1);
  const CohClass im_target = std::numbers::pi_v<long double> * c1 * gW;
  const CohClass re_target = cos_pi(c1) * g_minus * invert(g_plus) * exp_nilpotent(c1 * (-2.0L * eg));
  return {max_deviation(gF, alt),
          max_deviation(gW * g_plus, gF),
          max_deviation((rot_p * kf).imag_part(), im_target),
          max_deviation((rot_m * kf).imag_part(), -im_target),
          max_deviation((rot_p * kf).real_part(), re_target),
          max_deviation((rot_m * kf).real_part(), re_target)};
}

struct BoundFit {
  /// single constant for all shells |d| <= max_degree (largest per-shell value, rounded up by 1e-9)
  double C = 0.0;
  /// per-shell constants (max-norm * m!)^{1/(1+m)}
  std::vector<double> shell_C;
  /// per-shell max-norms of i_coeff_F(d, -1)
  std::vector<double> shell_norms;
  /// max over shells of max-norm * m! / C^{1+m}; <= 1 means the bound holds
  double worst_ratio = 0.0;
};

/// Fits the growth constant of max-norm(i_coeff_F(d, -1)) <= C^{1+|d|} / |d|!.
inline BoundFit fit_coefficient_bound(int loops, int max_degree) {
  const int n = loops + 1;
  BoundFit fit;
  double c_max = 1.0;
  for (int m = 0; m <= max_degree; ++m) {
    double norm = 0.0;
    for_each_in_shell(n, m, [&](std::span<const int> d) { norm = std::max(norm, i_coeff_F(d, -1.0, loops).max_norm()); });
    fit.shell_norms.push_back(norm);
    fit.shell_C.push_back(std::exp((std::log(norm) + std::lgamma(m + 1.0)) / (1.0 + m)));
    c_max = std::max(c_max, fit.shell_C.back());
  }
  fit.C = c_max * (1.0 + 1e-9);
  for (int m = 0; m <= max_degree; ++m)
    fit.worst_ratio = std::max(fit.worst_ratio, std::exp(std::log(fit.shell_norms[m]) + std::lgamma(m + 1.0) -
                                                         (1.0 + m) * std::log(fit.C)));
  return fit;
}

/// Runs one named suite: gamma | laplace | przyjalkowsky | ring | bound.
inline Report cmd_verify(const std::string& suite, const LoopConfig& cfg, const VerifyOptions& opt = {}) {
  cfg.validate();
  Report rep;
  rep.command = "verify";
  rep.metadata = {{"version", kVersion}, {"suite", suite}, {"config", config_json(cfg)}};
  auto tol_or = [&](double d) { return opt.tol.value_or(d); };

  if (suite == "gamma") {
    const double tol = tol_or(1e-6);
    const IntegralResult lhs = oscillatory_direct(cfg, opt.eval.budget);
    const Complex rhs = gamma_theorem_series_side(cfg, opt.eval.trunc);
    std::ostringstream ss;
    ss.precision(17);
    ss << "oscillatory=" << lhs.value << " series=" << rhs.real() << " imag=" << rhs.imag();
    rep.checks.push_back(make_check("exponential_integral_vs_I_F", relative_deviation(lhs.value, rhs), tol, ss.str()));
  } else if (suite == "laplace") {
    const double tol = tol_or(1e-4);
    const LaplaceCheck lc = laplace_check(cfg, opt.t, opt.eval.budget);
    std::ostringstream ss;
    ss.precision(17);
    ss << "laplace=" << lc.laplace_side << " minus_feynman=" << lc.minus_feynman << " t=" << opt.t;
    rep.checks.push_back(make_check("laplace_vs_minus_feynman", lc.relative_deviation(), tol, ss.str()));
  } else if (suite == "przyjalkowsky") {
    const double tol = tol_or(1e-12);
    const PrzyjalkowskyDeviation d = przyjalkowsky_check(cfg, opt.samples, opt.seed);
    rep.checks.push_back(make_check("phase_equals_phi", d.phase, tol, "samples=" + std::to_string(opt.samples)));
    rep.checks.push_back(make_check("u_on_simplex", d.simplex, tol));
  } else if (suite == "ring") {
    const double tol = tol_or(1e-12);
    static constexpr const char* names[6] = {"gamma_F_two_formulas",  "gamma_W_times_gamma_vs_gamma_F",
                                             "im_lower_branch",       "im_upper_branch",
                                             "re_lower_branch",       "re_upper_branch"};
    for (int l = 1; l <= cfg.loops; ++l) {
      const auto devs = gamma_identity_deviations(l);
      for (int k = 0; k < 6; ++k)
        rep.checks.push_back(make_check(std::string(names[k]) + "_l" + std::to_string(l), devs[k], tol));
    }
  } else if (suite == "bound") {
    const BoundFit fit = fit_coefficient_bound(cfg.loops, opt.max_degree);
    rep.metadata["C"] = fit.C;
    rep.metadata["shell_C"] = fit.shell_C;
    rep.metadata["shell_norms"] = fit.shell_norms;
    rep.checks.push_back(make_check("single_C_bounds_all_shells", fit.worst_ratio, tol_or(1.0),
                                    "C=" + std::to_string(fit.C) + " max_degree=" + std::to_string(opt.max_degree)));
    rep.checks.push_back(make_check("C_finite", std::isfinite(fit.C) ? 0.0 : 1.0, 0.0));
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "' (gamma, laplace, przyjalkowsky, ring, bound)");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// scans

struct ScanSpec {
  LoopConfig cfg;
  std::vector<EvalPoint> t_grid;
  std::vector<Method> methods;
  EvalOptions options{};
  std::uint64_t seed = 1;

  void validate() const {
    cfg.validate();
    if (t_grid.empty()) throw std::invalid_argument("ScanSpec: empty t grid");
    if (methods.empty()) throw std::invalid_argument("ScanSpec: no methods");
  }
};

/// Geometric grid from..to with `points` entries, all with the same branch tag.
inline std::vector<EvalPoint> geometric_grid(double from, double to, int points, Branch b) {
  if (points < 2 || !(from > 0.0) || !(to > from)) throw std::invalid_argument("geometric_grid: bad range");
  std::vector<EvalPoint> g;
  for (int i = 0; i < points; ++i) {
    const double t = from * std::pow(to / from, double(i) / double(points - 1));
    g.emplace_back(Complex(t, 0.0), b);
  }
  return g;
}

inline ScanSpec parse_scan_spec(const nlohmann::json& j) {
  ScanSpec s;
  s.cfg = LoopConfig(j.at("loops").get<int>(), j.at("q").get<std::vector<double>>());
  if (j.contains("t_grid")) {
    for (const auto& p : j.at("t_grid")) {
      const Branch b = parse_branch(p.value("branch", std::string("none")));
      s.t_grid.emplace_back(Complex(p.at("re").get<double>(), p.value("im", 0.0)), b);
    }
  }
  if (j.contains("t_geometric")) {
    const auto& g = j.at("t_geometric");
    const auto pts = geometric_grid(g.at("from").get<double>(), g.at("to").get<double>(), g.at("points").get<int>(),
                                    parse_branch(g.value("branch", std::string("lower"))));
    s.t_grid.insert(s.t_grid.end(), pts.begin(), pts.end());
  }
  for (const auto& m : j.at("methods")) s.methods.push_back(parse_method(m.get<std::string>()));
  if (j.contains("trunc")) {
    const auto& t = j.at("trunc");
    s.options.trunc.max_degree = t.value("max_degree", s.options.trunc.max_degree);
    s.options.trunc.tail_tol = t.value("tail_tol", s.options.trunc.tail_tol);
  }
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    s.options.budget.rel_tol = q.value("rel_tol", s.options.budget.rel_tol);
    s.options.budget.qmc.log2_points = q.value("qmc_log2_points", s.options.budget.qmc.log2_points);
    s.options.budget.qmc.randomizations = q.value("qmc_randomizations", s.options.budget.qmc.randomizations);
    s.options.budget.qmc_rel_tol = q.value("qmc_rel_tol", s.options.budget.qmc_rel_tol);
    s.options.budget.qmc_max_log2 = q.value("qmc_max_log2", s.options.budget.qmc_max_log2);
  }
  s.seed = j.value("seed", std::uint64_t{1});
  s.options.budget.qmc.seed = s.seed;
  s.options.deterministic = j.value("deterministic", false);
  s.validate();
  return s;
}

/// Evaluates the grid rows in parallel; row order follows the grid.
inline Report run_scan(const ScanSpec& spec) {
  spec.validate();
  Report rep;
  rep.command = "scan";
  rep.metadata = {{"version", kVersion}, {"config", config_json(spec.cfg)}, {"options", options_json(spec.options)},
                  {"seed", spec.seed}};
  rep.rows.resize(spec.t_grid.size());
  parallel_for(spec.t_grid.size(), [&](std::size_t i) {
    rep.rows[i] = evaluate_row(spec.cfg, spec.t_grid[i], spec.methods, spec.options);
  });
  return rep;
}

// ---------------------------------------------------------------------------
// serialization

namespace detail {
inline nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }
}  // namespace detail

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["metadata"] = r.metadata;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json jr = {{"t_re", row.point.t.real()},
                         {"t_im", row.point.t.imag()},
                         {"branch", std::string(to_string(row.point.branch))},
                         {"results", nlohmann::json::array()},
                         {"deviations", nlohmann::json::array()}};
    for (const auto& o : row.outcomes) {
      jr["results"].push_back({{"method", std::string(to_string(o.method))},
                               {"status", o.status},
                               {"value_re", detail::number_or_null(o.result.value.real())},
                               {"value_im", detail::number_or_null(o.result.value.imag())},
                               {"err", detail::number_or_null(o.result.err_estimate)},
                               {"runtime_ms", o.runtime_ms},
                               {"work", o.result.work},
                               {"flags", o.result.flags},
                               {"message", o.message}});
    }
    for (const auto& d : row.deviations)
      jr["deviations"].push_back(
          {{"a", std::string(to_string(d.a))}, {"b", std::string(to_string(d.b))}, {"value", d.value}});
    j["rows"].push_back(std::move(jr));
  }
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name},
                           {"deviation", detail::number_or_null(c.deviation)},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"detail", c.detail}});
  j["warnings"] = r.warnings;
  if (!r.checks.empty()) j["pass"] = r.pass();
  return j;
}

/// CSV with columns t_re,t_im,branch,method,value_re,value_im,err,runtime_ms.
inline std::string to_csv(const Report& r) {
  std::string out = "t_re,t_im,branch,method,value_re,value_im,err,runtime_ms\n";
  char buf[512];
  for (const auto& row : r.rows) {
    for (const auto& o : row.outcomes) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%s,%.17g,%.17g,%.17g,%.3f\n", row.point.t.real(),
                    row.point.t.imag(), std::string(to_string(row.point.branch)).c_str(),
                    std::string(to_string(o.method)).c_str(), o.result.value.real(), o.result.value.imag(),
                    o.result.err_estimate, o.runtime_ms);
      out += buf;
    }
  }
  return out;
}

/// Writes scan.csv and scan.json into dir.
inline void write_scan_outputs(const Report& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "scan.csv");
  std::ofstream js(dir / "scan.json");
  if (!csv || !js) throw std::runtime_error("cannot write scan outputs to " + dir.string());
  csv << to_csv(r);
  js << to_json(r).dump(2) << "\n";
  if (!csv || !js) throw std::runtime_error("write failed in " + dir.string());
}

}  // namespace banana
