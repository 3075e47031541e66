#pragma once

#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"
#include "plie/suites.hpp"

namespace plie {

using ojson = nlohmann::ordered_json;

inline ojson to_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

inline ojson to_json(const CVec& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(cplx(v(i))));
  return a;
}

inline ojson to_json(const CMat& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(cplx(m(i, j))));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ojson failures_json(const std::vector<Failure>& fs, const std::string& check = {}) {
  ojson a = ojson::array();
  for (const auto& f : fs) {
    ojson o;
    if (!check.empty()) o["check"] = check;
    o["index"] = f.index;
    o["residual"] = f.residual;
    o["digest"] = f.digest;
    a.push_back(std::move(o));
  }
  return a;
}

inline ojson to_json(const VerificationReport& r) {
  ojson o;
  o["suite"] = r.suite;
  o["spec"] = r.spec;
  o["seed"] = r.seed;
  o["samples"] = r.samples;
  o["tolerance"] = r.tolerance;
  o["max_residual"] = r.max_residual;
  o["pass"] = r.pass;
  o["failures"] = failures_json(r.failures);
  if (!r.metrics.empty()) {
    ojson m = ojson::object();
    for (const auto& [k, v] : r.metrics) m[k] = v;
    o["metrics"] = std::move(m);
  }
  return o;
}

inline ojson params_json(const RunConfig& c) {
  ojson p;
  p["n"] = c.n;
  p["d"] = c.d;
  p["l"] = c.l;
  p["kappa"] = to_json(c.kappa);
  p["radius"] = c.radius;
  p["tol_exact"] = c.tol_exact;
  p["tol_fd"] = c.tol_fd;
  p["fd_step"] = c.fd_step;
  return p;
}

/// Ratio used to pick the check that represents a suite at top level.
inline double severity(const VerificationReport& r) {
  if (r.tolerance > 0.0) return r.max_residual / r.tolerance;
  return r.max_residual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

/// Suite-level report: the worst check supplies tolerance and max_residual, pass is the conjunction.
inline ojson suite_json(const RunConfig& c, const std::vector<VerificationReport>& checks) {
  const VerificationReport* worst = nullptr;
  bool pass = true;
  for (const auto& r : checks) {
    pass = pass && r.pass;
    if (!worst || severity(r) > severity(*worst)) worst = &r;
  }
  ojson o;
  o["suite"] = c.suite;
  o["params"] = params_json(c);
  o["seed"] = c.seed;
  o["samples"] = c.samples;
  o["tolerance"] = worst ? worst->tolerance : 0.0;
  o["max_residual"] = worst ? worst->max_residual : 0.0;
  o["pass"] = pass;
  ojson fails = ojson::array();
  for (const auto& r : checks)
    for (auto& f : failures_json(r.failures, r.suite)) fails.push_back(std::move(f));
  o["failures"] = std::move(fails);
  ojson arr = ojson::array();
  for (const auto& r : checks) arr.push_back(to_json(r));
  o["checks"] = std::move(arr);
  return o;
}

inline cplx parse_kappa(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw ConfigError("");
      return {re, 0.0};
    }
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw ConfigError("");
    const double im = std::stod(b, &used);
    if (used != b.size()) throw ConfigError("");
    return {re, im};
  } catch (const std::exception&) {
    throw ConfigError("kappa must be given as re,im");
  }
}

/// Applies the keys of a JSON config object onto cfg.
inline void apply_config(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "suite") cfg.suite = v.get<std::string>();
      else if (key == "n") cfg.n = v.get<int>();
      else if (key == "d") cfg.d = v.get<int>();
      else if (key == "l") cfg.l = v.get<int>();
      else if (key == "kappa") {
        if (v.is_string()) cfg.kappa = parse_kappa(v.get<std::string>());
        else if (v.is_array() && v.size() == 2) cfg.kappa = {v[0].get<double>(), v[1].get<double>()};
        else if (v.is_number()) cfg.kappa = {v.get<double>(), 0.0};
        else throw ConfigError("kappa must be [re, im]");
      } else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "samples") cfg.samples = v.get<std::uint64_t>();
      else if (key == "radius") cfg.radius = v.get<double>();
      else if (key == "tol_exact") cfg.tol_exact = v.get<double>();
      else if (key == "tol_fd") cfg.tol_fd = v.get<double>();
      else if (key == "fd_step") cfg.fd_step = v.get<double>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "threads") cfg.threads = v.get<unsigned>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

inline nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
}

struct RunResult {
  int exit_code = 0;
  std::string report;   // serialized JSON (empty on configuration errors)
  std::string message;  // diagnostic for stderr
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInternal = 3;

/// Runs the configured suite and serializes its report; never throws.
inline RunResult run_suite(const RunConfig& cfg) {
  RunResult out;
  std::vector<VerificationReport> checks;
  try {
    cfg.validate();
    if (std::find(suite_names().begin(), suite_names().end(), cfg.suite) == suite_names().end())
      throw ConfigError("unknown suite '" + cfg.suite + "'");
    checks = run_checks(cfg);
  } catch (const ConfigError& e) {
    out.exit_code = kExitConfig;
    out.message = e.what();
    return out;
  } catch (const SuiteError& e) {
    ojson o;
    o["suite"] = cfg.suite;
    o["params"] = params_json(cfg);
    o["seed"] = cfg.seed;
    o["pass"] = false;
    o["error"] = e.what();
    o["index"] = e.index();
    o["digest"] = e.digest();
    out.exit_code = kExitInternal;
    out.report = o.dump(2) + "\n";
    out.message = std::string(e.what()) + " (point " + e.digest() + ")";
    return out;
  } catch (const std::exception& e) {
    out.exit_code = kExitInternal;
    out.message = e.what();
    return out;
  }
  const ojson rep = suite_json(cfg, checks);
  out.report = rep.dump(2) + "\n";
  out.exit_code = rep["pass"].get<bool>() ? kExitPass : kExitFail;
  return out;
}

/// Deterministic point for (seed, index) on one of the phase spaces.
inline ojson gen_point(const RunConfig& cfg, const std::string& space, std::uint64_t index) {
  cfg.validate();
  const double rad = cfg.radius_or(0.3);
  Rng g(cfg.seed ^ name_salt("gen-point/" + space), index);
  ojson o;
  o["space"] = space;
  o["seed"] = cfg.seed;
  o["index"] = index;
  o["radius"] = rad;
  CVec x;
  if (space == "spin") {
    const SpinPoint p = sample_spin(g, cfg.n, rad);
    o["n"] = cfg.n;
    o["a"] = to_json(p.a);
    o["b"] = to_json(p.b);
    x = coords(p);
  } else if (space == "S") {
    const SPoint p = sample_spoint(g, cfg.n, cfg.d, rad);
    o["n"] = cfg.n;
    o["d"] = cfg.d;
    o["A"] = to_json(p.A);
    o["B"] = to_json(p.B);
    x = coords(p);
  } else if (space == "gl") {
    const CMat m = identity(cfg.l) + g.matrix(cfg.l, cfg.l, rad / cfg.l);
    o["l"] = cfg.l;
    o["g"] = to_json(m);
    x = coords(m);
  } else if (space == "dual") {
    const DualPair h = sample_dual(g, cfg.l, rad);
    o["l"] = cfg.l;
    o["hplus"] = to_json(h.hplus);
    o["hminus"] = to_json(h.hminus);
    x = coords(h);
  } else if (space == "tuple") {
    const SpinTuple t = sample_tuple(g, cfg.n, cfg.d, rad);
    o["n"] = cfg.n;
    o["d"] = cfg.d;
    ojson copies = ojson::array();
    for (const auto& c : t.copies()) copies.push_back({{"a", to_json(c.a)}, {"b", to_json(c.b)}});
    o["copies"] = std::move(copies);
    x = coords(t);
  } else {
    throw ConfigError("unknown space '" + space + "' (expected spin, S, gl, dual or tuple)");
  }
  o["coords"] = to_json(x);
  o["digest"] = digest(x);
  return o;
}

}  // namespace plie
