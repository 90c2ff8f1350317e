#ifndef FRACSOLVE_HARNESS_HPP
#define FRACSOLVE_HARNESS_HPP

// Orchestration: single solves, convergence sweeps over tau or h, least
// squares rate fits, CSV reports, and the flat key=value config file.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracsolve/manufactured.hpp"
#include "fracsolve/stepper.hpp"

namespace fracsolve {

struct RunSpec {
  int m = 64;
  double tau = 0.01;
  double t_end = 0.1;
  bool use_corrected_source = true;
  int quad_order = 8;
};

struct RunResult {
  double error = 0.0;
  int m = 0;
  int n_steps = 0;
  double tau = 0.0;
  double t_end = 0.0;
};

struct ConvergenceReport {
  std::string axis;  // "time" or "space"
  ManufacturedCase mc;
  double fixed = 0.0;  // the resolution held constant (h or tau)
  double t_end = 0.0;
  bool use_corrected_source = true;
  std::vector<std::pair<double, double>> rows;  // (resolution, error), resolution descending
  double fitted_rate = 0.0;
};

// Least-squares slope of log(error) against log(resolution).
inline double fit_rate(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("fit_rate: need at least two rows");
  double sx = 0.0, sy = 0.0;
  for (const auto& [r, e] : rows) {
    sx += std::log(r);
    sy += std::log(e);
  }
  const double mx = sx / rows.size(), my = sy / rows.size();
  double num = 0.0, den = 0.0;
  for (const auto& [r, e] : rows) {
    num += (std::log(r) - mx) * (std::log(e) - my);
    den += (std::log(r) - mx) * (std::log(r) - mx);
  }
  if (den == 0.0) throw std::invalid_argument("fit_rate: resolutions are all equal");
  return num / den;
}

namespace detail {

inline int steps_for(double t_end, double tau) {
  const double ratio = t_end / tau;
  const long long n = std::llround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-8 * std::max(1.0, ratio))
    throw std::invalid_argument("t_end must be a positive integer multiple of tau");
  return static_cast<int>(n);
}

}  // namespace detail

// Assemble, project data, march, and measure the L2 error against the exact
// solution at t_end. t_end = 0 reduces to the projection error of u(., 0).
inline RunResult run_single(const ManufacturedCase& mc, const RunSpec& rs) {
  const UniformMesh1D mesh(rs.m);
  const MassMatrix M = assemble_mass(mesh);
  const InitialData init = initial_data(mc);
  const Eigen::VectorXd v_h = l2_project(init.v, mesh, rs.quad_order);

  RunResult res;
  res.m = rs.m;
  res.tau = rs.tau;
  res.t_end = rs.t_end;

  if (rs.t_end == 0.0) {
    auto exact0 = [&](double x) { return exact_solution(mc, x, 0.0); };
    res.error = l2_error(v_h, exact0, mesh, mc.s);
    res.n_steps = 0;
    return res;
  }

  const StiffnessMatrix K = assemble_stiffness(mesh, mc.s);
  const int N = detail::steps_for(rs.t_end, rs.tau);
  const UniformTimeGrid grid(rs.t_end / N, N);
  const SolverConfig cfg{mc.alpha, mc.s, grid, mesh, rs.use_corrected_source};

  // project each separable spatial factor once; nodal loads per step are
  // linear combinations with scalar time coefficients
  const SourceSplit sp = source_split(mc);
  std::vector<Eigen::VectorXd> proj;
  proj.reserve(sp.spatial.size());
  for (const auto& fx : sp.spatial) proj.push_back(l2_project(fx, mesh, rs.quad_order));
  auto combine = [proj](const std::vector<double>& c) {
    Eigen::VectorXd acc = c[0] * proj[0];
    for (std::size_t i = 1; i < proj.size(); ++i) acc += c[i] * proj[i];
    return acc;
  };
  const NodalFn f_at = [&sp, combine](double t) { return combine(sp.coeffs(t)); };
  const NodalFn f_integral = [&sp, combine](double t) {
    return combine(sp.coeffs_integral(t));
  };

  Trajectory traj = mc.alpha <= 1.0
                        ? solve_diffusion(cfg, K, M, v_h, f_at)
                        : solve_wave(cfg, K, M, v_h,
                                     l2_project(init.b, mesh, rs.quad_order),
                                     f_integral, f_at);

  const double hT = time_factor(mc, rs.t_end);
  auto exact_T = [&](double x) { return hT * spatial_factor(mc, x); };
  res.error = l2_error(traj.states.back(), exact_T, mesh, mc.s);
  res.n_steps = N;
  return res;
}

// Sweep tau (axis "time", fixed = h) or h (axis "space", fixed = tau).
inline ConvergenceReport run_convergence(const ManufacturedCase& mc,
                                         const std::string& axis, double fixed,
                                         const std::vector<double>& sweep,
                                         double t_end,
                                         bool use_corrected_source = true) {
  if (axis != "time" && axis != "space")
    throw std::invalid_argument("run_convergence: axis must be 'time' or 'space'");
  if (sweep.size() < 3)
    throw std::invalid_argument("run_convergence: sweep needs at least 3 entries");
  ConvergenceReport rep;
  rep.axis = axis;
  rep.mc = mc;
  rep.fixed = fixed;
  rep.t_end = t_end;
  rep.use_corrected_source = use_corrected_source;
  const double domain_len = 2.0;  // (-1, 1)
  for (double r : sweep) {
    RunSpec rs;
    rs.t_end = t_end;
    rs.use_corrected_source = use_corrected_source;
    double resolution = 0.0;
    if (axis == "time") {
      rs.m = static_cast<int>(std::lround(domain_len / fixed));
      rs.tau = r;
      resolution = r;
    } else {
      rs.m = static_cast<int>(std::lround(domain_len / r));
      rs.tau = fixed;
      resolution = domain_len / rs.m;
    }
    rep.rows.emplace_back(resolution, run_single(mc, rs).error);
  }
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const auto& p, const auto& q) { return p.first > q.first; });
  rep.fitted_rate = fit_rate(rep.rows);
  return rep;
}

namespace detail {

inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace detail

// CSV: header axis,alpha,s,case,resolution,error,fitted_rate then one row per
// sweep point, 6 significant digits, fitted rate repeated on every row.
inline std::string render_csv(const ConvergenceReport& rep) {
  std::string out = "axis,alpha,s,case,resolution,error,fitted_rate\n";
  for (const auto& [r, e] : rep.rows) {
    out += rep.axis;
    out += ',';
    out += detail::fmt6(rep.mc.alpha);
    out += ',';
    out += detail::fmt6(rep.mc.s);
    out += ',';
    out += case_letter(rep.mc);
    out += ',';
    out += detail::fmt6(r);
    out += ',';
    out += detail::fmt6(e);
    out += ',';
    out += detail::fmt6(rep.fitted_rate);
    out += '\n';
  }
  return out;
}

inline void emit_csv(const ConvergenceReport& rep, const std::string& path) {
  if (rep.rows.empty()) throw std::invalid_argument("emit_csv: report has no rows");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
  f << render_csv(rep);
  if (!f) throw std::runtime_error("emit_csv: write failed for " + path);
}

// Flat key = value file; '#' starts a comment, blank lines skipped.
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("parse_config_file: cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  auto trim = [](std::string t) {
    const char* ws = " \t\r\n";
    const auto b = t.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const auto e = t.find_last_not_of(ws);
    return t.substr(b, e - b + 1);
  };
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

}  // namespace fracsolve

#endif  // FRACSOLVE_HARNESS_HPP
