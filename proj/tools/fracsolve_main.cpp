// fracsolve: solver CLI for the 1D space-time fractional evolution equation
//   d_t^alpha u + (-Delta)^s u = f   on (-1,1),
// Caputo in time, integral fractional Laplacian in space, P1 elements plus
// backward-Euler convolution quadrature.
//
// Subcommands: run (single solve), converge (tau/h sweep), weights (CQ table).
// A flat key=value config file can be pointed at with FRACSOLVE_CONFIG;
// precedence is CLI flags > config file > built-in defaults.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracsolve/harness.hpp"

namespace {

void parse_into(const std::string& text, double& v) { v = std::stod(text); }
void parse_into(const std::string& text, int& v) { v = std::stoi(text); }
void parse_into(const std::string& text, std::string& v) { v = text; }
void parse_into(const std::string& text, bool& v) {
  v = (text == "1" || text == "true" || text == "yes");
}
void parse_into(const std::string& text, std::vector<double>& v) {
  v.clear();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(std::stod(item));
}

struct ConfigFill {
  std::map<std::string, std::string> kv;
  template <class T>
  void operator()(const CLI::Option* opt, const std::string& key, T& var) const {
    if (opt->count() > 0) return;  // CLI wins
    const auto it = kv.find(key);
    if (it != kv.end()) parse_into(it->second, var);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracsolve: 1D space-time fractional evolution solver"};
  app.require_subcommand(1);

  std::string r_case = "a", r_out;
  double r_alpha = 0.5, r_s = 0.75, r_tau = 0.01, r_tend = 0.1;
  int r_m = 64;
  bool r_nocorr = false;
  auto* run = app.add_subcommand("run", "single solve, L2 error at t_end");
  auto* ro_case = run->add_option("--case", r_case, "manufactured case, a or b")
                      ->check(CLI::IsMember({"a", "b"}));
  auto* ro_alpha = run->add_option("--alpha", r_alpha, "time order in (0,2]");
  auto* ro_s = run->add_option("--s", r_s, "space order in (0,1)");
  auto* ro_m = run->add_option("--m", r_m, "number of mesh subintervals");
  auto* ro_tau = run->add_option("--tau", r_tau, "time step");
  auto* ro_tend = run->add_option("--t-end", r_tend, "final time");
  auto* ro_nocorr = run->add_flag("--no-corrected-source", r_nocorr,
                                  "use F^n instead of the corrected G^n (alpha > 1)");
  auto* ro_out = run->add_option("--out", r_out, "output CSV path");

  std::string c_case = "a", c_axis = "time", c_out;
  double c_alpha = 0.5, c_s = 0.75, c_fixed = 0.03125, c_tend = 0.1;
  std::vector<double> c_sweep;
  bool c_nocorr = false;
  auto* conv = app.add_subcommand("converge", "convergence sweep over tau or h");
  auto* co_case = conv->add_option("--case", c_case, "manufactured case, a or b")
                      ->check(CLI::IsMember({"a", "b"}));
  auto* co_alpha = conv->add_option("--alpha", c_alpha, "time order in (0,2]");
  auto* co_s = conv->add_option("--s", c_s, "space order in (0,1)");
  auto* co_axis = conv->add_option("--axis", c_axis, "sweep axis: time or space")
                      ->check(CLI::IsMember({"time", "space"}));
  auto* co_fixed = conv->add_option("--fixed", c_fixed,
                                    "resolution held constant (h for time axis, tau for space axis)");
  auto* co_sweep = conv->add_option("--sweep", c_sweep,
                                    "comma-separated resolutions (tau values or h values)")
                       ->delimiter(',');
  auto* co_tend = conv->add_option("--t-end", c_tend, "final time");
  auto* co_nocorr = conv->add_flag("--no-corrected-source", c_nocorr,
                                   "use F^n instead of the corrected G^n (alpha > 1)");
  auto* co_out = conv->add_option("--out", c_out, "output CSV path");

  double w_alpha = 0.5, w_tau = 1.0;
  int w_n = 8;
  auto* wts = app.add_subcommand("weights", "print CQ weights omega_0..omega_n");
  auto* wo_alpha = wts->add_option("--alpha", w_alpha, "order in (0,2]");
  auto* wo_tau = wts->add_option("--tau", w_tau, "time step");
  auto* wo_n = wts->add_option("--n", w_n, "last weight index");

  try {
    app.parse(argc, argv);

    ConfigFill fill;
    if (const char* p = std::getenv("FRACSOLVE_CONFIG"))
      fill.kv = fracsolve::parse_config_file(p);

    if (*run) {
      fill(ro_case, "case", r_case);
      fill(ro_alpha, "alpha", r_alpha);
      fill(ro_s, "s", r_s);
      fill(ro_m, "m", r_m);
      fill(ro_tau, "tau", r_tau);
      fill(ro_tend, "t-end", r_tend);
      fill(ro_nocorr, "no-corrected-source", r_nocorr);
      fill(ro_out, "out", r_out);
      if (r_out.empty()) throw std::invalid_argument("run: --out is required");
      const auto mc = fracsolve::make_case(r_case[0], r_alpha, r_s);
      fracsolve::RunSpec rs;
      rs.m = r_m;
      rs.tau = r_tau;
      rs.t_end = r_tend;
      rs.use_corrected_source = !r_nocorr;
      const auto res = fracsolve::run_single(mc, rs);
      fracsolve::ConvergenceReport rep;
      rep.axis = "time";
      rep.mc = mc;
      rep.fixed = 2.0 / r_m;
      rep.t_end = r_tend;
      rep.use_corrected_source = rs.use_corrected_source;
      rep.rows = {{res.tau, res.error}};
      rep.fitted_rate = std::numeric_limits<double>::quiet_NaN();
      fracsolve::emit_csv(rep, r_out);
      std::printf("error = %.6g\n", res.error);
    } else if (*conv) {
      fill(co_case, "case", c_case);
      fill(co_alpha, "alpha", c_alpha);
      fill(co_s, "s", c_s);
      fill(co_axis, "axis", c_axis);
      fill(co_fixed, "fixed", c_fixed);
      fill(co_sweep, "sweep", c_sweep);
      fill(co_tend, "t-end", c_tend);
      fill(co_nocorr, "no-corrected-source", c_nocorr);
      fill(co_out, "out", c_out);
      if (c_out.empty()) throw std::invalid_argument("converge: --out is required");
      const auto mc = fracsolve::make_case(c_case[0], c_alpha, c_s);
      const auto rep = fracsolve::run_convergence(mc, c_axis, c_fixed, c_sweep,
                                                  c_tend, !c_nocorr);
      fracsolve::emit_csv(rep, c_out);
      std::printf("fitted_rate = %.6g\n", rep.fitted_rate);
    } else if (*wts) {
      fill(wo_alpha, "alpha", w_alpha);
      fill(wo_tau, "tau", w_tau);
      fill(wo_n, "n", w_n);
      const auto table = fracsolve::cq_weights(w_alpha, w_tau, w_n);
      for (double w : table.weights) std::printf("%.12g\n", w);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fracsolve: %s\n", e.what());
    return 1;
  }
  return 0;
}
