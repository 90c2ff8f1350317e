#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fracsolve/harness.hpp"

using namespace fracsolve;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string temp_path(const char* stem) {
  return std::string("harness_test_") + stem + ".tmp";
}

}  // namespace

TEST_CASE("fit_rate recovers synthetic slopes") {
  std::vector<std::pair<double, double>> rows;
  for (double r : {0.1, 0.05, 0.025, 0.0125})
    rows.emplace_back(r, 3.7 * std::pow(r, 1.37));
  REQUIRE(std::abs(fit_rate(rows) - 1.37) < 1e-10);

  REQUIRE_THROWS_AS(fit_rate({{0.1, 1.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(fit_rate({{0.1, 1.0}, {0.1, 2.0}}), std::invalid_argument);
}

TEST_CASE("steps_for accepts only integer step counts") {
  REQUIRE(detail::steps_for(0.1, 1.0 / 400) == 40);
  REQUIRE(detail::steps_for(0.1, 0.02) == 5);
  REQUIRE(detail::steps_for(1.0, 1.0 / 3.0) == 3);
  REQUIRE_THROWS_AS(detail::steps_for(0.1, 0.03), std::invalid_argument);
  REQUIRE_THROWS_AS(detail::steps_for(0.05, 0.1), std::invalid_argument);
}

TEST_CASE("render_csv format") {
  ConvergenceReport rep;
  rep.axis = "time";
  rep.mc = make_case('a', 0.5, 0.75);
  rep.rows = {{0.1, 0.0123456789}, {0.05, 0.00456}};
  rep.fitted_rate = 1.4375;
  const std::string want =
      "axis,alpha,s,case,resolution,error,fitted_rate\n"
      "time,0.5,0.75,a,0.1,0.0123457,1.4375\n"
      "time,0.5,0.75,a,0.05,0.00456,1.4375\n";
  REQUIRE(render_csv(rep) == want);
}

TEST_CASE("emit_csv writes rows and rejects bad input") {
  ConvergenceReport rep;
  rep.axis = "space";
  rep.mc = make_case('b', 1.5, 0.25);
  rep.rows = {{0.25, 1e-2}, {0.125, 5e-3}, {0.0625, 2.4e-3}, {0.03125, 1.2e-3}};
  rep.fitted_rate = 1.02;

  const std::string path = temp_path("emit");
  emit_csv(rep, path);
  const std::string text = slurp(path);
  // 4 data lines + 1 header
  REQUIRE(std::count(text.begin(), text.end(), '\n') == 5);
  REQUIRE(text.rfind("axis,alpha,s,case,resolution,error,fitted_rate\n", 0) == 0);

  SECTION("round-trip to 6 significant digits") {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    for (const auto& [r, e] : rep.rows) {
      REQUIRE(std::getline(in, line));
      std::istringstream ls(line);
      std::string tok;
      std::vector<std::string> f;
      while (std::getline(ls, tok, ',')) f.push_back(tok);
      REQUIRE(f.size() == 7);
      REQUIRE(f[0] == "space");
      REQUIRE(f[3] == "b");
      REQUIRE(std::abs(std::stod(f[1]) - 1.5) < 1e-12);
      REQUIRE(std::abs(std::stod(f[2]) - 0.25) < 1e-12);
      REQUIRE(std::abs(std::stod(f[4]) - r) < 1e-5 * r);
      REQUIRE(std::abs(std::stod(f[5]) - e) < 1e-5 * e);
      REQUIRE(std::abs(std::stod(f[6]) - 1.02) < 1e-5);
    }
  }

  rep.rows.clear();
  REQUIRE_THROWS_AS(emit_csv(rep, path), std::invalid_argument);
  rep.rows = {{0.25, 1e-2}};
  REQUIRE_THROWS_AS(emit_csv(rep, "/nonexistent_dir_zz/x.csv"),
                    std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("run_single at T=0 reduces to the projection error") {
  const ManufacturedCase mc = make_case('a', 0.5, 0.75);
  RunSpec rs;
  rs.m = 64;
  rs.t_end = 0.0;
  const RunResult res = run_single(mc, rs);
  REQUIRE(res.n_steps == 0);

  const UniformMesh1D mesh(64);
  const InitialData init = initial_data(mc);
  const Eigen::VectorXd v_h = l2_project(init.v, mesh, 8);
  auto exact0 = [&](double x) { return exact_solution(mc, x, 0.0); };
  const double want = l2_error(v_h, exact0, mesh, mc.s);
  REQUIRE(std::abs(res.error - want) <= 1e-15);
}

TEST_CASE("run_single full pipeline magnitude") {
  const ManufacturedCase mc = make_case('a', 0.5, 0.75);
  RunSpec rs;
  rs.m = 1024;
  rs.tau = 1.0 / 400;
  rs.t_end = 0.1;
  const RunResult res = run_single(mc, rs);
  REQUIRE(res.n_steps == 40);
  // soft magnitude band; the precise value is pinned by the convergence
  // sweeps, not here
  REQUIRE(res.error > 1e-4);
  REQUIRE(res.error < 2e-2);
}

TEST_CASE("run_convergence report structure") {
  const ManufacturedCase mc = make_case('a', 0.5, 0.75);
  const std::vector<double> sweep = {0.005, 0.02, 0.01};  // deliberately unsorted
  const ConvergenceReport rep =
      run_convergence(mc, "time", 2.0 / 16, sweep, 0.1);
  REQUIRE(rep.rows.size() == 3);
  REQUIRE(rep.rows[0].first == 0.02);
  REQUIRE(rep.rows[1].first == 0.01);
  REQUIRE(rep.rows[2].first == 0.005);
  REQUIRE(rep.fitted_rate == fit_rate(rep.rows));

  REQUIRE_THROWS_AS(run_convergence(mc, "both", 0.1, sweep, 0.1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(run_convergence(mc, "time", 0.1, {0.1, 0.05}, 0.1),
                    std::invalid_argument);
}

TEST_CASE("run_convergence space axis uses h as the resolution") {
  const ManufacturedCase mc = make_case('b', 1.5, 0.75);
  const ConvergenceReport rep = run_convergence(
      mc, "space", 0.01, {2.0 / 8, 2.0 / 16, 2.0 / 32}, 0.05);
  REQUIRE(rep.rows[0].first == 0.25);
  REQUIRE(rep.rows[1].first == 0.125);
  REQUIRE(rep.rows[2].first == 0.0625);
}

TEST_CASE("identical sweeps give byte-identical CSV") {
  const ManufacturedCase mc = make_case('a', 0.5, 0.75);
  const std::vector<double> sweep = {0.02, 0.01, 0.005};
  const ConvergenceReport r1 = run_convergence(mc, "time", 2.0 / 16, sweep, 0.1);
  const ConvergenceReport r2 = run_convergence(mc, "time", 2.0 / 16, sweep, 0.1);
  REQUIRE(render_csv(r1) == render_csv(r2));

  const std::string p1 = temp_path("det1"), p2 = temp_path("det2");
  emit_csv(r1, p1);
  emit_csv(r2, p2);
  REQUIRE(slurp(p1) == slurp(p2));
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("halving tau does not noticeably increase the error") {
  // monotonicity-up-to-noise probe on a cheap time-dominated configuration
  const ManufacturedCase mc = make_case('b', 1.5, 0.75);
  const ConvergenceReport rep = run_convergence(
      mc, "time", 2.0 / 256, {1.0 / 50, 1.0 / 100, 1.0 / 200}, 0.1);
  for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
    REQUIRE(rep.rows[i + 1].second <= 1.05 * rep.rows[i].second);
}

TEST_CASE("parse_config_file") {
  const std::string path = temp_path("cfg");
  {
    std::ofstream f(path);
    f << "# full-line comment\n"
      << "alpha = 0.25\n"
      << "  m=128  \n"
      << "out = run.csv # trailing comment\n"
      << "\n"
      << "no equals sign here\n"
      << "empty =\n";
  }
  const auto kv = parse_config_file(path);
  REQUIRE(kv.size() == 4);
  REQUIRE(kv.at("alpha") == "0.25");
  REQUIRE(kv.at("m") == "128");
  REQUIRE(kv.at("out") == "run.csv");
  REQUIRE(kv.at("empty").empty());
  std::remove(path.c_str());

  REQUIRE_THROWS_AS(parse_config_file("/nonexistent_dir_zz/a.cfg"),
                    std::runtime_error);
}
