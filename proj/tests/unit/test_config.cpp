#include <doctest.h>

#include <cmath>
#include <string>

#include "sgas_tools/config.hpp"

using namespace sgas;
using namespace sgas::tools;

namespace {
const std::string grid = "grid.x_min = 0\ngrid.x_max = 1\ngrid.nx = 2\ngrid.t_list = 1\n";
}

TEST_CASE("minimal document") {
  RunConfig c = parse_config("eta1 = 0.25\neta2 = 1\ngrid.x_min = 0\ngrid.x_max = 10\ngrid.nx = 11\ngrid.t_list = 1, 2\n");
  CHECK(c.scenario.gas.r.is_constant());
  CHECK(c.scenario.gas.r.constant_value() == 1.0);
  CHECK(!c.scenario.soliton);
  CHECK(c.grid.xs().size() == 11);
  CHECK(c.grid.xs().back() == 10.0);
  CHECK(c.grid.t_list.size() == 2);
  CHECK(c.solver == Solver::Gas);
}

TEST_CASE("soliton keys") {
  RunConfig c = parse_config(std::string("eta1 = 0.25\neta2 = 1\nkappa0 = 2\nx0 = -200\n") + grid);
  REQUIRE(c.scenario.soliton);
  CHECK(std::abs(c.scenario.soliton->center() + 200.0) < 1e-9);
  CHECK(c.scenario.soliton->sigma == 1);
  RunConfig d = parse_config(std::string("eta1 = 0.25\neta2 = 1\nkappa0 = 2\nchi = -0.5\n") + grid);
  CHECK(d.scenario.soliton->sigma == -1);
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(parse_config("eta1 = 0.25\neta2 = 1\nkappa0 = 0.9\nx0 = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eta1 = 0.25\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eta1 = 0.25\neta2 = 1\nsolver = fancy\n"), ConfigError);
  try {
    parse_config("eta1 = 0.25\neta2 = 1\neta1 = 0.3\n");
    FAIL("duplicate accepted");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("eta1") != std::string::npos);
  }
}

TEST_CASE("figure presets") {
  RunConfig f1 = figure_config(1);
  CHECK(f1.solver == Solver::Exact);
  REQUIRE(f1.solitons);
  CHECK(f1.solitons->kappa == std::vector<double>{0.25, 1.0});
  const double chi1 = 25.0 / (std::pow(2.0, 0.25) * 9.0 * std::exp(5.0));
  CHECK(std::abs(std::exp(f1.solitons->log_abs_chi[0]) / chi1 - 1.0) < 1e-14);
  CHECK(std::abs(std::exp(f1.solitons->log_abs_chi[1]) - 2.0) < 1e-14);
  CHECK(f1.grid.t_list == std::vector<double>{2.358, 7.073});
  for (int n = 2; n <= 5; ++n) CHECK(figure_config(n).solver == Solver::Asymptotic);
  CHECK_THROWS_AS(figure_config(6), ConfigError);
}

TEST_CASE("exact solver set") {
  RunConfig c = parse_config(std::string("eta1 = 0.25\neta2 = 1\nexact.n = 10\nkappa0 = 2\nx0 = -5\n") + grid);
  SolitonSet s = exact_soliton_set(c);
  CHECK(s.size() == 11);
}
