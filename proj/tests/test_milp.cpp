#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "desal/milp.hpp"

using namespace desal;

TEST_CASE("small LP solves to the known optimum") {
  MilpModel m;
  const auto x = m.add_var(0.0, 10.0, VarType::Continuous, "x");
  const auto y = m.add_var(0.0, 10.0, VarType::Continuous, "y");
  m.add_le({{x, 1.0}, {y, 2.0}}, 14.0);
  m.add_ge({{x, 3.0}, {y, -1.0}}, 0.0);
  m.add_objective_term(x, -1.0);
  m.add_objective_term(y, -1.0);
  HighsSolver solver;
  const auto sol = solver.solve(m, SolverOptions{});
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-12.0).epsilon(1e-6));
  CHECK(sol.value(x) == doctest::Approx(10.0));
  CHECK(sol.value(y) == doctest::Approx(2.0));
}

TEST_CASE("binary knapsack solves to the enumeration optimum") {
  MilpModel m;
  const double value[] = {6, 5, 4, 3};
  const double weight[] = {4, 3, 2, 1};
  std::vector<VarId> xs;
  std::vector<LinTerm> cap;
  for (int i = 0; i < 4; ++i) {
    xs.push_back(m.add_var(0.0, 1.0, VarType::Binary, "x" + std::to_string(i)));
    m.add_objective_term(xs.back(), -value[i]);
    cap.push_back({xs.back(), weight[i]});
  }
  m.add_le(cap, 6.0);
  HighsSolver solver;
  const auto sol = solver.solve(m, SolverOptions{});
  REQUIRE(sol.status == SolveStatus::Optimal);
  // Enumerate all 16 subsets as the oracle.
  double best = 0;
  for (int mask = 0; mask < 16; ++mask) {
    double v = 0, w = 0;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) {
        v += value[i];
        w += weight[i];
      }
    if (w <= 6.0) best = std::max(best, v);
  }
  CHECK(-sol.objective == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("infeasible model is reported as such") {
  MilpModel m;
  const auto x = m.add_var(0.0, 1.0, VarType::Continuous, "x");
  m.add_ge({{x, 1.0}}, 2.0);
  HighsSolver solver;
  const auto sol = solver.solve(m, SolverOptions{});
  CHECK(sol.status == SolveStatus::Infeasible);
  CHECK(!sol.has_solution());
}

TEST_CASE("range rows constrain from both sides") {
  MilpModel m;
  const auto x = m.add_var(-kInf, kInf, VarType::Continuous, "x");
  m.add_row(3.0, {{x, 1.0}}, 5.0);
  m.add_objective_term(x, 1.0);
  HighsSolver solver;
  auto sol = solver.solve(m, SolverOptions{});
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.value(x) == doctest::Approx(3.0));
}

TEST_CASE("a MIP start seeds the incumbent") {
  MilpModel m;
  std::vector<LinTerm> row;
  std::vector<VarId> xs;
  for (int i = 0; i < 10; ++i) {
    xs.push_back(m.add_var(0.0, 1.0, VarType::Binary, "x" + std::to_string(i)));
    row.push_back({xs.back(), 1.0});
    m.add_objective_term(xs.back(), 1.0);
  }
  m.add_ge(row, 5.0);
  SolverOptions opt;
  opt.mip_start.assign(10, 1.0);  // feasible but suboptimal
  HighsSolver solver;
  const auto sol = solver.solve(m, opt);
  REQUIRE(sol.has_solution());
  CHECK(sol.objective == doctest::Approx(5.0));
}

TEST_CASE("objective coefficients accumulate per variable") {
  MilpModel m;
  const auto x = m.add_var(1.0, 1.0, VarType::Continuous, "x");
  m.add_objective_term(x, 2.0);
  m.add_objective_term(x, 3.0);
  HighsSolver solver;
  const auto sol = solver.solve(m, SolverOptions{});
  CHECK(sol.objective == doctest::Approx(5.0));
}

TEST_CASE("write_lp emits a readable LP file") {
  MilpModel m;
  const auto x = m.add_var(0.0, 4.0, VarType::Continuous, "flow");
  m.add_le({{x, 2.0}}, 6.0, "cap");
  m.add_objective_term(x, -1.0);
  const std::string path = "/tmp/desal_test_model.lp";
  m.write_lp(path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  CHECK(text.find("flow") != std::string::npos);
  std::remove(path.c_str());
}
