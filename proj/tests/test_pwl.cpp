#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "desal/domain.hpp"
#include "desal/milp.hpp"
#include "desal/pump.hpp"
#include "desal/pwl.hpp"

using namespace desal;

namespace {
const std::string kFixture = DESAL_FIXTURE_DIR;
const auto kXY = [](double x, double y) { return x * y; };
}  // namespace

TEST_CASE("make_breaks covers the range and always includes hi") {
  const auto b = make_breaks(0.0, 10.0, 3.0);
  REQUIRE(b.size() == 5);
  CHECK(b.front() == 0.0);
  CHECK(b.back() == 10.0);
  const auto c = make_breaks(0.0, 9.0, 3.0);
  CHECK(c.size() == 4);
  CHECK(c.back() == 9.0);
}

TEST_CASE("vertex exactness to 1e-9") {
  const auto s = tabulate(kXY, make_breaks(0.0, 4.0, 1.0),
                          make_breaks(0.0, 6.0, 2.0));
  for (int m = 0; m < s.m_count(); ++m)
    for (int n = 0; n < s.n_count(); ++n) {
      CHECK(s.z[m][n] == doctest::Approx(s.x_breaks[m] * s.y_breaks[n])
                             .epsilon(1e-12));
      CHECK(std::abs(interpolate(s, s.x_breaks[m], s.y_breaks[n]) -
                     s.z[m][n]) <= 1e-9);
    }
}

TEST_CASE("patch center of xy with breaks {0,1}: diagonal tie -> 0.5") {
  // The center lies on the patch diagonal; the tie resolves to the lower
  // triangle {(0,0),(1,0),(1,1)} whose barycentric value is 0.5 (the true
  // product is 0.25, so the PWL overestimates by the half-diagonal sag).
  const auto s = tabulate(kXY, {0.0, 1.0}, {0.0, 1.0});
  CHECK(interpolate(s, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  const auto tp = locate_point(s, 0.5, 0.5);
  CHECK(!tp.upper);
  CHECK(tp.w0 == doctest::Approx(0.5));
  CHECK(tp.w1 == doctest::Approx(0.0));
  CHECK(tp.w2 == doctest::Approx(0.5));
}

TEST_CASE("locate_point weights reproduce interpolate on random queries") {
  const auto s = tabulate(kXY, make_breaks(0.0, 5.0, 1.0),
                          make_breaks(0.0, 5.0, 1.0));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng), y = u(rng);
    const auto tp = locate_point(s, x, y);
    CHECK(tp.w0 >= -1e-12);
    CHECK(tp.w1 >= -1e-12);
    CHECK(tp.w2 >= -1e-12);
    CHECK(tp.w0 + tp.w1 + tp.w2 == doctest::Approx(1.0).epsilon(1e-12));
    const double z0 = s.z[tp.a][tp.b];
    const double z1 = tp.upper ? s.z[tp.a][tp.b + 1] : s.z[tp.a + 1][tp.b];
    const double z2 = s.z[tp.a + 1][tp.b + 1];
    const double zw = tp.w0 * z0 + tp.w1 * z1 + tp.w2 * z2;
    CHECK(zw == doctest::Approx(interpolate(s, x, y)).epsilon(1e-12));
  }
}

TEST_CASE("interpolate throws outside the grid hull") {
  const auto s = tabulate(kXY, {0.0, 1.0}, {0.0, 1.0});
  CHECK_THROWS_AS(interpolate(s, -0.1, 0.5), DataError);
  CHECK_THROWS_AS(interpolate(s, 0.5, 1.2), DataError);
}

TEST_CASE("minimizing z over an xy block lands on a vertex exactly") {
  const auto s = tabulate([](double x, double y) { return (x - 2) * (y - 2); },
                          make_breaks(0.0, 4.0, 1.0), make_breaks(0.0, 4.0, 1.0));
  MilpModel m;
  const VarId on = m.add_var(1.0, 1.0, VarType::Continuous, "on");
  const auto block = emit_milp_block({&s}, on, m, "b");
  m.add_objective_term(block.z[0], 1.0);
  HighsSolver solver;
  SolverOptions opt;
  opt.verbose = false;
  const auto sol = solver.solve(m, opt);
  REQUIRE(sol.has_solution());
  // Enumerate every vertex as the oracle.
  double best = kInf;
  for (int a = 0; a < s.m_count(); ++a)
    for (int b = 0; b < s.n_count(); ++b) best = std::min(best, s.z[a][b]);
  CHECK(sol.objective == doctest::Approx(best).epsilon(1e-9));
  CHECK(check_block_solution(block, {&s}, sol, 1e-6).empty());
}

TEST_CASE("block ties its support to the on variable") {
  const auto s = tabulate(kXY, {0.0, 1.0, 2.0}, {0.0, 1.0, 2.0});
  MilpModel m;
  const VarId on = m.add_var(0.0, 1.0, VarType::Binary, "on");
  const auto block = emit_milp_block({&s}, on, m, "b");
  m.fix_var(on, 0.0);
  m.add_objective_term(block.z[0], 1.0);
  HighsSolver solver;
  const auto sol = solver.solve(m, SolverOptions{});
  REQUIRE(sol.has_solution());
  // All lambdas collapse with the off state; x = y = z = 0.
  CHECK(sol.value(block.x) == doctest::Approx(0.0));
  CHECK(sol.value(block.y) == doctest::Approx(0.0));
  CHECK(sol.value(block.z[0]) == doctest::Approx(0.0));
  CHECK(check_block_solution(block, {&s}, sol, 1e-6).empty());
}

TEST_CASE("check_block_solution rejects support spanning two triangles") {
  const auto s = tabulate(kXY, {0.0, 1.0}, {0.0, 1.0});
  MilpModel m;
  const VarId on = m.add_var(1.0, 1.0, VarType::Continuous, "on");
  const auto block = emit_milp_block({&s}, on, m, "b");
  MilpSolution sol;
  sol.status = SolveStatus::Optimal;
  sol.values.assign(m.num_vars(), 0.0);
  sol.values[on.index] = 1.0;
  // Mass on (1,0) and (0,1): not contained in one triangle.
  sol.values[block.lambda[1][0].index] = 0.5;
  sol.values[block.lambda[0][1].index] = 0.5;
  sol.values[block.u_lo[0][0].index] = 1.0;
  sol.values[block.x.index] = 0.5;
  sol.values[block.y.index] = 0.5;
  sol.values[block.z[0].index] = 0.0;
  CHECK(!check_block_solution(block, {&s}, sol, 1e-6).empty());
}

TEST_CASE("pump power PWL max relative error below 1% on the default grid") {
  const auto samples = load_pump_samples(kFixture + "/pump_curve.csv");
  const auto curve = fit_pump_curves(samples, 8);
  const auto power = tabulate(
      [&](double F, double w) { return eval_power(curve, F, w); },
      make_breaks(100.0, 325.0, 25.0), make_breaks(0.7, 1.3, 0.05));
  std::vector<std::pair<double, double>> pts;
  for (double F = 100.0; F <= 325.0; F += 2.5)
    for (double w = 0.7; w <= 1.3; w += 0.01) pts.push_back({F, w});
  const auto rep = error_report(
      power, [&](double F, double w) { return eval_power(curve, F, w); }, pts);
  CHECK(rep.max_rel < 0.01);
}

TEST_CASE("refining breaks never increases max_abs on the same samples") {
  const auto samples = load_pump_samples(kFixture + "/pump_curve.csv");
  const auto curve = fit_pump_curves(samples, 8);
  auto f = [&](double F, double w) { return eval_power(curve, F, w); };
  const auto coarse =
      tabulate(f, make_breaks(100.0, 325.0, 45.0), make_breaks(0.7, 1.3, 0.2));
  // Superset grid: every coarse break plus midpoints.
  auto refine = [](const std::vector<double>& b) {
    std::vector<double> r;
    for (size_t i = 0; i + 1 < b.size(); ++i) {
      r.push_back(b[i]);
      r.push_back((b[i] + b[i + 1]) / 2.0);
    }
    r.push_back(b.back());
    return r;
  };
  const auto fine =
      tabulate(f, refine(coarse.x_breaks), refine(coarse.y_breaks));
  std::vector<std::pair<double, double>> pts;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uf(100.0, 325.0), uw(0.7, 1.3);
  for (int i = 0; i < 2000; ++i) pts.push_back({uf(rng), uw(rng)});
  const auto rc = error_report(coarse, f, pts);
  const auto rf = error_report(fine, f, pts);
  CHECK(rf.max_abs <= rc.max_abs + 1e-9);
}
