#include "desal/pwl.hpp"

#include <algorithm>
#include <cmath>

#include "desal/domain.hpp"

namespace desal {

namespace {

void check_breaks(const std::vector<double>& breaks, const char* axis) {
  if (breaks.size() < 2)
    throw DataError(std::string("pwl: need at least 2 breakpoints on ") + axis);
  for (size_t i = 1; i < breaks.size(); ++i)
    if (breaks[i] <= breaks[i - 1])
      throw DataError(std::string("pwl: breakpoints not strictly increasing on ") + axis);
}

// Patch index of a coordinate; the last break maps into the last patch.
int locate(const std::vector<double>& breaks, double v) {
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), v);
  int i = static_cast<int>(it - breaks.begin()) - 1;
  return std::clamp(i, 0, static_cast<int>(breaks.size()) - 2);
}

}  // namespace

PwlSurface tabulate(const std::function<double(double, double)>& f,
                    std::vector<double> x_breaks,
                    std::vector<double> y_breaks) {
  check_breaks(x_breaks, "x");
  check_breaks(y_breaks, "y");
  PwlSurface s;
  s.x_breaks = std::move(x_breaks);
  s.y_breaks = std::move(y_breaks);
  s.z.assign(s.m_count(), std::vector<double>(s.n_count(), 0.0));
  for (int m = 0; m < s.m_count(); ++m)
    for (int n = 0; n < s.n_count(); ++n) {
      const double z = f(s.x_breaks[m], s.y_breaks[n]);
      if (!std::isfinite(z))
        throw DataError("pwl: function undefined at vertex (" +
                        std::to_string(s.x_breaks[m]) + ", " +
                        std::to_string(s.y_breaks[n]) + ")");
      s.z[m][n] = z;
    }
  return s;
}

TrianglePoint locate_point(const PwlSurface& s, double x, double y) {
  const double eps = 1e-9;
  if (x < s.x_breaks.front() - eps || x > s.x_breaks.back() + eps ||
      y < s.y_breaks.front() - eps || y > s.y_breaks.back() + eps)
    throw DataError("pwl: query point outside grid hull");
  TrianglePoint tp;
  tp.a = locate(s.x_breaks, x);
  tp.b = locate(s.y_breaks, y);
  const double u =
      (x - s.x_breaks[tp.a]) / (s.x_breaks[tp.a + 1] - s.x_breaks[tp.a]);
  const double v =
      (y - s.y_breaks[tp.b]) / (s.y_breaks[tp.b + 1] - s.y_breaks[tp.b]);
  // Triangles split along the (a,b)-(a+1,b+1) diagonal; ties take the
  // lower triangle.
  tp.upper = v > u;
  if (tp.upper) {
    tp.w0 = 1.0 - v;
    tp.w1 = v - u;
    tp.w2 = u;
  } else {
    tp.w0 = 1.0 - u;
    tp.w1 = u - v;
    tp.w2 = v;
  }
  return tp;
}

double interpolate(const PwlSurface& s, double x, double y) {
  const TrianglePoint tp = locate_point(s, x, y);
  const double z0 = s.z[tp.a][tp.b];
  const double z1 =
      tp.upper ? s.z[tp.a][tp.b + 1] : s.z[tp.a + 1][tp.b];
  const double z2 = s.z[tp.a + 1][tp.b + 1];
  return tp.w0 * z0 + tp.w1 * z1 + tp.w2 * z2;
}

PwlBlock emit_milp_block(const std::vector<const PwlSurface*>& surfaces,
                         VarId on_var, MilpModel& model,
                         const std::string& tag) {
  if (surfaces.empty()) throw DataError("emit_milp_block: no surfaces");
  const PwlSurface& base = *surfaces.front();
  for (const auto* s : surfaces)
    if (s->x_breaks != base.x_breaks || s->y_breaks != base.y_breaks)
      throw DataError("emit_milp_block: surfaces do not share breakpoints");

  const int M = base.m_count(), N = base.n_count();
  PwlBlock block;

  auto bounded = [](double lo, double hi) {
    return std::pair<double, double>{std::min(lo, 0.0), std::max(hi, 0.0)};
  };
  const auto [xlo, xhi] = bounded(base.x_breaks.front(), base.x_breaks.back());
  const auto [ylo, yhi] = bounded(base.y_breaks.front(), base.y_breaks.back());
  block.x = model.add_var(xlo, xhi, VarType::Continuous, tag + "_x");
  block.y = model.add_var(ylo, yhi, VarType::Continuous, tag + "_y");
  for (size_t k = 0; k < surfaces.size(); ++k) {
    double zmin = kInf, zmax = -kInf;
    for (const auto& col : surfaces[k]->z)
      for (double z : col) {
        zmin = std::min(zmin, z);
        zmax = std::max(zmax, z);
      }
    const auto [zlo, zhi] = bounded(zmin, zmax);
    block.z.push_back(model.add_var(zlo, zhi, VarType::Continuous,
                                    tag + "_z" + std::to_string(k)));
  }

  block.lambda.assign(M, std::vector<VarId>(N));
  for (int m = 0; m < M; ++m)
    for (int n = 0; n < N; ++n)
      block.lambda[m][n] = model.add_var(
          0.0, 1.0, VarType::Continuous,
          tag + "_l_" + std::to_string(m) + "_" + std::to_string(n));
  block.u_up.assign(M - 1, std::vector<VarId>(N - 1));
  block.u_lo.assign(M - 1, std::vector<VarId>(N - 1));
  for (int m = 0; m < M - 1; ++m)
    for (int n = 0; n < N - 1; ++n) {
      block.u_up[m][n] = model.add_var(
          0.0, 1.0, VarType::Binary,
          tag + "_uu_" + std::to_string(m) + "_" + std::to_string(n));
      block.u_lo[m][n] = model.add_var(
          0.0, 1.0, VarType::Binary,
          tag + "_ul_" + std::to_string(m) + "_" + std::to_string(n));
    }

  // sum(lambda) = on; each lambda <= on
  std::vector<LinTerm> sum_terms;
  for (int m = 0; m < M; ++m)
    for (int n = 0; n < N; ++n) sum_terms.push_back({block.lambda[m][n], 1.0});
  sum_terms.push_back({on_var, -1.0});
  model.add_eq(sum_terms, 0.0, tag + "_lsum");
  for (int m = 0; m < M; ++m)
    for (int n = 0; n < N; ++n)
      model.add_le({{block.lambda[m][n], 1.0}, {on_var, -1.0}}, 0.0);

  // x, y, z as lambda-weighted vertex sums
  auto weighted_eq = [&](VarId out, auto value_at, const std::string& name) {
    std::vector<LinTerm> terms{{out, -1.0}};
    for (int m = 0; m < M; ++m)
      for (int n = 0; n < N; ++n)
        terms.push_back({block.lambda[m][n], value_at(m, n)});
    model.add_eq(terms, 0.0, name);
  };
  weighted_eq(block.x, [&](int m, int) { return base.x_breaks[m]; }, tag + "_xdef");
  weighted_eq(block.y, [&](int, int n) { return base.y_breaks[n]; }, tag + "_ydef");
  for (size_t k = 0; k < surfaces.size(); ++k)
    weighted_eq(block.z[k],
                [&](int m, int n) { return surfaces[k]->z[m][n]; },
                tag + "_zdef" + std::to_string(k));

  // exactly one triangle selected while on
  std::vector<LinTerm> tri_terms;
  for (int m = 0; m < M - 1; ++m)
    for (int n = 0; n < N - 1; ++n) {
      tri_terms.push_back({block.u_up[m][n], 1.0});
      tri_terms.push_back({block.u_lo[m][n], 1.0});
    }
  tri_terms.push_back({on_var, -1.0});
  model.add_eq(tri_terms, 0.0, tag + "_usum");

  // vertex activation: lambda only on the selected triangle's vertices.
  // lower(a,b) covers (a,b), (a+1,b), (a+1,b+1); upper(a,b) covers
  // (a,b), (a,b+1), (a+1,b+1).
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < N; ++j) {
      std::vector<LinTerm> terms{{block.lambda[i][j], 1.0}};
      auto patch = [&](int a, int b) { return a >= 0 && a < M - 1 && b >= 0 && b < N - 1; };
      if (patch(i, j)) {
        terms.push_back({block.u_lo[i][j], -1.0});
        terms.push_back({block.u_up[i][j], -1.0});
      }
      if (patch(i - 1, j)) terms.push_back({block.u_lo[i - 1][j], -1.0});
      if (patch(i, j - 1)) terms.push_back({block.u_up[i][j - 1], -1.0});
      if (patch(i - 1, j - 1)) {
        terms.push_back({block.u_lo[i - 1][j - 1], -1.0});
        terms.push_back({block.u_up[i - 1][j - 1], -1.0});
      }
      model.add_le(terms, 0.0);
    }
  return block;
}

PwlErrorReport error_report(
    const PwlSurface& s, const std::function<double(double, double)>& f,
    const std::vector<std::pair<double, double>>& samples) {
  PwlErrorReport rep;
  for (const auto& [x, y] : samples) {
    const double approx = interpolate(s, x, y);
    const double exact = f(x, y);
    const double abs_err = std::abs(approx - exact);
    rep.max_abs = std::max(rep.max_abs, abs_err);
    if (std::abs(exact) > 1e-12)
      rep.max_rel = std::max(rep.max_rel, abs_err / std::abs(exact));
  }
  return rep;
}

std::vector<double> make_breaks(double lo, double hi, double step) {
  if (!(hi > lo) || step <= 0) throw DataError("make_breaks: bad range or step");
  std::vector<double> breaks;
  for (double v = lo; v < hi - 1e-9; v += step) breaks.push_back(v);
  breaks.push_back(hi);
  return breaks;
}

std::vector<std::string> check_block_solution(
    const PwlBlock& block, const std::vector<const PwlSurface*>& surfaces,
    const MilpSolution& sol, double tol) {
  std::vector<std::string> issues;
  const PwlSurface& base = *surfaces.front();
  const int M = base.m_count(), N = base.n_count();

  double lam_sum = 0;
  for (int m = 0; m < M; ++m)
    for (int n = 0; n < N; ++n) {
      const double l = sol.value(block.lambda[m][n]);
      if (l < -tol) issues.push_back("negative lambda");
      lam_sum += l;
    }

  int active_a = -1, active_b = -1;
  bool active_up = false;
  int active_count = 0;
  for (int a = 0; a < M - 1; ++a)
    for (int b = 0; b < N - 1; ++b) {
      if (sol.value(block.u_up[a][b]) > 0.5) {
        ++active_count;
        active_a = a;
        active_b = b;
        active_up = true;
      }
      if (sol.value(block.u_lo[a][b]) > 0.5) {
        ++active_count;
        active_a = a;
        active_b = b;
        active_up = false;
      }
    }

  if (lam_sum < 0.5) {
    // off state: everything zero
    if (active_count != 0) issues.push_back("triangle selected while off");
    if (std::abs(sol.value(block.x)) > tol || std::abs(sol.value(block.y)) > tol)
      issues.push_back("nonzero x/y while off");
    return issues;
  }

  if (std::abs(lam_sum - 1.0) > tol) issues.push_back("lambda sum != 1 while on");
  if (active_count != 1) {
    issues.push_back("lambda support spans " + std::to_string(active_count) +
                     " triangles");
    return issues;
  }

  auto in_triangle = [&](int m, int n) {
    const int a = active_a, b = active_b;
    if (active_up)
      return (m == a && n == b) || (m == a && n == b + 1) ||
             (m == a + 1 && n == b + 1);
    return (m == a && n == b) || (m == a + 1 && n == b) ||
           (m == a + 1 && n == b + 1);
  };
  double x = 0, y = 0;
  std::vector<double> z(surfaces.size(), 0.0);
  for (int m = 0; m < M; ++m)
    for (int n = 0; n < N; ++n) {
      const double l = sol.value(block.lambda[m][n]);
      if (l > tol && !in_triangle(m, n))
        issues.push_back("lambda support outside the selected triangle");
      x += l * base.x_breaks[m];
      y += l * base.y_breaks[n];
      for (size_t k = 0; k < surfaces.size(); ++k)
        z[k] += l * surfaces[k]->z[m][n];
    }
  if (std::abs(x - sol.value(block.x)) > tol) issues.push_back("x mismatch");
  if (std::abs(y - sol.value(block.y)) > tol) issues.push_back("y mismatch");
  for (size_t k = 0; k < surfaces.size(); ++k)
    if (std::abs(z[k] - sol.value(block.z[k])) > tol)
      issues.push_back("z mismatch");
  return issues;
}

}  // namespace desal
