#pragma once

#include <functional>
#include <vector>

#include "desal/milp.hpp"

// Triangular convex-combination piecewise linearization of bivariate
// functions. Each grid patch is split along its diagonal into an upper and
// a lower triangle; binary selectors restrict the lambda support to the
// three vertices of one triangle.

namespace desal {

struct PwlSurface {
  std::vector<double> x_breaks;          // strictly increasing, size M
  std::vector<double> y_breaks;          // strictly increasing, size N
  std::vector<std::vector<double>> z;    // z[m][n]

  int m_count() const { return static_cast<int>(x_breaks.size()); }
  int n_count() const { return static_cast<int>(y_breaks.size()); }
};

PwlSurface tabulate(const std::function<double(double, double)>& f,
                    std::vector<double> x_breaks, std::vector<double> y_breaks);

// Barycentric interpolation on the triangle containing (x, y); ties on a
// patch diagonal resolve to the lower triangle. Throws DataError outside
// the grid hull.
double interpolate(const PwlSurface& s, double x, double y);

// Triangle membership of a point: patch indices, diagonal side, and the
// barycentric weights of its three vertices. Vertex order is (a,b), then
// (a+1,b) for the lower / (a,b+1) for the upper triangle, then (a+1,b+1).
struct TrianglePoint {
  int a = 0, b = 0;
  bool upper = false;
  double w0 = 0, w1 = 0, w2 = 0;
};
TrianglePoint locate_point(const PwlSurface& s, double x, double y);

// Handles into an emitted linearization block. Multiple surfaces over the
// same (x, y) grid may share one block; each z has its own output variable.
struct PwlBlock {
  VarId x;
  VarId y;
  std::vector<VarId> z;                  // one per surface
  std::vector<std::vector<VarId>> lambda;  // [m][n]
  std::vector<std::vector<VarId>> u_up;    // [m][n], patch triangles
  std::vector<std::vector<VarId>> u_lo;
};

// Emits lambda variables, triangle binaries, and the convex-combination
// constraints tied to the on/off variable: sum(lambda) = on,
// sum(u_up + u_lo) = on, and the vertex-activation inequality.
// All surfaces must share identical breakpoints.
PwlBlock emit_milp_block(const std::vector<const PwlSurface*>& surfaces,
                         VarId on_var, MilpModel& model,
                         const std::string& tag);

struct PwlErrorReport {
  double max_abs = 0;
  double max_rel = 0;
};

PwlErrorReport error_report(const PwlSurface& s,
                            const std::function<double(double, double)>& f,
                            const std::vector<std::pair<double, double>>& samples);

// Evenly spaced breakpoints covering [lo, hi] with the given step; the
// last interval is shortened so hi is always included.
std::vector<double> make_breaks(double lo, double hi, double step);

// Checks a solved block: lambda >= 0, sum(lambda) = on, support inside one
// triangle, and x/y/z equal to their lambda-weighted vertex sums.
std::vector<std::string> check_block_solution(const PwlBlock& block,
                                              const std::vector<const PwlSurface*>& surfaces,
                                              const MilpSolution& sol,
                                              double tol = 1e-6);

}  // namespace desal
