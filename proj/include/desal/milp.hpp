#pragma once

#include <limits>
#include <string>
#include <vector>

// Minimal MILP abstraction: variables with bounds, linear range rows, a
// linear objective. Any back-end binds behind SolverInterface; no
// solver-specific constructs are used (triangle selection is enforced by
// explicit binaries, not SOS declarations).

namespace desal {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType { Continuous, Binary };

struct VarId {
  int index = -1;
  bool valid() const { return index >= 0; }
};

struct LinTerm {
  VarId var;
  double coeff = 0;
};

class MilpModel {
public:
  VarId add_var(double lb, double ub, VarType type, std::string name);
  // lo <= expr <= hi
  void add_row(double lo, const std::vector<LinTerm>& terms, double hi,
               std::string name = {});
  void add_eq(const std::vector<LinTerm>& terms, double rhs,
              std::string name = {});
  void add_le(const std::vector<LinTerm>& terms, double rhs,
              std::string name = {});
  void add_ge(const std::vector<LinTerm>& terms, double rhs,
              std::string name = {});
  // Minimization objective; coefficients accumulate per variable.
  void add_objective_term(VarId var, double coeff);

  void fix_var(VarId var, double value);
  void set_bounds(VarId var, double lb, double ub);

  int num_vars() const { return static_cast<int>(var_lb_.size()); }
  int num_rows() const { return static_cast<int>(row_lo_.size()); }
  int num_binaries() const;

  const std::string& var_name(VarId v) const { return var_name_[v.index]; }

  // Standard LP-format dump for debugging.
  void write_lp(const std::string& path) const;

  // Back-end access.
  struct Raw {
    const std::vector<double>* lb;
    const std::vector<double>* ub;
    const std::vector<VarType>* type;
    const std::vector<double>* obj;
    const std::vector<double>* row_lo;
    const std::vector<double>* row_hi;
    const std::vector<int>* row_start;
    const std::vector<int>* row_index;
    const std::vector<double>* row_value;
  };
  Raw raw() const;

private:
  std::vector<double> var_lb_, var_ub_, obj_;
  std::vector<VarType> var_type_;
  std::vector<std::string> var_name_;
  std::vector<double> row_lo_, row_hi_;
  std::vector<int> row_start_{0};
  std::vector<int> row_index_;
  std::vector<double> row_value_;
  std::vector<std::string> row_name_;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, NoSolution };

struct MilpSolution {
  SolveStatus status = SolveStatus::NoSolution;
  double objective = 0;
  double gap = 0;  // relative MIP gap of the incumbent
  std::vector<double> values;

  double value(VarId v) const { return values[v.index]; }
  bool has_solution() const {
    return status == SolveStatus::Optimal || status == SolveStatus::Feasible;
  }
};

struct SolverOptions {
  double gap = 1e-4;  // 0.01 %
  double time_limit_s = 600.0;
  int threads = 0;  // 0: solver default
  bool verbose = false;
  // Optional feasible starting point (one value per variable); back-ends
  // that support MIP starts seed their incumbent from it.
  std::vector<double> mip_start;
};

class SolverInterface {
public:
  virtual ~SolverInterface() = default;
  virtual MilpSolution solve(const MilpModel& model,
                             const SolverOptions& options) = 0;
};

// Bundled HiGHS back-end.
class HighsSolver : public SolverInterface {
public:
  MilpSolution solve(const MilpModel& model,
                     const SolverOptions& options) override;
};

}  // namespace desal
