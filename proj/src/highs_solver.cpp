#include <Highs.h>

#include "desal/domain.hpp"
#include "desal/milp.hpp"

namespace desal {

MilpSolution HighsSolver::solve(const MilpModel& model,
                                const SolverOptions& options) {
  const auto raw = model.raw();

  HighsLp lp;
  lp.num_col_ = model.num_vars();
  lp.num_row_ = model.num_rows();
  lp.col_cost_ = *raw.obj;
  lp.col_lower_ = *raw.lb;
  lp.col_upper_ = *raw.ub;
  lp.row_lower_ = *raw.row_lo;
  lp.row_upper_ = *raw.row_hi;
  lp.sense_ = ObjSense::kMinimize;
  lp.a_matrix_.format_ = MatrixFormat::kRowwise;
  lp.a_matrix_.start_ = *raw.row_start;
  lp.a_matrix_.index_ = *raw.row_index;
  lp.a_matrix_.value_ = *raw.row_value;
  if (model.num_binaries() > 0) {
    lp.integrality_.resize(lp.num_col_, HighsVarType::kContinuous);
    for (int j = 0; j < lp.num_col_; ++j)
      if ((*raw.type)[j] == VarType::Binary)
        lp.integrality_[j] = HighsVarType::kInteger;
  }

  Highs highs;
  highs.setOptionValue("output_flag", options.verbose);
  highs.setOptionValue("mip_rel_gap", options.gap);
  highs.setOptionValue("time_limit", options.time_limit_s);
  if (options.threads > 0) highs.setOptionValue("threads", options.threads);
  if (highs.passModel(lp) != HighsStatus::kOk)
    throw DataError("HighsSolver: model rejected by back-end");
  if (static_cast<int>(options.mip_start.size()) == lp.num_col_) {
    HighsSolution start;
    start.col_value = options.mip_start;
    highs.setSolution(start);
  }
  highs.run();

  MilpSolution out;
  const HighsModelStatus status = highs.getModelStatus();
  const bool primal_feasible =
      highs.getInfo().primal_solution_status == kSolutionStatusFeasible;
  switch (status) {
    case HighsModelStatus::kOptimal:
      out.status = SolveStatus::Optimal;
      break;
    case HighsModelStatus::kInfeasible:
      out.status = SolveStatus::Infeasible;
      break;
    case HighsModelStatus::kUnbounded:
    case HighsModelStatus::kUnboundedOrInfeasible:
      out.status = SolveStatus::Unbounded;
      break;
    default:
      out.status = primal_feasible ? SolveStatus::Feasible
                                   : SolveStatus::NoSolution;
      break;
  }
  if (out.has_solution()) {
    out.objective = highs.getInfo().objective_function_value;
    out.gap = model.num_binaries() > 0 ? highs.getInfo().mip_gap : 0.0;
    out.values = highs.getSolution().col_value;
  }
  return out;
}

}  // namespace desal
