#include "desal/milp.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

#include "desal/domain.hpp"

namespace desal {

VarId MilpModel::add_var(double lb, double ub, VarType type, std::string name) {
  if (lb > ub) throw DataError("add_var: inverted bounds for " + name);
  VarId id{num_vars()};
  var_lb_.push_back(lb);
  var_ub_.push_back(ub);
  var_type_.push_back(type);
  obj_.push_back(0.0);
  var_name_.push_back(std::move(name));
  return id;
}

void MilpModel::add_row(double lo, const std::vector<LinTerm>& terms, double hi,
                        std::string name) {
  row_lo_.push_back(lo);
  row_hi_.push_back(hi);
  for (const auto& t : terms) {
    if (!t.var.valid() || t.var.index >= num_vars())
      throw DataError("add_row: dangling variable handle in " + name);
    if (t.coeff == 0.0) continue;
    row_index_.push_back(t.var.index);
    row_value_.push_back(t.coeff);
  }
  row_start_.push_back(static_cast<int>(row_index_.size()));
  row_name_.push_back(std::move(name));
}

void MilpModel::add_eq(const std::vector<LinTerm>& terms, double rhs,
                       std::string name) {
  add_row(rhs, terms, rhs, std::move(name));
}

void MilpModel::add_le(const std::vector<LinTerm>& terms, double rhs,
                       std::string name) {
  add_row(-kInf, terms, rhs, std::move(name));
}

void MilpModel::add_ge(const std::vector<LinTerm>& terms, double rhs,
                       std::string name) {
  add_row(rhs, terms, kInf, std::move(name));
}

void MilpModel::add_objective_term(VarId var, double coeff) {
  if (!var.valid() || var.index >= num_vars())
    throw DataError("add_objective_term: dangling variable handle");
  obj_[var.index] += coeff;
}

void MilpModel::fix_var(VarId var, double value) {
  set_bounds(var, value, value);
}

void MilpModel::set_bounds(VarId var, double lb, double ub) {
  if (!var.valid() || var.index >= num_vars())
    throw DataError("set_bounds: dangling variable handle");
  if (lb > ub) throw DataError("set_bounds: inverted bounds");
  var_lb_[var.index] = lb;
  var_ub_[var.index] = ub;
}

int MilpModel::num_binaries() const {
  int n = 0;
  for (auto t : var_type_)
    if (t == VarType::Binary) ++n;
  return n;
}

MilpModel::Raw MilpModel::raw() const {
  return {&var_lb_, &var_ub_, &var_type_, &obj_,
          &row_lo_, &row_hi_, &row_start_, &row_index_, &row_value_};
}

namespace {

std::string lp_name(const std::string& name, const char* prefix, int index) {
  if (name.empty()) return std::string(prefix) + std::to_string(index);
  std::string out = name;
  for (char& c : out)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) c = '_';
  return out;
}

}  // namespace

void MilpModel::write_lp(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open LP output file: " + path);
  out << "Minimize\n obj:";
  for (int j = 0; j < num_vars(); ++j)
    if (obj_[j] != 0.0)
      out << (obj_[j] >= 0 ? " + " : " - ") << std::abs(obj_[j]) << " "
          << lp_name(var_name_[j], "x", j);
  out << "\nSubject To\n";
  for (int i = 0; i < num_rows(); ++i) {
    auto write_terms = [&]() {
      for (int k = row_start_[i]; k < row_start_[i + 1]; ++k)
        out << (row_value_[k] >= 0 ? " + " : " - ") << std::abs(row_value_[k])
            << " " << lp_name(var_name_[row_index_[k]], "x", row_index_[k]);
    };
    const std::string rn = lp_name(row_name_[i], "c", i);
    const bool has_lo = row_lo_[i] > -kInf, has_hi = row_hi_[i] < kInf;
    if (has_lo && has_hi && row_lo_[i] == row_hi_[i]) {
      out << " " << rn << ":";
      write_terms();
      out << " = " << row_lo_[i] << "\n";
    } else {
      if (has_hi) {
        out << " " << rn << "_u:";
        write_terms();
        out << " <= " << row_hi_[i] << "\n";
      }
      if (has_lo) {
        out << " " << rn << "_l:";
        write_terms();
        out << " >= " << row_lo_[i] << "\n";
      }
    }
  }
  out << "Bounds\n";
  for (int j = 0; j < num_vars(); ++j) {
    out << " ";
    if (var_lb_[j] > -kInf) out << var_lb_[j] << " <= ";
    else out << "-inf <= ";
    out << lp_name(var_name_[j], "x", j);
    if (var_ub_[j] < kInf) out << " <= " << var_ub_[j];
    out << "\n";
  }
  out << "Binaries\n";
  for (int j = 0; j < num_vars(); ++j)
    if (var_type_[j] == VarType::Binary)
      out << " " << lp_name(var_name_[j], "x", j) << "\n";
  out << "End\n";
}

}  // namespace desal
