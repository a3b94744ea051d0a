#include "jsprr/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jsprr::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration limit";
  }
  return "?";
}

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& opt)
      : opt_(opt), k_(opt.kernels ? *opt.kernels : kernels::active()) {
    build(lp);
  }

  SimplexResult run() {
    SimplexResult result;
    const long cap = opt_.max_iterations > 0 ? opt_.max_iterations : 50L * static_cast<long>(rows_ + width_);

    if (n_artificial_ > 0) {
      // Phase one: minimize the sum of artificials.
      std::vector<double> phase_one(width_, 0.0);
      double phase_one_rhs = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!is_artificial(basis_[r])) continue;
        kernels::axpy_snap(k_, 1.0, row(r), phase_one, opt_.zero_tol);
        phase_one_rhs -= rhs_[r];
      }
      for (std::size_t j = first_artificial_; j < width_; ++j) phase_one[j] = 0.0;
      const Status st = iterate(phase_one, phase_one_rhs, &cost_row_, &cost_rhs_, result, cap);
      if (st != Status::Optimal) {
        result.status = st == Status::Unbounded ? Status::Infeasible : st;
        return result;
      }
      if (-phase_one_rhs > opt_.feasibility_tol * std::max<double>(1.0, static_cast<double>(rows_))) {
        result.status = Status::Infeasible;
        return result;
      }
      drive_out_artificials();
    }

    const Status st = iterate(cost_row_, cost_rhs_, nullptr, nullptr, result, cap);
    result.status = st;
    if (st != Status::Optimal) return result;

    result.values.assign(n_struct_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
      if (basis_[r] < n_struct_) result.values[basis_[r]] = std::max(0.0, rhs_[r]);
    double z = 0.0;
    for (std::size_t j = 0; j < n_struct_; ++j) z += cost_[j] * result.values[j];
    result.objective = z;
    return result;
  }

 private:
  std::span<double> row(std::size_t r) { return {tab_.data() + r * width_, width_}; }
  bool is_artificial(std::size_t col) const { return col >= first_artificial_; }

  void build(const LinearProgram& lp) {
    n_struct_ = lp.num_columns();
    rows_ = lp.rows.size();

    // Normalize to rhs >= 0.
    std::vector<Sense> sense(rows_);
    std::vector<double> sign(rows_, 1.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      sense[r] = lp.rows[r].sense;
      if (lp.rows[r].rhs < 0.0) {
        sign[r] = -1.0;
        if (sense[r] == Sense::LessEqual) sense[r] = Sense::GreaterEqual;
        else if (sense[r] == Sense::GreaterEqual) sense[r] = Sense::LessEqual;
      }
    }

    // Crash columns: appear in exactly one row, an equality, with positive coefficient.
    std::vector<int> occurrences(n_struct_, 0);
    std::vector<double> only_coef(n_struct_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& t : lp.rows[r].terms) {
        if (t.column < 0 || static_cast<std::size_t>(t.column) >= n_struct_)
          throw std::out_of_range("LP term references unknown column");
        if (t.coef == 0.0) continue;
        ++occurrences[t.column];
        only_coef[t.column] = t.coef * sign[r];
      }
    std::vector<std::size_t> crash(rows_, npos);
    std::vector<char> crash_used(n_struct_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (sense[r] != Sense::Equal) continue;
      for (const auto& t : lp.rows[r].terms) {
        const auto c = static_cast<std::size_t>(t.column);
        if (occurrences[c] == 1 && only_coef[c] > 0.0 && !crash_used[c]) {
          crash[r] = c;
          crash_used[c] = 1;
          break;
        }
      }
    }

    std::size_t n_slack = 0;
    for (std::size_t r = 0; r < rows_; ++r)
      if (sense[r] != Sense::Equal) ++n_slack;
    n_artificial_ = 0;
    for (std::size_t r = 0; r < rows_; ++r)
      if (sense[r] == Sense::GreaterEqual || (sense[r] == Sense::Equal && crash[r] == npos)) ++n_artificial_;
    first_artificial_ = n_struct_ + n_slack;
    pricing_width_ = first_artificial_;
    width_ = first_artificial_ + n_artificial_;

    tab_.assign(rows_ * width_, 0.0);
    rhs_.assign(rows_, 0.0);
    basis_.assign(rows_, npos);
    std::size_t next_slack = n_struct_;
    std::size_t next_art = first_artificial_;
    for (std::size_t r = 0; r < rows_; ++r) {
      auto rr = row(r);
      for (const auto& t : lp.rows[r].terms) rr[t.column] += t.coef * sign[r];
      rhs_[r] = lp.rows[r].rhs * sign[r];
      switch (sense[r]) {
        case Sense::LessEqual:
          rr[next_slack] = 1.0;
          basis_[r] = next_slack++;
          break;
        case Sense::GreaterEqual:
          rr[next_slack++] = -1.0;
          rr[next_art] = 1.0;
          basis_[r] = next_art++;
          break;
        case Sense::Equal:
          if (crash[r] != npos) {
            const double p = rr[crash[r]];
            k_.divide(rr.data(), width_, p);
            rhs_[r] /= p;
            rr[crash[r]] = 1.0;
            basis_[r] = crash[r];
          } else {
            rr[next_art] = 1.0;
            basis_[r] = next_art++;
          }
          break;
      }
    }

    cost_.assign(n_struct_, 0.0);
    for (std::size_t j = 0; j < n_struct_; ++j) cost_[j] = lp.cost[j];
    cost_row_.assign(width_, 0.0);
    std::copy(cost_.begin(), cost_.end(), cost_row_.begin());
    cost_rhs_ = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const std::size_t b = basis_[r];
      const double cb = b < n_struct_ ? cost_[b] : 0.0;
      if (cb == 0.0) continue;
      kernels::axpy_snap(k_, cb, row(r), cost_row_, opt_.zero_tol);
      cost_rhs_ -= cb * rhs_[r];
    }
    for (std::size_t r = 0; r < rows_; ++r) cost_row_[basis_[r]] = 0.0;
  }

  // Runs pivots on `obj` until optimal. `other` is a second objective row kept
  // in sync (the phase-two costs while phase one runs).
  Status iterate(std::vector<double>& obj, double& obj_rhs, std::vector<double>* other, double* other_rhs,
                 SimplexResult& result, long cap) {
    int degenerate_run = 0;
    bool bland = false;
    for (;;) {
      if (result.iterations >= cap) return Status::IterationLimit;
      std::size_t enter;
      if (bland) {
        enter = k_.find_first_below(obj.data(), pricing_width_, -opt_.optimality_tol);
        if (enter == pricing_width_) return Status::Optimal;
      } else {
        if (pricing_width_ == 0) return Status::Optimal;
        enter = k_.argmin(obj.data(), pricing_width_);
        if (obj[enter] >= -opt_.optimality_tol) return Status::Optimal;
      }

      std::size_t leave = npos;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = tab_[r * width_ + enter];
        if (a <= opt_.pivot_tol) continue;
        const double ratio = std::max(0.0, rhs_[r]) / a;
        const double slack = 1e-12 * std::max(1.0, std::fabs(best));
        if (leave == npos || ratio < best - slack) {
          best = ratio;
          leave = r;
        } else if (ratio <= best + slack && basis_[r] < basis_[leave]) {
          leave = r;
        }
      }
      if (leave == npos) return Status::Unbounded;

      const bool degenerate = best <= opt_.zero_tol;
      ++result.iterations;
      if (bland) ++result.bland_pivots;
      if (degenerate) {
        ++result.degenerate_pivots;
        if (++degenerate_run >= opt_.degenerate_run_before_bland) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(leave, enter, obj, obj_rhs, other, other_rhs);
    }
  }

  void eliminate(std::span<double> target, double& target_rhs, std::size_t r, std::size_t c, std::size_t lo,
                 std::size_t hi) {
    const double f = target[c];
    if (f == 0.0) return;
    k_.axpy_snap(f, tab_.data() + r * width_ + lo, target.data() + lo, hi - lo, opt_.zero_tol);
    target[c] = 0.0;
    const double v = target_rhs - f * rhs_[r];
    target_rhs = std::fabs(v) < opt_.zero_tol ? 0.0 : v;
  }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& obj, double& obj_rhs, std::vector<double>* other,
             double* other_rhs) {
    auto pr = row(r);
    const double p = pr[c];
    k_.divide(pr.data(), width_, p);
    rhs_[r] /= p;
    pr[c] = 1.0;

    std::size_t lo = 0;
    while (lo < width_ && pr[lo] == 0.0) ++lo;
    std::size_t hi = width_;
    while (hi > lo && pr[hi - 1] == 0.0) --hi;

    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      eliminate(row(i), rhs_[i], r, c, lo, hi);
    }
    eliminate(obj, obj_rhs, r, c, lo, hi);
    if (other) eliminate(*other, *other_rhs, r, c, lo, hi);
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      auto rr = row(r);
      std::size_t col = npos;
      for (std::size_t j = 0; j < first_artificial_; ++j)
        if (std::fabs(rr[j]) > opt_.pivot_tol) {
          col = j;
          break;
        }
      if (col == npos) continue;  // redundant row, artificial stays basic at zero
      pivot(r, col, cost_row_, cost_rhs_, nullptr, nullptr);
    }
  }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  const SimplexOptions& opt_;
  const kernels::KernelTable& k_;
  std::size_t rows_ = 0;
  std::size_t width_ = 0;
  std::size_t n_struct_ = 0;
  std::size_t n_artificial_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t pricing_width_ = 0;
  std::vector<double> tab_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_;
  std::vector<double> cost_row_;
  double cost_rhs_ = 0.0;
};

}  // namespace

SimplexResult solve_simplex(const LinearProgram& program, const SimplexOptions& options) {
  if (program.cost.size() != program.num_columns()) throw std::invalid_argument("cost vector size mismatch");
  Tableau tableau(program, options);
  return tableau.run();
}

}  // namespace jsprr::lp
