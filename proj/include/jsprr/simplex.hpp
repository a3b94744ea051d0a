#pragma once

// Dense-tableau primal simplex for
//     minimize c'x  subject to  A x {<=,=,>=} b,  x >= 0.
//
// Pricing is Dantzig's most-negative reduced cost; after a run of degenerate
// pivots it switches to Bland's smallest-index rule until the objective moves
// again, which rules out cycling. Ratio-test ties go to the basic variable
// with the lowest index, so the optimal basis is deterministic.
//
// Equality rows that own a column appearing in no other row (with a positive
// coefficient) start with that column basic; remaining equality and >= rows
// get artificials and a phase-one pass.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "jsprr/kernels.hpp"

namespace jsprr::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Term {
  int column = 0;
  double coef = 0.0;
};

struct Row {
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

struct LinearProgram {
  std::vector<double> cost;  // one entry per column
  std::vector<Row> rows;

  std::size_t num_columns() const { return cost.size(); }
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(Status s);

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;  // reduced-cost threshold
  double pivot_tol = 1e-9;       // smallest usable pivot element
  double zero_tol = 1e-12;       // tableau entries below this become exact zeros
  long max_iterations = 0;       // 0: 50 * (rows + columns)
  int degenerate_run_before_bland = 50;
  const kernels::KernelTable* kernels = nullptr;  // nullptr: kernels::active()
};

struct SimplexResult {
  Status status = Status::IterationLimit;
  std::vector<double> values;  // primal values of the structural columns
  double objective = 0.0;
  long iterations = 0;
  long degenerate_pivots = 0;
  long bland_pivots = 0;
};

SimplexResult solve_simplex(const LinearProgram& program, const SimplexOptions& options = {});

}  // namespace jsprr::lp
