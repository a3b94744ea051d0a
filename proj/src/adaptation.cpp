#include "jsprr/adaptation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "jsprr/generator.hpp"
#include "jsprr/rng.hpp"

namespace jsprr {

ShiftedDemand demand_shift(const DemandSnapshot& snapshot, double churn, double zipf_shape, int services,
                           std::uint64_t seed) {
  if (!(churn >= 0.0 && churn <= 1.0)) throw std::invalid_argument("churn must lie in [0, 1]");
  const ZipfSampler popularity(zipf_shape, services);
  ShiftedDemand out{snapshot, 0};
  for (std::size_t u = 0; u < snapshot.size(); ++u) {
    Rng rng(seed, "churn", u);
    if (!rng.bernoulli(churn)) continue;
    out.snapshot[u] = popularity(rng);
    ++out.redrawn;
  }
  return out;
}

DemandSnapshot snapshot_of(const Instance& instance) {
  DemandSnapshot out;
  for (const auto& u : instance.users) out.push_back(u.service);
  return out;
}

DemandSequence churn_sequence(const Instance& instance, int periods, double churn, double zipf_shape,
                              std::uint64_t seed) {
  if (periods <= 0) throw std::invalid_argument("periods must be positive");
  DemandSequence seq;
  seq.snapshots.push_back(snapshot_of(instance));
  for (int t = 1; t < periods; ++t)
    seq.snapshots.push_back(demand_shift(seq.snapshots.back(), churn, zipf_shape,
                                         static_cast<int>(instance.num_services()),
                                         derive_seed(seed, "demand", static_cast<std::uint64_t>(t)))
                                .snapshot);
  return seq;
}

std::uint64_t period_seed(std::uint64_t master, std::size_t period) { return derive_seed(master, "period", period); }

Instance period_instance(const Instance& base, const DemandSnapshot& demand, const Placement& previous,
                         std::optional<double> budget) {
  if (demand.size() != base.num_users()) throw std::invalid_argument("demand snapshot size does not match users");
  Instance inst = base;
  for (std::size_t u = 0; u < demand.size(); ++u) inst.users[u].service = demand[u];
  inst.previous_placement.reset();
  inst.adaptation_budget.reset();
  if (budget) {
    inst.previous_placement = previous;
    inst.adaptation_budget = *budget;
  }
  return inst;
}

namespace {

// Re-adds previously held services that the rounding dropped when they still
// fit in storage. They cost nothing against the budget and only widen the
// routing options, so feasibility is preserved.
void retain_previous(const Instance& inst, IntegerSolution& sol) {
  const auto& xp = *inst.previous_placement;
  for (std::size_t n = 0; n < inst.num_stations(); ++n) {
    double stored = 0.0;
    for (std::size_t s = 0; s < inst.num_services(); ++s)
      if (sol.placement(n, s)) stored += inst.services[s].storage;
    for (std::size_t s = 0; s < inst.num_services(); ++s) {
      if (!xp(n, s) || sol.placement(n, s)) continue;
      if (stored + inst.services[s].storage > inst.stations[n].storage_cap + kFeasibilityTol) continue;
      sol.placement(n, s) = 1;
      stored += inst.services[s].storage;
    }
  }
}

}  // namespace

std::vector<PeriodResult> run_periods(const Instance& instance, const DemandSequence& demands, double budget,
                                      std::uint64_t seed, const PeriodOptions& options) {
  if (!(budget >= 0.0)) throw std::invalid_argument("adaptation budget must be nonnegative");
  std::vector<PeriodResult> out;
  Placement previous(instance.num_stations(), instance.num_services(), 0);
  for (std::size_t t = 0; t < demands.snapshots.size(); ++t) {
    const bool applied = std::isfinite(budget) && !(t == 0 && options.bootstrap_free);
    const Instance inst =
        period_instance(instance, demands.snapshots[t], previous, applied ? std::optional<double>(budget) : std::nullopt);

    SolveOptions solve;
    solve.trials = options.trials;
    solve.pick = options.pick;
    solve.workers = options.workers;
    solve.seed = period_seed(seed, t);
    const auto result = solve_randomized_rounding(inst, solve);
    const auto& trial = result.best();

    PeriodResult period;
    period.period = static_cast<int>(t);
    period.lp_objective = result.frac.objective;
    period.budget_applied = applied;
    period.solution = trial.repaired;
    if (applied) {
      period.raw_adaptation_spend = *trial.raw_report.adaptation_spend;
      retain_previous(inst, period.solution);
    } else {
      Instance charged = inst;
      charged.previous_placement = previous;
      charged.adaptation_budget = std::numeric_limits<double>::infinity();
      period.raw_adaptation_spend = adaptation_cost(charged, trial.raw.placement);
    }
    period.report = evaluate_solution(inst, period.solution);
    if (!period.report.feasible) throw std::logic_error("period solution infeasible after repair");
    period.cloud_load = period.report.cloud_load;
    period.adaptation_spend = period.report.adaptation_spend;
    previous = period.solution.placement;
    out.push_back(std::move(period));
  }
  return out;
}

}  // namespace jsprr
