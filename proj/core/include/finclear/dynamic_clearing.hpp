#pragma once

#include "finclear/lp.hpp"
#include "finclear/types.hpp"

namespace finclear {

struct DynamicClearingResult {
  PaymentSchedule schedule;
  ClearingReport report;
};

/// Flattened multi-period matrix LP: variables are the payments on the
/// support of Pbar, ordered (t, i, j) lexicographic with the diagonal
/// excluded; objective weights come from stage_weights.
LinearProgram dynamic_matrix_lp(const DynamicInstance& instance);

/// Flattened multi-period pro-rata LP over [p(0..T-1)], variables ordered
/// (t, i).
LinearProgram dynamic_prorata_lp(const DynamicInstance& instance);

PaymentSchedule unflatten_matrix_schedule(const DynamicInstance& instance,
                                          const Vector& x);
PaymentSchedule unflatten_prorata_schedule(const DynamicInstance& instance,
                                           const Vector& x);

/// Full multi-period LP over unrestricted payment matrices.
DynamicClearingResult clear_dynamic_matrix(const DynamicInstance& instance);

/// Greedy relaxation: one single-period LP per t, maximizing that period's
/// total payments against carried-forward liabilities and worths. Always
/// feasible for the full problem; loss >= the full-LP loss.
DynamicClearingResult clear_dynamic_matrix_sequential(
    const DynamicInstance& instance);

/// Full multi-period pro-rata LP. The maximizer is unique.
DynamicClearingResult clear_dynamic_prorata(const DynamicInstance& instance);

/// Time-decoupled pro-rata solution: per-period clearing LPs with state
/// updates. Equals the full pro-rata LP solution.
DynamicClearingResult clear_dynamic_prorata_sequential(
    const DynamicInstance& instance);

struct MethodSummary {
  std::string method;
  double loss = 0.0;
  double objective = 0.0;
  double total_unpaid = 0.0;
  std::vector<int> default_set;
};

struct ScenarioComparison {
  std::vector<MethodSummary> methods;
  const MethodSummary* find(const std::string& name) const;
};

/// Runs the four dynamic solvers plus the static collapse at t = 0 (single
/// period on c(0)) and tabulates losses, unpaid totals and default sets.
ScenarioComparison scenario_compare(const DynamicInstance& instance);

}  // namespace finclear
