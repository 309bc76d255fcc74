#include "finclear/dynamic_clearing.hpp"

#include <algorithm>
#include <cmath>

#include "finclear/net_model.hpp"
#include "finclear/static_clearing.hpp"
#include "finclear/validation.hpp"

namespace finclear {

namespace {

void snap(Vector& x, double eps) {
  for (int i = 0; i < x.size(); ++i)
    if (std::abs(x(i)) < eps) x(i) = 0.0;
}

template <typename Derived>
auto clamp_nonneg(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseMax(0.0).eval();
}

std::vector<int> default_set_from_residual(const Vector& residual_out,
                                           double scale) {
  const double eps = scaled_tol(1e-6, scale);
  std::vector<int> out;
  for (int i = 0; i < residual_out.size(); ++i)
    if (residual_out(i) > eps) out.push_back(i);
  return out;
}

ClearingReport make_dynamic_report(const DynamicInstance& instance,
                                   const PaymentSchedule& schedule,
                                   const std::string& status) {
  const std::vector<Matrix> payments =
      schedule.mode == ScheduleMode::matrix
          ? schedule.payments
          : lift_prorata(relative_liabilities(instance.liabilities),
                         schedule.vector_payments);
  const std::vector<Matrix> nominal =
      evolve_nominal(instance.liabilities, payments, instance.alpha);
  const std::vector<Vector> worth = evolve_worth(instance.inflows, payments);

  ClearingReport rep;
  rep.residual = nominal.back();
  rep.residual_out = rep.residual.rowwise().sum();
  rep.total_unpaid = rep.residual.sum();
  double loss = 0.0;
  for (size_t t = 0; t < payments.size(); ++t)
    loss += (nominal[t] - payments[t]).sum();
  rep.loss = loss;
  rep.eta_cost = (1.0 - instance.eta) * loss + instance.eta * rep.total_unpaid;
  rep.objective = weighted_paid_total(instance, schedule);
  rep.worths = worth.back();
  rep.default_set = default_set_from_residual(
      rep.residual_out, instance.liabilities.entries().maxCoeff());
  rep.solver_status = status;

  rep.admissible = check_admissible(instance, schedule).admissible;
  rep.priority = check_absolute_priority(instance, schedule).passed;
  rep.acyclic = schedule.mode == ScheduleMode::matrix
                    ? check_payment_acyclicity(payments).passed
                    : true;  // guarantee applies to unrestricted matrices only
  return rep;
}

}  // namespace

LinearProgram dynamic_matrix_lp(const DynamicInstance& instance) {
  const int n = instance.size();
  const int T = instance.horizon;
  const auto support = matrix_support(instance.liabilities);
  const int m = static_cast<int>(support.size());
  const Vector weights = stage_weights(T, instance.alpha, instance.eta);

  LinearProgram lp = LinearProgram::make(std::max(T * m, 1));
  if (m == 0) {
    lp.upper.setZero();
    return lp;
  }
  for (int t = 0; t < T; ++t)
    for (int k = 0; k < m; ++k) lp.objective(t * m + k) = weights(t);

  const int num_rows = T * m + T * n;
  lp.G = Matrix::Zero(num_rows, T * m);
  lp.h = Vector::Zero(num_rows);
  int row = 0;
  // Liability caps: sum_{k<=t} alpha^{t-k} P(k) <= alpha^t Pbar, entrywise.
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < m; ++k) {
      for (int s = 0; s <= t; ++s)
        lp.G(row, s * m + k) = std::pow(instance.alpha, t - s);
      lp.h(row) = std::pow(instance.alpha, t) *
                  instance.liabilities(support[k].first, support[k].second);
      ++row;
    }
  }
  // Nonnegative worth: sum_{k<=t} (P(k)1 - P'(k)1) <= C(t).
  for (int t = 0; t < T; ++t) {
    const Vector cum = cumulative_inflow(instance.inflows, t);
    for (int i = 0; i < n; ++i) {
      for (int s = 0; s <= t; ++s)
        for (int k = 0; k < m; ++k) {
          if (support[k].first == i) lp.G(row, s * m + k) += 1.0;
          if (support[k].second == i) lp.G(row, s * m + k) -= 1.0;
        }
      lp.h(row) = cum(i);
      ++row;
    }
  }
  return lp;
}

LinearProgram dynamic_prorata_lp(const DynamicInstance& instance) {
  const int n = instance.size();
  const int T = instance.horizon;
  const RelativeLiabilityMatrix a = relative_liabilities(instance.liabilities);
  const Vector pbar = instance.liabilities.row_sums();
  const Vector weights = stage_weights(T, instance.alpha, instance.eta);

  LinearProgram lp = LinearProgram::make(T * n);
  for (int t = 0; t < T; ++t)
    for (int i = 0; i < n; ++i) lp.objective(t * n + i) = weights(t);

  lp.G = Matrix::Zero(2 * T * n, T * n);
  lp.h = Vector::Zero(2 * T * n);
  int row = 0;
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < n; ++i) {
      for (int s = 0; s <= t; ++s)
        lp.G(row, s * n + i) = std::pow(instance.alpha, t - s);
      lp.h(row) = std::pow(instance.alpha, t) * pbar(i);
      ++row;
    }
  }
  const Matrix flow = Matrix::Identity(n, n) - a.entries().transpose();
  for (int t = 0; t < T; ++t) {
    const Vector cum = cumulative_inflow(instance.inflows, t);
    for (int s = 0; s <= t; ++s)
      lp.G.block(row, s * n, n, n) = flow;
    lp.h.segment(row, n) = cum;
    row += n;
  }
  return lp;
}

PaymentSchedule unflatten_matrix_schedule(const DynamicInstance& instance,
                                          const Vector& x) {
  const auto support = matrix_support(instance.liabilities);
  const int m = static_cast<int>(support.size());
  const int n = instance.size();
  std::vector<Matrix> payments;
  for (int t = 0; t < instance.horizon; ++t) {
    Matrix p = Matrix::Zero(n, n);
    for (int k = 0; k < m; ++k)
      p(support[k].first, support[k].second) = x(t * m + k);
    payments.push_back(std::move(p));
  }
  return PaymentSchedule::from_matrices(std::move(payments));
}

PaymentSchedule unflatten_prorata_schedule(const DynamicInstance& instance,
                                           const Vector& x) {
  const int n = instance.size();
  std::vector<Vector> payments;
  for (int t = 0; t < instance.horizon; ++t)
    payments.push_back(x.segment(t * n, n));
  return PaymentSchedule::from_vectors(std::move(payments));
}

DynamicClearingResult clear_dynamic_matrix(const DynamicInstance& instance) {
  const LinearProgram lp = dynamic_matrix_lp(instance);
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error(
        std::string("clear_dynamic_matrix: LP solve failed: ") +
        to_string(sol.status));
  Vector x = sol.x;
  if (matrix_support(instance.liabilities).empty()) x.setZero();
  snap(x, scaled_tol(1e-9, instance.liabilities.entries().maxCoeff()));
  DynamicClearingResult result;
  result.schedule = unflatten_matrix_schedule(instance, x);
  result.report = make_dynamic_report(instance, result.schedule, "optimal");
  return result;
}

DynamicClearingResult clear_dynamic_matrix_sequential(
    const DynamicInstance& instance) {
  const int n = instance.size();
  Matrix nominal = instance.liabilities.entries();
  Vector worth = Vector::Zero(n);
  std::vector<Matrix> payments;
  for (int t = 0; t < instance.horizon; ++t) {
    const StaticInstance period(
        LiabilityMatrix(clamp_nonneg(nominal),
                        instance.liabilities.external_node()),
        clamp_nonneg(worth + instance.inflows[t]));
    const MatrixClearingResult cleared = clear_matrix(period);
    payments.push_back(cleared.payments);
    worth += instance.inflows[t] +
             (cleared.payments.transpose() - cleared.payments) *
                 Vector::Ones(n);
    nominal = instance.alpha * clamp_nonneg(nominal - cleared.payments);
  }
  DynamicClearingResult result;
  result.schedule = PaymentSchedule::from_matrices(std::move(payments));
  result.report = make_dynamic_report(instance, result.schedule, "optimal");
  return result;
}

DynamicClearingResult clear_dynamic_prorata(const DynamicInstance& instance) {
  const LinearProgram lp = dynamic_prorata_lp(instance);
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error(
        std::string("clear_dynamic_prorata: LP solve failed: ") +
        to_string(sol.status));
  Vector x = sol.x;
  snap(x, scaled_tol(1e-9, instance.liabilities.entries().maxCoeff()));
  DynamicClearingResult result;
  result.schedule = unflatten_prorata_schedule(instance, x);
  result.report = make_dynamic_report(instance, result.schedule, "optimal");
  return result;
}

DynamicClearingResult clear_dynamic_prorata_sequential(
    const DynamicInstance& instance) {
  const int n = instance.size();
  const RelativeLiabilityMatrix a = relative_liabilities(instance.liabilities);
  Vector nominal = instance.liabilities.row_sums();
  Vector worth = Vector::Zero(n);
  std::vector<Vector> payments;
  for (int t = 0; t < instance.horizon; ++t) {
    // Per-period clearing LP with the pro-rata matrix frozen at t = 0:
    // max 1'p  s.t.  0 <= p <= pbar*(t),  (I - A')p <= c(t) + w*(t).
    LinearProgram lp = LinearProgram::make(n);
    lp.objective = Vector::Ones(n);
    lp.upper = clamp_nonneg(nominal);
    lp.G = Matrix::Identity(n, n) - a.entries().transpose();
    lp.h = clamp_nonneg(worth + instance.inflows[t]);
    const LpSolution sol = solve(lp);
    if (sol.status != LpStatus::optimal)
      throw std::runtime_error(
          std::string("clear_dynamic_prorata_sequential: LP solve failed: ") +
          to_string(sol.status));
    Vector p = sol.x;
    snap(p, scaled_tol(1e-9, instance.liabilities.entries().maxCoeff()));
    payments.push_back(p);
    worth += instance.inflows[t] + a.entries().transpose() * p - p;
    nominal = instance.alpha * clamp_nonneg(nominal - p);
  }
  DynamicClearingResult result;
  result.schedule = PaymentSchedule::from_vectors(std::move(payments));
  result.report = make_dynamic_report(instance, result.schedule, "optimal");
  return result;
}

const MethodSummary* ScenarioComparison::find(const std::string& name) const {
  for (const MethodSummary& m : methods)
    if (m.method == name) return &m;
  return nullptr;
}

ScenarioComparison scenario_compare(const DynamicInstance& instance) {
  ScenarioComparison cmp;
  auto add = [&](const std::string& name, const ClearingReport& rep) {
    cmp.methods.push_back(
        {name, rep.loss, rep.objective, rep.total_unpaid, rep.default_set});
  };

  const StaticInstance at_t0(instance.liabilities, instance.inflows[0]);
  add("static-t0-matrix", clear_matrix(at_t0).report);
  add("static-t0-prorata", clear_prorata_lp(at_t0).report);
  add("dynamic-matrix-full", clear_dynamic_matrix(instance).report);
  add("dynamic-matrix-sequential",
      clear_dynamic_matrix_sequential(instance).report);
  add("dynamic-prorata-full", clear_dynamic_prorata(instance).report);
  add("dynamic-prorata-sequential",
      clear_dynamic_prorata_sequential(instance).report);
  return cmp;
}

}  // namespace finclear
