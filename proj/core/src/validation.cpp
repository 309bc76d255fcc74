#include "finclear/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "finclear/graph.hpp"
#include "finclear/net_model.hpp"

namespace finclear {

std::string AdmissibilityReport::summary() const {
  std::ostringstream os;
  for (const ConstraintViolation& v : families) {
    os << v.family << " worst " << v.violation;
    if (v.t >= 0) {
      os << " at (t=" << v.t;
      if (v.i >= 0) os << ",i=" << v.i;
      if (v.j >= 0) os << ",j=" << v.j;
      os << ")";
    }
    os << "; ";
  }
  return os.str();
}

double AdmissibilityReport::worst() const {
  double w = 0.0;
  for (const ConstraintViolation& v : families) w = std::max(w, v.violation);
  return w;
}

namespace {

void track(ConstraintViolation& worst, double violation, int t, int i, int j) {
  if (violation > worst.violation) {
    worst.violation = violation;
    worst.t = t;
    worst.i = i;
    worst.j = j;
  }
}

}  // namespace

AdmissibilityReport check_admissible(const DynamicInstance& instance,
                                     const PaymentSchedule& schedule,
                                     double tol) {
  const int n = instance.size();
  const int T = instance.horizon;
  const double scale =
      std::max(instance.liabilities.entries().maxCoeff(), [&] {
        double m = 0.0;
        for (const Vector& c : instance.inflows) m = std::max(m, c.maxCoeff());
        return m;
      }());
  const double eps = scaled_tol(tol, scale);

  AdmissibilityReport report;
  ConstraintViolation nonneg{"nonnegativity"};
  ConstraintViolation cap{"liability-cap"};
  ConstraintViolation worth{"nonnegative-worth"};

  if (schedule.periods() != T) {
    report.admissible = false;
    report.families.push_back(
        {"horizon-mismatch", static_cast<double>(schedule.periods()), -1, -1, -1});
    return report;
  }

  if (schedule.mode == ScheduleMode::matrix) {
    // Running weighted sums: sum_{k<=t} alpha^{t-k} P(k) <= alpha^t Pbar.
    Matrix acc = Matrix::Zero(n, n);
    Vector flow = Vector::Zero(n);
    for (int t = 0; t < T; ++t) {
      const Matrix& p = schedule.payments[t];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) track(nonneg, -p(i, j), t, i, j);
      acc = (t == 0) ? p : Matrix(instance.alpha * acc + p);
      const Matrix bound =
          std::pow(instance.alpha, t) * instance.liabilities.entries();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          track(cap, acc(i, j) - bound(i, j), t, i, j);
      flow += (p.transpose() - p) * Vector::Ones(n);
      const Vector cum = cumulative_inflow(instance.inflows, t);
      for (int i = 0; i < n; ++i) track(worth, -(cum(i) + flow(i)), t, i, -1);
    }
  } else {
    const RelativeLiabilityMatrix a = relative_liabilities(instance.liabilities);
    const Vector pbar = instance.liabilities.row_sums();
    Vector acc = Vector::Zero(n);
    Vector flow = Vector::Zero(n);
    for (int t = 0; t < T; ++t) {
      const Vector& p = schedule.vector_payments[t];
      for (int i = 0; i < n; ++i) track(nonneg, -p(i), t, i, -1);
      acc = (t == 0) ? p : Vector(instance.alpha * acc + p);
      const Vector bound = std::pow(instance.alpha, t) * pbar;
      for (int i = 0; i < n; ++i) track(cap, acc(i) - bound(i), t, i, -1);
      flow += a.entries().transpose() * p - p;
      const Vector cum = cumulative_inflow(instance.inflows, t);
      for (int i = 0; i < n; ++i) track(worth, -(cum(i) + flow(i)), t, i, -1);
    }
  }

  for (ConstraintViolation* v : {&nonneg, &cap, &worth}) {
    v->violation = std::max(v->violation, 0.0);
    report.families.push_back(*v);
  }
  report.admissible = report.worst() <= eps;
  return report;
}

PriorityReport check_absolute_priority(const DynamicInstance& instance,
                                       const PaymentSchedule& schedule,
                                       double tol) {
  const int n = instance.size();
  const int T = instance.horizon;
  const double eps =
      scaled_tol(tol, instance.liabilities.entries().maxCoeff());

  std::vector<Matrix> payments =
      schedule.mode == ScheduleMode::matrix
          ? schedule.payments
          : lift_prorata(relative_liabilities(instance.liabilities),
                         schedule.vector_payments);
  const std::vector<Matrix> nominal = evolve_nominal(
      instance.liabilities, payments, instance.alpha, 10.0 * tol);
  const std::vector<Vector> worth = evolve_worth(instance.inflows, payments);

  PriorityReport report;
  report.passed = true;
  for (int i = 0; i < n; ++i) {
    // First period at which node i pays its current nominal debt in full.
    int t_star = T;
    for (int t = 0; t < T; ++t) {
      bool full = true;
      for (int j = 0; j < n && full; ++j)
        if (nominal[t](i, j) - payments[t](i, j) > eps) full = false;
      if (full) {
        t_star = t;
        break;
      }
    }
    // Before t_star the whole balance must be paid out: w_i(t+1) = 0.
    for (int t = 0; t < t_star; ++t) {
      if (worth[t + 1](i) > eps) {
        report.passed = false;
        report.violations.push_back({i, t, worth[t + 1](i)});
      }
    }
  }
  return report;
}

AcyclicityReport check_payment_acyclicity(const std::vector<Matrix>& payments,
                                          double arc_tol) {
  AcyclicityReport report;
  report.passed = true;
  double scale = 0.0;
  for (const Matrix& p : payments) scale = std::max(scale, p.maxCoeff());
  const double eps = scaled_tol(arc_tol, scale);
  for (int t = 1; t < static_cast<int>(payments.size()); ++t) {
    Matrix arcs = (payments[t].array() > eps).cast<double>();
    const CondensationInfo info = strong_components(arcs);
    for (const StrongComponent& comp : info.components) {
      const bool self_loop =
          comp.nodes.size() == 1 && arcs(comp.nodes[0], comp.nodes[0]) > 0.0;
      if (!comp.is_trivial || self_loop) {
        report.passed = false;
        report.first_cyclic_period = t;
        report.cycle_nodes = comp.nodes;
        return report;
      }
    }
  }
  return report;
}

}  // namespace finclear
