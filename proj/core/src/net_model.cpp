#include "finclear/net_model.hpp"

#include <cmath>

#include "finclear/validation.hpp"

namespace finclear {

RelativeLiabilityMatrix relative_liabilities(const LiabilityMatrix& liabilities) {
  const int n = liabilities.size();
  const Vector pbar = liabilities.row_sums();
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (pbar(i) > 0.0) {
      a.row(i) = liabilities.entries().row(i) / pbar(i);
    } else {
      a(i, i) = 1.0;
    }
  }
  return RelativeLiabilityMatrix(std::move(a));
}

Vector cumulative_inflow(const std::vector<Vector>& inflows, int t) {
  if (t < 0 || t >= static_cast<int>(inflows.size()))
    throw std::out_of_range("cumulative_inflow: period " + std::to_string(t) +
                            " outside 0.." +
                            std::to_string(inflows.size() - 1));
  Vector c = inflows[0];
  for (int k = 1; k <= t; ++k) c += inflows[k];
  return c;
}

std::vector<Matrix> evolve_nominal(const LiabilityMatrix& liabilities,
                                   const std::vector<Matrix>& payments,
                                   double alpha, double tol) {
  const int n = liabilities.size();
  const double eps = scaled_tol(tol, liabilities.entries().maxCoeff());
  std::vector<Matrix> nominal;
  nominal.reserve(payments.size() + 1);
  nominal.push_back(liabilities.entries());
  for (int t = 0; t < static_cast<int>(payments.size()); ++t) {
    const Matrix& p = payments[t];
    if (p.rows() != n || p.cols() != n)
      throw std::invalid_argument("payment matrix dimension mismatch at t=" +
                                  std::to_string(t));
    Matrix next = nominal.back() - p;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (next(i, j) < -eps)
          throw std::invalid_argument(
              "payment exceeds current nominal at (t,i,j)=(" +
              std::to_string(t) + "," + std::to_string(i) + "," +
              std::to_string(j) + ")");
        if (next(i, j) < 0.0) next(i, j) = 0.0;  // clip LP round-off
      }
    nominal.push_back(alpha * next);
  }
  return nominal;
}

Matrix nominal_closed_form(const LiabilityMatrix& liabilities,
                           const std::vector<Matrix>& payments, double alpha,
                           int t) {
  Matrix out = std::pow(alpha, t) * liabilities.entries();
  for (int k = 0; k < t; ++k) out -= std::pow(alpha, t - k) * payments[k];
  return out;
}

std::vector<Vector> evolve_nominal_prorata(const Vector& pbar,
                                           const std::vector<Vector>& payments,
                                           double alpha, double tol) {
  const double eps = scaled_tol(tol, pbar.size() ? pbar.maxCoeff() : 0.0);
  std::vector<Vector> nominal;
  nominal.reserve(payments.size() + 1);
  nominal.push_back(pbar);
  for (int t = 0; t < static_cast<int>(payments.size()); ++t) {
    Vector next = nominal.back() - payments[t];
    for (int i = 0; i < next.size(); ++i) {
      if (next(i) < -eps)
        throw std::invalid_argument("payment exceeds current nominal at (t,i)=(" +
                                    std::to_string(t) + "," +
                                    std::to_string(i) + ")");
      if (next(i) < 0.0) next(i) = 0.0;
    }
    nominal.push_back(alpha * next);
  }
  return nominal;
}

Vector nominal_closed_form_prorata(const Vector& pbar,
                                   const std::vector<Vector>& payments,
                                   double alpha, int t) {
  Vector out = std::pow(alpha, t) * pbar;
  for (int k = 0; k < t; ++k) out -= std::pow(alpha, t - k) * payments[k];
  return out;
}

std::vector<Vector> evolve_worth(const std::vector<Vector>& inflows,
                                 const std::vector<Matrix>& payments) {
  if (inflows.size() != payments.size())
    throw std::invalid_argument("evolve_worth: inflow/payment length mismatch");
  const int n = inflows.empty() ? 0 : static_cast<int>(inflows[0].size());
  std::vector<Vector> worth;
  worth.reserve(payments.size() + 1);
  worth.push_back(Vector::Zero(n));
  for (size_t t = 0; t < payments.size(); ++t) {
    const Matrix& p = payments[t];
    worth.push_back(worth.back() + inflows[t] + p.transpose() * Vector::Ones(n) -
                    p * Vector::Ones(n));
  }
  return worth;
}

Vector worth_closed_form(const std::vector<Vector>& inflows,
                         const std::vector<Matrix>& payments, int t) {
  const int n = static_cast<int>(inflows.at(0).size());
  Vector w = Vector::Zero(n);
  if (t == 0) return w;
  w = cumulative_inflow(inflows, t - 1);
  for (int k = 0; k < t; ++k)
    w += (payments[k].transpose() - payments[k]) * Vector::Ones(n);
  return w;
}

std::vector<Matrix> lift_prorata(const RelativeLiabilityMatrix& proportions,
                                 const std::vector<Vector>& payments) {
  std::vector<Matrix> out;
  out.reserve(payments.size());
  for (const Vector& p : payments)
    out.push_back(p.asDiagonal() * proportions.entries());
  return out;
}

Vector stage_weights(int horizon, double alpha, double eta) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  if (eta < 0.0 || eta >= 1.0) throw std::invalid_argument("eta must be in [0,1)");
  Vector a(horizon);
  for (int t = 0; t < horizon; ++t) {
    // sum_{k=0}^{T-t-1} alpha^k
    double geometric = (alpha > 1.0)
                           ? (std::pow(alpha, horizon - t) - 1.0) / (alpha - 1.0)
                           : static_cast<double>(horizon - t);
    a(t) = (eta == 0.0)
               ? geometric
               : eta * std::pow(alpha, horizon - t) + (1.0 - eta) * geometric;
  }
  return a;
}

namespace {

std::vector<Matrix> schedule_matrices(const DynamicInstance& instance,
                                      const PaymentSchedule& schedule) {
  if (schedule.mode == ScheduleMode::matrix) return schedule.payments;
  return lift_prorata(relative_liabilities(instance.liabilities),
                      schedule.vector_payments);
}

void require_admissible(const DynamicInstance& instance,
                        const PaymentSchedule& schedule) {
  AdmissibilityReport rep = check_admissible(instance, schedule);
  if (!rep.admissible)
    throw std::invalid_argument("schedule is not admissible: " + rep.summary());
}

}  // namespace

double loss(const DynamicInstance& instance, const PaymentSchedule& schedule) {
  require_admissible(instance, schedule);
  const std::vector<Matrix> payments = schedule_matrices(instance, schedule);
  const std::vector<Matrix> nominal =
      evolve_nominal(instance.liabilities, payments, instance.alpha);
  double total = 0.0;
  for (size_t t = 0; t < payments.size(); ++t)
    total += (nominal[t] - payments[t]).sum();
  return total;
}

double eta_cost(const DynamicInstance& instance,
                const PaymentSchedule& schedule) {
  const double base = loss(instance, schedule);
  if (instance.eta == 0.0) return base;
  const std::vector<Matrix> payments = schedule_matrices(instance, schedule);
  const Matrix terminal = nominal_closed_form(
      instance.liabilities, payments, instance.alpha, instance.horizon);
  return (1.0 - instance.eta) * base + instance.eta * terminal.sum();
}

double weighted_paid_total(const DynamicInstance& instance,
                           const PaymentSchedule& schedule) {
  const std::vector<Matrix> payments = schedule_matrices(instance, schedule);
  const Vector weights =
      stage_weights(instance.horizon, instance.alpha, instance.eta);
  double total = 0.0;
  for (int t = 0; t < instance.horizon; ++t)
    total += weights(t) * payments[t].sum();
  return total;
}

}  // namespace finclear
