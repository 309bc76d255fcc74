#include "finclear/static_clearing.hpp"

#include <algorithm>
#include <cmath>

#include "finclear/graph.hpp"
#include "finclear/net_model.hpp"

namespace finclear {

namespace {

// Entries within eps of zero are snapped; solver vertices are exact up to
// round-off and downstream graph logic compares against exact zero.
void snap(Vector& x, double eps) {
  for (int i = 0; i < x.size(); ++i)
    if (std::abs(x(i)) < eps) x(i) = 0.0;
}

std::vector<int> default_set_from_residual(const Vector& residual_out,
                                           double scale) {
  const double eps = scaled_tol(1e-6, scale);
  std::vector<int> out;
  for (int i = 0; i < residual_out.size(); ++i)
    if (residual_out(i) > eps) out.push_back(i);
  return out;
}

ClearingReport make_static_report(const StaticInstance& instance,
                                  const Matrix& payments,
                                  const std::string& status) {
  const int n = instance.size();
  ClearingReport rep;
  rep.residual = instance.liabilities.entries() - payments;
  rep.residual = rep.residual.cwiseMax(0.0);
  rep.residual_out = rep.residual.rowwise().sum();
  rep.total_unpaid = rep.residual.sum();
  rep.loss = rep.total_unpaid;
  rep.eta_cost = rep.total_unpaid;
  rep.objective = payments.sum();
  rep.worths = instance.inflow + payments.transpose() * Vector::Ones(n) -
               payments * Vector::Ones(n);
  rep.default_set = default_set_from_residual(
      rep.residual_out, instance.liabilities.entries().maxCoeff());
  rep.solver_status = status;
  return rep;
}

}  // namespace

std::vector<std::pair<int, int>> matrix_support(const LiabilityMatrix& l) {
  std::vector<std::pair<int, int>> support;
  for (int i = 0; i < l.size(); ++i)
    for (int j = 0; j < l.size(); ++j)
      if (l(i, j) > 0.0) support.emplace_back(i, j);
  return support;
}

Matrix unflatten_payments(const LiabilityMatrix& l, const Vector& x) {
  const auto support = matrix_support(l);
  Matrix p = Matrix::Zero(l.size(), l.size());
  for (size_t k = 0; k < support.size(); ++k)
    p(support[k].first, support[k].second) = x(static_cast<int>(k));
  return p;
}

LinearProgram static_matrix_lp(const StaticInstance& instance) {
  const int n = instance.size();
  const auto support = matrix_support(instance.liabilities);
  const int m = static_cast<int>(support.size());
  LinearProgram lp = LinearProgram::make(std::max(m, 1));
  if (m == 0) {  // no liabilities at all; degenerate single dummy variable
    lp.upper(0) = 0.0;
    return lp;
  }
  lp.objective = Vector::Ones(m);
  for (int k = 0; k < m; ++k)
    lp.upper(k) = instance.liabilities(support[k].first, support[k].second);
  // Flow constraints: P1 - P'1 <= c.
  lp.G = Matrix::Zero(n, m);
  lp.h = instance.inflow;
  for (int k = 0; k < m; ++k) {
    lp.G(support[k].first, k) += 1.0;
    lp.G(support[k].second, k) -= 1.0;
  }
  return lp;
}

LinearProgram static_prorata_lp(const StaticInstance& instance) {
  const int n = instance.size();
  const RelativeLiabilityMatrix a = relative_liabilities(instance.liabilities);
  LinearProgram lp = LinearProgram::make(n);
  lp.objective = Vector::Ones(n);
  lp.upper = instance.liabilities.row_sums();
  lp.G = Matrix::Identity(n, n) - a.entries().transpose();
  lp.h = instance.inflow;
  return lp;
}

MatrixClearingResult clear_matrix(const StaticInstance& instance) {
  const LinearProgram lp = static_matrix_lp(instance);
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error(std::string("clear_matrix: LP solve failed: ") +
                             to_string(sol.status));
  Vector x = sol.x;
  snap(x, scaled_tol(1e-9, instance.liabilities.entries().maxCoeff()));
  MatrixClearingResult result;
  result.payments = unflatten_payments(instance.liabilities, x);
  result.report = make_static_report(instance, result.payments, "optimal");
  const ClearingCertification cert =
      certify_matrix_clearing(instance, result.payments);
  result.report.admissible = cert.feasible;
  result.report.priority = cert.min_equation;
  result.report.acyclic = true;  // single period; no t >= 1 payment graphs
  return result;
}

VectorClearingResult clear_prorata_lp(const StaticInstance& instance) {
  const LinearProgram lp = static_prorata_lp(instance);
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error(
        std::string("clear_prorata_lp: LP solve failed: ") +
        to_string(sol.status));
  Vector p = sol.x;
  snap(p, scaled_tol(1e-9, instance.liabilities.entries().maxCoeff()));
  const RelativeLiabilityMatrix a = relative_liabilities(instance.liabilities);
  VectorClearingResult result;
  result.payments = p;
  result.report = make_static_report(
      instance, Matrix(p.asDiagonal() * a.entries()), "optimal");
  const ClearingCertification cert = certify_prorata_clearing(instance, p);
  result.report.admissible = cert.feasible;
  result.report.priority = cert.min_equation;
  result.report.acyclic = true;
  return result;
}

FdaResult clear_prorata_fda(const StaticInstance& instance, int max_iters,
                            double tol) {
  const RelativeLiabilityMatrix a = relative_liabilities(instance.liabilities);
  const Vector pbar = instance.liabilities.row_sums();
  FdaResult result;
  Vector p = pbar;
  result.trace.push_back(p);
  for (int k = 0; k < max_iters; ++k) {
    Vector next =
        pbar.cwiseMin(instance.inflow + a.entries().transpose() * p);
    const double step = (next - p).cwiseAbs().maxCoeff();
    p = next;
    result.trace.push_back(p);
    result.iterations = k + 1;
    if (step <= tol) {
      result.converged = true;
      break;
    }
  }
  result.payments = p;
  return result;
}

ClearingCertification certify_matrix_clearing(const StaticInstance& instance,
                                              const Matrix& payments,
                                              double tol) {
  const int n = instance.size();
  const double eps =
      scaled_tol(tol, instance.liabilities.entries().maxCoeff());
  ClearingCertification cert;

  double violation = 0.0;
  for (int i = 0; i < n; ++i) {
    violation = std::max(violation, std::abs(payments(i, i)));
    for (int j = 0; j < n; ++j) {
      violation = std::max(violation, -payments(i, j));
      violation =
          std::max(violation, payments(i, j) - instance.liabilities(i, j));
    }
  }
  const Vector out = payments * Vector::Ones(n);
  const Vector in = instance.inflow + payments.transpose() * Vector::Ones(n);
  violation = std::max(violation, (out - in).maxCoeff());
  cert.feasibility_violation = std::max(violation, 0.0);
  cert.feasible = cert.feasibility_violation <= eps;

  const Vector target = instance.liabilities.row_sums().cwiseMin(in);
  cert.min_equation_residual = (out - target).cwiseAbs().maxCoeff();
  cert.min_equation = cert.min_equation_residual <= eps;
  return cert;
}

ClearingCertification certify_prorata_clearing(const StaticInstance& instance,
                                               const Vector& payments,
                                               double tol) {
  const int n = instance.size();
  const double eps =
      scaled_tol(tol, instance.liabilities.entries().maxCoeff());
  const RelativeLiabilityMatrix a = relative_liabilities(instance.liabilities);
  const Vector pbar = instance.liabilities.row_sums();
  ClearingCertification cert;

  double violation = 0.0;
  for (int i = 0; i < n; ++i) {
    violation = std::max(violation, -payments(i));
    violation = std::max(violation, payments(i) - pbar(i));
  }
  const Vector in = instance.inflow + a.entries().transpose() * payments;
  violation = std::max(violation, (payments - in).maxCoeff());
  cert.feasibility_violation = std::max(violation, 0.0);
  cert.feasible = cert.feasibility_violation <= eps;

  cert.min_equation_residual =
      (payments - pbar.cwiseMin(in)).cwiseAbs().maxCoeff();
  cert.min_equation = cert.min_equation_residual <= eps;

  // Sink condition: every sink strong component of G[A] must hold
  // a node paying its nominal debt in full; zero-debt nodes pass trivially.
  cert.sink_payment = true;
  const CondensationInfo info = strong_components(a.entries());
  for (const StrongComponent& comp : info.components) {
    if (!comp.is_sink) continue;
    bool ok = false;
    for (int v : comp.nodes)
      if (pbar(v) == 0.0 || payments(v) >= pbar(v) - eps) ok = true;
    if (!ok) cert.sink_payment = false;
  }
  return cert;
}

}  // namespace finclear
