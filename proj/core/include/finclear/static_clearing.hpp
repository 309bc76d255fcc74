#pragma once

#include "finclear/lp.hpp"
#include "finclear/types.hpp"

namespace finclear {

struct MatrixClearingResult {
  Matrix payments;
  ClearingReport report;
};

struct VectorClearingResult {
  Vector payments;
  ClearingReport report;
};

/// Feasible polytope of single-period payment matrices, flattened over the
/// support of the liability matrix in (i,j) lexicographic order (entries with
/// zero nominal liability are not variables). Objective: total payments.
LinearProgram static_matrix_lp(const StaticInstance& instance);

/// Variable order used by static_matrix_lp: the (i,j) pairs with pbar_ij > 0.
std::vector<std::pair<int, int>> matrix_support(const LiabilityMatrix& l);

Matrix unflatten_payments(const LiabilityMatrix& l, const Vector& x);

/// Feasible polytope of pro-rata out-payment vectors:
/// 0 <= p <= pbar, (I - A') p <= c. Objective: 1'p.
LinearProgram static_prorata_lp(const StaticInstance& instance);

/// Clearing payments with an unrestricted payment matrix, by LP with
/// objective f(P) = -1'P1. The returned vertex is deterministic but the
/// optimum may be non-unique; totals and certifications are the contract.
MatrixClearingResult clear_matrix(const StaticInstance& instance);

/// Pro-rata clearing vector by LP. Unique, objective-independent, and
/// dominating every feasible payment vector.
VectorClearingResult clear_prorata_lp(const StaticInstance& instance);

struct FdaResult {
  Vector payments;
  int iterations = 0;
  bool converged = false;
  std::vector<Vector> trace;  // iterates p^0, p^1, ...
};

/// Fictitious default algorithm: the monotone iteration
/// p <- min(pbar, c + A'p) started from pbar. Iterates are entrywise
/// non-increasing and converge to the greatest fixed point.
FdaResult clear_prorata_fda(const StaticInstance& instance,
                            int max_iters = defaults::fda_max_iters,
                            double tol = defaults::fda_tol);

struct ClearingCertification {
  bool feasible = false;
  bool min_equation = false;
  bool sink_payment = true;  // pro-rata mode only; vacuous otherwise
  double feasibility_violation = 0.0;
  double min_equation_residual = 0.0;
  bool all_passed() const { return feasible && min_equation && sink_payment; }
};

/// Certifies a payment matrix against the polytope and the absolute-priority
/// min-equation P1 = min(Pbar 1, c + P'1).
ClearingCertification certify_matrix_clearing(const StaticInstance& instance,
                                              const Matrix& payments,
                                              double tol = 1e-6);

/// Certifies a pro-rata payment vector: feasibility, the min-equation
/// p = min(pbar, c + A'p), and the sink-component condition (every sink
/// strong component of G[A] has a node paying in full; nodes with zero
/// nominal debt satisfy it trivially).
ClearingCertification certify_prorata_clearing(const StaticInstance& instance,
                                               const Vector& payments,
                                               double tol = 1e-6);

}  // namespace finclear
