#pragma once

#include "finclear/types.hpp"

namespace finclear {

/// Pro-rata proportions: a_ij = pbar_ij / pbar_i when node i owes anything,
/// a unit self-loop otherwise. Always row-stochastic.
RelativeLiabilityMatrix relative_liabilities(const LiabilityMatrix& liabilities);

/// C(t) = sum_{k=0}^{t} c(k). Throws std::out_of_range for t outside 0..T-1.
Vector cumulative_inflow(const std::vector<Vector>& inflows, int t);

/// Nominal liability trajectory Pbar(0..T) under the carry-forward rule
/// Pbar(t+1) = alpha (Pbar(t) - P(t)). Payments exceeding the current
/// nominal by more than `tol` (scaled) raise std::invalid_argument naming the
/// offending (t,i,j); smaller excesses are clipped.
std::vector<Matrix> evolve_nominal(const LiabilityMatrix& liabilities,
                                   const std::vector<Matrix>& payments,
                                   double alpha,
                                   double tol = defaults::check_tol);

/// Closed form of the same trajectory at a single t:
/// alpha^t Pbar - sum_k alpha^{t-k} P(k).
Matrix nominal_closed_form(const LiabilityMatrix& liabilities,
                           const std::vector<Matrix>& payments, double alpha,
                           int t);

/// Pro-rata counterparts on out-payment vectors.
std::vector<Vector> evolve_nominal_prorata(const Vector& pbar,
                                           const std::vector<Vector>& payments,
                                           double alpha,
                                           double tol = defaults::check_tol);
Vector nominal_closed_form_prorata(const Vector& pbar,
                                   const std::vector<Vector>& payments,
                                   double alpha, int t);

/// Worth trajectory w(0..T), w(0) = 0,
/// w(t+1) = w(t) + c(t) + P'(t) 1 - P(t) 1. Worths may go negative here;
/// admissibility is checked separately.
std::vector<Vector> evolve_worth(const std::vector<Vector>& inflows,
                                 const std::vector<Matrix>& payments);
Vector worth_closed_form(const std::vector<Vector>& inflows,
                         const std::vector<Matrix>& payments, int t);

/// Lift a pro-rata vector schedule to payment matrices diag(p(t)) A.
std::vector<Matrix> lift_prorata(const RelativeLiabilityMatrix& proportions,
                                 const std::vector<Vector>& payments);

/// Objective weights a_0 > a_1 > ... > a_{T-1}. With eta = 0 these are the
/// discounted period counts (alpha^{T-t}-1)/(alpha-1) (or T-t when alpha = 1);
/// eta > 0 blends in the terminal residual penalty. Satisfy a_{t-1} > alpha a_t.
Vector stage_weights(int horizon, double alpha, double eta = 0.0);

/// System loss L: cumulative shortfall of actual vs nominal in-flows,
/// sum_t 1'(Pbar(t) - P(t))1. Requires an admissible schedule
/// (std::invalid_argument otherwise).
double loss(const DynamicInstance& instance, const PaymentSchedule& schedule);

/// Generalized cost J = (1-eta) L + eta 1' Pbar(T) 1. Equals L when eta = 0.
double eta_cost(const DynamicInstance& instance,
                const PaymentSchedule& schedule);

/// Weighted paid total sum_t a_t 1' P(t) 1; the LP objective. The identity
/// L = a_0 1' Pbar 1 - objective holds with eta = 0 weights.
double weighted_paid_total(const DynamicInstance& instance,
                           const PaymentSchedule& schedule);

}  // namespace finclear
