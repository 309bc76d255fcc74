#pragma once

// Seed-pinned random generators for property tests.

#include <array>
#include <random>

#include "finclear/types.hpp"

namespace finclear::testing {

using Rng = std::mt19937;

/// Random sparse liability network. The last node acts as an external-sector
/// sink (zero out-row) that every other node owes something to, which keeps
/// the default-cascade structure of the domain.
inline LiabilityMatrix random_liabilities(Rng& rng, int n,
                                          double density = 0.5) {
  std::uniform_real_distribution<double> value(1.0, 100.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Matrix p = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool to_sink = (j == n - 1);
      if (to_sink || coin(rng) < density) p(i, j) = value(rng);
    }
  }
  return LiabilityMatrix(p, n - 1);
}

inline Vector random_inflow(Rng& rng, int n, double max_value) {
  std::uniform_real_distribution<double> value(0.0, max_value);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Vector c = Vector::Zero(n);
  for (int i = 0; i + 1 < n; ++i)
    if (coin(rng) < 0.8) c(i) = value(rng);
  return c;
}

inline DynamicInstance random_dynamic_instance(Rng& rng, int max_n = 6,
                                               int max_t = 4) {
  std::uniform_int_distribution<int> pick_n(2, max_n);
  std::uniform_int_distribution<int> pick_t(1, max_t);
  std::uniform_int_distribution<int> pick_alpha(0, 2);
  const int n = pick_n(rng);
  const int T = pick_t(rng);
  const double alpha = std::array<double, 3>{1.0, 1.01, 1.1}[pick_alpha(rng)];
  LiabilityMatrix liabilities = random_liabilities(rng, n);
  const double scale = liabilities.entries().sum() / std::max(1, n - 1);
  std::vector<Vector> inflows;
  for (int t = 0; t < T; ++t) inflows.push_back(random_inflow(rng, n, scale));
  return DynamicInstance(std::move(liabilities), std::move(inflows), T, alpha);
}

inline StaticInstance random_static_instance(Rng& rng, int max_n = 8) {
  std::uniform_int_distribution<int> pick_n(2, max_n);
  const int n = pick_n(rng);
  LiabilityMatrix liabilities = random_liabilities(rng, n);
  const double scale = liabilities.entries().sum() / std::max(1, n - 1);
  return StaticInstance(std::move(liabilities), random_inflow(rng, n, scale));
}

/// Random admissible matrix schedule: start from random fractions of the
/// current nominal matrix each period, then scale down over-paying rows
/// (fictitious-default style repair) until worths stay nonnegative.
inline PaymentSchedule random_admissible_schedule(Rng& rng,
                                                  const DynamicInstance& inst) {
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  const int n = inst.size();
  Matrix nominal = inst.liabilities.entries();
  Vector worth = Vector::Zero(n);
  std::vector<Matrix> payments;
  for (int t = 0; t < inst.horizon; ++t) {
    Matrix p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) = fraction(rng) * nominal(i, j);
    for (int repair = 0; repair < 200; ++repair) {
      const Vector out = p * Vector::Ones(n);
      const Vector in = p.transpose() * Vector::Ones(n);
      const Vector available = worth + inst.inflows[t] + in;
      int worst = -1;
      double worst_deficit = 1e-12;
      for (int i = 0; i < n; ++i)
        if (out(i) - available(i) > worst_deficit) {
          worst_deficit = out(i) - available(i);
          worst = i;
        }
      if (worst < 0) break;
      const double scale =
          out(worst) > 0.0 ? std::max(available(worst), 0.0) / out(worst) : 0.0;
      p.row(worst) *= scale;
    }
    payments.push_back(p);
    worth += inst.inflows[t] + (p.transpose() - p) * Vector::Ones(n);
    nominal = (inst.alpha * (nominal - p)).cwiseMax(0.0);
  }
  return PaymentSchedule::from_matrices(std::move(payments));
}

}  // namespace finclear::testing
