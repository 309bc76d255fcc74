#pragma once

#include "finclear/types.hpp"

namespace finclear {

/// Worst violation within one constraint family, with its location.
struct ConstraintViolation {
  std::string family;
  double violation = 0.0;
  int t = -1, i = -1, j = -1;
};

struct AdmissibilityReport {
  bool admissible = false;
  std::vector<ConstraintViolation> families;
  std::string summary() const;
  double worst() const;
};

/// Checks the admissibility constraints of a schedule: nonnegativity,
/// liability caps (with carried-forward interest), and nonnegative worth.
AdmissibilityReport check_admissible(const DynamicInstance& instance,
                                     const PaymentSchedule& schedule,
                                     double tol = defaults::check_tol);

struct PriorityViolation {
  int node = -1, t = -1;
  double withheld = 0.0;  // balance kept while debt was outstanding
};

struct PriorityReport {
  bool passed = false;
  std::vector<PriorityViolation> violations;
};

/// Absolute priority of debt claims: before the first period at which a node
/// pays its nominal obligation in full, it must pay out its entire balance
/// (equivalently w_i(t+1) = 0 for every earlier t).
PriorityReport check_absolute_priority(const DynamicInstance& instance,
                                       const PaymentSchedule& schedule,
                                       double tol = 1e-6);

struct AcyclicityReport {
  bool passed = false;
  int first_cyclic_period = -1;
  std::vector<int> cycle_nodes;
};

/// For t >= 1, the payment graph G[P(t)] must contain no directed cycles.
/// t = 0 is exempt. Entries below `arc_tol` (scaled) are treated as zero.
AcyclicityReport check_payment_acyclicity(const std::vector<Matrix>& payments,
                                          double arc_tol = 1e-9);

}  // namespace finclear
