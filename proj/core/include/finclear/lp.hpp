#pragma once

#include <limits>

#include "finclear/types.hpp"

namespace finclear {

/// Dense linear program: maximize c'x subject to Gx <= h, Ex = f and
/// per-variable bounds (lower defaults to 0, upper to +inf).
struct LinearProgram {
  Vector objective;  // maximize
  Matrix G;          // may be 0 x n
  Vector h;
  Matrix E;  // may be 0 x n
  Vector f;
  Vector lower;  // size n
  Vector upper;  // size n, +inf where unbounded

  static LinearProgram make(int num_vars);
  int num_vars() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vector x;
  double objective = 0.0;
  int iterations = 0;
};

struct LpOptions {
  double tol_feas = 1e-8;
  double tol_pivot = 1e-10;
  int max_iterations = 200000;
};

/// Two-phase primal simplex on the dense tableau, Bland's anti-cycling rule
/// with lowest-index tie-breaking. Deterministic: a fixed instance and fixed
/// options always return the same vertex.
LpSolution solve(const LinearProgram& lp, const LpOptions& options = {});

struct FeasibilityCheck {
  bool feasible = false;
  double max_violation = 0.0;
  std::string worst_constraint;
};

FeasibilityCheck check_feasible(const LinearProgram& lp, const Vector& point,
                                double tol = 1e-8);

}  // namespace finclear
