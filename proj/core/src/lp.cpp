#include "finclear/lp.hpp"

#include <algorithm>
#include <cmath>

namespace finclear {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const LinearProgram& lp) {
  const int n = lp.num_vars();
  if (n <= 0) throw std::invalid_argument("lp: no variables");
  auto finite = [](double v) { return std::isfinite(v); };
  for (int j = 0; j < n; ++j)
    if (!finite(lp.objective(j)))
      throw std::invalid_argument("lp: non-finite objective coefficient");
  if (lp.G.size() > 0 && lp.G.cols() != n)
    throw std::invalid_argument("lp: inequality matrix width mismatch");
  if (lp.G.rows() != lp.h.size())
    throw std::invalid_argument("lp: inequality rhs length mismatch");
  if (lp.E.size() > 0 && lp.E.cols() != n)
    throw std::invalid_argument("lp: equality matrix width mismatch");
  if (lp.E.rows() != lp.f.size())
    throw std::invalid_argument("lp: equality rhs length mismatch");
  if (lp.lower.size() != n || lp.upper.size() != n)
    throw std::invalid_argument("lp: bound vector length mismatch");
  if (!lp.G.allFinite() || !lp.h.allFinite() || !lp.E.allFinite() ||
      !lp.f.allFinite() || !lp.lower.allFinite())
    throw std::invalid_argument("lp: non-finite constraint data");
  for (int j = 0; j < n; ++j) {
    if (std::isnan(lp.upper(j)))
      throw std::invalid_argument("lp: NaN upper bound");
    if (lp.upper(j) < lp.lower(j))
      throw std::invalid_argument("lp: empty bound interval");
  }
}

struct Tableau {
  Matrix rows;      // m x (ncols + 1), rhs in the last column
  Vector phase1;    // reduced-cost row, phase 1 (minimize artificials)
  Vector phase2;    // reduced-cost row, phase 2 (minimize -c'y)
  double obj1 = 0;  // current phase-1 objective
  std::vector<int> basis;
  int num_structural = 0;
  int first_artificial = 0;  // columns >= this are artificial
};

// Bland's rule pivot loop on the given cost row. Returns false on iteration
// cap. Sets *unbounded when no leaving row exists.
bool run_simplex(Tableau& tab, Vector& cost, double& objective, bool phase_one,
                 const LpOptions& opt, int& iterations, bool* unbounded) {
  const int m = static_cast<int>(tab.rows.rows());
  const int ncols = static_cast<int>(tab.rows.cols()) - 1;
  *unbounded = false;
  while (true) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (!phase_one && j >= tab.first_artificial) continue;
      if (cost(j) < -opt.tol_pivot) {
        enter = j;
        break;  // Bland: lowest index
      }
    }
    if (enter < 0) return true;

    int leave = -1;
    double best_ratio = kInf;
    for (int i = 0; i < m; ++i) {
      const double a = tab.rows(i, enter);
      if (a <= opt.tol_pivot) continue;
      const double ratio = tab.rows(i, ncols) / a;
      if (ratio < best_ratio - opt.tol_pivot ||
          (ratio < best_ratio + opt.tol_pivot && leave >= 0 &&
           tab.basis[i] < tab.basis[leave])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      *unbounded = true;
      return true;
    }

    // Pivot on (leave, enter).
    const double pivot = tab.rows(leave, enter);
    tab.rows.row(leave) /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double factor = tab.rows(i, enter);
      if (factor != 0.0) tab.rows.row(i) -= factor * tab.rows.row(leave);
    }
    auto sweep = [&](Vector& row, double& value) {
      const double factor = row(enter);
      if (factor != 0.0) {
        row -= factor * tab.rows.row(leave).head(ncols).transpose();
        // Entering variable moves to the (normalized) leave-row rhs; the
        // tracked objective changes by its reduced cost times that step.
        value += factor * tab.rows(leave, ncols);
      }
    };
    sweep(tab.phase1, tab.obj1);
    sweep(tab.phase2, objective);
    (void)cost;  // cost aliases phase1 or phase2
    tab.basis[leave] = enter;

    if (++iterations > opt.max_iterations) return false;
  }
}

}  // namespace

LinearProgram LinearProgram::make(int num_vars) {
  LinearProgram lp;
  lp.objective = Vector::Zero(num_vars);
  lp.G = Matrix::Zero(0, num_vars);
  lp.h = Vector::Zero(0);
  lp.E = Matrix::Zero(0, num_vars);
  lp.f = Vector::Zero(0);
  lp.lower = Vector::Zero(num_vars);
  lp.upper = Vector::Constant(num_vars, kInf);
  return lp;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

LpSolution solve(const LinearProgram& lp, const LpOptions& opt) {
  validate(lp);
  const int n = lp.num_vars();

  // Shift to y = x - lower >= 0 and gather rows: G rows, upper-bound rows
  // (y_j <= u_j - l_j), then E rows.
  struct Row {
    Vector coeffs;
    double rhs;
    bool equality;
  };
  std::vector<Row> rows;
  const Vector h_shift = lp.h - lp.G * lp.lower;
  for (int i = 0; i < lp.G.rows(); ++i)
    rows.push_back({lp.G.row(i).transpose(), h_shift(i), false});
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lp.upper(j))) {
      Vector e = Vector::Zero(n);
      e(j) = 1.0;
      rows.push_back({e, lp.upper(j) - lp.lower(j), false});
    }
  }
  const Vector f_shift = lp.f - lp.E * lp.lower;
  for (int i = 0; i < lp.E.rows(); ++i)
    rows.push_back({lp.E.row(i).transpose(), f_shift(i), true});

  const int m = static_cast<int>(rows.size());

  // Column layout: structural | slack/surplus | artificial.
  int num_slack = 0;
  for (const Row& r : rows)
    if (!r.equality) ++num_slack;
  // Artificials: equality rows and inequality rows with negative rhs.
  int num_artificial = 0;
  for (const Row& r : rows)
    if (r.equality || r.rhs < 0.0) ++num_artificial;

  const int ncols = n + num_slack + num_artificial;
  Tableau tab;
  tab.num_structural = n;
  tab.first_artificial = n + num_slack;
  tab.rows = Matrix::Zero(m, ncols + 1);
  tab.basis.assign(m, -1);

  int slack_col = n;
  int art_col = n + num_slack;
  for (int i = 0; i < m; ++i) {
    Vector coeffs = rows[i].coeffs;
    double rhs = rows[i].rhs;
    double sign = 1.0;
    if (rhs < 0.0) {
      coeffs = -coeffs;
      rhs = -rhs;
      sign = -1.0;
    }
    tab.rows.row(i).head(n) = coeffs.transpose();
    tab.rows(i, ncols) = rhs;
    if (!rows[i].equality) {
      tab.rows(i, slack_col) = sign;  // slack (+1) or surplus (-1)
      if (sign > 0.0) tab.basis[i] = slack_col;
      ++slack_col;
    }
    if (tab.basis[i] < 0) {
      tab.rows(i, art_col) = 1.0;
      tab.basis[i] = art_col;
      ++art_col;
    }
  }

  // Phase-1 reduced costs: minimize sum of artificials.
  tab.phase1 = Vector::Zero(ncols);
  for (int j = tab.first_artificial; j < ncols; ++j) tab.phase1(j) = 1.0;
  tab.obj1 = 0.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= tab.first_artificial) {
      tab.phase1 -= tab.rows.row(i).head(ncols).transpose();
      tab.obj1 += tab.rows(i, ncols);
    }
  }
  // Phase-2 reduced costs: minimize -c'y (basic slacks/artificials cost 0).
  tab.phase2 = Vector::Zero(ncols);
  tab.phase2.head(n) = -lp.objective;
  double obj2 = 0.0;

  LpSolution sol;
  bool unbounded = false;

  if (num_artificial > 0) {
    if (!run_simplex(tab, tab.phase1, obj2, true, opt, sol.iterations,
                     &unbounded)) {
      sol.status = LpStatus::iteration_limit;
      return sol;
    }
    if (tab.obj1 > opt.tol_feas) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    // Pivot any artificial still basic (at zero level) out of the basis.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < tab.first_artificial) continue;
      int enter = -1;
      for (int j = 0; j < tab.first_artificial; ++j) {
        if (std::abs(tab.rows(i, j)) > opt.tol_pivot) {
          enter = j;
          break;
        }
      }
      if (enter < 0) continue;  // redundant row, harmless to leave in place
      const double pivot = tab.rows(i, enter);
      tab.rows.row(i) /= pivot;
      for (int r = 0; r < m; ++r) {
        if (r == i) continue;
        const double factor = tab.rows(r, enter);
        if (factor != 0.0) tab.rows.row(r) -= factor * tab.rows.row(i);
      }
      for (Vector* cost : {&tab.phase1, &tab.phase2}) {
        const double factor = (*cost)(enter);
        if (factor != 0.0) {
          const int nc = static_cast<int>(tab.rows.cols()) - 1;
          *cost -= factor * tab.rows.row(i).head(nc).transpose();
        }
      }
      tab.basis[i] = enter;
    }
  }

  if (!run_simplex(tab, tab.phase2, obj2, false, opt, sol.iterations,
                   &unbounded)) {
    sol.status = LpStatus::iteration_limit;
    return sol;
  }
  if (unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  Vector y = Vector::Zero(n);
  const int rhs_col = static_cast<int>(tab.rows.cols()) - 1;
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < n) y(tab.basis[i]) = tab.rows(i, rhs_col);
  sol.x = y + lp.lower;
  sol.objective = lp.objective.dot(sol.x);
  sol.status = LpStatus::optimal;
  return sol;
}

FeasibilityCheck check_feasible(const LinearProgram& lp, const Vector& point,
                                double tol) {
  if (point.size() != lp.num_vars())
    throw std::invalid_argument("check_feasible: dimension mismatch");
  FeasibilityCheck out;
  auto consider = [&](double violation, const std::string& label) {
    if (violation > out.max_violation) {
      out.max_violation = violation;
      out.worst_constraint = label;
    }
  };
  const Vector gx = lp.G * point;
  for (int i = 0; i < lp.G.rows(); ++i)
    consider(gx(i) - lp.h(i), "inequality " + std::to_string(i));
  const Vector ex = lp.E * point;
  for (int i = 0; i < lp.E.rows(); ++i)
    consider(std::abs(ex(i) - lp.f(i)), "equality " + std::to_string(i));
  for (int j = 0; j < lp.num_vars(); ++j) {
    consider(lp.lower(j) - point(j), "lower bound " + std::to_string(j));
    if (std::isfinite(lp.upper(j)))
      consider(point(j) - lp.upper(j), "upper bound " + std::to_string(j));
  }
  out.feasible = out.max_violation <= tol;
  return out;
}

}  // namespace finclear
