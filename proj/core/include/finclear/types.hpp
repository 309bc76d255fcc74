#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace finclear {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Nominal obligations between nodes: entry (i,j) is the payment due from i
/// to j. Nonnegative, zero diagonal. The external sector, when present, is an
/// ordinary node with an all-zero row.
class LiabilityMatrix {
 public:
  LiabilityMatrix(Matrix entries, std::optional<int> external_node = {});

  int size() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  std::optional<int> external_node() const { return external_node_; }

  /// Row sums, i.e. the total nominal out-payment of each node.
  Vector row_sums() const { return entries_.rowwise().sum(); }

 private:
  Matrix entries_;
  std::optional<int> external_node_;
};

/// Row-stochastic matrix of payment proportions derived from a liability
/// matrix. Rows of all-zero liabilities get a unit self-loop.
class RelativeLiabilityMatrix {
 public:
  explicit RelativeLiabilityMatrix(Matrix entries);

  int size() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

/// Single-period instance: liabilities plus the external cash inflow vector.
struct StaticInstance {
  LiabilityMatrix liabilities;
  Vector inflow;

  StaticInstance(LiabilityMatrix liabilities, Vector inflow);
  int size() const { return liabilities.size(); }
};

/// Multi-period instance: initial liabilities, an inflow stream over the
/// horizon, the per-period interest factor on past-due amounts, and the
/// terminal-penalty weight used in the objective.
struct DynamicInstance {
  LiabilityMatrix liabilities;
  std::vector<Vector> inflows;  // c(0), ..., c(T-1)
  int horizon;                  // T >= 1
  double alpha = 1.0;           // >= 1
  double eta = 0.0;             // in [0, 1)

  DynamicInstance(LiabilityMatrix liabilities, std::vector<Vector> inflows,
                  int horizon, double alpha = 1.0, double eta = 0.0);
  int size() const { return liabilities.size(); }
};

enum class ScheduleMode { matrix, prorata };

/// A sequence of payments over the horizon. Matrix mode stores full payment
/// matrices P(0..T-1); pro-rata mode stores out-payment vectors p(0..T-1)
/// (the matrices are diag(p(t)) A with A frozen at t = 0).
struct PaymentSchedule {
  ScheduleMode mode = ScheduleMode::matrix;
  std::vector<Matrix> payments;         // matrix mode
  std::vector<Vector> vector_payments;  // prorata mode

  int periods() const {
    return static_cast<int>(mode == ScheduleMode::matrix
                                ? payments.size()
                                : vector_payments.size());
  }
  static PaymentSchedule from_matrices(std::vector<Matrix> p);
  static PaymentSchedule from_vectors(std::vector<Vector> p);
};

/// Summary of a clearing computation: objective/loss values, residual debt at
/// the horizon, terminal worths, the default set, and certification flags.
struct ClearingReport {
  double loss = 0.0;          // L (eta = 0 system loss)
  double eta_cost = 0.0;      // J = (1-eta) L + eta * residual total
  double objective = 0.0;     // weighted paid total
  double total_unpaid = 0.0;  // sum of terminal residual liabilities
  Matrix residual;            // terminal nominal matrix (matrix view)
  Vector residual_out;        // terminal residual row sums
  std::vector<int> default_set;
  Vector worths;              // w(T)
  bool admissible = false;
  bool priority = false;
  bool acyclic = false;
  std::string solver_status;
};

/// Invariant-check tolerance: absolute, scaled by max(1, data magnitude).
double scaled_tol(double base, double scale);

namespace defaults {
inline constexpr double check_tol = 1e-7;
inline constexpr double fda_tol = 1e-10;
inline constexpr int fda_max_iters = 10000;
}  // namespace defaults

}  // namespace finclear
