#include "finclear/types.hpp"

#include <algorithm>
#include <cmath>

namespace finclear {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace

double scaled_tol(double base, double scale) {
  return base * std::max(1.0, scale);
}

LiabilityMatrix::LiabilityMatrix(Matrix entries, std::optional<int> external_node)
    : entries_(std::move(entries)), external_node_(external_node) {
  require(entries_.rows() == entries_.cols(), "liability matrix must be square");
  require(entries_.rows() >= 1, "liability matrix must be nonempty");
  require(all_finite(entries_), "liability matrix entries must be finite");
  const int n = size();
  for (int i = 0; i < n; ++i) {
    require(entries_(i, i) == 0.0,
            "liability diagonal must be zero (node " + std::to_string(i) + ")");
    for (int j = 0; j < n; ++j)
      require(entries_(i, j) >= 0.0,
              "liability entries must be nonnegative ((" + std::to_string(i) +
                  "," + std::to_string(j) + "))");
  }
  if (external_node_) {
    require(*external_node_ >= 0 && *external_node_ < n,
            "external node index out of range");
    require(entries_.row(*external_node_).sum() == 0.0,
            "external-sector node must owe no liabilities (row must be zero)");
  }
}

RelativeLiabilityMatrix::RelativeLiabilityMatrix(Matrix entries)
    : entries_(std::move(entries)) {
  require(entries_.rows() == entries_.cols(),
          "relative liability matrix must be square");
  const int n = size();
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      require(entries_(i, j) >= 0.0 && entries_(i, j) <= 1.0,
              "relative liabilities must lie in [0,1]");
      row += entries_(i, j);
    }
    require(std::abs(row - 1.0) <= 1e-9,
            "relative liability rows must sum to 1 (row " + std::to_string(i) +
                ")");
  }
}

StaticInstance::StaticInstance(LiabilityMatrix l, Vector c)
    : liabilities(std::move(l)), inflow(std::move(c)) {
  require(inflow.size() == liabilities.size(),
          "inflow dimension does not match liability matrix");
  require(inflow.allFinite(), "inflow must be finite");
  require((inflow.array() >= 0.0).all(), "inflow must be nonnegative");
}

DynamicInstance::DynamicInstance(LiabilityMatrix l, std::vector<Vector> c,
                                 int T, double a, double e)
    : liabilities(std::move(l)),
      inflows(std::move(c)),
      horizon(T),
      alpha(a),
      eta(e) {
  require(horizon >= 1, "horizon must be at least 1");
  require(alpha >= 1.0, "interest factor alpha must be >= 1");
  require(eta >= 0.0 && eta < 1.0, "eta must lie in [0,1)");
  require(static_cast<int>(inflows.size()) == horizon,
          "need exactly one inflow vector per period");
  for (const Vector& ct : inflows) {
    require(ct.size() == liabilities.size(),
            "inflow dimension does not match liability matrix");
    require(ct.allFinite() && (ct.array() >= 0.0).all(),
            "inflows must be finite and nonnegative");
  }
}

PaymentSchedule PaymentSchedule::from_matrices(std::vector<Matrix> p) {
  PaymentSchedule s;
  s.mode = ScheduleMode::matrix;
  s.payments = std::move(p);
  return s;
}

PaymentSchedule PaymentSchedule::from_vectors(std::vector<Vector> p) {
  PaymentSchedule s;
  s.mode = ScheduleMode::prorata;
  s.vector_payments = std::move(p);
  return s;
}

}  // namespace finclear
