#include <doctest.h>

#include "finclear/dynamic_clearing.hpp"
#include "finclear/validation.hpp"
#include "helpers/fixtures.hpp"
#include "helpers/random_instances.hpp"

using namespace finclear;
using namespace finclear::testing;

TEST_CASE("admissibility: the zero schedule always passes") {
  const DynamicInstance inst = en5_dynamic_instance();
  std::vector<Matrix> zeros(inst.horizon, Matrix::Zero(5, 5));
  CHECK(check_admissible(inst, PaymentSchedule::from_matrices(zeros))
            .admissible);
}

TEST_CASE("admissibility: the reference five-node matrices pass at 0.02") {
  const DynamicInstance inst = en5_dynamic_instance();
  const PaymentSchedule displayed =
      PaymentSchedule::from_matrices(en5_dynamic_payments());
  // Entries are rounded to two decimals; loosen the tolerance to match.
  const AdmissibilityReport report = check_admissible(inst, displayed, 0.02);
  CHECK(report.admissible);
}

TEST_CASE("admissibility: paying double the nominal is flagged at t=0") {
  const DynamicInstance inst = example1_instance();
  std::vector<Matrix> payments{2.0 * inst.liabilities.entries(),
                               Matrix::Zero(4, 4)};
  const AdmissibilityReport report =
      check_admissible(inst, PaymentSchedule::from_matrices(payments));
  CHECK(!report.admissible);
  bool cap_flagged = false;
  for (const ConstraintViolation& v : report.families)
    if (v.family == "liability-cap" && v.violation > 0) {
      cap_flagged = true;
      CHECK(v.t == 0);
    }
  CHECK(cap_flagged);
}

TEST_CASE("admissibility: negative entries and negative worth are located") {
  const DynamicInstance inst = example1_instance();
  Matrix p0 = Matrix::Zero(4, 4), p1 = Matrix::Zero(4, 4);
  p0(0, 1) = -0.5;
  p1(2, 3) = 1.0;  // node 2 has no cash at t=1
  const AdmissibilityReport report = check_admissible(
      inst, PaymentSchedule::from_matrices({p0, p1}));
  CHECK(!report.admissible);
  bool neg = false, worth = false;
  for (const ConstraintViolation& v : report.families) {
    if (v.family == "nonnegativity" && v.violation > 0) {
      neg = true;
      CHECK(v.t == 0);
      CHECK(v.i == 0);
      CHECK(v.j == 1);
    }
    if (v.family == "nonnegative-worth" && v.violation > 0) worth = true;
  }
  CHECK(neg);
  CHECK(worth);
  CHECK(report.worst() > 0.0);
  CHECK(!report.summary().empty());
}

TEST_CASE("admissibility covers pro-rata vector schedules") {
  const DynamicInstance inst = en5_dynamic_instance();
  const DynamicClearingResult result = clear_dynamic_prorata(inst);
  CHECK(check_admissible(inst, result.schedule).admissible);
  // Inflating the first-period payment breaks the worth constraint.
  PaymentSchedule inflated = result.schedule;
  inflated.vector_payments[0] *= 1.5;
  CHECK(!check_admissible(inst, inflated).admissible);
}

TEST_CASE("absolute priority: optimal schedules pass, withholding fails") {
  const DynamicInstance inst = example1_instance();
  const DynamicClearingResult full = clear_dynamic_matrix(inst);
  CHECK(check_absolute_priority(inst, full.schedule).passed);

  // Node 0 keeps its unit of cash at t=0 while still owing both claims.
  std::vector<Matrix> withheld(2, Matrix::Zero(4, 4));
  const PriorityReport report = check_absolute_priority(
      inst, PaymentSchedule::from_matrices(withheld));
  CHECK(!report.passed);
  REQUIRE(!report.violations.empty());
  CHECK(report.violations[0].node == 0);
  CHECK(report.violations[0].withheld == doctest::Approx(1.0));
}

TEST_CASE("absolute priority holds for pro-rata solver output") {
  const DynamicInstance inst = en5_dynamic_instance();
  const DynamicClearingResult result = clear_dynamic_prorata(inst);
  CHECK(check_absolute_priority(inst, result.schedule).passed);
}

TEST_CASE("acyclicity: zero and optimal late-period payments are acyclic") {
  std::vector<Matrix> zeros(3, Matrix::Zero(4, 4));
  CHECK(check_payment_acyclicity(zeros).passed);
  const DynamicClearingResult result =
      clear_dynamic_matrix(en5_dynamic_instance());
  const AcyclicityReport report =
      check_payment_acyclicity(result.schedule.payments);
  CHECK(report.passed);
}

TEST_CASE("acyclicity: a two-cycle at t=1 is reported, t=0 is exempt") {
  Matrix cycle = Matrix::Zero(3, 3);
  cycle(0, 1) = 1.0;
  cycle(1, 0) = 1.0;

  const AcyclicityReport bad =
      check_payment_acyclicity({Matrix::Zero(3, 3), cycle});
  CHECK(!bad.passed);
  CHECK(bad.first_cyclic_period == 1);
  std::vector<int> nodes = bad.cycle_nodes;
  std::sort(nodes.begin(), nodes.end());
  CHECK(nodes == std::vector<int>{0, 1});

  CHECK(check_payment_acyclicity({cycle, Matrix::Zero(3, 3)}).passed);
}

TEST_CASE("optimal matrix schedules certify on random instances") {
  Rng rng(1919);
  for (int trial = 0; trial < 30; ++trial) {
    const DynamicInstance inst = random_dynamic_instance(rng);
    const DynamicClearingResult full = clear_dynamic_matrix(inst);
    CHECK(check_admissible(inst, full.schedule, 1e-6).admissible);
    CHECK(check_absolute_priority(inst, full.schedule).passed);
    CHECK(check_payment_acyclicity(full.schedule.payments).passed);
  }
}
