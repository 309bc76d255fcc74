#include <doctest.h>

#include <cstdio>
#include <string>

#include "finclear/dynamic_clearing.hpp"
#include "finclear/io.hpp"
#include "finclear/net_model.hpp"
#include "finclear/static_clearing.hpp"
#include "helpers/fixtures.hpp"

using namespace finclear;
using namespace finclear::testing;

namespace {

std::string instance_path(const std::string& name) {
  return std::string(FINCLEAR_INSTANCE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("bundled shocked five-node instance parses as a static instance") {
  const ParsedInstance parsed = parse_instance(instance_path("en5_shock.json"));
  REQUIRE(std::holds_alternative<StaticInstance>(parsed));
  const StaticInstance inst = static_view(parsed);
  CHECK((inst.liabilities.entries() - en5_liabilities().entries()).norm() ==
        0.0);
  CHECK((inst.inflow - en5_shock_inflow()).norm() == 0.0);
  CHECK(inst.liabilities.external_node() == 4);
}

TEST_CASE("bundled four-bank instance parses as a dynamic instance") {
  const ParsedInstance parsed =
      parse_instance(instance_path("counterexample4.json"));
  REQUIRE(std::holds_alternative<DynamicInstance>(parsed));
  const DynamicInstance inst = dynamic_view(parsed);
  CHECK(inst.horizon == 2);
  CHECK(inst.alpha == 1.0);
  CHECK((inst.liabilities.entries() - example1_liabilities().entries())
            .norm() == 0.0);
  CHECK(clear_dynamic_matrix(inst).report.loss ==
        doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("bundled dynamic five-node instance round-trips the stream") {
  const ParsedInstance parsed =
      parse_instance(instance_path("en5_dynamic.json"));
  const DynamicInstance inst = dynamic_view(parsed);
  const DynamicInstance expected = en5_dynamic_instance();
  CHECK(inst.horizon == expected.horizon);
  CHECK(inst.alpha == doctest::Approx(expected.alpha).epsilon(1e-15));
  for (int t = 0; t < inst.horizon; ++t)
    CHECK((inst.inflows[t] - expected.inflows[t]).norm() == 0.0);
}

TEST_CASE("schema violations raise named parse errors") {
  CHECK_THROWS_WITH_AS(
      parse_instance_text(R"({"liabilities": [], "inflows": []})"),
      doctest::Contains("'n'"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_instance_text(
          R"({"n": 2, "liabilities": [[1, 0], [0, 0]], "inflows": [1, 1]})"),
      doctest::Contains("diagonal"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_instance_text(
          R"({"n": 2, "liabilities": [[0, -1], [0, 0]], "inflows": [1, 1]})"),
      doctest::Contains("negative"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_instance_text(
          R"({"n": 2, "liabilities": [[0, 1]], "inflows": [1, 1]})"),
      doctest::Contains("2 rows"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_instance_text(
          R"({"n": 2, "liabilities": [[0, 1], [0, 0]], "inflows": [1, 1],
              "alpha": 0.5})"),
      doctest::Contains("alpha"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_instance_text(
          R"({"n": 2, "liabilities": [[0, 1], [0, 0]], "inflows": [1, 1],
              "eta": 1.0})"),
      doctest::Contains("eta"), ParseError);
  CHECK_THROWS_AS(parse_instance("/nonexistent/path.json"), ParseError);
}

TEST_CASE("dynamic view honors overrides and rejects impossible horizons") {
  const ParsedInstance parsed =
      parse_instance(instance_path("en5_dynamic.json"));
  const DynamicInstance truncated = dynamic_view(parsed, 2, 1.05, 0.3);
  CHECK(truncated.horizon == 2);
  CHECK(truncated.alpha == 1.05);
  CHECK(truncated.eta == 0.3);
  CHECK_THROWS_AS(dynamic_view(parsed, 7), ParseError);
}

TEST_CASE("schedule serialization round-trips and preserves the loss") {
  const DynamicInstance inst = en5_dynamic_instance();
  for (const DynamicClearingResult& result :
       {clear_dynamic_matrix(inst), clear_dynamic_prorata(inst)}) {
    const std::string path =
        std::string("roundtrip_") +
        (result.schedule.mode == ScheduleMode::matrix ? "matrix" : "prorata") +
        ".json";
    write_file(path, schedule_to_json(result.schedule));
    const PaymentSchedule reread = parse_schedule(path);
    std::remove(path.c_str());
    REQUIRE(reread.mode == result.schedule.mode);
    CHECK(std::abs(loss(inst, reread) - result.report.loss) <= 1e-9);
  }
}

TEST_CASE("reports are deterministic without the timestamp") {
  const StaticInstance inst(en5_liabilities(), en5_shock_inflow());
  const MatrixClearingResult result = clear_matrix(inst);
  PaymentSchedule schedule =
      PaymentSchedule::from_matrices({result.payments});
  ReportDocument doc;
  doc.mode = "matrix";
  doc.method = "full";
  doc.report = result.report;
  doc.schedule = &schedule;
  doc.with_timestamp = false;
  const std::string a = report_to_json(doc);
  const std::string b = report_to_json(doc);
  CHECK(a == b);
  CHECK(a.find("timestamp") == std::string::npos);
  CHECK(a.find("\"total_unpaid\": 20") != std::string::npos);

  doc.with_timestamp = true;
  CHECK(report_to_json(doc).find("timestamp") != std::string::npos);
}

TEST_CASE("a parsed report document feeds back into schedule parsing") {
  const DynamicInstance inst = en5_dynamic_instance();
  const DynamicClearingResult result = clear_dynamic_prorata(inst);
  ReportDocument doc;
  doc.mode = "prorata";
  doc.method = "full";
  doc.report = result.report;
  doc.schedule = &result.schedule;
  doc.with_timestamp = false;
  const std::string path = "report_roundtrip.json";
  write_file(path, report_to_json(doc));
  const PaymentSchedule reread = parse_schedule(path);
  std::remove(path.c_str());
  REQUIRE(reread.mode == ScheduleMode::prorata);
  for (int t = 0; t < inst.horizon; ++t)
    CHECK((reread.vector_payments[t] - result.schedule.vector_payments[t])
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
}
