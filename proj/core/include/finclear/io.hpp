#pragma once

#include <variant>

#include "finclear/types.hpp"

namespace finclear {

/// Raised on malformed instance/schedule files; the message names the field
/// or invariant at fault.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ParsedInstance = std::variant<StaticInstance, DynamicInstance>;

/// Reads an instance document: fields `n`, `liabilities` (n x n), optional
/// `external_node`, `inflows` (flat n-vector for a static instance or T rows),
/// optional `alpha`, `horizon`, `eta`. Returns a static instance when the
/// document describes a single period and no dynamic fields are present.
ParsedInstance parse_instance(const std::string& path);
ParsedInstance parse_instance_text(const std::string& text);

/// Views of a parsed instance. The static view of a dynamic instance uses the
/// first inflow vector. Optional overrides replace the file's alpha/eta; an
/// override horizon must not exceed the available inflow rows.
StaticInstance static_view(const ParsedInstance& parsed);
DynamicInstance dynamic_view(const ParsedInstance& parsed,
                             std::optional<int> horizon = {},
                             std::optional<double> alpha = {},
                             std::optional<double> eta = {});

std::string schedule_to_json(const PaymentSchedule& schedule);
PaymentSchedule parse_schedule(const std::string& path);

struct ReportDocument {
  std::string mode;
  std::string method;
  ClearingReport report;
  const PaymentSchedule* schedule = nullptr;
  bool with_timestamp = true;
};

std::string report_to_json(const ReportDocument& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace finclear
