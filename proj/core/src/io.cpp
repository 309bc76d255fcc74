#include "finclear/io.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace finclear {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

namespace {

Matrix parse_matrix(const json& rows, int n, const std::string& field) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw ParseError(field + ": expected " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(field + " row " + std::to_string(i) + ": expected " +
                       std::to_string(n) + " entries");
    for (int j = 0; j < n; ++j) {
      if (!row[j].is_number())
        throw ParseError(field + " entry (" + std::to_string(i) + "," +
                         std::to_string(j) + "): expected a number");
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

Vector parse_vector(const json& arr, int n, const std::string& field) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != n)
    throw ParseError(field + ": expected " + std::to_string(n) + " entries");
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    if (!arr[i].is_number())
      throw ParseError(field + "[" + std::to_string(i) +
                       "]: expected a number");
    v(i) = arr[i].get<double>();
  }
  return v;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

ParsedInstance parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance document must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("missing integer field 'n'");
  const int n = doc["n"].get<int>();
  if (n < 1) throw ParseError("'n' must be positive");
  if (!doc.contains("liabilities"))
    throw ParseError("missing field 'liabilities'");
  const Matrix entries = parse_matrix(doc["liabilities"], n, "liabilities");

  std::optional<int> external;
  if (doc.contains("external_node")) {
    if (!doc["external_node"].is_number_integer())
      throw ParseError("'external_node' must be an integer index");
    external = doc["external_node"].get<int>();
  }

  LiabilityMatrix liabilities = [&] {
    try {
      return LiabilityMatrix(entries, external);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("invalid liabilities: ") + e.what());
    }
  }();

  if (!doc.contains("inflows")) throw ParseError("missing field 'inflows'");
  const json& inflows_doc = doc["inflows"];
  if (!inflows_doc.is_array() || inflows_doc.empty())
    throw ParseError("'inflows' must be a nonempty array");

  std::vector<Vector> inflows;
  const bool nested = inflows_doc[0].is_array();
  if (nested) {
    for (size_t t = 0; t < inflows_doc.size(); ++t)
      inflows.push_back(parse_vector(inflows_doc[t], n,
                                     "inflows[" + std::to_string(t) + "]"));
  } else {
    inflows.push_back(parse_vector(inflows_doc, n, "inflows"));
  }
  for (size_t t = 0; t < inflows.size(); ++t)
    if ((inflows[t].array() < 0.0).any())
      throw ParseError("inflows[" + std::to_string(t) +
                       "]: entries must be nonnegative");

  double alpha = doc.value("alpha", 1.0);
  double eta = doc.value("eta", 0.0);
  int horizon = doc.value("horizon", static_cast<int>(inflows.size()));
  if (alpha < 1.0) throw ParseError("'alpha' must be >= 1");
  if (eta < 0.0 || eta >= 1.0) throw ParseError("'eta' must lie in [0,1)");
  if (horizon < 1) throw ParseError("'horizon' must be >= 1");
  if (horizon > static_cast<int>(inflows.size()))
    throw ParseError("'horizon' exceeds the number of inflow rows");

  const bool is_dynamic = nested && (inflows.size() > 1 || doc.contains("horizon") ||
                                     doc.contains("alpha") || doc.contains("eta"));
  try {
    if (!is_dynamic) return StaticInstance(std::move(liabilities), inflows[0]);
    inflows.resize(horizon);
    return DynamicInstance(std::move(liabilities), std::move(inflows), horizon,
                           alpha, eta);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

ParsedInstance parse_instance(const std::string& path) {
  return parse_instance_text(read_file(path));
}

StaticInstance static_view(const ParsedInstance& parsed) {
  if (const auto* s = std::get_if<StaticInstance>(&parsed)) return *s;
  const auto& d = std::get<DynamicInstance>(parsed);
  return StaticInstance(d.liabilities, d.inflows[0]);
}

DynamicInstance dynamic_view(const ParsedInstance& parsed,
                             std::optional<int> horizon,
                             std::optional<double> alpha,
                             std::optional<double> eta) {
  std::vector<Vector> inflows;
  LiabilityMatrix liabilities = [&] {
    if (const auto* s = std::get_if<StaticInstance>(&parsed)) {
      inflows.push_back(s->inflow);
      return s->liabilities;
    }
    const auto& d = std::get<DynamicInstance>(parsed);
    inflows = d.inflows;
    return d.liabilities;
  }();
  const DynamicInstance* dyn = std::get_if<DynamicInstance>(&parsed);
  const int T = horizon.value_or(static_cast<int>(inflows.size()));
  if (T > static_cast<int>(inflows.size()))
    throw ParseError("requested horizon exceeds the available inflow rows");
  if (T < 1) throw ParseError("horizon must be >= 1");
  inflows.resize(T);
  try {
    return DynamicInstance(std::move(liabilities), std::move(inflows), T,
                           alpha.value_or(dyn ? dyn->alpha : 1.0),
                           eta.value_or(dyn ? dyn->eta : 0.0));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

std::string schedule_to_json(const PaymentSchedule& schedule) {
  json doc;
  doc["mode"] =
      schedule.mode == ScheduleMode::matrix ? "matrix" : "prorata";
  json payments = json::array();
  if (schedule.mode == ScheduleMode::matrix)
    for (const Matrix& p : schedule.payments) payments.push_back(to_json(p));
  else
    for (const Vector& p : schedule.vector_payments)
      payments.push_back(to_json(p));
  doc["payments"] = std::move(payments);
  return doc.dump(2);
}

PaymentSchedule parse_schedule(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  // Accept either a bare schedule document or a full report containing one.
  if (doc.contains("schedule")) doc = doc["schedule"];
  if (!doc.contains("mode") || !doc.contains("payments"))
    throw ParseError("schedule document needs 'mode' and 'payments'");
  const std::string mode = doc["mode"].get<std::string>();
  const json& payments = doc["payments"];
  if (!payments.is_array() || payments.empty())
    throw ParseError("'payments' must be a nonempty array");
  if (mode == "matrix") {
    std::vector<Matrix> out;
    for (size_t t = 0; t < payments.size(); ++t) {
      const int n = static_cast<int>(payments[t].size());
      out.push_back(
          parse_matrix(payments[t], n, "payments[" + std::to_string(t) + "]"));
    }
    return PaymentSchedule::from_matrices(std::move(out));
  }
  if (mode == "prorata") {
    std::vector<Vector> out;
    for (size_t t = 0; t < payments.size(); ++t) {
      const int n = static_cast<int>(payments[t].size());
      out.push_back(
          parse_vector(payments[t], n, "payments[" + std::to_string(t) + "]"));
    }
    return PaymentSchedule::from_vectors(std::move(out));
  }
  throw ParseError("unknown schedule mode: " + mode);
}

std::string report_to_json(const ReportDocument& doc) {
  json out;
  out["mode"] = doc.mode;
  out["method"] = doc.method;
  out["solver_status"] = doc.report.solver_status;
  out["loss"] = doc.report.loss;
  out["eta_cost"] = doc.report.eta_cost;
  out["objective"] = doc.report.objective;
  out["total_unpaid"] = doc.report.total_unpaid;
  out["default_set"] = doc.report.default_set;
  out["worths"] = to_json(doc.report.worths);
  out["residual"] = to_json(doc.report.residual);
  out["certifications"] = {{"admissible", doc.report.admissible},
                           {"priority", doc.report.priority},
                           {"acyclic", doc.report.acyclic}};
  if (doc.schedule) {
    json sched;
    sched["mode"] = doc.schedule->mode == ScheduleMode::matrix ? "matrix"
                                                               : "prorata";
    json payments = json::array();
    if (doc.schedule->mode == ScheduleMode::matrix)
      for (const Matrix& p : doc.schedule->payments)
        payments.push_back(to_json(p));
    else
      for (const Vector& p : doc.schedule->vector_payments)
        payments.push_back(to_json(p));
    sched["payments"] = std::move(payments);
    out["schedule"] = std::move(sched);
  }
  if (doc.with_timestamp) {
    const auto now = std::chrono::system_clock::now();
    out["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                           now.time_since_epoch())
                           .count();
  }
  return out.dump(2);
}

}  // namespace finclear
