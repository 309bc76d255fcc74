// Command-line front end: instance ingestion, solver dispatch, report
// emission.
//
// Exit codes: 0 ok, 2 parse/validation error, 3 solver failure,
// 4 solved but certification failed.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "finclear/dynamic_clearing.hpp"
#include "finclear/graph.hpp"
#include "finclear/io.hpp"
#include "finclear/net_model.hpp"
#include "finclear/static_clearing.hpp"
#include "finclear/validation.hpp"

namespace {

using namespace finclear;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCertification = 4;

struct CommonOptions {
  std::string instance_path;
  std::string mode = "matrix";
  std::string method = "full";
  std::optional<double> alpha;
  std::optional<double> eta;
  std::optional<int> horizon;
  double tol = 1e-6;
  std::string out_path;
  bool no_timestamp = false;
};

void print_vector(const char* label, const Vector& v) {
  std::printf("%s [", label);
  for (int i = 0; i < v.size(); ++i)
    std::printf("%s%.2f", i ? ", " : "", v(i));
  std::printf("]\n");
}

void print_default_set(const std::vector<int>& defaults) {
  std::printf("default set    {");
  for (size_t i = 0; i < defaults.size(); ++i)
    std::printf("%s%d", i ? ", " : "", defaults[i]);
  std::printf("}\n");
}

void print_report(const ClearingReport& rep, double eta) {
  std::printf("status         %s\n", rep.solver_status.c_str());
  std::printf("loss           %.2f\n", rep.loss);
  if (eta > 0.0) std::printf("eta cost       %.2f\n", rep.eta_cost);
  std::printf("objective      %.2f\n", rep.objective);
  std::printf("total unpaid   %.2f\n", rep.total_unpaid);
  print_default_set(rep.default_set);
  print_vector("worths        ", rep.worths);
  std::printf("certifications admissible=%s priority=%s acyclic=%s\n",
              rep.admissible ? "yes" : "no", rep.priority ? "yes" : "no",
              rep.acyclic ? "yes" : "no");
}

void emit(const CommonOptions& opt, const std::string& mode,
          const std::string& method, const ClearingReport& rep,
          const PaymentSchedule& schedule) {
  if (opt.out_path.empty()) return;
  ReportDocument doc;
  doc.mode = mode;
  doc.method = method;
  doc.report = rep;
  doc.schedule = &schedule;
  doc.with_timestamp = !opt.no_timestamp;
  write_file(opt.out_path, report_to_json(doc));
}

bool certified(const ClearingReport& rep, const std::string& mode) {
  const bool acyclic_ok = mode == "matrix" ? rep.acyclic : true;
  return rep.admissible && rep.priority && acyclic_ok;
}

int run_clear_static(const CommonOptions& opt) {
  const ParsedInstance parsed = parse_instance(opt.instance_path);
  const StaticInstance instance = static_view(parsed);
  ClearingReport rep;
  PaymentSchedule schedule;
  if (opt.mode == "matrix") {
    MatrixClearingResult result = clear_matrix(instance);
    rep = result.report;
    schedule = PaymentSchedule::from_matrices({result.payments});
  } else if (opt.method == "fda") {
    FdaResult fda = clear_prorata_fda(instance);
    if (!fda.converged) {
      std::fprintf(stderr, "fda did not converge within iteration cap\n");
      return kExitSolver;
    }
    std::printf("fda iterations %d\n", fda.iterations);
    const StaticInstance& si = instance;
    VectorClearingResult result = clear_prorata_lp(si);
    // Report based on the FDA limit, certified against the LP solution.
    const double gap =
        (fda.payments - result.payments).cwiseAbs().maxCoeff();
    std::printf("fda vs lp gap  %.3g\n", gap);
    rep = result.report;
    schedule = PaymentSchedule::from_vectors({fda.payments});
  } else {
    VectorClearingResult result = clear_prorata_lp(instance);
    rep = result.report;
    schedule = PaymentSchedule::from_vectors({result.payments});
  }
  print_report(rep, 0.0);
  emit(opt, opt.mode, opt.method, rep, schedule);
  return certified(rep, opt.mode) ? kExitOk : kExitCertification;
}

int run_clear_dynamic(const CommonOptions& opt) {
  const ParsedInstance parsed = parse_instance(opt.instance_path);
  const DynamicInstance instance =
      dynamic_view(parsed, opt.horizon, opt.alpha, opt.eta);
  DynamicClearingResult result;
  if (opt.mode == "matrix")
    result = opt.method == "sequential"
                 ? clear_dynamic_matrix_sequential(instance)
                 : clear_dynamic_matrix(instance);
  else
    result = opt.method == "sequential"
                 ? clear_dynamic_prorata_sequential(instance)
                 : clear_dynamic_prorata(instance);
  print_report(result.report, instance.eta);
  emit(opt, opt.mode, opt.method, result.report, result.schedule);
  return certified(result.report, opt.mode) ? kExitOk : kExitCertification;
}

int run_validate(const CommonOptions& opt, const std::string& schedule_path) {
  const ParsedInstance parsed = parse_instance(opt.instance_path);
  const PaymentSchedule schedule = parse_schedule(schedule_path);
  const DynamicInstance instance =
      dynamic_view(parsed, schedule.periods(), opt.alpha, opt.eta);

  const AdmissibilityReport adm =
      check_admissible(instance, schedule, opt.tol);
  std::printf("admissible     %s (worst violation %.3g)\n",
              adm.admissible ? "yes" : "no", adm.worst());
  const PriorityReport pri =
      check_absolute_priority(instance, schedule, opt.tol);
  std::printf("priority       %s", pri.passed ? "yes" : "no");
  if (!pri.passed)
    std::printf("  (first: node %d withheld %.4f at t=%d)",
                pri.violations[0].node, pri.violations[0].withheld,
                pri.violations[0].t);
  std::printf("\n");
  bool acyclic = true;
  if (schedule.mode == ScheduleMode::matrix) {
    const AcyclicityReport acy = check_payment_acyclicity(schedule.payments);
    acyclic = acy.passed;
    std::printf("acyclic        %s", acy.passed ? "yes" : "no");
    if (!acy.passed) std::printf("  (cycle at t=%d)", acy.first_cyclic_period);
    std::printf("\n");
  }
  const PaymentSchedule* sched = &schedule;
  const double loss_value = adm.admissible ? loss(instance, *sched) : -1.0;
  if (adm.admissible) std::printf("loss           %.6f\n", loss_value);
  return (adm.admissible && pri.passed && acyclic) ? kExitOk
                                                   : kExitCertification;
}

int run_analyze_graph(const CommonOptions& opt) {
  const ParsedInstance parsed = parse_instance(opt.instance_path);
  const StaticInstance instance = static_view(parsed);
  const RelativeLiabilityMatrix a = relative_liabilities(instance.liabilities);
  const CondensationInfo info = strong_components(a.entries());
  std::printf("strong components: %zu\n", info.components.size());
  for (size_t c = 0; c < info.components.size(); ++c) {
    const StrongComponent& sc = info.components[c];
    std::printf("  [%zu] nodes {", c);
    for (size_t k = 0; k < sc.nodes.size(); ++k)
      std::printf("%s%d", k ? ", " : "", sc.nodes[k]);
    std::printf("}%s%s%s\n", sc.is_sink ? " sink" : "",
                sc.is_source ? " source" : "", sc.is_trivial ? " trivial" : "");
  }
  for (int c : info.sink_components()) {
    const bool global =
        globally_reachable(a.entries(), info.components[c].nodes);
    std::printf("sink component [%d] globally reachable: %s\n", c,
                global ? "yes" : "no");
  }
  return kExitOk;
}

int run_compare(const CommonOptions& opt) {
  const ParsedInstance parsed = parse_instance(opt.instance_path);
  const DynamicInstance instance =
      dynamic_view(parsed, opt.horizon, opt.alpha, opt.eta);
  const ScenarioComparison cmp = scenario_compare(instance);
  std::printf("%-28s %12s %12s %s\n", "method", "loss", "unpaid",
              "default set");
  for (const MethodSummary& m : cmp.methods) {
    std::printf("%-28s %12.2f %12.2f {", m.method.c_str(), m.loss,
                m.total_unpaid);
    for (size_t i = 0; i < m.default_set.size(); ++i)
      std::printf("%s%d", i ? ", " : "", m.default_set[i]);
    std::printf("}\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clearing payments in static and multi-period liability networks"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string schedule_path;
  double alpha_flag = -1.0, eta_flag = -1.0;
  int horizon_flag = -1;

  auto add_common = [&](CLI::App* cmd, bool with_solver_flags) {
    cmd->add_option("instance", opt.instance_path, "instance file (JSON)")
        ->required();
    if (with_solver_flags) {
      cmd->add_option("--mode", opt.mode, "payment mode")
          ->check(CLI::IsMember({"matrix", "prorata"}));
      cmd->add_option("--method", opt.method, "solution method")
          ->check(CLI::IsMember({"full", "sequential", "fda"}));
    }
    cmd->add_option("--alpha", alpha_flag, "interest factor override");
    cmd->add_option("--eta", eta_flag, "terminal penalty weight override");
    cmd->add_option("--horizon", horizon_flag, "horizon override");
    cmd->add_option("--tol", opt.tol, "validation tolerance");
    cmd->add_option("--out", opt.out_path, "machine-readable report path");
    cmd->add_flag("--no-timestamp", opt.no_timestamp,
                  "omit the timestamp field from reports");
  };

  CLI::App* clear = app.add_subcommand("clear", "compute clearing payments");
  clear->require_subcommand(1);
  CLI::App* clear_static =
      clear->add_subcommand("static", "single-period clearing");
  add_common(clear_static, true);
  CLI::App* clear_dynamic =
      clear->add_subcommand("dynamic", "multi-period clearing");
  add_common(clear_dynamic, true);

  CLI::App* validate =
      app.add_subcommand("validate", "certify a payment schedule");
  add_common(validate, false);
  validate->add_option("--schedule", schedule_path, "schedule/report JSON")
      ->required();

  CLI::App* analyze =
      app.add_subcommand("analyze-graph", "liability graph structure");
  add_common(analyze, false);

  CLI::App* compare =
      app.add_subcommand("compare", "run all solvers and tabulate");
  add_common(compare, false);

  CLI11_PARSE(app, argc, argv);

  if (alpha_flag >= 0.0) opt.alpha = alpha_flag;
  if (eta_flag >= 0.0) opt.eta = eta_flag;
  if (horizon_flag >= 0) opt.horizon = horizon_flag;

  try {
    if (clear_static->parsed()) return run_clear_static(opt);
    if (clear_dynamic->parsed()) return run_clear_dynamic(opt);
    if (validate->parsed()) return run_validate(opt, schedule_path);
    if (analyze->parsed()) return run_analyze_graph(opt);
    if (compare->parsed()) return run_compare(opt);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kExitSolver;
  }
  return kExitOk;
}
