// penta CLI: generate, check and solve pentagon-relation solution documents.
// Talks to the core exclusively through the public C API.

#include <penta/penta.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <memory>
#include <string>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int exit_code_for(penta_status status) {
  switch (status) {
    case PENTA_OK:
      return kExitPass;
    case PENTA_E_OPTIONS:
    case PENTA_E_RANGE:
      return kExitUsage;
    default:
      return kExitIo;
  }
}

int report_error(penta_status status) {
  std::fprintf(stderr, "error: %s\n", penta_last_error_message());
  return exit_code_for(status);
}

struct SolutionDeleter {
  void operator()(penta_solution* p) const { penta_solution_free(p); }
};
using SolutionPtr = std::unique_ptr<penta_solution, SolutionDeleter>;

struct ReportDeleter {
  void operator()(penta_report* p) const { penta_report_free(p); }
};
using ReportPtr = std::unique_ptr<penta_report, ReportDeleter>;

struct StringDeleter {
  void operator()(char* p) const { penta_string_free(p); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

int run_gen(const std::string& kind, unsigned n, unsigned k, const std::string& out_path) {
  penta_solution* raw = nullptr;
  if (penta_status s = penta_gen(kind.c_str(), n, k, &raw); s != PENTA_OK)
    return report_error(s);
  SolutionPtr sol(raw);
  if (penta_status s = penta_solution_save(sol.get(), out_path.c_str()); s != PENTA_OK)
    return report_error(s);
  std::printf("wrote %s\n", out_path.c_str());
  return kExitPass;
}

int run_check(const std::string& path, const std::string& form, double tol,
              const std::string& weights_path, const std::string& report_kind) {
  penta_solution* raw = nullptr;
  if (penta_status s = penta_solution_load(path.c_str(), &raw); s != PENTA_OK)
    return report_error(s);
  SolutionPtr sol(raw);

  SolutionPtr weights;
  if (!weights_path.empty()) {
    penta_solution* wraw = nullptr;
    if (penta_status s = penta_solution_load(weights_path.c_str(), &wraw); s != PENTA_OK)
      return report_error(s);
    weights.reset(wraw);
  }

  penta_report* rraw = nullptr;
  if (penta_status s = penta_check(sol.get(), form.c_str(), tol, weights.get(), 0, &rraw);
      s != PENTA_OK)
    return report_error(s);
  ReportPtr report(rraw);

  char* text = nullptr;
  penta_status s = report_kind == "json" ? penta_report_json(report.get(), &text)
                                         : penta_report_text(report.get(), &text);
  if (s != PENTA_OK) return report_error(s);
  StringPtr guard(text);
  std::printf("%s\n", text);
  return penta_report_passed(report.get()) ? kExitPass : kExitCheckFail;
}

int run_solve(const std::string& rules_path, unsigned starts, unsigned long long seed,
              double target, const std::string& out_path) {
  penta_solution* raw = nullptr;
  if (penta_status s = penta_solution_load(rules_path.c_str(), &raw); s != PENTA_OK)
    return report_error(s);
  SolutionPtr rules(raw);

  // the solver itself refuses targets below 1e-14; run at the floor and
  // judge the user's target afterwards
  double effective = target < 1e-14 ? 1e-14 : target;
  if (effective != target)
    std::fprintf(stderr, "note: target %g is below the supported floor, solving at 1e-14\n",
                 target);

  penta_solution* best_raw = nullptr;
  char* summary_raw = nullptr;
  if (penta_status s =
          penta_solve(rules.get(), starts, seed, effective, &best_raw, &summary_raw);
      s != PENTA_OK)
    return report_error(s);
  SolutionPtr best(best_raw);
  StringPtr summary(summary_raw);
  std::printf("%s\n", summary.get());

  auto parsed = nlohmann::json::parse(summary.get());
  bool converged = parsed.value("converged", false);
  double residual =
      converged ? parsed.value("residual", 1.0) : parsed.value("best_residual", 1.0);

  if (best) {
    if (penta_status s = penta_solution_save(best.get(), out_path.c_str()); s != PENTA_OK)
      return report_error(s);
    std::printf("wrote %s\n", out_path.c_str());
  }
  if (!converged || residual > target) {
    std::fprintf(stderr, "solve did not reach the requested target %g (best %g)\n", target,
                 residual);
    return kExitCheckFail;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pentagon-relation toolkit"};
  app.set_version_flag("--version", penta_version());
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a known solution document");
  std::string gen_kind, gen_out = "solution.json";
  unsigned gen_n = 2, gen_k = 0;
  gen->add_option("kind", gen_kind, "trivial | pointed | fibonacci")->required();
  gen->add_option("--n", gen_n, "group order for pointed");
  gen->add_option("--k", gen_k, "cocycle parameter for pointed");
  gen->add_option("-o,--output", gen_out, "output path");

  auto* check = app.add_subcommand("check", "verify the pentagon relation for a document");
  std::string check_path, check_form = "global", check_weights, check_report = "text";
  double check_tol = 1e-10;
  check->add_option("file", check_path, "solution document")->required();
  check->add_option("--form", check_form, "global | component | tensor | be")
      ->check(CLI::IsMember({"global", "component", "tensor", "be"}));
  check->add_option("--tol", check_tol, "acceptance tolerance");
  check->add_option("--weights", check_weights, "weights document for the be form");
  check->add_option("--report", check_report, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* solve = app.add_subcommand("solve", "solve multiplicity-free rules");
  std::string solve_rules, solve_out = "solved.json";
  unsigned solve_starts = 50;
  unsigned long long solve_seed = 0;
  double solve_target = 1e-10;
  solve->add_option("rules", solve_rules, "rules document (dims only)")->required();
  solve->add_option("--starts", solve_starts, "number of random starts");
  solve->add_option("--seed", solve_seed, "random seed (0 = library default)");
  solve->add_option("--target", solve_target, "residual target");
  solve->add_option("-o,--output", solve_out, "output path for the best solution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (gen->parsed()) return run_gen(gen_kind, gen_n, gen_k, gen_out);
  if (check->parsed())
    return run_check(check_path, check_form, check_tol, check_weights, check_report);
  if (solve->parsed())
    return run_solve(solve_rules, solve_starts, solve_seed, solve_target, solve_out);
  return kExitUsage;
}
