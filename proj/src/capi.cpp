#include "penta/penta.h"

#include <chrono>
#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "penta/builders.hpp"
#include "penta/io.hpp"
#include "penta/normalized.hpp"
#include "penta/tensor.hpp"

struct penta_solution {
  penta::FSolution sol;
  std::optional<penta::WeightSystem> weights;
};

struct penta_report {
  penta::ResidualReport report;
  std::string form;
  long long wall_ms = 0;
};

namespace {

thread_local std::string g_last_error;

penta_status set_error(penta::Errc code, const std::string& msg) {
  g_last_error = msg;
  return static_cast<penta_status>(static_cast<int>(code));
}

template <typename Fn>
penta_status guarded(Fn&& fn) {
  try {
    fn();
    return PENTA_OK;
  } catch (const penta::PentaError& e) {
    return set_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return set_error(penta::Errc::internal, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nlohmann::ordered_json report_to_json(const penta_report& r) {
  nlohmann::ordered_json j;
  j["overall"] = r.report.overall;
  j["tolerance"] = r.report.tolerance;
  j["passed"] = r.report.passed;
  nlohmann::ordered_json worst = nlohmann::ordered_json::array();
  for (const auto& [key, residual] : r.report.worst) {
    nlohmann::ordered_json item;
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (std::uint8_t i = 0; i < key.arity; ++i) labels.push_back(key.v[i]);
    item["tuple"] = std::move(labels);
    item["residual"] = residual;
    worst.push_back(std::move(item));
  }
  j["worst"] = std::move(worst);
  j["vacuous_count"] = r.report.vacuous_count;
  j["tuples_checked"] = r.report.tuples_checked;
  j["wall_ms"] = r.wall_ms;
  return j;
}

}  // namespace

extern "C" {

const char* penta_version(void) { return "penta 1.0.0 (format 1)"; }

const char* penta_last_error_message(void) { return g_last_error.c_str(); }

penta_status penta_solution_load(const char* path, penta_solution** out) {
  if (!path || !out) return set_error(penta::Errc::options, "null argument");
  return guarded([&] {
    penta::LoadResult r = penta::load_solution(path);
    *out = new penta_solution{std::move(r.solution), std::move(r.weights)};
  });
}

penta_status penta_solution_save(const penta_solution* sol, const char* path) {
  if (!sol || !path) return set_error(penta::Errc::options, "null argument");
  return guarded([&] {
    penta::save_solution(sol->sol, sol->weights ? &*sol->weights : nullptr, path);
  });
}

void penta_solution_free(penta_solution* sol) { delete sol; }

penta_status penta_gen(const char* kind, unsigned n, unsigned k, penta_solution** out) {
  if (!kind || !out) return set_error(penta::Errc::options, "null argument");
  return guarded([&] {
    std::string which(kind);
    if (which == "trivial") {
      *out = new penta_solution{penta::trivial_solution(), std::nullopt};
    } else if (which == "pointed") {
      penta::GroupTable g = penta::GroupTable::cyclic(n);
      penta::Cocycle3 w = penta::cocycle_cyclic(n, k);
      *out = new penta_solution{penta::pointed_solution(g, w), std::nullopt};
    } else if (which == "fibonacci") {
      *out = new penta_solution{penta::fibonacci_solution(), std::nullopt};
    } else {
      penta::fail(penta::Errc::options, "unknown generator kind '" + which + "'");
    }
  });
}

penta_status penta_check(const penta_solution* sol, const char* form, double tolerance,
                         const penta_solution* weights, int threads, penta_report** out) {
  if (!sol || !form || !out) return set_error(penta::Errc::options, "null argument");
  return guarded([&] {
    std::string which(form);
    penta::CheckOptions opt;
    opt.tolerance = tolerance;
    opt.threads = threads;
    auto begin = std::chrono::steady_clock::now();
    penta::ResidualReport report;
    if (which == "global") {
      report = penta::check_all(sol->sol, opt, penta::Form::global);
    } else if (which == "component") {
      report = penta::check_all(sol->sol, opt, penta::Form::component);
    } else if (which == "tensor") {
      report = penta::check_all_tensor(sol->sol, opt);
    } else if (which == "be") {
      const std::optional<penta::WeightSystem>& w =
          weights && weights->weights ? weights->weights : sol->weights;
      if (!w)
        penta::fail(penta::Errc::options,
                    "the be form needs a weight system (--weights or embedded)");
      penta::NormalizedFamily family = penta::normalize(sol->sol, *w);
      report = penta::check_all_be(family, opt);
    } else {
      penta::fail(penta::Errc::options, "unknown form '" + which + "'");
    }
    auto end = std::chrono::steady_clock::now();
    auto* r = new penta_report{std::move(report), which, 0};
    r->wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - begin).count();
    *out = r;
  });
}

int penta_report_passed(const penta_report* report) {
  return report && report->report.passed ? 1 : 0;
}

double penta_report_overall(const penta_report* report) {
  return report ? report->report.overall : 0.0;
}

penta_status penta_report_json(const penta_report* report, char** out) {
  if (!report || !out) return set_error(penta::Errc::options, "null argument");
  return guarded([&] { *out = dup_string(report_to_json(*report).dump()); });
}

penta_status penta_report_text(const penta_report* report, char** out) {
  if (!report || !out) return set_error(penta::Errc::options, "null argument");
  return guarded([&] {
    std::ostringstream s;
    s << "form: " << report->form << "\n";
    s << "overall residual: " << report->report.overall << "\n";
    s << "tolerance:        " << report->report.tolerance << "\n";
    s << "result:           " << (report->report.passed ? "PASS" : "FAIL") << "\n";
    s << "tuples checked:   " << report->report.tuples_checked << "\n";
    s << "vacuous tuples:   " << report->report.vacuous_count << "\n";
    s << "wall time:        " << report->wall_ms << " ms\n";
    if (!report->report.worst.empty()) {
      s << "worst tuples:\n";
      for (const auto& [key, residual] : report->report.worst)
        s << "  (" << key.str() << ")  " << residual << "\n";
    }
    *out = dup_string(s.str());
  });
}

void penta_report_free(penta_report* report) { delete report; }

penta_status penta_solve(const penta_solution* rules_doc, unsigned starts,
                         unsigned long long seed, double target, penta_solution** best,
                         char** summary_json) {
  if (!rules_doc || !best || !summary_json)
    return set_error(penta::Errc::options, "null argument");
  return guarded([&] {
    penta::SolveOptions opts;
    if (starts) opts.starts = starts;
    if (seed) opts.seed = seed;
    if (target > 0) opts.residual_target = target;
    penta::SolveOutcome outcome =
        penta::solve_multiplicity_free(rules_doc->sol.rules(), opts);

    nlohmann::ordered_json j;
    j["converged"] = !outcome.results.empty();
    j["starts"] = opts.starts;
    j["seed"] = opts.seed;
    j["target"] = opts.residual_target;
    j["converged_starts"] = outcome.converged_starts;
    j["classes"] = outcome.results.size();
    j["best_residual"] = outcome.best_residual;
    j["diagnostics"] = outcome.diagnostics;
    if (!outcome.results.empty()) {
      const penta::SolveResult& top = outcome.results.front();
      j["residual"] = top.residual;
      j["iterations"] = top.iterations;
      j["start_index"] = top.start_index;
      j["degenerate"] = top.degenerate;
      *best = new penta_solution{top.solution, std::nullopt};
    } else {
      *best = nullptr;
    }
    *summary_json = dup_string(j.dump());
  });
}

void penta_string_free(char* s) { std::free(s); }

}  // extern "C"
