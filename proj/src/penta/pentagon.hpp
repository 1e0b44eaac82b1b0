#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "penta/core.hpp"

namespace penta {

struct PentagonTuple {
  Label a = 0, b = 0, c = 0, d = 0, e = 0;
};

struct ComponentTuple {
  Label a = 0, b = 0, c = 0, d = 0, e = 0;
  Label x = 0, y = 0, p = 0, q = 0;
  PentagonTuple boundary() const { return {a, b, c, d, e}; }
};

// Label tuple used in reports; arity 5 for boundary sweeps, 9 for the
// componentwise (tensor / Biedenharn-Elliott) sweeps.
struct TupleKey {
  std::array<Label, 9> v{};
  std::uint8_t arity = 0;
  static TupleKey boundary(PentagonTuple t) {
    return TupleKey{{t.a, t.b, t.c, t.d, t.e, 0, 0, 0, 0}, 5};
  }
  static TupleKey component(ComponentTuple t) {
    return TupleKey{{t.a, t.b, t.c, t.d, t.e, t.x, t.y, t.p, t.q}, 9};
  }
  auto operator<=>(const TupleKey&) const = default;
  std::string str() const;
};

struct ResidualReport {
  double overall = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::size_t tuples_checked = 0;  // non-vacuous tuples
  std::size_t vacuous_count = 0;
  std::vector<std::pair<TupleKey, double>> worst;  // residual desc, capped
  std::map<TupleKey, double> per_tuple;            // only when keep_all
};

enum class Form { global, component, tensor, biedenharn_elliott };

struct CheckOptions {
  double tolerance = 1e-10;
  int threads = 0;          // 0 = library default (PENTA_THREADS caps it)
  bool keep_all = false;    // retain the full per-tuple association
  std::size_t worst_cap = 10;
};

// Direct-sum layouts of the pentagon source and target spaces; summands keyed
// by (x,y) resp. (p,q) in lexicographic order.
SumLayout pentagon_source_layout(const FusionRules& rules, PentagonTuple t);
SumLayout pentagon_target_layout(const FusionRules& rules, PentagonTuple t);

// The two sides of the displayed relation applied to a vector of the source
// sum (rank-3 entries keyed by (x,y)); output keyed by (p,q).
SumVector lhs_global(const FSolution& sol, PentagonTuple t, const SumVector& alpha);
SumVector rhs_global(const FSolution& sol, PentagonTuple t, const SumVector& alpha);

// Assembled matrices of the two sides over the documented layouts.
Dense lhs_global_matrix(const FSolution& sol, PentagonTuple t);
Dense rhs_global_matrix(const FSolution& sol, PentagonTuple t);

// Max-abs entry of (assembled LHS - assembled RHS); deterministic.
double check_pentagon_global(const FSolution& sol, PentagonTuple t);

// Component-form composed maps for fixed (x,y,p,q), as matrices from
// V_yd^e (x) V_xc^y (x) V_ab^x to V_ap^e (x) V_bq^p (x) V_cd^q (row-major
// triples on both sides).
Dense lhs_component(const FSolution& sol, ComponentTuple t);
Dense rhs_component(const FSolution& sol, ComponentTuple t);
double check_pentagon_component(const FSolution& sol, ComponentTuple t);

// Extracts the ((x,y),(p,q)) block of an assembled global-side matrix.
Dense global_matrix_block(const FusionRules& rules, PentagonTuple t, const Dense& side,
                          Label x, Label y, Label p, Label q);

// Sweeps all boundary tuples (a,b,c,d,e); for the component form the
// per-tuple residual is the max over admissible (x,y,p,q).
ResidualReport check_all(const FSolution& sol, const CheckOptions& opt, Form form);

// Internal sweep helper shared with the tensor and normalized checkers.
struct SweepItem {
  double residual = 0.0;
  bool vacuous = true;
};
ResidualReport sweep_tuples(std::size_t total, const CheckOptions& opt,
                            const std::function<TupleKey(std::size_t)>& key_of,
                            const std::function<SweepItem(std::size_t)>& eval);

// Library default worker count; the PENTA_THREADS environment variable caps it.
int default_thread_count();

}  // namespace penta
