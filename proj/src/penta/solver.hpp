#pragma once

#include <optional>
#include <span>
#include <string>

#include "penta/pentagon.hpp"

namespace penta {

struct SolveOptions {
  std::size_t max_iterations = 300;
  double residual_target = 1e-10;
  double damping_init = 1e-3;
  double damping_grow = 3.0;    // on a rejected step
  double damping_shrink = 2.0;  // on an accepted step
  std::size_t starts = 50;
  std::uint64_t seed = 20240901;
  void validate() const;  // positive fields, residual_target >= 1e-14
};

struct SolveResult {
  FSolution solution;  // gauge-canonicalized
  double residual = 0.0;
  std::size_t iterations = 0;
  std::size_t start_index = 0;
  bool converged = false;
  bool degenerate = false;
  std::size_t invertible_big = 0;    // invertible mixing matrices of size >= 2
  std::size_t invertible_total = 0;  // invertible F-matrices of any size
  std::vector<double> fingerprint;   // sorted canonical entry magnitudes
};

struct SolveOutcome {
  std::vector<SolveResult> results;  // converged, deduplicated, ranked
  double best_residual = 0.0;        // best over all starts
  std::size_t converged_starts = 0;
  std::string diagnostics;
};

// The pentagon component equations of a multiplicity-free rule table as a
// cubic-vs-quadratic polynomial system in the scalar block values.
class MfSystem {
 public:
  struct Term3 {
    std::size_t i, j, k;
  };
  struct Equation {
    std::vector<Term3> lhs;  // sum over z of triple products
    std::optional<std::pair<std::size_t, std::size_t>> rhs;
  };

  static MfSystem build(const FusionRules& rules);  // unsupported unless all N <= 1

  const std::vector<SixKey>& unknowns() const { return unknowns_; }
  const std::vector<Equation>& equations() const { return equations_; }
  const FusionRules& rules() const { return rules_; }

  void residuals(std::span<const Complex> u, std::vector<Complex>& out) const;
  double max_abs_residual(std::span<const Complex> u) const;
  // complex derivative of equation e with respect to unknown k
  Complex derivative(std::span<const Complex> u, std::size_t e, std::size_t k) const;

  FSolution to_solution(std::span<const Complex> u) const;
  std::vector<Complex> from_solution(const FSolution& sol) const;

 private:
  explicit MfSystem(FusionRules rules) : rules_(std::move(rules)) {}
  FusionRules rules_;
  std::vector<SixKey> unknowns_;
  std::map<SixKey, std::size_t> index_;
  std::vector<Equation> equations_;
};

SolveOutcome solve_multiplicity_free(const FusionRules& rules, const SolveOptions& opts);

// Deterministic gauge fixing for multiplicity-free solutions: rescales module
// bases so a maximal lexicographic set of blocks with independent rescaling
// exponents becomes exactly 1. Solutions on the same rescaling orbit map to
// the same representative, which makes entry magnitudes comparable.
FSolution gauge_canonicalize(const FSolution& sol);

// Sorted magnitudes over all admissible block positions (absent block = 0).
std::vector<double> magnitude_fingerprint(const FSolution& sol);

// Max-abs deviation between the analytic Jacobian and central finite
// differences (step 1e-6) of the residual vector at the given point.
double jacobian_check(const FusionRules& rules, std::span<const Complex> point);
std::vector<Complex> random_unknowns(const FusionRules& rules, std::uint64_t seed);

}  // namespace penta
