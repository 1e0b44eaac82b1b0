#pragma once

#include "penta/group.hpp"
#include "penta/solver.hpp"

namespace penta {

// |I| = 1, every module one-dimensional, every block [1].
FSolution trivial_solution();

// Group-like fusion: N[a][b][c] = 1 iff c = b*a.
FusionRules pointed_rules(const GroupTable& g);

// Pointed solution from a verified 3-cocycle: the unique block at
// (a,b,c) carries the scalar 1/omega(c,b,a), the reciprocal associator
// component read through the standard decomposition bases.
FSolution pointed_solution(const GroupTable& g, const Cocycle3& omega);

// I = {1, tau} with tau (x) tau = 1 (+) tau.
FusionRules fibonacci_rules();

// Solver-produced Fibonacci solution with pinned options; memoized per
// process. Throws a construction error with solver diagnostics on failure.
const FSolution& fibonacci_solution();
FSolution fibonacci_solution(const SolveOptions& opts);

// Skeletal associator data: for each (a,b,c,d) with nonzero Hom spaces, the
// invertible matrix of the associativity isomorphism alpha_{c,b,a} acting on
// Hom(d -> .), written from the (+)_y V_ay^d (x) V_bc^y basis (columns) to
// the (+)_x V_xc^d (x) V_ab^x basis (rows).
class SkeletalAssociator {
 public:
  SkeletalAssociator(FusionRules rules, std::map<MapKey, Dense> alpha);

  const FusionRules& rules() const { return rules_; }
  const Dense* alpha(MapKey key) const;
  double condition_number(MapKey key) const;
  const std::map<MapKey, Dense>& all() const { return alpha_; }

 private:
  FusionRules rules_;
  std::map<MapKey, Dense> alpha_;
  std::map<MapKey, double> cond_;
};

SkeletalAssociator skeletal_from_pointed(const GroupTable& g, const Cocycle3& omega);

// alpha := (assembled F)^{-1} per map; from_skeletal inverts it back.
SkeletalAssociator skeletal_from_solution(const FSolution& sol);

// F_abc^d = A o alpha^{-1} o B^{-1}; in the standard decomposition bases the
// A/B identifications are index bijections, so each map is the inverse of the
// stored alpha matrix, disassembled into blocks.
FSolution from_skeletal(const SkeletalAssociator& assoc);

// Max-abs defect of the associator coherence (the categorical pentagon for
// alpha) over all boundary colours and root colours, composed directly from
// the alpha matrices without inverting anything.
double associator_coherence_residual(const SkeletalAssociator& assoc);

}  // namespace penta
