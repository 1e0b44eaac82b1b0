#pragma once

#include "penta/group.hpp"
#include "penta/modn.hpp"

namespace penta {

// Exact description of the 3-cocycle solution space on Z/n, computed in
// additive exponents e: (Z/n)^3 -> Z/n with omega = exp(2 pi i e / n).
struct CocycleSolutionSet {
  std::uint32_t n = 0;
  // Generators of all exponent tables satisfying the linearized cocycle
  // condition (canonical Howell rows, length n^3, index (a*n+b)*n+c).
  std::vector<modn::Row> kernel_basis;
  modn::HowellForm cocycles;      // the same generators as a reducible form
  modn::HowellForm coboundaries;  // image of the coboundary map on 2-cochains
  std::vector<Cocycle3> representatives;  // one per cohomology class, k = 0..n-1
  std::size_t class_count = 0;
};

// Solves the linearized cocycle condition over Z/n by Howell elimination,
// verifies that the n standard representatives are pairwise non-cohomologous
// and exhaust the classes, and returns the lot. pre: 1 <= n <= 12.
CocycleSolutionSet enumerate_cocycles(std::uint32_t n);

// The additive exponent table of cocycle_cyclic(n, k).
modn::Row standard_exponent_table(std::uint32_t n, std::uint32_t k);

// Direct check of the additive cocycle condition for one exponent table.
bool is_cocycle_table(std::uint32_t n, const modn::Row& table);

}  // namespace penta
