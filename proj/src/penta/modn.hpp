#pragma once

#include <cstdint>
#include <vector>

#include "penta/common.hpp"

namespace penta::modn {

using Row = std::vector<std::uint32_t>;  // entries in [0, n)

// Howell normal form of a row space over Z/n. Pivots divide n, entries above
// a pivot are reduced below it, and every span element whose leading nonzero
// column is >= the pivot column of row i lies in the span of rows i..end.
// That last property is what makes greedy reduction a membership test over a
// ring with zero divisors.
struct HowellForm {
  std::uint32_t n = 0;
  std::size_t cols = 0;
  std::vector<Row> rows;
  std::vector<std::size_t> pivot_cols;
  std::vector<std::uint32_t> pivot_vals;  // each divides n
};

HowellForm howell(std::uint32_t n, std::vector<Row> rows, std::size_t cols);

// Membership of x in the row span of a Howell form.
bool in_span(const HowellForm& h, Row x);

// Generators (in Howell form) of {x in (Z/n)^cols : M x == 0 (mod n)}, where
// M is given by rows of length cols.
HowellForm kernel(std::uint32_t n, const std::vector<Row>& matrix, std::size_t cols);

// p-adic valuation of the span's order: |span| = prod_i (n / pivot_i).
int order_valuation(const HowellForm& h, std::uint32_t p);

// All elements of the span; refuses above `limit` elements.
std::vector<Row> span_elements(const HowellForm& h, std::size_t limit);

// y = M x mod n (rows of length x.size()).
Row mat_vec(std::uint32_t n, const std::vector<Row>& matrix, const Row& x);

}  // namespace penta::modn
