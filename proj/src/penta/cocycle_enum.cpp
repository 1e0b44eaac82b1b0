#include "penta/cocycle_enum.hpp"

namespace penta {

namespace {

std::size_t idx3(std::uint32_t n, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return (static_cast<std::size_t>(a) * n + b) * n + c;
}

// rows of the linearized cocycle condition, one per (a,b,c,d)
std::vector<modn::Row> cocycle_condition_matrix(std::uint32_t n) {
  std::vector<modn::Row> rows;
  rows.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d) {
          modn::Row row(static_cast<std::size_t>(n) * n * n, 0);
          auto bump = [&](std::size_t i, std::uint32_t delta) {
            row[i] = (row[i] + delta) % n;
          };
          bump(idx3(n, b, c, d), 1);
          bump(idx3(n, a, (b + c) % n, d), 1);
          bump(idx3(n, a, b, c), 1);
          bump(idx3(n, (a + b) % n, c, d), n - 1);
          bump(idx3(n, a, b, (c + d) % n), n - 1);
          rows.push_back(std::move(row));
        }
  return rows;
}

// image generators of the coboundary map C^2 -> C^3
std::vector<modn::Row> coboundary_generators(std::uint32_t n) {
  std::vector<modn::Row> rows;
  rows.reserve(static_cast<std::size_t>(n) * n);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = 0; v < n; ++v) {
      modn::Row row(static_cast<std::size_t>(n) * n * n, 0);
      for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
          for (std::uint32_t c = 0; c < n; ++c) {
            std::uint32_t val = 0;
            if (b == u && c == v) val = (val + 1) % n;
            if ((a + b) % n == u && c == v) val = (val + n - 1) % n;
            if (a == u && (b + c) % n == v) val = (val + 1) % n;
            if (a == u && b == v) val = (val + n - 1) % n;
            row[idx3(n, a, b, c)] = val;
          }
      rows.push_back(std::move(row));
    }
  return rows;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t p = 2; p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  return primes;
}

}  // namespace

modn::Row standard_exponent_table(std::uint32_t n, std::uint32_t k) {
  modn::Row table(static_cast<std::size_t>(n) * n * n, 0);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c) {
        std::uint32_t carry = (b + c) / n;
        table[idx3(n, a, b, c)] =
            static_cast<std::uint32_t>((static_cast<std::uint64_t>(k) * a * carry) % n);
      }
  return table;
}

bool is_cocycle_table(std::uint32_t n, const modn::Row& table) {
  if (table.size() != static_cast<std::size_t>(n) * n * n)
    fail(Errc::shape_mismatch, "exponent table has wrong size");
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d) {
          std::uint64_t lhs = table[idx3(n, b, c, d)] + table[idx3(n, a, (b + c) % n, d)] +
                              table[idx3(n, a, b, c)];
          std::uint64_t rhs =
              table[idx3(n, (a + b) % n, c, d)] + table[idx3(n, a, b, (c + d) % n)];
          if ((lhs + 4ull * n - rhs) % n != 0) return false;
        }
  return true;
}

CocycleSolutionSet enumerate_cocycles(std::uint32_t n) {
  if (n < 1 || n > 12)
    fail(Errc::range, "enumerate_cocycles supports 1 <= n <= 12, got " + std::to_string(n));

  CocycleSolutionSet set;
  set.n = n;

  if (n == 1) {
    set.cocycles.n = 1;
    set.cocycles.cols = 1;
    set.coboundaries.n = 1;
    set.coboundaries.cols = 1;
    set.representatives.push_back(cocycle_cyclic(1, 0));
    set.class_count = 1;
    return set;
  }

  std::size_t cols = static_cast<std::size_t>(n) * n * n;
  set.cocycles = modn::kernel(n, cocycle_condition_matrix(n), cols);
  set.kernel_basis = set.cocycles.rows;
  set.coboundaries = modn::howell(n, coboundary_generators(n), cols);

  // every coboundary is a cocycle
  for (const auto& row : set.coboundaries.rows)
    if (!modn::in_span(set.cocycles, row))
      fail(Errc::internal, "enumerate_cocycles: coboundary outside the cocycle space");

  // the standard family lies in the kernel and is pairwise non-cohomologous
  for (std::uint32_t k = 0; k < n; ++k) {
    modn::Row table = standard_exponent_table(n, k);
    if (!is_cocycle_table(n, table) || !modn::in_span(set.cocycles, table))
      fail(Errc::internal, "enumerate_cocycles: standard table is not a cocycle");
    if (k > 0 && modn::in_span(set.coboundaries, table))
      fail(Errc::internal,
           "enumerate_cocycles: standard representatives collapse to fewer classes");
    set.representatives.push_back(cocycle_cyclic(n, k));
  }

  // |Z^3| / |B^3| must equal n, so the n distinct classes exhaust the quotient
  for (std::uint32_t p : prime_factors(n)) {
    int vz = modn::order_valuation(set.cocycles, p);
    int vb = modn::order_valuation(set.coboundaries, p);
    int vn = 0;
    for (std::uint32_t m = n; m % p == 0; m /= p) ++vn;
    if (vz - vb != vn)
      fail(Errc::internal, "enumerate_cocycles: cohomology order mismatch at p = " +
                               std::to_string(p));
  }
  set.class_count = n;
  return set;
}

}  // namespace penta
