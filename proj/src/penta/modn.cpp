#include "penta/modn.hpp"

#include <algorithm>
#include <numeric>

namespace penta::modn {

namespace {

using i64 = std::int64_t;

struct Egcd {
  i64 g, s, t;  // s*a + t*b = g
};

Egcd egcd(i64 a, i64 b) {
  if (b == 0) return {a, 1, 0};
  Egcd sub = egcd(b, a % b);
  return {sub.g, sub.t, sub.s - (a / b) * sub.t};
}

std::uint32_t gcd_u(std::uint32_t a, std::uint32_t b) { return std::gcd(a, b); }

// unit u mod n with u*a == gcd(a, n) (mod n)
std::uint32_t unit_for(std::uint32_t a, std::uint32_t n) {
  std::uint32_t g = gcd_u(a, n);
  std::uint32_t ap = a / g, m = n / g;
  if (m == 1) return 1;  // a generates the whole ideal already? only if a == 0 mod n
  // inverse of ap mod m (gcd(ap, m) = 1 because g is the full gcd)
  Egcd e = egcd(static_cast<i64>(ap % m), static_cast<i64>(m));
  i64 u0 = ((e.s % m) + m) % m;
  for (std::uint32_t j = 0; j < g; ++j) {
    std::uint32_t u = static_cast<std::uint32_t>(u0 + static_cast<i64>(j) * m);
    if (u != 0 && gcd_u(u % n, n) == 1) return u % n;
  }
  fail(Errc::internal, "unit_for: no unit found");
}

void scale_row(Row& r, i64 factor, std::uint32_t n) {
  for (auto& v : r) v = static_cast<std::uint32_t>((((factor * v) % n) + n) % n);
}

Row combined(const Row& r1, i64 c1, const Row& r2, i64 c2, std::uint32_t n) {
  Row out(r1.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    i64 v = (c1 * static_cast<i64>(r1[i]) + c2 * static_cast<i64>(r2[i])) % n;
    out[i] = static_cast<std::uint32_t>((v + n) % n);
  }
  return out;
}

bool is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](std::uint32_t v) { return v == 0; });
}

}  // namespace

HowellForm howell(std::uint32_t n, std::vector<Row> rows, std::size_t cols) {
  HowellForm h;
  h.n = n;
  h.cols = cols;
  if (n == 0) fail(Errc::range, "howell: modulus must be positive");
  if (n == 1) return h;  // the zero ring: empty form

  for (auto& r : rows) {
    if (r.size() != cols) fail(Errc::shape_mismatch, "howell: ragged rows");
    for (auto& v : r) v %= n;
  }
  std::erase_if(rows, is_zero);

  std::size_t rpos = 0;
  for (std::size_t col = 0; col < cols; ++col) {
    std::size_t found = rows.size();
    for (std::size_t i = rpos; i < rows.size(); ++i)
      if (rows[i][col] != 0) {
        found = i;
        break;
      }
    if (found == rows.size()) continue;
    std::swap(rows[rpos], rows[found]);

    for (std::size_t i = rpos + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      i64 a = rows[rpos][col], b = rows[i][col];
      Egcd e = egcd(a, b);
      Row piv = combined(rows[rpos], e.s, rows[i], e.t, n);   // entry g at col
      Row rem = combined(rows[rpos], b / e.g, rows[i], -(a / e.g), n);  // entry 0 at col
      rows[rpos] = std::move(piv);
      rows[i] = std::move(rem);
    }

    // normalize the pivot to the canonical divisor of n
    std::uint32_t u = unit_for(rows[rpos][col], n);
    scale_row(rows[rpos], u, n);
    std::uint32_t p = rows[rpos][col];

    // annihilator row: (n/p) * pivot row has leading zero but may be nonzero
    Row ann = rows[rpos];
    scale_row(ann, n / p, n);
    if (!is_zero(ann)) rows.push_back(std::move(ann));

    ++rpos;
  }
  rows.resize(rpos);

  h.rows = std::move(rows);
  h.pivot_cols.resize(h.rows.size());
  h.pivot_vals.resize(h.rows.size());
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    std::size_t j = 0;
    while (h.rows[i][j] == 0) ++j;
    h.pivot_cols[i] = j;
    h.pivot_vals[i] = h.rows[i][j];
  }

  // reduce entries above each pivot below the pivot value
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    std::size_t j = h.pivot_cols[i];
    std::uint32_t p = h.pivot_vals[i];
    for (std::size_t k = 0; k < i; ++k) {
      std::uint32_t q = h.rows[k][j] / p;
      if (q) h.rows[k] = combined(h.rows[k], 1, h.rows[i], -static_cast<i64>(q), n);
    }
  }
  return h;
}

bool in_span(const HowellForm& h, Row x) {
  if (h.n == 1) return true;
  if (x.size() != h.cols) fail(Errc::shape_mismatch, "in_span: size mismatch");
  for (auto& v : x) v %= h.n;
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    std::uint32_t v = x[h.pivot_cols[i]];
    if (v == 0) continue;
    if (v % h.pivot_vals[i] != 0) return false;
    std::uint32_t c = v / h.pivot_vals[i];
    x = combined(x, 1, h.rows[i], -static_cast<i64>(c), h.n);
  }
  return is_zero(x);
}

HowellForm kernel(std::uint32_t n, const std::vector<Row>& matrix, std::size_t cols) {
  if (n == 1) {
    HowellForm h;
    h.n = 1;
    h.cols = cols;
    return h;
  }
  HowellForm reduced = howell(n, matrix, cols);
  std::size_t t = reduced.rows.size();

  // rows i of [H^T | I]: combinations (lambda) map to (H lambda, lambda)
  std::vector<Row> aug(cols, Row(t + cols, 0));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t k = 0; k < t; ++k) aug[i][k] = reduced.rows[k][i];
    aug[i][t + i] = 1;
  }
  HowellForm k = howell(n, std::move(aug), t + cols);

  std::vector<Row> gens;
  for (std::size_t i = 0; i < k.rows.size(); ++i) {
    if (k.pivot_cols[i] < t) continue;  // still touches the image part
    gens.emplace_back(k.rows[i].begin() + t, k.rows[i].end());
  }
  return howell(n, std::move(gens), cols);
}

int order_valuation(const HowellForm& h, std::uint32_t p) {
  int total = 0;
  for (auto piv : h.pivot_vals) {
    std::uint32_t q = h.n / piv;
    while (q % p == 0) {
      ++total;
      q /= p;
    }
  }
  return total;
}

std::vector<Row> span_elements(const HowellForm& h, std::size_t limit) {
  std::size_t count = 1;
  for (auto piv : h.pivot_vals) {
    count *= h.n / piv;
    if (count > limit) fail(Errc::range, "span_elements: span too large to enumerate");
  }
  std::vector<Row> out;
  out.reserve(count);
  std::vector<std::uint32_t> coeff(h.rows.size(), 0);
  while (true) {
    Row e(h.cols, 0);
    for (std::size_t i = 0; i < h.rows.size(); ++i)
      if (coeff[i]) e = combined(e, 1, h.rows[i], coeff[i], h.n);
    out.push_back(std::move(e));
    std::size_t i = h.rows.size();
    while (i-- > 0) {
      if (++coeff[i] < h.n / h.pivot_vals[i]) break;
      coeff[i] = 0;
      if (i == 0) return out;
    }
    if (h.rows.empty()) return out;
  }
}

Row mat_vec(std::uint32_t n, const std::vector<Row>& matrix, const Row& x) {
  Row y(matrix.size(), 0);
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    i64 acc = 0;
    for (std::size_t c = 0; c < x.size(); ++c)
      acc += static_cast<i64>(matrix[r][c]) * x[c];
    y[r] = static_cast<std::uint32_t>(acc % n);
  }
  return y;
}

}  // namespace penta::modn
