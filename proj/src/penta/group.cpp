#include "penta/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace penta {

GroupTable::GroupTable(std::vector<std::vector<Label>> mul) : mul_(std::move(mul)) {
  n_ = mul_.size();
  if (n_ == 0) fail(Errc::group_table, "group table must be nonempty");
  for (const auto& row : mul_) {
    if (row.size() != n_) fail(Errc::group_table, "group table must be square");
    for (Label v : row)
      if (v >= n_) fail(Errc::group_table, "group table entry out of range");
  }

  bool found = false;
  for (Label e = 0; e < n_; ++e) {
    bool ok = true;
    for (Label x = 0; x < n_ && ok; ++x) ok = mul_[e][x] == x && mul_[x][e] == x;
    if (ok) {
      e_ = e;
      found = true;
      break;
    }
  }
  if (!found) fail(Errc::group_table, "group table has no identity element");

  for (Label a = 0; a < n_; ++a)
    for (Label b = 0; b < n_; ++b)
      for (Label c = 0; c < n_; ++c)
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
          fail(Errc::group_table, "group table is not associative");

  inv_.assign(n_, 0);
  for (Label x = 0; x < n_; ++x) {
    bool ok = false;
    for (Label y = 0; y < n_; ++y)
      if (mul_[x][y] == e_ && mul_[y][x] == e_) {
        inv_[x] = y;
        ok = true;
        break;
      }
    if (!ok) fail(Errc::group_table, "group table element without inverse");
  }
}

GroupTable GroupTable::cyclic(std::size_t n) {
  if (n == 0) fail(Errc::range, "cyclic group order must be positive");
  std::vector<std::vector<Label>> mul(n, std::vector<Label>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      mul[i][j] = static_cast<Label>((i + j) % n);
  return GroupTable(std::move(mul));
}

Cocycle3::Cocycle3(std::size_t group_order, std::vector<Complex> values)
    : n_(group_order), values_(std::move(values)) {
  if (values_.size() != n_ * n_ * n_)
    fail(Errc::shape_mismatch, "Cocycle3 needs |G|^3 values");
  for (const auto& v : values_)
    if (!is_finite(v) || std::abs(v) <= 1e-15)
      fail(Errc::invalid_cocycle, "cocycle values must be finite and nonzero");
}

double cocycle_residual(const GroupTable& g, const Cocycle3& w) {
  if (w.group_order() != g.order())
    fail(Errc::shape_mismatch, "cocycle does not match the group order");
  double worst = 0.0;
  std::size_t n = g.order();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d) {
          Complex lhs = w.at(b, c, d) * w.at(a, g.mul(b, c), d) * w.at(a, b, c);
          Complex rhs = w.at(g.mul(a, b), c, d) * w.at(a, b, g.mul(c, d));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

Cocycle3 cocycle_cyclic(std::size_t n, std::size_t k) {
  if (n == 0) fail(Errc::range, "cyclic group order must be positive");
  if (k >= n) fail(Errc::range, "cocycle parameter k must satisfy 0 <= k < n");
  std::vector<Complex> values(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t carry = (b + c) / n;  // 0 or 1
        double angle = 2.0 * std::numbers::pi * static_cast<double>(k * a * carry) /
                       static_cast<double>(n);
        values[(a * n + b) * n + c] = std::polar(1.0, angle);
      }
  Cocycle3 w(n, std::move(values));
  double defect = cocycle_residual(GroupTable::cyclic(n), w);
  if (defect > 1e-12)
    fail(Errc::internal, "cocycle_cyclic failed its own verification, defect " +
                             std::to_string(defect));
  return w;
}

}  // namespace penta
