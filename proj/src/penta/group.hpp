#pragma once

#include <vector>

#include "penta/common.hpp"

namespace penta {

// A finite group given by its multiplication table; axioms are checked at
// construction.
class GroupTable {
 public:
  explicit GroupTable(std::vector<std::vector<Label>> mul);
  static GroupTable cyclic(std::size_t n);

  std::size_t order() const { return n_; }
  Label mul(Label x, Label y) const { return mul_[x][y]; }
  Label inverse(Label x) const { return inv_[x]; }
  Label identity() const { return e_; }

 private:
  std::size_t n_;
  std::vector<std::vector<Label>> mul_;
  std::vector<Label> inv_;
  Label e_ = 0;
};

// Nonzero scalars omega: G^3 -> K, stored dense.
class Cocycle3 {
 public:
  Cocycle3(std::size_t group_order, std::vector<Complex> values);

  std::size_t group_order() const { return n_; }
  Complex at(Label a, Label b, Label c) const {
    return values_[(static_cast<std::size_t>(a) * n_ + b) * n_ + c];
  }
  const std::vector<Complex>& values() const { return values_; }

 private:
  std::size_t n_;
  std::vector<Complex> values_;
};

// Max-abs defect of the multiplicative identity
// w(b,c,d) w(a,bc,d) w(a,b,c) = w(ab,c,d) w(a,b,cd) over all quadruples.
double cocycle_residual(const GroupTable& g, const Cocycle3& w);

// The standard multiplicative family on Z/n:
// w(a,b,c) = exp(2 pi i k a floor((b+c)/n) / n). Verified against the brute
// cocycle check before being returned.
Cocycle3 cocycle_cyclic(std::size_t n, std::size_t k);

}  // namespace penta
