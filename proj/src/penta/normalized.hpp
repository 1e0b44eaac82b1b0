#pragma once

#include "penta/tensor.hpp"

namespace penta {

// The nonzero normalization parameters w_x, one per colour.
class WeightSystem {
 public:
  explicit WeightSystem(std::vector<Complex> w);
  static WeightSystem ones(std::size_t n);

  std::size_t size() const { return w_.size(); }
  Complex at(Label x) const;
  const std::vector<Complex>& values() const { return w_; }

 private:
  std::vector<Complex> w_;
};

// The family of normalized symbols |a b x; c d y| = F / w_y; coords stored
// already divided.
class NormalizedFamily {
 public:
  NormalizedFamily(FusionRules rules, WeightSystem w) : rules_(std::move(rules)), w_(std::move(w)) {}

  const FusionRules& rules() const { return rules_; }
  const WeightSystem& weights() const { return w_; }
  void set(SixKey key, Dense coords) { coords_.insert_or_assign(key, std::move(coords)); }
  const Dense* coords(const SixKey& key) const {
    auto it = coords_.find(key);
    return it == coords_.end() ? nullptr : &it->second;
  }
  const std::map<SixKey, Dense>& all() const { return coords_; }

 private:
  FusionRules rules_;
  WeightSystem w_;
  std::map<SixKey, Dense> coords_;
};

NormalizedFamily normalize(const FSolution& sol, const WeightSystem& w);
FSolution denormalize(const NormalizedFamily& family);

// Weighted Biedenharn-Elliott residual at one component tuple, and the full
// 9-label sweep.
double check_biedenharn_elliott(const NormalizedFamily& family, ComponentTuple t);
ResidualReport check_all_be(const NormalizedFamily& family, const CheckOptions& opt);

enum class SymmetryStatus { symmetric, asymmetric, not_applicable };

struct SymmetryResult {
  SymmetryStatus status = SymmetryStatus::not_applicable;
  double residual = 0.0;
};

// Compares |a b x; c d y|, |b a x; d c y| and |y d a; x b c| as scalars.
// Only defined when every module entering the three variants is at most
// one-dimensional; a variant touching a zero-dimensional module counts as the
// zero scalar.
SymmetryResult check_symmetry(const NormalizedFamily& family, SixKey tuple, double tol);

struct SymmetryReport {
  std::size_t symmetric = 0, asymmetric = 0, not_applicable = 0;
  double max_residual = 0.0;
  std::vector<std::pair<SixKey, double>> worst;
};

SymmetryReport check_symmetry_all(const NormalizedFamily& family, double tol);

}  // namespace penta
