#pragma once

#include <string>
#include <vector>

#include "penta/common.hpp"

namespace penta {

// The finite colour set I together with the dimension table
// N[a][b][c] = dim V_ab^c. Immutable after construction.
class FusionRules {
 public:
  FusionRules(std::size_t size, std::vector<std::uint32_t> dims,
              std::vector<std::string> names = {});

  static FusionRules trivial();

  std::size_t size() const { return size_; }
  std::uint32_t dim(Label a, Label b, Label c) const;
  std::uint32_t dim_unchecked(Label a, Label b, Label c) const {
    return dims_[(static_cast<std::size_t>(a) * size_ + b) * size_ + c];
  }
  const std::string& name(Label a) const;
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::uint32_t>& dims() const { return dims_; }

  bool multiplicity_free() const;
  std::uint32_t max_dim() const;

  bool operator==(const FusionRules& other) const {
    return size_ == other.size_ && dims_ == other.dims_;
  }

 private:
  void check_label(Label a) const;

  std::size_t size_ = 0;
  std::vector<std::uint32_t> dims_;  // row-major [a][b][c]
  std::vector<std::string> names_;
};

inline std::uint32_t hom_dim(const FusionRules& rules, Label a, Label b, Label c) {
  return rules.dim(a, b, c);
}

}  // namespace penta
