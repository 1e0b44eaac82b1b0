#include "penta/rules.hpp"

#include <algorithm>

namespace penta {

FusionRules::FusionRules(std::size_t size, std::vector<std::uint32_t> dims,
                         std::vector<std::string> names)
    : size_(size), dims_(std::move(dims)), names_(std::move(names)) {
  if (dims_.size() != size_ * size_ * size_)
    fail(Errc::shape_mismatch, "FusionRules: dims table must have |I|^3 entries");
  if (names_.empty()) {
    names_.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) names_.push_back(std::to_string(i));
  }
  if (names_.size() != size_)
    fail(Errc::shape_mismatch, "FusionRules: one name per colour required");
}

FusionRules FusionRules::trivial() { return FusionRules(1, {1}, {"0"}); }

void FusionRules::check_label(Label a) const {
  if (a >= size_)
    fail(Errc::invalid_label,
         "label index " + std::to_string(a) + " out of range (|I| = " +
             std::to_string(size_) + ")");
}

std::uint32_t FusionRules::dim(Label a, Label b, Label c) const {
  check_label(a);
  check_label(b);
  check_label(c);
  return dim_unchecked(a, b, c);
}

const std::string& FusionRules::name(Label a) const {
  check_label(a);
  return names_[a];
}

bool FusionRules::multiplicity_free() const {
  return std::all_of(dims_.begin(), dims_.end(), [](std::uint32_t n) { return n <= 1; });
}

std::uint32_t FusionRules::max_dim() const {
  std::uint32_t m = 0;
  for (auto n : dims_) m = std::max(m, n);
  return m;
}

}  // namespace penta
