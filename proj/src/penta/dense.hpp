#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "penta/common.hpp"

namespace penta {

// Dense row-major array of complex scalars with runtime rank.
// Desk-scale dimensions only; everything is stored and copied by value.
class Dense {
 public:
  Dense() = default;
  explicit Dense(std::vector<std::size_t> shape);

  std::size_t rank() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t dim(std::size_t axis) const { return shape_[axis]; }
  std::size_t size() const { return data_.size(); }

  Complex& operator[](std::size_t flat) { return data_[flat]; }
  Complex operator[](std::size_t flat) const { return data_[flat]; }
  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  std::size_t flat_index(std::span<const std::size_t> idx) const;
  Complex& at(std::span<const std::size_t> idx) { return data_[flat_index(idx)]; }
  Complex at(std::span<const std::size_t> idx) const { return data_[flat_index(idx)]; }

  // rank-2 convenience
  Complex& at2(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  Complex at2(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }

  const std::vector<std::size_t>& strides() const { return strides_; }

  bool same_shape(const Dense& other) const { return shape_ == other.shape_; }

  Dense& operator+=(const Dense& other);
  Dense& operator-=(const Dense& other);
  Dense& operator*=(Complex s);
  double max_abs() const;
  bool all_finite() const;

  Dense reshaped(std::vector<std::size_t> new_shape) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<std::size_t> strides_;
  std::vector<Complex> data_;
};

// Advances a multi-index in row-major order; returns false after the last one.
bool next_index(std::vector<std::size_t>& idx, std::span<const std::size_t> shape);

Dense identity_matrix(std::size_t n);
Dense matmul(const Dense& a, const Dense& b);
Dense kron(const Dense& a, const Dense& b);

}  // namespace penta
