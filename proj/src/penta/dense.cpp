#include "penta/dense.hpp"

#include <algorithm>
#include <cmath>

namespace penta {

Dense::Dense(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
  strides_.resize(shape_.size());
  std::size_t total = 1;
  for (std::size_t axis = shape_.size(); axis-- > 0;) {
    strides_[axis] = total;
    total *= shape_[axis];
  }
  data_.assign(total, Complex{0.0, 0.0});
}

std::size_t Dense::flat_index(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t axis = 0; axis < shape_.size(); ++axis) {
    flat += idx[axis] * strides_[axis];
  }
  return flat;
}

Dense& Dense::operator+=(const Dense& other) {
  if (!same_shape(other)) fail(Errc::shape_mismatch, "Dense::operator+= shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Dense& Dense::operator-=(const Dense& other) {
  if (!same_shape(other)) fail(Errc::shape_mismatch, "Dense::operator-= shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Dense& Dense::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

double Dense::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool Dense::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](Complex z) { return is_finite(z); });
}

Dense Dense::reshaped(std::vector<std::size_t> new_shape) const {
  Dense out(std::move(new_shape));
  if (out.size() != size()) fail(Errc::shape_mismatch, "Dense::reshaped size mismatch");
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  return out;
}

bool next_index(std::vector<std::size_t>& idx, std::span<const std::size_t> shape) {
  for (std::size_t axis = shape.size(); axis-- > 0;) {
    if (++idx[axis] < shape[axis]) return true;
    idx[axis] = 0;
  }
  return false;
}

Dense identity_matrix(std::size_t n) {
  Dense m({n, n});
  for (std::size_t i = 0; i < n; ++i) m.at2(i, i) = 1.0;
  return m;
}

Dense matmul(const Dense& a, const Dense& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0))
    fail(Errc::shape_mismatch, "matmul shape mismatch");
  Dense out({a.dim(0), b.dim(1)});
  for (std::size_t i = 0; i < a.dim(0); ++i)
    for (std::size_t k = 0; k < a.dim(1); ++k) {
      Complex aik = a.at2(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.dim(1); ++j) out.at2(i, j) += aik * b.at2(k, j);
    }
  return out;
}

Dense kron(const Dense& a, const Dense& b) {
  if (a.rank() != 2 || b.rank() != 2) fail(Errc::shape_mismatch, "kron expects matrices");
  Dense out({a.dim(0) * b.dim(0), a.dim(1) * b.dim(1)});
  for (std::size_t i = 0; i < a.dim(0); ++i)
    for (std::size_t j = 0; j < a.dim(1); ++j) {
      Complex aij = a.at2(i, j);
      if (aij == Complex{0.0, 0.0}) continue;
      for (std::size_t r = 0; r < b.dim(0); ++r)
        for (std::size_t s = 0; s < b.dim(1); ++s)
          out.at2(i * b.dim(0) + r, j * b.dim(1) + s) = aij * b.at2(r, s);
    }
  return out;
}

}  // namespace penta
