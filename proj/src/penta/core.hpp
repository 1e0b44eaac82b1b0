#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "penta/dense.hpp"
#include "penta/rules.hpp"

namespace penta {

struct BlockKey {
  Label x = 0, y = 0;
  auto operator<=>(const BlockKey&) const = default;
};

struct MapKey {
  Label a = 0, b = 0, c = 0, d = 0;
  auto operator<=>(const MapKey&) const = default;
};

struct SixKey {
  Label a = 0, b = 0, c = 0, d = 0, x = 0, y = 0;
  auto operator<=>(const SixKey&) const = default;
  MapKey outer() const { return {a, b, c, d}; }
  std::string str() const;
};

// One component F_abc^d|^x_y : V_xc^d (x) V_ab^x -> V_ay^d (x) V_bc^y stored as
// the coefficient array R[i][j][r][s] with shape
// (N[x][c][d], N[a][b][x], N[a][y][d], N[b][c][y]).
class FBlock {
 public:
  FBlock(SixKey labels, Dense coords);

  const SixKey& labels() const { return labels_; }
  const Dense& coords() const { return coords_; }

  std::size_t dim_in1() const { return coords_.dim(0); }   // V_xc^d
  std::size_t dim_in2() const { return coords_.dim(1); }   // V_ab^x
  std::size_t dim_out1() const { return coords_.dim(2); }  // V_ay^d
  std::size_t dim_out2() const { return coords_.dim(3); }  // V_bc^y

 private:
  SixKey labels_;
  Dense coords_;
};

// The four module dimensions of a block position, straight from the rules.
std::array<std::size_t, 4> block_shape(const FusionRules& rules, const SixKey& k);

// out[r][s] = sum_{i,j} R[i][j][r][s] * v[i][j]
Dense block_apply(const FBlock& block, const Dense& v);

// Applies a block to the adjacent factor pair (pos, pos+1) of a higher-rank
// entry, leaving the other factors untouched.
Dense block_apply_at(const FBlock& block, const Dense& entry, std::size_t pos);

// (k*l) x (n*m) matrix M[(r,s)][(i,j)] = R[i][j][r][s]
Dense block_matrix(const FBlock& block);

// Square identity map on V_ab^c; errors on a zero-dimensional module.
Dense identity_component(const FusionRules& rules, Label a, Label b, Label c);

// Matrix of the factor swap (u,i,j) -> (u,j,i) on a triple tensor product.
Dense permute23_matrix(std::size_t d0, std::size_t d1, std::size_t d2);

// The map F_abc^d as an association (x,y) -> block. Absent key = zero component.
class FMap {
 public:
  explicit FMap(MapKey key) : key_(key) {}

  MapKey key() const { return key_; }
  void set_block(FBlock block);
  const FBlock* block(Label x, Label y) const;
  const std::map<BlockKey, FBlock>& blocks() const { return blocks_; }

 private:
  MapKey key_;
  std::map<BlockKey, FBlock> blocks_;
};

// The full family {F_abc^d}: the candidate pentagon solution.
class FSolution {
 public:
  explicit FSolution(FusionRules rules) : rules_(std::move(rules)) {}

  const FusionRules& rules() const { return rules_; }
  void set_block(FBlock block);  // validates shape against the rules
  const FBlock* block(const SixKey& k) const;
  const FMap* map(const MapKey& k) const;
  const std::map<MapKey, FMap>& family() const { return family_; }

 private:
  FusionRules rules_;
  std::map<MapKey, FMap> family_;
};

// Key of one summand in a direct sum: one or two free colour indices.
struct SumKey {
  std::array<Label, 2> v{0, 0};
  std::uint8_t arity = 0;
  static SumKey one(Label x) { return {{x, 0}, 1}; }
  static SumKey two(Label x, Label y) { return {{x, y}, 2}; }
  auto operator<=>(const SumKey&) const = default;
};

// An element of a direct sum of tensor products: entries keyed by summand,
// each a dense array of fixed rank (2 for F-map sources/targets, 3 for the
// pentagon spaces). Zero-size entries are never stored.
class SumVector {
 public:
  SumVector(std::uint8_t key_arity, std::uint8_t entry_rank)
      : key_arity_(key_arity), entry_rank_(entry_rank) {}

  std::uint8_t key_arity() const { return key_arity_; }
  std::uint8_t entry_rank() const { return entry_rank_; }

  void set(SumKey key, Dense entry);
  void add(SumKey key, const Dense& entry);  // accumulate
  const Dense* entry(SumKey key) const;
  const std::map<SumKey, Dense>& entries() const { return entries_; }

  SumVector& operator+=(const SumVector& other);
  SumVector& operator*=(Complex s);
  double max_abs() const;

 private:
  std::uint8_t key_arity_;
  std::uint8_t entry_rank_;
  std::map<SumKey, Dense> entries_;
};

// Swaps the second and third tensor factors of every entry (P_23).
SumVector permute_23(const SumVector& v);

// F_abc^d applied to an element of its source sum (rank-2 entries keyed by x).
SumVector fmap_apply(const FusionRules& rules, const FMap& m, const SumVector& alpha);

// Deterministic flattening of a direct sum of tensor products: summand keys in
// lexicographic order, row-major within each part. Zero-size parts are skipped.
class SumLayout {
 public:
  struct Part {
    SumKey key;
    std::vector<std::size_t> dims;
    std::size_t offset = 0;
    std::size_t size = 0;
  };

  void add_part(SumKey key, std::vector<std::size_t> dims);  // call in key order
  const std::vector<Part>& parts() const { return parts_; }
  std::size_t total() const { return total_; }
  const Part* find(SumKey key) const;

  Dense flatten(const SumVector& v) const;
  SumVector unflatten(const Dense& column, std::uint8_t key_arity) const;

 private:
  std::vector<Part> parts_;
  std::size_t total_ = 0;
};

SumLayout fmap_source_layout(const FusionRules& rules, MapKey k);
SumLayout fmap_target_layout(const FusionRules& rules, MapKey k);

// Block-diagonal-by-(x,y) assembly; rows = target layout, cols = source layout.
Dense assemble_matrix(const FusionRules& rules, const FMap& m);

// Exact inverse of assemble_matrix over the documented layout.
FMap disassemble_matrix(const FusionRules& rules, MapKey key, const Dense& matrix);

}  // namespace penta
