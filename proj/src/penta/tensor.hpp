#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "penta/pentagon.hpp"

namespace penta {

// Identity of one tensor slot: the module V_ab^c and its variance.
struct SlotTag {
  Label a = 0, b = 0, c = 0;
  bool dual = false;
  bool operator==(const SlotTag&) const = default;
  SlotTag flipped() const { return {a, b, c, !dual}; }
};

// A multilinear functional with tagged slots; coords indexed slot-major.
class GeneralTensor {
 public:
  GeneralTensor(std::vector<SlotTag> tags, Dense coords);

  std::size_t rank() const { return tags_.size(); }
  const std::vector<SlotTag>& tags() const { return tags_; }
  const SlotTag& tag(std::size_t slot) const { return tags_[slot]; }
  std::size_t dim(std::size_t slot) const { return coords_.dim(slot); }
  const Dense& coords() const { return coords_; }
  Dense& coords() { return coords_; }

 private:
  std::vector<SlotTag> tags_;
  Dense coords_;
};

// The tensor (resp. vector) view of a block: same coordinates, slot metadata
// recording the four modules and their variances.
struct Tensor6j {
  SixKey labels;
  GeneralTensor t;
};
struct Vector6j {
  SixKey labels;
  GeneralTensor t;
};

Tensor6j to_tensor(const FBlock& block);
Vector6j to_vector(const FBlock& block);
FBlock from_tensor(const Tensor6j& t);  // bit-identical round-trip

GeneralTensor tensor_product(const GeneralTensor& t1, const GeneralTensor& t2);

// Sums the diagonal of a (primal, dual) slot pair carrying the same module tag.
GeneralTensor contract(const GeneralTensor& t, std::size_t primal_slot,
                       std::size_t dual_slot);

// Product with simultaneous contraction of the given slot pairs
// (slot in t1, slot in t2); free slots keep their order, t1 first.
GeneralTensor tensordot(const GeneralTensor& t1, const GeneralTensor& t2,
                        const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

// dest[i] = destination position of source slot i.
GeneralTensor permute_slots(const GeneralTensor& t, const std::vector<std::size_t>& dest);

// Both sides of the Theorem-2 identity on the canonical free-slot order
// (V_yd^e, V_xc^y, V_ab^x primal; V_ap^e, V_bq^p, V_cd^q dual), or nullopt
// when the tuple is vacuous. `coords` maps a block position to its
// coefficient array (nullptr = zero block); when `lhs_weights` is given each
// z-term of the left side is scaled by w_z (the Theorem-3 variant).
std::optional<std::pair<GeneralTensor, GeneralTensor>> pentagon_tensor_sides(
    const FusionRules& rules, const std::function<const Dense*(const SixKey&)>& coords,
    const std::vector<Complex>* lhs_weights, ComponentTuple t);

double check_pentagon_tensor(const FSolution& sol, ComponentTuple t);
ResidualReport check_all_tensor(const FSolution& sol, const CheckOptions& opt);

// Shared 9-label sweep used by the tensor- and BE-form checkers.
ResidualReport sweep_component_tuples(
    const FusionRules& rules, const CheckOptions& opt,
    const std::function<double(ComponentTuple)>& residual_of);

}  // namespace penta
