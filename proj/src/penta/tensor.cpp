#include "penta/tensor.hpp"

#include <algorithm>

namespace penta {

GeneralTensor::GeneralTensor(std::vector<SlotTag> tags, Dense coords)
    : tags_(std::move(tags)), coords_(std::move(coords)) {
  if (tags_.size() != coords_.rank())
    fail(Errc::shape_mismatch, "GeneralTensor: one tag per coordinate axis required");
}

Tensor6j to_tensor(const FBlock& block) {
  const SixKey& k = block.labels();
  std::vector<SlotTag> tags{{k.x, k.c, k.d, false},
                            {k.a, k.b, k.x, false},
                            {k.a, k.y, k.d, true},
                            {k.b, k.c, k.y, true}};
  return Tensor6j{k, GeneralTensor(std::move(tags), block.coords())};
}

Vector6j to_vector(const FBlock& block) {
  const SixKey& k = block.labels();
  std::vector<SlotTag> tags{{k.x, k.c, k.d, true},
                            {k.a, k.b, k.x, true},
                            {k.a, k.y, k.d, false},
                            {k.b, k.c, k.y, false}};
  return Vector6j{k, GeneralTensor(std::move(tags), block.coords())};
}

FBlock from_tensor(const Tensor6j& t) { return FBlock(t.labels, t.t.coords()); }

GeneralTensor tensor_product(const GeneralTensor& t1, const GeneralTensor& t2) {
  std::vector<SlotTag> tags = t1.tags();
  tags.insert(tags.end(), t2.tags().begin(), t2.tags().end());
  std::vector<std::size_t> shape = t1.coords().shape();
  shape.insert(shape.end(), t2.coords().shape().begin(), t2.coords().shape().end());
  Dense out(std::move(shape));
  std::size_t n2 = t2.coords().size();
  for (std::size_t i = 0; i < t1.coords().size(); ++i)
    for (std::size_t j = 0; j < n2; ++j) out[i * n2 + j] = t1.coords()[i] * t2.coords()[j];
  return GeneralTensor(std::move(tags), std::move(out));
}

namespace {

void check_pair(const GeneralTensor& a, std::size_t sa, const GeneralTensor& b,
                std::size_t sb) {
  if (sa >= a.rank() || sb >= b.rank())
    fail(Errc::contraction_pair, "contraction slot out of range");
  const SlotTag& ta = a.tag(sa);
  const SlotTag& tb = b.tag(sb);
  if (ta.a != tb.a || ta.b != tb.b || ta.c != tb.c)
    fail(Errc::contraction_pair, "contraction pair carries different module tags");
  if (ta.dual == tb.dual)
    fail(Errc::contraction_pair, "contraction needs one primal and one dual slot");
  if (a.dim(sa) != b.dim(sb))
    fail(Errc::contraction_pair, "contraction pair dimension mismatch");
}

}  // namespace

GeneralTensor contract(const GeneralTensor& t, std::size_t primal_slot,
                       std::size_t dual_slot) {
  check_pair(t, primal_slot, t, dual_slot);
  if (t.tag(primal_slot).dual)
    fail(Errc::contraction_pair, "first contraction slot must be primal");
  if (primal_slot == dual_slot) fail(Errc::contraction_pair, "slots must differ");

  std::vector<SlotTag> tags;
  std::vector<std::size_t> shape;
  std::vector<std::size_t> free_slots;
  for (std::size_t s = 0; s < t.rank(); ++s) {
    if (s == primal_slot || s == dual_slot) continue;
    free_slots.push_back(s);
    tags.push_back(t.tag(s));
    shape.push_back(t.dim(s));
  }
  Dense out(shape);
  const auto& strides = t.coords().strides();
  std::size_t diag_stride = strides[primal_slot] + strides[dual_slot];
  std::size_t n = t.dim(primal_slot);

  std::vector<std::size_t> idx(free_slots.size(), 0);
  if (out.size() > 0) {
    std::size_t flat = 0;
    do {
      std::size_t base = 0;
      for (std::size_t k = 0; k < free_slots.size(); ++k)
        base += idx[k] * strides[free_slots[k]];
      Complex sum{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) sum += t.coords()[base + i * diag_stride];
      out[flat++] = sum;
    } while (next_index(idx, shape));
  }
  return GeneralTensor(std::move(tags), std::move(out));
}

GeneralTensor tensordot(const GeneralTensor& t1, const GeneralTensor& t2,
                        const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<bool> used1(t1.rank(), false), used2(t2.rank(), false);
  for (auto [s1, s2] : pairs) {
    check_pair(t1, s1, t2, s2);
    if (used1[s1] || used2[s2]) fail(Errc::contraction_pair, "slot contracted twice");
    used1[s1] = used2[s2] = true;
  }

  std::vector<std::size_t> free1, free2;
  std::vector<SlotTag> tags;
  std::vector<std::size_t> shape;
  for (std::size_t s = 0; s < t1.rank(); ++s)
    if (!used1[s]) {
      free1.push_back(s);
      tags.push_back(t1.tag(s));
      shape.push_back(t1.dim(s));
    }
  for (std::size_t s = 0; s < t2.rank(); ++s)
    if (!used2[s]) {
      free2.push_back(s);
      tags.push_back(t2.tag(s));
      shape.push_back(t2.dim(s));
    }

  // offsets of the contracted multi-index into both coordinate arrays
  std::vector<std::size_t> cshape;
  for (auto [s1, s2] : pairs) {
    (void)s2;
    cshape.push_back(t1.dim(s1));
  }
  std::size_t csize = 1;
  for (auto d : cshape) csize *= d;
  std::vector<std::size_t> coff1(csize, 0), coff2(csize, 0);
  {
    std::vector<std::size_t> cidx(cshape.size(), 0);
    std::size_t flat = 0;
    if (csize > 0 && !cshape.empty()) {
      do {
        std::size_t o1 = 0, o2 = 0;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          o1 += cidx[k] * t1.coords().strides()[pairs[k].first];
          o2 += cidx[k] * t2.coords().strides()[pairs[k].second];
        }
        coff1[flat] = o1;
        coff2[flat] = o2;
        ++flat;
      } while (next_index(cidx, cshape));
    }
  }

  Dense out(shape);
  if (out.size() == 0 || csize == 0) return GeneralTensor(std::move(tags), std::move(out));

  std::vector<std::size_t> idx(shape.size(), 0);
  std::size_t flat = 0;
  do {
    std::size_t base1 = 0, base2 = 0;
    for (std::size_t k = 0; k < free1.size(); ++k)
      base1 += idx[k] * t1.coords().strides()[free1[k]];
    for (std::size_t k = 0; k < free2.size(); ++k)
      base2 += idx[free1.size() + k] * t2.coords().strides()[free2[k]];
    Complex sum{0.0, 0.0};
    for (std::size_t c = 0; c < csize; ++c)
      sum += t1.coords()[base1 + coff1[c]] * t2.coords()[base2 + coff2[c]];
    out[flat++] = sum;
  } while (next_index(idx, shape));
  return GeneralTensor(std::move(tags), std::move(out));
}

GeneralTensor permute_slots(const GeneralTensor& t, const std::vector<std::size_t>& dest) {
  if (dest.size() != t.rank()) fail(Errc::shape_mismatch, "permute_slots rank mismatch");
  std::vector<SlotTag> tags(t.rank());
  std::vector<std::size_t> shape(t.rank());
  for (std::size_t s = 0; s < t.rank(); ++s) {
    tags[dest[s]] = t.tag(s);
    shape[dest[s]] = t.dim(s);
  }
  Dense out(shape);
  if (out.size() > 0) {
    std::vector<std::size_t> idx(t.rank(), 0);
    std::vector<std::size_t> out_idx(t.rank(), 0);
    std::size_t flat = 0;
    do {
      for (std::size_t s = 0; s < t.rank(); ++s) out_idx[dest[s]] = idx[s];
      out.at(out_idx) = t.coords()[flat++];
    } while (next_index(idx, t.coords().shape()));
  }
  return GeneralTensor(std::move(tags), std::move(out));
}

namespace {

GeneralTensor block_tensor(const Dense& coords, const SixKey& k) {
  std::vector<SlotTag> tags{{k.x, k.c, k.d, false},
                            {k.a, k.b, k.x, false},
                            {k.a, k.y, k.d, true},
                            {k.b, k.c, k.y, true}};
  return GeneralTensor(std::move(tags), coords);
}

}  // namespace

std::optional<std::pair<GeneralTensor, GeneralTensor>> pentagon_tensor_sides(
    const FusionRules& rules, const std::function<const Dense*(const SixKey&)>& coords,
    const std::vector<Complex>* lhs_weights, ComponentTuple t) {
  std::size_t yde = rules.dim(t.y, t.d, t.e), xcy = rules.dim(t.x, t.c, t.y),
              abx = rules.dim(t.a, t.b, t.x), ape = rules.dim(t.a, t.p, t.e),
              bqp = rules.dim(t.b, t.q, t.p), cdq = rules.dim(t.c, t.d, t.q);
  if (yde * xcy * abx == 0 || ape * bqp * cdq == 0) return std::nullopt;

  std::vector<SlotTag> canonical{{t.y, t.d, t.e, false}, {t.x, t.c, t.y, false},
                                 {t.a, t.b, t.x, false}, {t.a, t.p, t.e, true},
                                 {t.b, t.q, t.p, true},  {t.c, t.d, t.q, true}};
  Dense zero({yde, xcy, abx, ape, bqp, cdq});

  GeneralTensor lhs(canonical, zero);
  for (Label z = 0; z < rules.size(); ++z) {
    if (rules.dim(t.a, z, t.y) == 0 || rules.dim(t.b, t.c, z) == 0 ||
        rules.dim(z, t.d, t.p) == 0)
      continue;
    const Dense* c1 = coords(SixKey{t.b, t.c, t.d, t.p, z, t.q});
    const Dense* c2 = coords(SixKey{t.a, z, t.d, t.e, t.y, t.p});
    const Dense* c3 = coords(SixKey{t.a, t.b, t.c, t.y, t.x, z});
    if (!c1 || !c2 || !c3) continue;
    GeneralTensor f1 = block_tensor(*c1, SixKey{t.b, t.c, t.d, t.p, z, t.q});
    GeneralTensor f2 = block_tensor(*c2, SixKey{t.a, z, t.d, t.e, t.y, t.p});
    GeneralTensor f3 = block_tensor(*c3, SixKey{t.a, t.b, t.c, t.y, t.x, z});
    // *_az^y joins f2 and f3; *_zd^p and *_bc^z join f1 with the product.
    GeneralTensor t23 = tensordot(f2, f3, {{1, 2}});
    GeneralTensor term = tensordot(f1, t23, {{0, 2}, {1, 5}});
    GeneralTensor canon = permute_slots(term, {4, 5, 0, 3, 1, 2});
    if (lhs_weights) canon.coords() *= (*lhs_weights)[z];
    lhs.coords() += canon.coords();
  }

  GeneralTensor rhs(canonical, std::move(zero));
  {
    const Dense* c1 = coords(SixKey{t.x, t.c, t.d, t.e, t.y, t.q});
    const Dense* c2 = coords(SixKey{t.a, t.b, t.q, t.e, t.x, t.p});
    if (c1 && c2 && rules.dim(t.x, t.q, t.e) > 0) {
      GeneralTensor g1 = block_tensor(*c1, SixKey{t.x, t.c, t.d, t.e, t.y, t.q});
      GeneralTensor g2 = block_tensor(*c2, SixKey{t.a, t.b, t.q, t.e, t.x, t.p});
      GeneralTensor prod = tensordot(g1, g2, {{2, 0}});
      GeneralTensor canon = permute_slots(prod, {0, 1, 5, 2, 3, 4});
      rhs.coords() += canon.coords();
    }
  }
  return std::make_pair(std::move(lhs), std::move(rhs));
}

double check_pentagon_tensor(const FSolution& sol, ComponentTuple t) {
  auto coords = [&sol](const SixKey& k) -> const Dense* {
    const FBlock* b = sol.block(k);
    return b ? &b->coords() : nullptr;
  };
  auto sides = pentagon_tensor_sides(sol.rules(), coords, nullptr, t);
  if (!sides) return 0.0;
  sides->first.coords() -= sides->second.coords();
  return sides->first.coords().max_abs();
}

ResidualReport sweep_component_tuples(
    const FusionRules& rules, const CheckOptions& opt,
    const std::function<double(ComponentTuple)>& residual_of) {
  std::size_t n = rules.size();
  std::size_t total = 1;
  for (int i = 0; i < 9; ++i) total *= n;

  auto tuple_of = [n](std::size_t i) {
    ComponentTuple t;
    Label* fields[9] = {&t.a, &t.b, &t.c, &t.d, &t.e, &t.x, &t.y, &t.p, &t.q};
    for (int f = 8; f >= 0; --f) {
      *fields[f] = static_cast<Label>(i % n);
      i /= n;
    }
    return t;
  };

  auto key_of = [&](std::size_t i) { return TupleKey::component(tuple_of(i)); };
  auto eval = [&](std::size_t i) -> SweepItem {
    ComponentTuple t = tuple_of(i);
    std::size_t src = rules.dim_unchecked(t.y, t.d, t.e) *
                      rules.dim_unchecked(t.x, t.c, t.y) *
                      rules.dim_unchecked(t.a, t.b, t.x);
    std::size_t tgt = rules.dim_unchecked(t.a, t.p, t.e) *
                      rules.dim_unchecked(t.b, t.q, t.p) *
                      rules.dim_unchecked(t.c, t.d, t.q);
    if (src == 0 || tgt == 0) return {0.0, true};
    return {residual_of(t), false};
  };
  return sweep_tuples(total, opt, key_of, eval);
}

ResidualReport check_all_tensor(const FSolution& sol, const CheckOptions& opt) {
  return sweep_component_tuples(
      sol.rules(), opt,
      [&sol](ComponentTuple t) { return check_pentagon_tensor(sol, t); });
}

}  // namespace penta
