#include "penta/core.hpp"

#include <algorithm>

namespace penta {

std::string SixKey::str() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
         "," + std::to_string(d) + "|" + std::to_string(x) + "->" + std::to_string(y) + ")";
}

FBlock::FBlock(SixKey labels, Dense coords)
    : labels_(labels), coords_(std::move(coords)) {
  if (coords_.rank() != 4)
    fail(Errc::shape_mismatch, "FBlock coords must be rank 4, block " + labels_.str());
  if (coords_.size() == 0)
    fail(Errc::empty_module,
         "blocks touching a zero-dimensional module are represented as absent, block " +
             labels_.str());
  if (!coords_.all_finite())
    fail(Errc::validation, "non-finite coefficient in block " + labels_.str());
}

std::array<std::size_t, 4> block_shape(const FusionRules& rules, const SixKey& k) {
  return {rules.dim(k.x, k.c, k.d), rules.dim(k.a, k.b, k.x), rules.dim(k.a, k.y, k.d),
          rules.dim(k.b, k.c, k.y)};
}

Dense block_apply(const FBlock& block, const Dense& v) {
  const Dense& R = block.coords();
  if (v.rank() != 2 || v.dim(0) != R.dim(0) || v.dim(1) != R.dim(1))
    fail(Errc::shape_mismatch, "block_apply: input shape mismatch at block " +
                                   block.labels().str());
  Dense out({R.dim(2), R.dim(3)});
  for (std::size_t i = 0; i < R.dim(0); ++i)
    for (std::size_t j = 0; j < R.dim(1); ++j) {
      Complex vij = v.at2(i, j);
      if (vij == Complex{0.0, 0.0}) continue;
      for (std::size_t r = 0; r < R.dim(2); ++r)
        for (std::size_t s = 0; s < R.dim(3); ++s)
          out.at2(r, s) += R.at(std::array<std::size_t, 4>{i, j, r, s}) * vij;
    }
  return out;
}

Dense block_apply_at(const FBlock& block, const Dense& entry, std::size_t pos) {
  const Dense& R = block.coords();
  if (pos + 1 >= entry.rank())
    fail(Errc::shape_mismatch, "block_apply_at: factor pair out of range");
  if (entry.dim(pos) != R.dim(0) || entry.dim(pos + 1) != R.dim(1))
    fail(Errc::shape_mismatch, "block_apply_at: factor dims mismatch at block " +
                                   block.labels().str());

  std::vector<std::size_t> out_shape = entry.shape();
  out_shape[pos] = R.dim(2);
  out_shape[pos + 1] = R.dim(3);
  Dense out(out_shape);

  // split flat index as (lead, i, j, trail)
  std::size_t trail = 1;
  for (std::size_t axis = pos + 2; axis < entry.rank(); ++axis) trail *= entry.dim(axis);
  std::size_t lead = entry.size() / (trail * R.dim(0) * R.dim(1));

  const std::size_t n = R.dim(0), m = R.dim(1), k = R.dim(2), l = R.dim(3);
  for (std::size_t u = 0; u < lead; ++u)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t t = 0; t < trail; ++t) {
          Complex vij = entry[((u * n + i) * m + j) * trail + t];
          if (vij == Complex{0.0, 0.0}) continue;
          for (std::size_t r = 0; r < k; ++r)
            for (std::size_t s = 0; s < l; ++s)
              out[((u * k + r) * l + s) * trail + t] +=
                  R[((i * m + j) * k + r) * l + s] * vij;
        }
  return out;
}

Dense block_matrix(const FBlock& block) {
  const Dense& R = block.coords();
  const std::size_t n = R.dim(0), m = R.dim(1), k = R.dim(2), l = R.dim(3);
  Dense out({k * l, n * m});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < l; ++s)
          out.at2(r * l + s, i * m + j) = R[((i * m + j) * k + r) * l + s];
  return out;
}

Dense identity_component(const FusionRules& rules, Label a, Label b, Label c) {
  std::uint32_t n = rules.dim(a, b, c);
  if (n == 0)
    fail(Errc::empty_module, "identity_component on zero-dimensional module V(" +
                                 std::to_string(a) + "," + std::to_string(b) + ")^" +
                                 std::to_string(c));
  return identity_matrix(n);
}

Dense permute23_matrix(std::size_t d0, std::size_t d1, std::size_t d2) {
  Dense out({d0 * d2 * d1, d0 * d1 * d2});
  for (std::size_t u = 0; u < d0; ++u)
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d2; ++j)
        out.at2((u * d2 + j) * d1 + i, (u * d1 + i) * d2 + j) = 1.0;
  return out;
}

void FMap::set_block(FBlock block) {
  const SixKey& k = block.labels();
  if (MapKey{k.a, k.b, k.c, k.d} != key_)
    fail(Errc::shape_mismatch, "FMap::set_block outer labels mismatch at " + k.str());
  BlockKey bk{k.x, k.y};
  auto [it, inserted] = blocks_.insert_or_assign(bk, std::move(block));
  (void)it;
  (void)inserted;
}

const FBlock* FMap::block(Label x, Label y) const {
  auto it = blocks_.find(BlockKey{x, y});
  return it == blocks_.end() ? nullptr : &it->second;
}

void FSolution::set_block(FBlock block) {
  const SixKey& k = block.labels();
  auto want = block_shape(rules_, k);
  const auto& got = block.coords().shape();
  for (int i = 0; i < 4; ++i)
    if (got[i] != want[i])
      fail(Errc::shape_mismatch, "block " + k.str() + " has shape inconsistent with the rules");
  MapKey mk = k.outer();
  auto it = family_.find(mk);
  if (it == family_.end()) it = family_.emplace(mk, FMap(mk)).first;
  it->second.set_block(std::move(block));
}

const FBlock* FSolution::block(const SixKey& k) const {
  const FMap* m = map(k.outer());
  return m ? m->block(k.x, k.y) : nullptr;
}

const FMap* FSolution::map(const MapKey& k) const {
  auto it = family_.find(k);
  return it == family_.end() ? nullptr : &it->second;
}

void SumVector::set(SumKey key, Dense entry) {
  if (key.arity != key_arity_ || entry.rank() != entry_rank_)
    fail(Errc::shape_mismatch, "SumVector::set arity/rank mismatch");
  if (entry.size() == 0) return;
  entries_.insert_or_assign(key, std::move(entry));
}

void SumVector::add(SumKey key, const Dense& entry) {
  if (key.arity != key_arity_ || entry.rank() != entry_rank_)
    fail(Errc::shape_mismatch, "SumVector::add arity/rank mismatch");
  if (entry.size() == 0) return;
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, entry);
  } else {
    it->second += entry;
  }
}

const Dense* SumVector::entry(SumKey key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

SumVector& SumVector::operator+=(const SumVector& other) {
  if (other.key_arity_ != key_arity_ || other.entry_rank_ != entry_rank_)
    fail(Errc::shape_mismatch, "SumVector::operator+= mismatch");
  for (const auto& [k, e] : other.entries_) add(k, e);
  return *this;
}

SumVector& SumVector::operator*=(Complex s) {
  for (auto& [k, e] : entries_) e *= s;
  return *this;
}

double SumVector::max_abs() const {
  double m = 0.0;
  for (const auto& [k, e] : entries_) m = std::max(m, e.max_abs());
  return m;
}

SumVector permute_23(const SumVector& v) {
  if (v.entry_rank() != 3)
    fail(Errc::shape_mismatch, "permute_23 needs three tensor factors per summand");
  SumVector out(v.key_arity(), 3);
  for (const auto& [key, e] : v.entries()) {
    Dense p({e.dim(0), e.dim(2), e.dim(1)});
    for (std::size_t u = 0; u < e.dim(0); ++u)
      for (std::size_t i = 0; i < e.dim(1); ++i)
        for (std::size_t j = 0; j < e.dim(2); ++j)
          p.at(std::array<std::size_t, 3>{u, j, i}) =
              e.at(std::array<std::size_t, 3>{u, i, j});
    out.set(key, std::move(p));
  }
  return out;
}

SumVector fmap_apply(const FusionRules& rules, const FMap& m, const SumVector& alpha) {
  if (alpha.key_arity() != 1 || alpha.entry_rank() != 2)
    fail(Errc::shape_mismatch, "fmap_apply expects rank-2 entries keyed by one colour");
  MapKey k = m.key();
  for (const auto& [key, e] : alpha.entries()) {
    Label x = key.v[0];
    if (e.dim(0) != rules.dim(x, k.c, k.d) || e.dim(1) != rules.dim(k.a, k.b, x))
      fail(Errc::shape_mismatch, "fmap_apply: entry shape does not match the source sum");
  }
  SumVector out(1, 2);
  for (const auto& [bk, block] : m.blocks()) {
    const Dense* e = alpha.entry(SumKey::one(bk.x));
    if (!e) continue;
    out.add(SumKey::one(bk.y), block_apply(block, *e));
  }
  return out;
}

void SumLayout::add_part(SumKey key, std::vector<std::size_t> dims) {
  std::size_t sz = 1;
  for (auto d : dims) sz *= d;
  if (sz == 0) return;
  parts_.push_back(Part{key, std::move(dims), total_, sz});
  total_ += sz;
}

const SumLayout::Part* SumLayout::find(SumKey key) const {
  for (const auto& p : parts_)
    if (p.key == key) return &p;
  return nullptr;
}

Dense SumLayout::flatten(const SumVector& v) const {
  Dense out({total_});
  for (const auto& part : parts_) {
    const Dense* e = v.entry(part.key);
    if (!e) continue;
    if (e->size() != part.size) fail(Errc::shape_mismatch, "SumLayout::flatten entry size");
    for (std::size_t i = 0; i < part.size; ++i) out[part.offset + i] = (*e)[i];
  }
  return out;
}

SumVector SumLayout::unflatten(const Dense& column, std::uint8_t key_arity) const {
  if (column.size() != total_) fail(Errc::shape_mismatch, "SumLayout::unflatten size");
  std::uint8_t rank = parts_.empty() ? 0 : static_cast<std::uint8_t>(parts_[0].dims.size());
  SumVector out(key_arity, rank);
  for (const auto& part : parts_) {
    Dense e(part.dims);
    bool nonzero = false;
    for (std::size_t i = 0; i < part.size; ++i) {
      e[i] = column[part.offset + i];
      nonzero = nonzero || e[i] != Complex{0.0, 0.0};
    }
    if (nonzero) out.set(part.key, std::move(e));
  }
  return out;
}

SumLayout fmap_source_layout(const FusionRules& rules, MapKey k) {
  SumLayout layout;
  for (Label x = 0; x < rules.size(); ++x)
    layout.add_part(SumKey::one(x), {rules.dim(x, k.c, k.d), rules.dim(k.a, k.b, x)});
  return layout;
}

SumLayout fmap_target_layout(const FusionRules& rules, MapKey k) {
  SumLayout layout;
  for (Label y = 0; y < rules.size(); ++y)
    layout.add_part(SumKey::one(y), {rules.dim(k.a, y, k.d), rules.dim(k.b, k.c, y)});
  return layout;
}

Dense assemble_matrix(const FusionRules& rules, const FMap& m) {
  SumLayout src = fmap_source_layout(rules, m.key());
  SumLayout tgt = fmap_target_layout(rules, m.key());
  Dense out({tgt.total(), src.total()});
  for (const auto& [bk, block] : m.blocks()) {
    const SumLayout::Part* ps = src.find(SumKey::one(bk.x));
    const SumLayout::Part* pt = tgt.find(SumKey::one(bk.y));
    if (!ps || !pt) fail(Errc::internal, "assemble_matrix: block outside layout");
    const Dense& R = block.coords();
    const std::size_t n = R.dim(0), mm = R.dim(1), k = R.dim(2), l = R.dim(3);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < mm; ++j)
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t s = 0; s < l; ++s)
            out.at2(pt->offset + r * l + s, ps->offset + i * mm + j) =
                R[((i * mm + j) * k + r) * l + s];
  }
  return out;
}

FMap disassemble_matrix(const FusionRules& rules, MapKey key, const Dense& matrix) {
  SumLayout src = fmap_source_layout(rules, key);
  SumLayout tgt = fmap_target_layout(rules, key);
  if (matrix.rank() != 2 || matrix.dim(0) != tgt.total() || matrix.dim(1) != src.total())
    fail(Errc::shape_mismatch, "disassemble_matrix: matrix does not match the layouts");
  FMap m(key);
  for (const auto& ps : src.parts())
    for (const auto& pt : tgt.parts()) {
      std::size_t n = ps.dims[0], mm = ps.dims[1], k = pt.dims[0], l = pt.dims[1];
      Dense R({n, mm, k, l});
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < mm; ++j)
          for (std::size_t r = 0; r < k; ++r)
            for (std::size_t s = 0; s < l; ++s)
              R[((i * mm + j) * k + r) * l + s] =
                  matrix.at2(pt.offset + r * l + s, ps.offset + i * mm + j);
      m.set_block(FBlock(
          SixKey{key.a, key.b, key.c, key.d, ps.key.v[0], pt.key.v[0]}, std::move(R)));
    }
  return m;
}

}  // namespace penta
