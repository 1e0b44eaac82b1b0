#include "penta/builders.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <optional>

namespace penta {

FSolution trivial_solution() {
  FSolution sol(FusionRules::trivial());
  Dense coords({1, 1, 1, 1});
  coords[0] = 1.0;
  sol.set_block(FBlock(SixKey{0, 0, 0, 0, 0, 0}, std::move(coords)));
  return sol;
}

FusionRules pointed_rules(const GroupTable& g) {
  std::size_t n = g.order();
  std::vector<std::uint32_t> dims(n * n * n, 0);
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      dims[(static_cast<std::size_t>(a) * n + b) * n + g.mul(b, a)] = 1;
  return FusionRules(n, std::move(dims));
}

FSolution pointed_solution(const GroupTable& g, const Cocycle3& omega) {
  if (omega.group_order() != g.order())
    fail(Errc::invalid_cocycle, "cocycle group order does not match the group");
  double defect = cocycle_residual(g, omega);
  if (defect > 1e-12)
    fail(Errc::invalid_cocycle,
         "cocycle identity violated, defect " + std::to_string(defect));

  FSolution sol(pointed_rules(g));
  std::size_t n = g.order();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c) {
        Label x = g.mul(b, a);
        Label y = g.mul(c, b);
        Label d = g.mul(c, x);
        Dense coords({1, 1, 1, 1});
        coords[0] = Complex{1.0, 0.0} / omega.at(c, b, a);
        sol.set_block(FBlock(SixKey{a, b, c, d, x, y}, std::move(coords)));
      }
  return sol;
}

FusionRules fibonacci_rules() {
  std::vector<std::uint32_t> dims(8, 0);
  auto set = [&dims](Label a, Label b, Label c) { dims[(a * 2 + b) * 2 + c] = 1; };
  set(0, 0, 0);  // 1 (x) 1 = 1
  set(1, 0, 1);  // 1 (x) tau = tau
  set(0, 1, 1);  // tau (x) 1 = tau
  set(1, 1, 0);  // tau (x) tau = 1 (+) tau
  set(1, 1, 1);
  return FusionRules(2, std::move(dims), {"1", "tau"});
}

FSolution fibonacci_solution(const SolveOptions& opts) {
  SolveOutcome outcome = solve_multiplicity_free(fibonacci_rules(), opts);
  for (const SolveResult& r : outcome.results) {
    if (!r.degenerate && r.residual <= 1e-9) return r.solution;
  }
  fail(Errc::construction,
       "fibonacci_solution: no non-degenerate solution found (" + outcome.diagnostics + ")");
}

const FSolution& fibonacci_solution() {
  static const FSolution cached = fibonacci_solution(SolveOptions{});
  return cached;
}

namespace {

Eigen::MatrixXcd to_eigen(const Dense& m) {
  Eigen::MatrixXcd e(m.dim(0), m.dim(1));
  for (std::size_t r = 0; r < m.dim(0); ++r)
    for (std::size_t c = 0; c < m.dim(1); ++c) e(r, c) = m.at2(r, c);
  return e;
}

Dense from_eigen(const Eigen::MatrixXcd& e) {
  Dense m({static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols())});
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) m.at2(r, c) = e(r, c);
  return m;
}

std::string key_str(MapKey k) {
  return "(" + std::to_string(k.a) + "," + std::to_string(k.b) + "," + std::to_string(k.c) +
         "," + std::to_string(k.d) + ")";
}

}  // namespace

SkeletalAssociator::SkeletalAssociator(FusionRules rules, std::map<MapKey, Dense> alpha)
    : rules_(std::move(rules)), alpha_(std::move(alpha)) {
  std::size_t n = rules_.size();
  MapKey k;
  for (k.a = 0; k.a < n; ++k.a)
    for (k.b = 0; k.b < n; ++k.b)
      for (k.c = 0; k.c < n; ++k.c)
        for (k.d = 0; k.d < n; ++k.d) {
          std::size_t xs = fmap_source_layout(rules_, k).total();
          std::size_t ys = fmap_target_layout(rules_, k).total();
          auto it = alpha_.find(k);
          if (xs == 0 && ys == 0) {
            if (it != alpha_.end())
              fail(Errc::shape_mismatch,
                   "alpha " + key_str(k) + " given for a zero-dimensional Hom space");
            continue;
          }
          if (xs != ys)
            fail(Errc::shape_mismatch, "alpha " + key_str(k) +
                                           ": decomposition sizes disagree (" +
                                           std::to_string(xs) + " vs " + std::to_string(ys) + ")");
          if (it == alpha_.end())
            fail(Errc::shape_mismatch, "alpha " + key_str(k) + " missing");
          const Dense& m = it->second;
          if (m.rank() != 2 || m.dim(0) != xs || m.dim(1) != ys)
            fail(Errc::shape_mismatch, "alpha " + key_str(k) + " has the wrong shape");
          if (!m.all_finite())
            fail(Errc::validation, "alpha " + key_str(k) + " has non-finite entries");
          Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
          double smin = svd.singularValues().minCoeff();
          double smax = svd.singularValues().maxCoeff();
          if (!(smin > 0.0) || smin <= 1e-12 * std::max(1.0, smax))
            fail(Errc::singular_associator, "alpha " + key_str(k) + " is singular");
          cond_[k] = smax / smin;
        }
}

const Dense* SkeletalAssociator::alpha(MapKey key) const {
  auto it = alpha_.find(key);
  return it == alpha_.end() ? nullptr : &it->second;
}

double SkeletalAssociator::condition_number(MapKey key) const {
  auto it = cond_.find(key);
  return it == cond_.end() ? 0.0 : it->second;
}

SkeletalAssociator skeletal_from_pointed(const GroupTable& g, const Cocycle3& omega) {
  if (omega.group_order() != g.order())
    fail(Errc::invalid_cocycle, "cocycle group order does not match the group");
  FusionRules rules = pointed_rules(g);
  std::map<MapKey, Dense> alpha;
  std::size_t n = g.order();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c) {
        Label d = g.mul(c, g.mul(b, a));
        Dense m({1, 1});
        m[0] = omega.at(c, b, a);
        alpha.emplace(MapKey{a, b, c, d}, std::move(m));
      }
  return SkeletalAssociator(std::move(rules), std::move(alpha));
}

SkeletalAssociator skeletal_from_solution(const FSolution& sol) {
  const FusionRules& rules = sol.rules();
  std::size_t n = rules.size();
  std::map<MapKey, Dense> alpha;
  MapKey k;
  for (k.a = 0; k.a < n; ++k.a)
    for (k.b = 0; k.b < n; ++k.b)
      for (k.c = 0; k.c < n; ++k.c)
        for (k.d = 0; k.d < n; ++k.d) {
          std::size_t xs = fmap_source_layout(rules, k).total();
          std::size_t ys = fmap_target_layout(rules, k).total();
          if (xs == 0 && ys == 0) continue;
          if (xs != ys)
            fail(Errc::shape_mismatch,
                 "skeletal_from_solution: map " + key_str(k) + " is not square");
          const FMap* m = sol.map(k);
          FMap empty(k);
          Dense f = assemble_matrix(rules, m ? *m : empty);
          Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(f));
          if (!lu.isInvertible())
            fail(Errc::singular_associator,
                 "skeletal_from_solution: map " + key_str(k) + " is singular");
          alpha.emplace(k, from_eigen(lu.inverse()));
        }
  return SkeletalAssociator(rules, std::move(alpha));
}

FSolution from_skeletal(const SkeletalAssociator& assoc) {
  const FusionRules& rules = assoc.rules();
  FSolution sol(rules);
  for (const auto& [key, matrix] : assoc.all()) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(matrix));
    if (!lu.isInvertible())
      fail(Errc::singular_associator, "alpha " + key_str(key) + " is singular");
    FMap m = disassemble_matrix(rules, key, from_eigen(lu.inverse()));
    for (const auto& [bk, block] : m.blocks()) sol.set_block(block);
  }
  return sol;
}

namespace {

struct CoherenceSpaces {
  SumLayout t1, t2, t3, t4, t5;
};

CoherenceSpaces coherence_spaces(const FusionRules& r, PentagonTuple t) {
  CoherenceSpaces s;
  std::size_t n = r.size();
  s.t1 = pentagon_source_layout(r, t);
  s.t4 = pentagon_target_layout(r, t);
  for (Label y = 0; y < n; ++y)
    for (Label z = 0; z < n; ++z)
      s.t2.add_part(SumKey::two(y, z),
                    {r.dim(y, t.d, t.e), r.dim(t.a, z, y), r.dim(t.b, t.c, z)});
  for (Label z = 0; z < n; ++z)
    for (Label p = 0; p < n; ++p)
      s.t3.add_part(SumKey::two(z, p),
                    {r.dim(t.a, p, t.e), r.dim(z, t.d, p), r.dim(t.b, t.c, z)});
  for (Label x = 0; x < n; ++x)
    for (Label q = 0; q < n; ++q)
      s.t5.add_part(SumKey::two(x, q),
                    {r.dim(x, q, t.e), r.dim(t.c, t.d, q), r.dim(t.a, t.b, x)});
  return s;
}

Dense submatrix(const Dense& m, std::size_t r0, std::size_t nr, std::size_t c0,
                std::size_t nc) {
  Dense out({nr, nc});
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out.at2(r, c) = m.at2(r0 + r, c0 + c);
  return out;
}

using ComponentFn = std::function<std::optional<Dense>(const SumLayout::Part&,
                                                       const SumLayout::Part&)>;

Dense build_transition(const SumLayout& tgt, const SumLayout& src, const ComponentFn& fn) {
  Dense out({tgt.total(), src.total()});
  for (const auto& pt : tgt.parts())
    for (const auto& ps : src.parts()) {
      std::optional<Dense> comp = fn(pt, ps);
      if (!comp) continue;
      if (comp->dim(0) != pt.size || comp->dim(1) != ps.size)
        fail(Errc::internal, "coherence transition component has the wrong shape");
      for (std::size_t r = 0; r < pt.size; ++r)
        for (std::size_t c = 0; c < ps.size; ++c)
          out.at2(pt.offset + r, ps.offset + c) = comp->at2(r, c);
    }
  return out;
}

// sub-block of an alpha matrix: rows at summand x' of the x-side layout,
// columns at summand y' of the y-side layout
std::optional<Dense> alpha_sub(const SkeletalAssociator& assoc, MapKey key, Label xpart,
                               Label ypart) {
  const Dense* m = assoc.alpha(key);
  if (!m) return std::nullopt;
  SumLayout rows = fmap_source_layout(assoc.rules(), key);
  SumLayout cols = fmap_target_layout(assoc.rules(), key);
  const SumLayout::Part* pr = rows.find(SumKey::one(xpart));
  const SumLayout::Part* pc = cols.find(SumKey::one(ypart));
  if (!pr || !pc) return std::nullopt;
  return submatrix(*m, pr->offset, pr->size, pc->offset, pc->size);
}

}  // namespace

double associator_coherence_residual(const SkeletalAssociator& assoc) {
  const FusionRules& rules = assoc.rules();
  std::size_t n = rules.size();
  double worst = 0.0;
  PentagonTuple t;
  for (t.a = 0; t.a < n; ++t.a)
    for (t.b = 0; t.b < n; ++t.b)
      for (t.c = 0; t.c < n; ++t.c)
        for (t.d = 0; t.d < n; ++t.d)
          for (t.e = 0; t.e < n; ++t.e) {
            CoherenceSpaces s = coherence_spaces(rules, t);
            if (s.t1.total() == 0 || s.t4.total() == 0) continue;

            // T4 -> T3: id_{ap^e} (x) alpha_{d,c,b} on the p-subtree
            Dense m43 = build_transition(s.t3, s.t4, [&](const auto& pt, const auto& ps) {
              Label z = pt.key.v[0], p = pt.key.v[1], q = ps.key.v[1];
              if (ps.key.v[0] != p) return std::optional<Dense>{};
              auto sub = alpha_sub(assoc, MapKey{t.b, t.c, t.d, p}, z, q);
              if (!sub) return std::optional<Dense>{};
              return std::optional<Dense>(kron(identity_matrix(pt.dims[0]), *sub));
            });

            // T3 -> T2: alpha_{d,z,a} at the root (x) id_{bc^z}
            Dense m32 = build_transition(s.t2, s.t3, [&](const auto& pt, const auto& ps) {
              Label y = pt.key.v[0], z = pt.key.v[1], p = ps.key.v[1];
              if (ps.key.v[0] != z) return std::optional<Dense>{};
              auto sub = alpha_sub(assoc, MapKey{t.a, z, t.d, t.e}, y, p);
              if (!sub) return std::optional<Dense>{};
              return std::optional<Dense>(kron(*sub, identity_matrix(pt.dims[2])));
            });

            // T2 -> T1: id_{yd^e} (x) alpha_{c,b,a} on the y-subtree
            Dense m21 = build_transition(s.t1, s.t2, [&](const auto& pt, const auto& ps) {
              Label x = pt.key.v[0], y = pt.key.v[1], z = ps.key.v[1];
              if (ps.key.v[0] != y) return std::optional<Dense>{};
              auto sub = alpha_sub(assoc, MapKey{t.a, t.b, t.c, y}, x, z);
              if (!sub) return std::optional<Dense>{};
              return std::optional<Dense>(kron(identity_matrix(pt.dims[0]), *sub));
            });

            // T4 -> T5: (alpha_{q,b,a} at the root (x) id_{cd^q}), then swap
            Dense m45 = build_transition(s.t5, s.t4, [&](const auto& pt, const auto& ps) {
              Label x = pt.key.v[0], q = pt.key.v[1], p = ps.key.v[0];
              if (ps.key.v[1] != q) return std::optional<Dense>{};
              auto sub = alpha_sub(assoc, MapKey{t.a, t.b, q, t.e}, x, p);
              if (!sub) return std::optional<Dense>{};
              Dense pre = kron(*sub, identity_matrix(pt.dims[1]));
              Dense perm = permute23_matrix(pt.dims[0], pt.dims[2], pt.dims[1]);
              return std::optional<Dense>(matmul(perm, pre));
            });

            // T5 -> T1: alpha_{d,c,x} at the root (x) id_{ab^x}
            Dense m51 = build_transition(s.t1, s.t5, [&](const auto& pt, const auto& ps) {
              Label x = pt.key.v[0], y = pt.key.v[1], q = ps.key.v[1];
              if (ps.key.v[0] != x) return std::optional<Dense>{};
              auto sub = alpha_sub(assoc, MapKey{x, t.c, t.d, t.e}, y, q);
              if (!sub) return std::optional<Dense>{};
              return std::optional<Dense>(kron(*sub, identity_matrix(pt.dims[2])));
            });

            Dense left = matmul(m21, matmul(m32, m43));
            Dense right = matmul(m51, m45);
            left -= right;
            worst = std::max(worst, left.max_abs());
          }
  return worst;
}

}  // namespace penta
