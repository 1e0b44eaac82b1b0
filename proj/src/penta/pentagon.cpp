#include "penta/pentagon.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace penta {

std::string TupleKey::str() const {
  std::string s;
  for (std::uint8_t i = 0; i < 5 && i < arity; ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  if (arity == 9) {
    s += '|';
    for (std::uint8_t i = 5; i < 9; ++i) {
      if (i > 5) s += ',';
      s += std::to_string(v[i]);
    }
  }
  return s;
}

SumLayout pentagon_source_layout(const FusionRules& rules, PentagonTuple t) {
  SumLayout layout;
  for (Label x = 0; x < rules.size(); ++x)
    for (Label y = 0; y < rules.size(); ++y)
      layout.add_part(SumKey::two(x, y),
                      {rules.dim(y, t.d, t.e), rules.dim(x, t.c, y), rules.dim(t.a, t.b, x)});
  return layout;
}

SumLayout pentagon_target_layout(const FusionRules& rules, PentagonTuple t) {
  SumLayout layout;
  for (Label p = 0; p < rules.size(); ++p)
    for (Label q = 0; q < rules.size(); ++q)
      layout.add_part(SumKey::two(p, q),
                      {rules.dim(t.a, p, t.e), rules.dim(t.b, q, p), rules.dim(t.c, t.d, q)});
  return layout;
}

namespace {

void validate_source(const FusionRules& rules, PentagonTuple t, const SumVector& alpha) {
  if (alpha.key_arity() != 2 || alpha.entry_rank() != 3)
    fail(Errc::shape_mismatch, "pentagon source vectors have rank-3 entries keyed by (x,y)");
  for (const auto& [key, e] : alpha.entries()) {
    Label x = key.v[0], y = key.v[1];
    if (e.dim(0) != rules.dim(y, t.d, t.e) || e.dim(1) != rules.dim(x, t.c, y) ||
        e.dim(2) != rules.dim(t.a, t.b, x))
      fail(Errc::shape_mismatch, "pentagon source entry shape mismatch at summand (" +
                                     std::to_string(x) + "," + std::to_string(y) + ")");
  }
}

}  // namespace

SumVector lhs_global(const FSolution& sol, PentagonTuple t, const SumVector& alpha) {
  const FusionRules& rules = sol.rules();
  validate_source(rules, t, alpha);

  // (+)_y id_yd^e (x) F_abc^y  : keys (x,y) -> (y,z)
  SumVector beta(2, 3);
  for (const auto& [key, e] : alpha.entries()) {
    Label x = key.v[0], y = key.v[1];
    const FMap* m = sol.map(MapKey{t.a, t.b, t.c, y});
    if (!m) continue;
    for (const auto& [bk, block] : m->blocks()) {
      if (bk.x != x) continue;
      beta.add(SumKey::two(y, bk.y), block_apply_at(block, e, 1));
    }
  }

  // (+)_z F_azd^e (x) id_bc^z  : keys (y,z) -> (z,p)
  SumVector gamma(2, 3);
  for (const auto& [key, e] : beta.entries()) {
    Label y = key.v[0], z = key.v[1];
    const FMap* m = sol.map(MapKey{t.a, z, t.d, t.e});
    if (!m) continue;
    for (const auto& [bk, block] : m->blocks()) {
      if (bk.x != y) continue;
      gamma.add(SumKey::two(z, bk.y), block_apply_at(block, e, 0));
    }
  }

  // (+)_p id_ap^e (x) F_bcd^p  : keys (z,p) -> (p,q)
  SumVector out(2, 3);
  for (const auto& [key, e] : gamma.entries()) {
    Label z = key.v[0], p = key.v[1];
    const FMap* m = sol.map(MapKey{t.b, t.c, t.d, p});
    if (!m) continue;
    for (const auto& [bk, block] : m->blocks()) {
      if (bk.x != z) continue;
      out.add(SumKey::two(p, bk.y), block_apply_at(block, e, 1));
    }
  }
  return out;
}

SumVector rhs_global(const FSolution& sol, PentagonTuple t, const SumVector& alpha) {
  const FusionRules& rules = sol.rules();
  validate_source(rules, t, alpha);

  // (+)_x F_xcd^e (x) id_ab^x  : keys (x,y) -> (x,q)
  SumVector rho(2, 3);
  for (const auto& [key, e] : alpha.entries()) {
    Label x = key.v[0], y = key.v[1];
    const FMap* m = sol.map(MapKey{x, t.c, t.d, t.e});
    if (!m) continue;
    for (const auto& [bk, block] : m->blocks()) {
      if (bk.x != y) continue;
      rho.add(SumKey::two(x, bk.y), block_apply_at(block, e, 0));
    }
  }

  SumVector sigma = permute_23(rho);

  // (+)_q F_abq^e (x) id_cd^q  : keys (x,q) -> (p,q)
  SumVector out(2, 3);
  for (const auto& [key, e] : sigma.entries()) {
    Label x = key.v[0], q = key.v[1];
    const FMap* m = sol.map(MapKey{t.a, t.b, q, t.e});
    if (!m) continue;
    for (const auto& [bk, block] : m->blocks()) {
      if (bk.x != x) continue;
      out.add(SumKey::two(bk.y, q), block_apply_at(block, e, 0));
    }
  }
  return out;
}

namespace {

Dense side_matrix(const FSolution& sol, PentagonTuple t,
                  SumVector (*side)(const FSolution&, PentagonTuple, const SumVector&)) {
  const FusionRules& rules = sol.rules();
  SumLayout src = pentagon_source_layout(rules, t);
  SumLayout tgt = pentagon_target_layout(rules, t);
  Dense out({tgt.total(), src.total()});
  for (const auto& part : src.parts()) {
    for (std::size_t i = 0; i < part.size; ++i) {
      SumVector basis(2, 3);
      Dense e(part.dims);
      e[i] = 1.0;
      basis.set(part.key, std::move(e));
      Dense column = tgt.flatten(side(sol, t, basis));
      for (std::size_t r = 0; r < tgt.total(); ++r)
        out.at2(r, part.offset + i) = column[r];
    }
  }
  return out;
}

}  // namespace

Dense lhs_global_matrix(const FSolution& sol, PentagonTuple t) {
  return side_matrix(sol, t, &lhs_global);
}

Dense rhs_global_matrix(const FSolution& sol, PentagonTuple t) {
  return side_matrix(sol, t, &rhs_global);
}

double check_pentagon_global(const FSolution& sol, PentagonTuple t) {
  const FusionRules& rules = sol.rules();
  SumLayout src = pentagon_source_layout(rules, t);
  SumLayout tgt = pentagon_target_layout(rules, t);
  if (src.total() == 0 || tgt.total() == 0) return 0.0;
  double residual = 0.0;
  for (const auto& part : src.parts()) {
    for (std::size_t i = 0; i < part.size; ++i) {
      SumVector basis(2, 3);
      Dense e(part.dims);
      e[i] = 1.0;
      basis.set(part.key, std::move(e));
      SumVector l = lhs_global(sol, t, basis);
      SumVector r = rhs_global(sol, t, basis);
      r *= Complex{-1.0, 0.0};
      l += r;
      residual = std::max(residual, l.max_abs());
    }
  }
  return residual;
}

Dense global_matrix_block(const FusionRules& rules, PentagonTuple t, const Dense& side,
                          Label x, Label y, Label p, Label q) {
  SumLayout src = pentagon_source_layout(rules, t);
  SumLayout tgt = pentagon_target_layout(rules, t);
  const SumLayout::Part* ps = src.find(SumKey::two(x, y));
  const SumLayout::Part* pt = tgt.find(SumKey::two(p, q));
  std::size_t rows = pt ? pt->size : 0, cols = ps ? ps->size : 0;
  Dense out({rows, cols});
  if (ps && pt)
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        out.at2(r, c) = side.at2(pt->offset + r, ps->offset + c);
  return out;
}

namespace {

// dims of the six modules entering a component tuple
struct ComponentDims {
  std::size_t yde, xcy, abx;  // source factors
  std::size_t ape, bqp, cdq;  // target factors
  std::size_t src() const { return yde * xcy * abx; }
  std::size_t tgt() const { return ape * bqp * cdq; }
};

ComponentDims component_dims(const FusionRules& r, ComponentTuple t) {
  return {r.dim(t.y, t.d, t.e), r.dim(t.x, t.c, t.y), r.dim(t.a, t.b, t.x),
          r.dim(t.a, t.p, t.e), r.dim(t.b, t.q, t.p), r.dim(t.c, t.d, t.q)};
}

}  // namespace

Dense lhs_component(const FSolution& sol, ComponentTuple t) {
  const FusionRules& rules = sol.rules();
  ComponentDims dims = component_dims(rules, t);
  Dense acc({dims.tgt(), dims.src()});
  for (Label z = 0; z < rules.size(); ++z) {
    std::size_t azy = rules.dim(t.a, z, t.y), bcz = rules.dim(t.b, t.c, z),
                zdp = rules.dim(z, t.d, t.p);
    if (azy == 0 || bcz == 0 || zdp == 0) continue;
    const FBlock* f1 = sol.block(SixKey{t.a, t.b, t.c, t.y, t.x, z});
    const FBlock* f2 = sol.block(SixKey{t.a, z, t.d, t.e, t.y, t.p});
    const FBlock* f3 = sol.block(SixKey{t.b, t.c, t.d, t.p, z, t.q});
    if (!f1 || !f2 || !f3) continue;  // an absent block contributes zero
    Dense a1 = kron(identity_matrix(dims.yde), block_matrix(*f1));
    Dense a2 = kron(block_matrix(*f2), identity_matrix(bcz));
    Dense a3 = kron(identity_matrix(dims.ape), block_matrix(*f3));
    acc += matmul(a3, matmul(a2, a1));
  }
  return acc;
}

Dense rhs_component(const FSolution& sol, ComponentTuple t) {
  const FusionRules& rules = sol.rules();
  ComponentDims dims = component_dims(rules, t);
  Dense out({dims.tgt(), dims.src()});
  std::size_t xqe = rules.dim(t.x, t.q, t.e);
  if (xqe == 0) return out;
  const FBlock* g1 = sol.block(SixKey{t.x, t.c, t.d, t.e, t.y, t.q});
  const FBlock* g2 = sol.block(SixKey{t.a, t.b, t.q, t.e, t.x, t.p});
  if (!g1 || !g2) return out;
  Dense b1 = kron(block_matrix(*g1), identity_matrix(dims.abx));
  Dense perm = permute23_matrix(xqe, dims.cdq, dims.abx);
  Dense b2 = kron(block_matrix(*g2), identity_matrix(dims.cdq));
  return matmul(b2, matmul(perm, b1));
}

double check_pentagon_component(const FSolution& sol, ComponentTuple t) {
  ComponentDims dims = component_dims(sol.rules(), t);
  if (dims.src() == 0 || dims.tgt() == 0) return 0.0;
  Dense l = lhs_component(sol, t);
  l -= rhs_component(sol, t);
  return l.max_abs();
}

int default_thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("PENTA_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end && *end == '\0' && cap >= 1 && cap < 1024) n = std::min<long>(n, cap);
  }
  return n;
}

ResidualReport sweep_tuples(std::size_t total, const CheckOptions& opt,
                            const std::function<TupleKey(std::size_t)>& key_of,
                            const std::function<SweepItem(std::size_t)>& eval) {
  int threads = opt.threads > 0 ? opt.threads : default_thread_count();
  threads = static_cast<int>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));

  struct Local {
    double overall = 0.0;
    std::size_t checked = 0, vacuous = 0;
    std::vector<std::pair<TupleKey, double>> worst;
    std::map<TupleKey, double> per_tuple;
  };
  std::vector<Local> locals(threads);

  auto run_range = [&](std::size_t begin, std::size_t end, Local& local) {
    for (std::size_t i = begin; i < end; ++i) {
      SweepItem item = eval(i);
      if (item.vacuous) {
        ++local.vacuous;
        continue;
      }
      TupleKey key = key_of(i);
      ++local.checked;
      local.overall = std::max(local.overall, item.residual);
      local.worst.emplace_back(key, item.residual);
      if (local.worst.size() > 4 * opt.worst_cap + 16) {
        std::nth_element(local.worst.begin(), local.worst.begin() + opt.worst_cap,
                         local.worst.end(),
                         [](const auto& l, const auto& r) { return l.second > r.second; });
        local.worst.resize(opt.worst_cap);
      }
      if (opt.keep_all) local.per_tuple.emplace(key, item.residual);
    }
  };

  if (threads <= 1) {
    run_range(0, total, locals[0]);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (total + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      std::size_t begin = std::min<std::size_t>(w * chunk, total);
      std::size_t end = std::min<std::size_t>(begin + chunk, total);
      pool.emplace_back(run_range, begin, end, std::ref(locals[w]));
    }
    for (auto& th : pool) th.join();
  }

  ResidualReport report;
  report.tolerance = opt.tolerance;
  std::vector<std::pair<TupleKey, double>> all_worst;
  for (auto& local : locals) {
    report.overall = std::max(report.overall, local.overall);
    report.tuples_checked += local.checked;
    report.vacuous_count += local.vacuous;
    all_worst.insert(all_worst.end(), local.worst.begin(), local.worst.end());
    report.per_tuple.merge(local.per_tuple);
  }
  std::sort(all_worst.begin(), all_worst.end(), [](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second > r.second;
    return l.first < r.first;
  });
  if (all_worst.size() > opt.worst_cap) all_worst.resize(opt.worst_cap);
  report.worst = std::move(all_worst);
  report.passed = report.overall <= opt.tolerance;
  return report;
}

ResidualReport check_all(const FSolution& sol, const CheckOptions& opt, Form form) {
  if (form != Form::global && form != Form::component)
    fail(Errc::unsupported, "check_all handles the global and component forms only");
  const FusionRules& rules = sol.rules();
  std::size_t n = rules.size();
  std::size_t total = n * n * n * n * n;

  auto tuple_of = [n](std::size_t i) {
    PentagonTuple t;
    t.e = static_cast<Label>(i % n);
    i /= n;
    t.d = static_cast<Label>(i % n);
    i /= n;
    t.c = static_cast<Label>(i % n);
    i /= n;
    t.b = static_cast<Label>(i % n);
    i /= n;
    t.a = static_cast<Label>(i % n);
    return t;
  };

  auto key_of = [&](std::size_t i) { return TupleKey::boundary(tuple_of(i)); };

  auto eval = [&, form](std::size_t i) -> SweepItem {
    PentagonTuple t = tuple_of(i);
    SumLayout src = pentagon_source_layout(rules, t);
    SumLayout tgt = pentagon_target_layout(rules, t);
    if (src.total() == 0 || tgt.total() == 0) return {0.0, true};
    if (form == Form::global) return {check_pentagon_global(sol, t), false};
    double residual = 0.0;
    for (const auto& ps : src.parts())
      for (const auto& pt : tgt.parts()) {
        ComponentTuple ct{t.a, t.b, t.c, t.d, t.e,
                          ps.key.v[0], ps.key.v[1], pt.key.v[0], pt.key.v[1]};
        residual = std::max(residual, check_pentagon_component(sol, ct));
      }
    return {residual, false};
  };

  return sweep_tuples(total, opt, key_of, eval);
}

}  // namespace penta
