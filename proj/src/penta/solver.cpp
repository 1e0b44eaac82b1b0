#include "penta/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace penta {

void SolveOptions::validate() const {
  if (max_iterations == 0 || starts == 0 || damping_init <= 0 || damping_grow <= 1.0 ||
      damping_shrink <= 1.0)
    fail(Errc::options, "SolveOptions fields must be positive (growth factors > 1)");
  if (residual_target < 1e-14)
    fail(Errc::options, "residual_target below 1e-14 is not supported");
}

MfSystem MfSystem::build(const FusionRules& rules) {
  if (!rules.multiplicity_free())
    fail(Errc::unsupported, "solver supports multiplicity-free fusion rules only");
  MfSystem sys(rules);
  std::size_t n = rules.size();

  SixKey k;
  for (k.a = 0; k.a < n; ++k.a)
    for (k.b = 0; k.b < n; ++k.b)
      for (k.c = 0; k.c < n; ++k.c)
        for (k.d = 0; k.d < n; ++k.d)
          for (k.x = 0; k.x < n; ++k.x)
            for (k.y = 0; k.y < n; ++k.y) {
              auto dims = block_shape(rules, k);
              if (dims[0] && dims[1] && dims[2] && dims[3]) {
                sys.index_.emplace(k, sys.unknowns_.size());
                sys.unknowns_.push_back(k);
              }
            }

  auto find = [&sys](SixKey key) -> std::optional<std::size_t> {
    auto it = sys.index_.find(key);
    if (it == sys.index_.end()) return std::nullopt;
    return it->second;
  };

  ComponentTuple t;
  for (t.a = 0; t.a < n; ++t.a)
    for (t.b = 0; t.b < n; ++t.b)
      for (t.c = 0; t.c < n; ++t.c)
        for (t.d = 0; t.d < n; ++t.d)
          for (t.e = 0; t.e < n; ++t.e)
            for (t.x = 0; t.x < n; ++t.x)
              for (t.y = 0; t.y < n; ++t.y)
                for (t.p = 0; t.p < n; ++t.p)
                  for (t.q = 0; t.q < n; ++t.q) {
                    if (!rules.dim_unchecked(t.y, t.d, t.e) ||
                        !rules.dim_unchecked(t.x, t.c, t.y) ||
                        !rules.dim_unchecked(t.a, t.b, t.x) ||
                        !rules.dim_unchecked(t.a, t.p, t.e) ||
                        !rules.dim_unchecked(t.b, t.q, t.p) ||
                        !rules.dim_unchecked(t.c, t.d, t.q))
                      continue;
                    Equation eq;
                    for (Label z = 0; z < n; ++z) {
                      auto i1 = find(SixKey{t.a, t.b, t.c, t.y, t.x, z});
                      auto i2 = find(SixKey{t.a, z, t.d, t.e, t.y, t.p});
                      auto i3 = find(SixKey{t.b, t.c, t.d, t.p, z, t.q});
                      if (i1 && i2 && i3) eq.lhs.push_back(Term3{*i1, *i2, *i3});
                    }
                    auto j1 = find(SixKey{t.x, t.c, t.d, t.e, t.y, t.q});
                    auto j2 = find(SixKey{t.a, t.b, t.q, t.e, t.x, t.p});
                    if (j1 && j2) eq.rhs = std::make_pair(*j1, *j2);
                    if (!eq.lhs.empty() || eq.rhs) sys.equations_.push_back(std::move(eq));
                  }
  return sys;
}

void MfSystem::residuals(std::span<const Complex> u, std::vector<Complex>& out) const {
  out.assign(equations_.size(), Complex{0.0, 0.0});
  for (std::size_t e = 0; e < equations_.size(); ++e) {
    Complex r{0.0, 0.0};
    for (const Term3& t : equations_[e].lhs) r += u[t.i] * u[t.j] * u[t.k];
    if (equations_[e].rhs) r -= u[equations_[e].rhs->first] * u[equations_[e].rhs->second];
    out[e] = r;
  }
}

double MfSystem::max_abs_residual(std::span<const Complex> u) const {
  double worst = 0.0;
  for (std::size_t e = 0; e < equations_.size(); ++e) {
    Complex r{0.0, 0.0};
    for (const Term3& t : equations_[e].lhs) r += u[t.i] * u[t.j] * u[t.k];
    if (equations_[e].rhs) r -= u[equations_[e].rhs->first] * u[equations_[e].rhs->second];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

Complex MfSystem::derivative(std::span<const Complex> u, std::size_t e,
                             std::size_t k) const {
  const Equation& eq = equations_[e];
  Complex d{0.0, 0.0};
  for (const Term3& t : eq.lhs) {
    if (t.i == k) d += u[t.j] * u[t.k];
    if (t.j == k) d += u[t.i] * u[t.k];
    if (t.k == k) d += u[t.i] * u[t.j];
  }
  if (eq.rhs) {
    if (eq.rhs->first == k) d -= u[eq.rhs->second];
    if (eq.rhs->second == k) d -= u[eq.rhs->first];
  }
  return d;
}

FSolution MfSystem::to_solution(std::span<const Complex> u) const {
  FSolution sol(rules_);
  for (std::size_t i = 0; i < unknowns_.size(); ++i) {
    Dense coords({1, 1, 1, 1});
    coords[0] = u[i];
    sol.set_block(FBlock(unknowns_[i], std::move(coords)));
  }
  return sol;
}

std::vector<Complex> MfSystem::from_solution(const FSolution& sol) const {
  std::vector<Complex> u(unknowns_.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < unknowns_.size(); ++i) {
    const FBlock* b = sol.block(unknowns_[i]);
    if (b) u[i] = b->coords()[0];
  }
  return u;
}

namespace {

// splitmix64-driven start points, portable and bit-reproducible. Magnitudes
// are drawn in [0.5, 1.5) with a uniform phase: starts near the origin would
// collapse into the partially-zero solution families, which attract almost
// every descent from a box-uniform start.
std::vector<Complex> random_point(std::size_t m, std::uint64_t seed) {
  std::vector<Complex> u(m);
  std::uint64_t state = seed ? seed : 0x5DEECE66DULL;
  auto next = [&state]() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  };
  auto uniform01 = [&next]() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;  // [0, 1)
  };
  for (auto& z : u) {
    double r = 0.5 + uniform01();
    double phase = 2.0 * std::numbers::pi * uniform01();
    z = std::polar(r, phase);
  }
  return u;
}

}  // namespace

std::vector<Complex> random_unknowns(const FusionRules& rules, std::uint64_t seed) {
  return random_point(MfSystem::build(rules).unknowns().size(), seed);
}

namespace {

// One Levenberg-Marquardt descent on the real-ified system. Returns the final
// max-abs residual; `u` is updated in place.
//
// barrier > 0 adds the residuals sqrt(mu)(|u_k|^2 - 1) with mu decaying
// geometrically per iteration. Without it nearly every random start collapses
// onto a partially-zero solution family; the barrier steers the descent into
// the region where all blocks are of order one and is gone (mu ~ 0) well
// before convergence is judged, which is always against the pure pentagon
// residual.
struct LmStats {
  double residual = 0.0;
  std::size_t iterations = 0;
};

LmStats lm_minimize(const MfSystem& sys, std::vector<Complex>& u, const SolveOptions& opts,
                    std::size_t max_iters, double barrier = 0.0) {
  const std::size_t m = sys.unknowns().size();
  const std::size_t dim = 2 * m;
  std::vector<Complex> res;
  std::vector<std::size_t> support;
  std::vector<Complex> grad;

  auto barrier_cost = [&u, m](double mu) {
    if (mu <= 0.0) return 0.0;
    double c = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      double jr = 0.5 * std::log(std::max(std::norm(u[k]), 1e-300));
      c += mu * jr * jr;
    }
    return c;
  };

  sys.residuals(u, res);
  double mu = barrier;
  double cost = barrier_cost(mu);
  for (const auto& r : res) cost += std::norm(r);

  double lambda = opts.damping_init;
  LmStats stats;
  stats.residual = sys.max_abs_residual(u);

  Eigen::MatrixXd A(dim, dim);
  Eigen::VectorXd g(dim), delta(dim);

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    if (stats.residual <= opts.residual_target && mu <= 1e-9) break;

    A.setZero();
    g.setZero();
    for (std::size_t e = 0; e < sys.equations().size(); ++e) {
      const auto& eq = sys.equations()[e];
      support.clear();
      for (const auto& t : eq.lhs) {
        support.push_back(t.i);
        support.push_back(t.j);
        support.push_back(t.k);
      }
      if (eq.rhs) {
        support.push_back(eq.rhs->first);
        support.push_back(eq.rhs->second);
      }
      std::sort(support.begin(), support.end());
      support.erase(std::unique(support.begin(), support.end()), support.end());
      grad.resize(support.size());
      for (std::size_t s = 0; s < support.size(); ++s)
        grad[s] = sys.derivative(u, e, support[s]);

      for (std::size_t s1 = 0; s1 < support.size(); ++s1) {
        Complex gr = std::conj(grad[s1]) * res[e];
        g(2 * support[s1]) += gr.real();
        g(2 * support[s1] + 1) += gr.imag();
        for (std::size_t s2 = 0; s2 < support.size(); ++s2) {
          Complex c = std::conj(grad[s1]) * grad[s2];
          std::size_t r0 = 2 * support[s1], c0 = 2 * support[s2];
          A(r0, c0) += c.real();
          A(r0, c0 + 1) -= c.imag();
          A(r0 + 1, c0) += c.imag();
          A(r0 + 1, c0 + 1) += c.real();
        }
      }
    }

    if (mu > 1e-9) {
      // residual sqrt(mu) * ln|u_k|, gradient sqrt(mu) * (x, y) / |u_k|^2
      for (std::size_t k = 0; k < m; ++k) {
        double n2 = std::max(std::norm(u[k]), 1e-30);
        double x = u[k].real(), y = u[k].imag();
        double jr = 0.5 * std::log(n2);
        double gx = mu * x / n2, gy = mu * y / n2;  // mu * gradient
        A(2 * k, 2 * k) += gx * x / n2;
        A(2 * k, 2 * k + 1) += gx * y / n2;
        A(2 * k + 1, 2 * k) += gy * x / n2;
        A(2 * k + 1, 2 * k + 1) += gy * y / n2;
        g(2 * k) += gx * jr;
        g(2 * k + 1) += gy * jr;
      }
    }

    bool stepped = false;
    while (lambda < 1e14) {
      Eigen::MatrixXd damped = A;
      for (std::size_t i = 0; i < dim; ++i)
        damped(i, i) += lambda * std::max(A(i, i), 1e-12);
      delta = damped.ldlt().solve(-g);

      std::vector<Complex> trial(u);
      for (std::size_t k = 0; k < m; ++k)
        trial[k] += Complex{delta(2 * k), delta(2 * k + 1)};
      std::vector<Complex> trial_res;
      sys.residuals(trial, trial_res);
      double trial_cost = 0.0;
      for (const auto& r : trial_res) trial_cost += std::norm(r);
      if (mu > 0.0)
        for (std::size_t k = 0; k < m; ++k) {
          double jr = 0.5 * std::log(std::max(std::norm(trial[k]), 1e-300));
          trial_cost += mu * jr * jr;
        }

      if (trial_cost < cost) {
        u = std::move(trial);
        res = std::move(trial_res);
        cost = trial_cost;
        lambda = std::max(lambda / opts.damping_shrink, 1e-14);
        stepped = true;
        break;
      }
      lambda *= opts.damping_grow;
    }
    ++stats.iterations;
    stats.residual = sys.max_abs_residual(u);
    if (mu > 0.0) {
      mu = mu <= 1e-9 ? 0.0 : mu * 0.85;
      cost = barrier_cost(mu);
      for (const auto& r : res) cost += std::norm(r);
    }
    if (!stepped && mu <= 1e-9) break;  // damping exhausted
    if (!stepped) lambda = opts.damping_init;
  }
  return stats;
}

// integer rescaling exponents of one block over the admissible-triple list
std::vector<int> block_exponents(const SixKey& k,
                                 const std::map<std::array<Label, 3>, std::size_t>& triples) {
  std::vector<int> v(triples.size(), 0);
  auto bump = [&](Label a, Label b, Label c, int delta) {
    auto it = triples.find(std::array<Label, 3>{a, b, c});
    if (it == triples.end()) fail(Errc::internal, "gauge: block references unknown triple");
    v[it->second] += delta;
  };
  bump(k.x, k.c, k.d, +1);
  bump(k.a, k.b, k.x, +1);
  bump(k.a, k.y, k.d, -1);
  bump(k.b, k.c, k.y, -1);
  return v;
}

}  // namespace

FSolution gauge_canonicalize(const FSolution& sol) {
  const FusionRules& rules = sol.rules();
  if (!rules.multiplicity_free())
    fail(Errc::unsupported, "gauge_canonicalize supports multiplicity-free rules only");
  std::size_t n = rules.size();

  std::map<std::array<Label, 3>, std::size_t> triples;
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        if (rules.dim_unchecked(a, b, c) == 1)
          triples.emplace(std::array<Label, 3>{a, b, c}, triples.size());
  const std::size_t T = triples.size();

  // blocks participating in the normalization, in key order
  std::vector<std::pair<SixKey, Complex>> blocks;
  for (const auto& [mk, fmap] : sol.family())
    for (const auto& [bk, block] : fmap.blocks())
      blocks.emplace_back(block.labels(), block.coords()[0]);

  constexpr double kZeroTol = 1e-8;

  // greedy lexicographic selection of blocks with independent exponents
  std::vector<std::vector<int>> pinned_rows;
  std::vector<Complex> pinned_vals;
  Eigen::MatrixXd basis(0, T);
  for (const auto& [key, value] : blocks) {
    if (std::abs(value) <= kZeroTol) continue;
    std::vector<int> v = block_exponents(key, triples);
    Eigen::MatrixXd candidate(pinned_rows.size() + 1, T);
    for (std::size_t r = 0; r < pinned_rows.size(); ++r)
      for (std::size_t c = 0; c < T; ++c) candidate(r, c) = pinned_rows[r][c];
    for (std::size_t c = 0; c < T; ++c)
      candidate(pinned_rows.size(), c) = v[c];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(candidate);
    qr.setThreshold(1e-9);
    if (static_cast<std::size_t>(qr.rank()) == pinned_rows.size() + 1) {
      pinned_rows.push_back(std::move(v));
      pinned_vals.push_back(value);
    }
  }

  FSolution out(rules);
  if (pinned_rows.empty()) {
    for (const auto& [key, value] : blocks) {
      Dense coords({1, 1, 1, 1});
      coords[0] = value;
      out.set_block(FBlock(key, std::move(coords)));
    }
    return out;
  }

  const std::size_t R = pinned_rows.size();
  Eigen::MatrixXd Vp(R, T);
  Eigen::VectorXd rhs_re(R), rhs_im(R);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t c = 0; c < T; ++c) Vp(r, c) = pinned_rows[r][c];
    Complex lg = std::log(pinned_vals[r]);
    rhs_re(r) = -lg.real();
    rhs_im(r) = -lg.imag();
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Vp);
  Eigen::VectorXd L_re = cod.solve(rhs_re);
  Eigen::VectorXd L_im = cod.solve(rhs_im);

  for (const auto& [key, value] : blocks) {
    Complex nv = value;
    if (std::abs(value) > kZeroTol) {
      std::vector<int> v = block_exponents(key, triples);
      Complex exponent{0.0, 0.0};
      for (std::size_t c = 0; c < T; ++c)
        exponent += static_cast<double>(v[c]) * Complex{L_re(c), L_im(c)};
      nv = value * std::exp(exponent);
    }
    Dense coords({1, 1, 1, 1});
    coords[0] = nv;
    out.set_block(FBlock(key, std::move(coords)));
  }
  return out;
}

std::vector<double> magnitude_fingerprint(const FSolution& sol) {
  const FusionRules& rules = sol.rules();
  std::size_t n = rules.size();
  std::vector<double> mags;
  SixKey k;
  for (k.a = 0; k.a < n; ++k.a)
    for (k.b = 0; k.b < n; ++k.b)
      for (k.c = 0; k.c < n; ++k.c)
        for (k.d = 0; k.d < n; ++k.d)
          for (k.x = 0; k.x < n; ++k.x)
            for (k.y = 0; k.y < n; ++k.y) {
              auto dims = block_shape(rules, k);
              std::size_t count = dims[0] * dims[1] * dims[2] * dims[3];
              if (count == 0) continue;
              const FBlock* b = sol.block(k);
              for (std::size_t i = 0; i < count; ++i)
                mags.push_back(b ? std::abs(b->coords()[i]) : 0.0);
            }
  std::sort(mags.begin(), mags.end());
  return mags;
}

double jacobian_check(const FusionRules& rules, std::span<const Complex> point) {
  MfSystem sys = MfSystem::build(rules);
  const std::size_t m = sys.unknowns().size();
  if (point.size() != m) fail(Errc::shape_mismatch, "jacobian_check: point size mismatch");
  const double h = 1e-6;
  std::vector<Complex> u(point.begin(), point.end());
  std::vector<Complex> rp, rm;
  double worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    for (int part = 0; part < 2; ++part) {
      Complex step = part == 0 ? Complex{h, 0.0} : Complex{0.0, h};
      u[k] += step;
      sys.residuals(u, rp);
      u[k] -= 2.0 * step;
      sys.residuals(u, rm);
      u[k] += step;
      for (std::size_t e = 0; e < sys.equations().size(); ++e) {
        Complex fd = (rp[e] - rm[e]) / (2.0 * h);
        Complex an = sys.derivative(u, e, k);
        if (part == 1) an *= Complex{0.0, 1.0};
        worst = std::max(worst, std::abs(fd - an));
      }
    }
  }
  return worst;
}

namespace {

struct RankStats {
  std::size_t invertible_big = 0;
  std::size_t invertible_total = 0;
  std::size_t maps_total = 0;
};

RankStats map_invertibility(const FSolution& sol) {
  const FusionRules& rules = sol.rules();
  std::size_t n = rules.size();
  RankStats stats;
  MapKey mk;
  for (mk.a = 0; mk.a < n; ++mk.a)
    for (mk.b = 0; mk.b < n; ++mk.b)
      for (mk.c = 0; mk.c < n; ++mk.c)
        for (mk.d = 0; mk.d < n; ++mk.d) {
          SumLayout src = fmap_source_layout(rules, mk);
          SumLayout tgt = fmap_target_layout(rules, mk);
          if (src.total() == 0 && tgt.total() == 0) continue;
          ++stats.maps_total;
          if (src.total() != tgt.total()) continue;  // cannot be invertible
          const FMap* m = sol.map(mk);
          if (!m) continue;
          Dense a = assemble_matrix(rules, *m);
          Eigen::MatrixXcd em(a.dim(0), a.dim(1));
          for (std::size_t r = 0; r < a.dim(0); ++r)
            for (std::size_t c = 0; c < a.dim(1); ++c) em(r, c) = a.at2(r, c);
          Eigen::JacobiSVD<Eigen::MatrixXcd> svd(em);
          double smin = svd.singularValues().minCoeff();
          double smax = svd.singularValues().maxCoeff();
          if (smin > 1e-6 * std::max(1.0, smax)) {
            ++stats.invertible_total;
            if (src.total() >= 2) ++stats.invertible_big;
          }
        }
  return stats;
}

}  // namespace

SolveOutcome solve_multiplicity_free(const FusionRules& rules, const SolveOptions& opts) {
  opts.validate();
  MfSystem sys = MfSystem::build(rules);
  const std::size_t m = sys.unknowns().size();

  SolveOutcome outcome;
  outcome.best_residual = std::numeric_limits<double>::infinity();

  std::vector<SolveResult> converged;
  for (std::size_t start = 0; start < opts.starts; ++start) {
    std::vector<Complex> u = random_point(m, opts.seed + 0x100000001ULL * start);

    // converge well below target so the canonical rescaling keeps it under
    SolveOptions inner = opts;
    inner.residual_target = std::max(opts.residual_target / 50.0, 1e-14);
    LmStats stats = lm_minimize(sys, u, inner, opts.max_iterations, 0.25);
    outcome.best_residual = std::min(outcome.best_residual, stats.residual);
    if (stats.residual > opts.residual_target) continue;

    FSolution canonical = gauge_canonicalize(sys.to_solution(u));
    std::vector<Complex> cu = sys.from_solution(canonical);
    double canon_residual = sys.max_abs_residual(cu);
    std::size_t extra = 0;
    while (canon_residual > inner.residual_target && extra < 3) {
      LmStats polish = lm_minimize(sys, cu, inner, 40);
      canonical = gauge_canonicalize(sys.to_solution(cu));
      cu = sys.from_solution(canonical);
      canon_residual = sys.max_abs_residual(cu);
      stats.iterations += polish.iterations;
      ++extra;
    }

    // authoritative residual over the same component equations
    CheckOptions check_opt;
    check_opt.tolerance = opts.residual_target;
    check_opt.threads = 1;
    check_opt.worst_cap = 1;
    double final_residual = check_all(canonical, check_opt, Form::component).overall;
    outcome.best_residual = std::min(outcome.best_residual, final_residual);
    if (final_residual > opts.residual_target) continue;

    SolveResult result{.solution = std::move(canonical),
                       .residual = final_residual,
                       .iterations = stats.iterations,
                       .start_index = start,
                       .converged = true,
                       .degenerate = false,
                       .invertible_big = 0,
                       .invertible_total = 0,
                       .fingerprint = {}};
    RankStats rank = map_invertibility(result.solution);
    result.invertible_big = rank.invertible_big;
    result.invertible_total = rank.invertible_total;
    result.degenerate = rank.invertible_total < rank.maps_total;
    result.fingerprint = magnitude_fingerprint(result.solution);
    converged.push_back(std::move(result));
  }
  outcome.converged_starts = converged.size();

  // deduplicate by canonical block values (gauge-orbit representatives)
  std::vector<SolveResult> unique;
  std::vector<std::vector<Complex>> reprs;
  for (auto& r : converged) {
    std::vector<Complex> values = sys.from_solution(r.solution);
    bool dup = false;
    for (std::size_t i = 0; i < reprs.size(); ++i) {
      double diff = 0.0;
      for (std::size_t k = 0; k < values.size(); ++k)
        diff = std::max(diff, std::abs(values[k] - reprs[i][k]));
      if (diff <= 1e-6) {
        dup = true;
        if (r.residual < unique[i].residual) unique[i] = std::move(r);
        break;
      }
    }
    if (!dup) {
      reprs.push_back(std::move(values));
      unique.push_back(std::move(r));
    }
  }

  std::sort(unique.begin(), unique.end(), [](const SolveResult& l, const SolveResult& r) {
    if (l.invertible_big != r.invertible_big) return l.invertible_big > r.invertible_big;
    if (l.invertible_total != r.invertible_total)
      return l.invertible_total > r.invertible_total;
    if (l.residual != r.residual) return l.residual < r.residual;
    return l.start_index < r.start_index;
  });
  outcome.results = std::move(unique);

  std::ostringstream diag;
  diag << "starts=" << opts.starts << " converged=" << outcome.converged_starts
       << " classes=" << outcome.results.size() << " unknowns=" << m
       << " equations=" << sys.equations().size()
       << " best_residual=" << outcome.best_residual;
  outcome.diagnostics = diag.str();
  return outcome;
}

}  // namespace penta
