#include "penta/normalized.hpp"

#include <algorithm>

namespace penta {

WeightSystem::WeightSystem(std::vector<Complex> w) : w_(std::move(w)) {
  for (std::size_t x = 0; x < w_.size(); ++x)
    if (!is_finite(w_[x]) || std::abs(w_[x]) <= 1e-15)
      fail(Errc::weight, "weight w_" + std::to_string(x) + " must be a nonzero scalar");
}

WeightSystem WeightSystem::ones(std::size_t n) {
  return WeightSystem(std::vector<Complex>(n, Complex{1.0, 0.0}));
}

Complex WeightSystem::at(Label x) const {
  if (x >= w_.size()) fail(Errc::invalid_label, "weight label out of range");
  return w_[x];
}

NormalizedFamily normalize(const FSolution& sol, const WeightSystem& w) {
  if (w.size() != sol.rules().size())
    fail(Errc::weight, "weight system must cover every colour");
  NormalizedFamily family(sol.rules(), w);
  for (const auto& [mk, fmap] : sol.family())
    for (const auto& [bk, block] : fmap.blocks()) {
      Dense coords = block.coords();
      coords *= Complex{1.0, 0.0} / w.at(bk.y);
      family.set(block.labels(), std::move(coords));
    }
  return family;
}

FSolution denormalize(const NormalizedFamily& family) {
  FSolution sol(family.rules());
  for (const auto& [key, coords] : family.all()) {
    Dense c = coords;
    c *= family.weights().at(key.y);
    sol.set_block(FBlock(key, std::move(c)));
  }
  return sol;
}

double check_biedenharn_elliott(const NormalizedFamily& family, ComponentTuple t) {
  auto coords = [&family](const SixKey& k) { return family.coords(k); };
  auto sides =
      pentagon_tensor_sides(family.rules(), coords, &family.weights().values(), t);
  if (!sides) return 0.0;
  sides->first.coords() -= sides->second.coords();
  return sides->first.coords().max_abs();
}

ResidualReport check_all_be(const NormalizedFamily& family, const CheckOptions& opt) {
  return sweep_component_tuples(family.rules(), opt, [&family](ComponentTuple t) {
    return check_biedenharn_elliott(family, t);
  });
}

namespace {

// Scalar value of one normalized symbol in the multiplicity-free case;
// nullopt when some module dimension exceeds 1.
std::optional<Complex> symbol_scalar(const NormalizedFamily& family, const SixKey& k) {
  auto dims = block_shape(family.rules(), k);
  for (auto d : dims)
    if (d > 1) return std::nullopt;
  for (auto d : dims)
    if (d == 0) return Complex{0.0, 0.0};
  const Dense* c = family.coords(k);
  return c ? (*c)[0] : Complex{0.0, 0.0};
}

}  // namespace

SymmetryResult check_symmetry(const NormalizedFamily& family, SixKey t, double tol) {
  // |a b x; c d y|, |b a x; d c y|, |y d a; x b c|
  SixKey variants[3] = {
      SixKey{t.a, t.b, t.c, t.d, t.x, t.y},
      SixKey{t.b, t.a, t.d, t.c, t.x, t.y},
      SixKey{t.y, t.d, t.x, t.b, t.a, t.c},
  };
  Complex values[3];
  for (int i = 0; i < 3; ++i) {
    auto v = symbol_scalar(family, variants[i]);
    if (!v) return SymmetryResult{SymmetryStatus::not_applicable, 0.0};
    values[i] = *v;
  }
  double residual = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      residual = std::max(residual, std::abs(values[i] - values[j]));
  return SymmetryResult{
      residual <= tol ? SymmetryStatus::symmetric : SymmetryStatus::asymmetric, residual};
}

SymmetryReport check_symmetry_all(const NormalizedFamily& family, double tol) {
  const FusionRules& rules = family.rules();
  std::size_t n = rules.size();
  SymmetryReport report;
  SixKey t;
  for (t.a = 0; t.a < n; ++t.a)
    for (t.b = 0; t.b < n; ++t.b)
      for (t.c = 0; t.c < n; ++t.c)
        for (t.d = 0; t.d < n; ++t.d)
          for (t.x = 0; t.x < n; ++t.x)
            for (t.y = 0; t.y < n; ++t.y) {
              SymmetryResult r = check_symmetry(family, t, tol);
              switch (r.status) {
                case SymmetryStatus::symmetric:
                  ++report.symmetric;
                  break;
                case SymmetryStatus::asymmetric:
                  ++report.asymmetric;
                  break;
                case SymmetryStatus::not_applicable:
                  ++report.not_applicable;
                  continue;
              }
              report.max_residual = std::max(report.max_residual, r.residual);
              report.worst.emplace_back(t, r.residual);
              std::sort(report.worst.begin(), report.worst.end(),
                        [](const auto& l, const auto& r2) { return l.second > r2.second; });
              if (report.worst.size() > 10) report.worst.resize(10);
            }
  return report;
}

}  // namespace penta
