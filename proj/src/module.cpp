#include "flf/module.hpp"

#include <algorithm>

namespace flf {

Monomial fiber_part(const Monomial& m, const std::vector<bool>& fiber) {
  Monomial out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (fiber[i]) out[i] = m[i];
  }
  return out;
}

Monomial base_part(const Monomial& m, const std::vector<bool>& fiber) {
  Monomial out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!fiber[i]) out[i] = m[i];
  }
  return out;
}

namespace {

bool is_zero_monomial(const Monomial& m) {
  return std::all_of(m.begin(), m.end(), [](std::int32_t e) { return e == 0; });
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

}  // namespace

FiberAnalysis analyze_fibers(const PresentedAlgebra& algebra, const GroebnerOptions& options) {
  GroebnerOptions tracked = options;
  tracked.track_cofactors = true;
  const auto fiber = algebra.fiber_mask();
  const RingPtr& ring = algebra.total.ring();
  const RingPtr& base_ring = algebra.base.ring();
  FiberAnalysis a{fiber,
                  buchberger(algebra.total.ideal(), MonomialOrder::block(fiber), tracked),
                  buchberger(algebra.base.ideal(), MonomialOrder::grevlex(), tracked),
                  false,
                  {},
                  std::nullopt,
                  {},
                  {}};
  if (a.gb.is_unit()) {
    a.empty = true;
    return a;
  }
  std::vector<Monomial> fiber_leads;
  for (std::size_t i = 0; i < a.gb.size(); ++i) {
    const Monomial& lm = a.gb.leading_monomial(i);
    const Monomial fp = fiber_part(lm, fiber);
    const Monomial bp = base_part(lm, fiber);
    if (is_zero_monomial(fp)) {
      // Contraction element: lies in the base subring by elimination.
      const Polynomial c = embed(a.gb.basis()[i], base_ring);
      if (!ideal_contains(a.base_gb, c)) a.torsion.push_back(c);
    } else if (is_zero_monomial(bp)) {
      fiber_leads.push_back(lm);
    } else {
      a.mixed.push_back(a.gb.basis()[i]);
    }
  }
  std::vector<std::int32_t> bound(ring->size(), 0);
  for (std::size_t v = 0; v < ring->size(); ++v) {
    if (!fiber[v]) continue;
    std::int32_t best = -1;
    for (std::size_t i = 0; i < a.gb.size(); ++i) {
      const Monomial& lm = a.gb.leading_monomial(i);
      bool pure = lm[v] > 0;
      for (std::size_t w = 0; w < lm.size() && pure; ++w) {
        if (w != v && lm[w] != 0) pure = false;
      }
      if (pure && (best < 0 || lm[v] < best)) best = lm[v];
    }
    if (best < 0) {
      a.infinite_direction = ring->name(v);
      return a;
    }
    bound[v] = best;
  }
  // Enumerate the box below the pure powers, keep monomials outside the
  // fiber leading-term ideal.
  Monomial cur(ring->size(), 0);
  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < ring->size(); ++v) {
    if (fiber[v]) vars.push_back(v);
  }
  while (true) {
    bool divisible = false;
    for (const auto& lead : fiber_leads) {
      if (divides(lead, cur)) {
        divisible = true;
        break;
      }
    }
    if (!divisible) a.staircase.push_back(cur);
    std::size_t k = 0;
    while (k < vars.size()) {
      if (++cur[vars[k]] < bound[vars[k]]) break;
      cur[vars[k]] = 0;
      ++k;
    }
    if (k == vars.size()) break;
  }
  const MonomialOrder& order = a.gb.order();
  std::sort(a.staircase.begin(), a.staircase.end(),
            [&](const Monomial& x, const Monomial& y) { return order.compare(x, y) < 0; });
  return a;
}

ModulePresentation module_presentation(const PresentedAlgebra& algebra,
                                       const GroebnerOptions& options) {
  const FiberAnalysis a = analyze_fibers(algebra, options);
  ModulePresentation m{algebra.base, {}, {}};
  if (a.empty) return m;
  if (a.infinite_direction) throw NotFinite(*a.infinite_direction);
  if (!a.mixed.empty()) {
    throw Inconclusive("inconclusive: leading coefficient of '" + a.mixed.front().to_string() +
                       "' involves base variables");
  }
  for (const auto& s : a.staircase) {
    m.generators.push_back(Polynomial::monomial(algebra.total.ring(), s, 1));
  }
  const RingPtr& base_ring = algebra.base.ring();
  for (const auto& c : a.torsion) {
    for (std::size_t k = 0; k < a.staircase.size(); ++k) {
      std::vector<Polynomial> row(a.staircase.size(), Polynomial(base_ring));
      row[k] = c;
      m.relations.push_back(std::move(row));
    }
  }
  return m;
}

Polynomial determinant(const PolyMatrix& square, const RingPtr& ring) {
  const std::size_t n = square.size();
  if (n == 0) return Polynomial::constant(ring, 1);
  if (n > 20) throw Inconclusive("inconclusive: determinant too large");
  // det over rows 0..k-1 and column set `mask` (popcount k), by expansion
  // along the last row.
  std::vector<std::optional<Polynomial>> dp(std::size_t{1} << n);
  dp[0] = Polynomial::constant(ring, 1);
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    const std::size_t k = static_cast<std::size_t>(__builtin_popcountll(mask));
    const std::size_t row = k - 1;
    Polynomial acc(ring);
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (std::size_t{1} << col))) continue;
      const Polynomial& entry = square[row][col];
      const std::size_t rest = mask & ~(std::size_t{1} << col);
      // sign of the cofactor: columns of `mask` above `col`
      std::size_t above = 0;
      for (std::size_t c2 = col + 1; c2 < n; ++c2) {
        if (rest & (std::size_t{1} << c2)) ++above;
      }
      if (!entry.is_zero() && dp[rest] && !dp[rest]->is_zero()) {
        Polynomial term = entry * *dp[rest];
        acc = (above % 2 == 0) ? acc + term : acc - term;
      }
    }
    dp[mask] = acc;
  }
  return *dp.back();
}

namespace {

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Polynomial> fitting_ideal(const ModulePresentation& m, std::size_t r,
                                      std::size_t minor_budget) {
  const RingPtr& ring = m.base.ring();
  const std::size_t g = m.generators.size();
  if (r >= g) return {Polynomial::constant(ring, 1)};
  const std::size_t k = g - r;
  const std::size_t rows = m.relations.size();
  if (k > rows) return {};
  std::vector<std::vector<std::size_t>> row_sets;
  std::vector<std::vector<std::size_t>> col_sets;
  combinations(rows, k, row_sets);
  combinations(g, k, col_sets);
  if (row_sets.size() * col_sets.size() > minor_budget) {
    throw Inconclusive("inconclusive: Fitting ideal needs more than " +
                       std::to_string(minor_budget) + " minors");
  }
  std::vector<Polynomial> out;
  for (const auto& rs : row_sets) {
    for (const auto& cs : col_sets) {
      PolyMatrix sub(k, std::vector<Polynomial>(k, Polynomial(ring)));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = m.relations[rs[i]][cs[j]];
      }
      Polynomial d = determinant(sub, ring);
      if (!d.is_zero() && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
  }
  return out;
}

bool fitting_is_zero(const ModulePresentation& m, std::size_t r, const GroebnerOptions& options) {
  const auto minors = fitting_ideal(m, r);
  GroebnerBasis gb = buchberger(m.base.ideal(), MonomialOrder::grevlex(), options);
  return std::all_of(minors.begin(), minors.end(),
                     [&](const Polynomial& p) { return ideal_contains(gb, p); });
}

bool fitting_is_unit(const ModulePresentation& m, std::size_t r, const GroebnerOptions& options) {
  return is_unit_ideal(m.base.ideal().plus(Ideal(m.base.ring(), fitting_ideal(m, r))), options);
}

std::optional<std::size_t> locally_free_rank(const ModulePresentation& m,
                                             const GroebnerOptions& options) {
  for (std::size_t r = 0; r <= m.generators.size(); ++r) {
    if (!fitting_is_unit(m, r, options)) continue;
    if (r == 0 || fitting_is_zero(m, r - 1, options)) return r;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace flf
