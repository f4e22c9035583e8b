#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace oracle {

using namespace clawdeg;

std::vector<std::vector<std::uint32_t>> all_functions(std::uint32_t n, std::uint32_t m) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(n, 1);
  while (true) {
    out.push_back(cur);
    std::size_t pos = n;
    while (pos > 0 && cur[pos - 1] == m) {
      cur[pos - 1] = 1;
      --pos;
    }
    if (pos == 0) {
      break;
    }
    ++cur[pos - 1];
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> subsets(const std::vector<std::uint32_t>& pool, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  const std::size_t n = pool.size();
  if (k > n) {
    return out;
  }
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcountll(mask)) != k) {
      continue;
    }
    std::vector<std::uint32_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) {
        s.push_back(pool[i]);
      }
    }
    std::sort(s.begin(), s.end());
    out.push_back(s);
  }
  return out;
}

Rational permutation_average(const Monomial& term, const std::vector<std::uint32_t>& f) {
  std::vector<std::uint32_t> perm(f.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rational sum = 0;
  std::uint64_t count = 0;
  do {
    bool hit = true;
    for (const auto& [var, e] : term.factors()) {
      hit = hit && f[perm[var.dom - 1]] == var.rng;
    }
    sum += hit ? 1 : 0;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  Rational avg = sum / Rational(static_cast<unsigned long>(count));
  avg.canonicalize();
  return avg;
}

Poly orbit_sum(const ExponentMatrix& omega, const VectorLayout& layout) {
  std::vector<std::size_t> perm(omega.n());
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::vector<ExponentRow>> seen;
  do {
    std::vector<ExponentRow> rows;
    for (std::size_t i : perm) {
      rows.push_back(omega.rows()[i]);
    }
    seen.insert(rows);
  } while (std::next_permutation(perm.begin(), perm.end()));
  Poly out;
  for (const auto& rows : seen) {
    std::vector<Monomial::Factor> factors;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t c = 0; c < rows[i].size(); ++c) {
        if (rows[i][c] > 0) {
          factors.emplace_back(layout.var(i, c), rows[i][c]);
        }
      }
    }
    out.add_term(Monomial(std::move(factors)), 1);
  }
  return out;
}

namespace {

std::vector<std::uint32_t> one_to(std::uint32_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

bool injective_on(const std::vector<std::uint32_t>& h, const std::vector<std::uint32_t>& s) {
  std::set<std::uint32_t> values;
  for (std::uint32_t i : s) {
    if (!values.insert(h[i - 1]).second) {
      return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> complement(std::uint32_t n, const std::vector<std::uint32_t>& s) {
  std::vector<std::uint32_t> rest;
  for (std::uint32_t i = 1; i <= n; ++i) {
    if (!std::binary_search(s.begin(), s.end(), i)) {
      rest.push_back(i);
    }
  }
  return rest;
}

Rational fraction(std::uint64_t num, std::uint64_t den) {
  Rational r(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  r.canonicalize();
  return r;
}

} // namespace

Rational injective_fraction(const std::vector<std::uint32_t>& h, std::uint32_t f) {
  const auto all = subsets(one_to(static_cast<std::uint32_t>(h.size())), f);
  std::uint64_t good = 0;
  for (const auto& s : all) {
    good += injective_on(h, s) ? 1 : 0;
  }
  return fraction(good, all.size());
}

Rational intersect_fraction(const std::vector<std::uint32_t>& h, std::uint32_t f, std::uint32_t g) {
  const auto n = static_cast<std::uint32_t>(h.size());
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (const auto& s : subsets(one_to(n), f)) {
    if (!injective_on(h, s)) {
      continue;
    }
    std::set<std::uint32_t> image;
    for (std::uint32_t i : s) {
      image.insert(h[i - 1]);
    }
    for (const auto& t : subsets(complement(n, s), g)) {
      ++total;
      bool meets = false;
      for (std::uint32_t i : t) {
        meets = meets || image.count(h[i - 1]) > 0;
      }
      hits += meets ? 1 : 0;
    }
  }
  return fraction(hits, total);
}

Rational claw_fraction(const std::vector<std::uint32_t>& h, std::uint32_t f, std::uint32_t g) {
  const auto n = static_cast<std::uint32_t>(h.size());
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (const auto& s : subsets(one_to(n), f)) {
    for (const auto& t : subsets(complement(n, s), g)) {
      ++total;
      bool claw = false;
      for (std::uint32_t i : s) {
        for (std::uint32_t j : t) {
          claw = claw || h[i - 1] == h[j - 1];
        }
      }
      hits += claw ? 1 : 0;
    }
  }
  return fraction(hits, total);
}

namespace {

struct Row {
  std::vector<Rational> a;
  Relation rel;
  Rational b;
};

bool satisfied(const Row& r, const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    lhs += r.a[j] * x[j];
  }
  switch (r.rel) {
  case Relation::LessEq:
    return lhs <= r.b;
  case Relation::GreaterEq:
    return lhs >= r.b;
  case Relation::Equal:
    return lhs == r.b;
  }
  return false;
}

// Unique solution of the square system, if it has one.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) {
      ++piv;
    }
    if (piv == n) {
      return std::nullopt;
    }
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) {
        continue;
      }
      const Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) {
        a[r][c] -= factor * a[col][c];
      }
      b[r] -= factor * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = b[i] / a[i][i];
  }
  return x;
}

} // namespace

bool vertex_feasible(const LPInstance& lp) {
  const std::size_t n = lp.num_vars;
  std::vector<Row> rows;
  for (const Constraint& c : lp.constraints) {
    rows.push_back({c.coeffs, c.rel, c.rhs});
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n);
    e[j] = 1;
    rows.push_back({e, Relation::GreaterEq, *lp.bounds.at(j).lower});
    rows.push_back({e, Relation::LessEq, *lp.bounds.at(j).upper});
  }
  if (n == 0) {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return satisfied(r, {}); });
  }
  std::vector<std::uint32_t> idx(rows.size());
  std::iota(idx.begin(), idx.end(), 1);
  for (const auto& pick : subsets(idx, static_cast<std::uint32_t>(n))) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::uint32_t r : pick) {
      a.push_back(rows[r - 1].a);
      b.push_back(rows[r - 1].b);
    }
    const auto x = solve_square(a, b);
    if (x && std::all_of(rows.begin(), rows.end(), [&](const Row& r) { return satisfied(r, *x); })) {
      return true;
    }
  }
  return false;
}

bool approximates(const Poly& p, const PropertySpec& spec, const Rational& eps) {
  bool ok = true;
  for_each_input(spec, kDefaultEnumerationBudget, [&](const FunctionTuple& t) {
    Assignment a = raw_assignment(t);
    const Assignment z = freq_assignment(t);
    a.insert(z.begin(), z.end());
    const Rational v = eval(p, a);
    const Rational target = eval_property(spec, t) ? 1 : 0;
    const Rational diff = v - target;
    ok = ok && v >= 0 && v <= 1 && diff <= eps && -diff <= eps;
  });
  return ok;
}

std::uint64_t schedule_value(std::uint64_t k, std::uint64_t f, std::uint64_t g) { return k + g / (f / k); }

Regime boundary_regime(std::uint64_t f, std::uint64_t g, std::uint64_t m) {
  const Rational F(static_cast<unsigned long>(f));
  const Rational G(static_cast<unsigned long>(g));
  const Rational M(static_cast<unsigned long>(m));
  if (G > F * F) {
    return Regime::SqrtG;
  }
  Rational ratio = G / F;
  ratio.canonicalize();
  if (M < ratio * ratio) {
    return Regime::SqrtG;
  }
  if (M < F + G) {
    return Regime::MixedSixth;
  }
  return Regime::CubeRootFG;
}

bool same_orbit(const FunctionTuple& a, const FunctionTuple& b) {
  if (a.range != b.range || a.domains() != b.domains()) {
    return false;
  }
  std::vector<std::uint32_t> sigma(a.range);
  std::iota(sigma.begin(), sigma.end(), 1);
  do {
    bool all = true;
    for (std::size_t l = 0; l < a.k() && all; ++l) {
      std::vector<std::uint32_t> mapped;
      for (std::uint32_t v : a.values[l]) {
        mapped.push_back(sigma[v - 1]);
      }
      std::vector<std::uint32_t> target = b.values[l];
      std::sort(mapped.begin(), mapped.end());
      std::sort(target.begin(), target.end());
      all = mapped == target;
    }
    if (all) {
      return true;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

} // namespace oracle
