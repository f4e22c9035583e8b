#include "clawdeg/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "clawdeg/approxdeg.hpp"
#include "clawdeg/errors.hpp"
#include "clawdeg/multisym.hpp"

namespace clawdeg {

namespace {

void require_two_to_one_range(std::uint32_t m, std::uint32_t f) {
  if (m % 2 != 0) {
    throw std::invalid_argument("a two-to-one function on [M] needs M even, got M=" + std::to_string(m));
  }
  if (2ULL * f > m) {
    throw std::invalid_argument("need 2F <= M, got F=" + std::to_string(f) + ", M=" + std::to_string(m));
  }
}

// Visits every k-subset of `pool` in lexicographic order.
void for_each_subset(const std::vector<std::uint32_t>& pool, std::uint32_t k,
                     const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  if (k > pool.size()) {
    return;
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::uint32_t> subset(k);
  while (true) {
    for (std::uint32_t a = 0; a < k; ++a) {
      subset[a] = pool[idx[a]];
    }
    visit(subset);
    std::size_t a = k;
    while (a > 0 && idx[a - 1] == pool.size() - k + (a - 1)) {
      --a;
    }
    if (a == 0) {
      return;
    }
    ++idx[a - 1];
    for (std::size_t b = a; b < k; ++b) {
      idx[b] = idx[b - 1] + 1;
    }
  }
}

std::vector<std::uint32_t> iota_from_one(std::uint32_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 1U);
  return v;
}

Rational ratio(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

} // namespace

Rational injectivity_prob(std::uint32_t m, std::uint32_t f) {
  require_two_to_one_range(m, f);
  // M(M-2)...(M-2(F-1)) / (M(M-1)...(M-F+1))
  BigInt num = 1;
  BigInt den = 1;
  for (std::uint32_t t = 0; t < f; ++t) {
    num *= m - 2 * t;
    den *= m - t;
  }
  return ratio(num, den);
}

Rational intersect_prob(std::uint32_t m, std::uint32_t f, std::uint32_t g) {
  require_two_to_one_range(m, f);
  if (g > m - f) {
    throw std::invalid_argument("need G <= M - F");
  }
  return 1 - ratio(binomial(m - 2 * f, g), binomial(m - f, g));
}

PclResult pcl_exact(const FunctionTuple& h, std::uint32_t f, std::uint32_t g, const PclOptions& options) {
  if (h.k() != 1) {
    throw std::invalid_argument("p_cl takes a single function");
  }
  h.validate();
  const auto n = static_cast<std::uint32_t>(h.values[0].size());
  if (static_cast<std::uint64_t>(f) + g > n) {
    throw std::invalid_argument("need F + G <= domain size");
  }
  const auto& values = h.values[0];
  PclResult result;
  result.pairs = binomial(n, f) * binomial(n - f, g);

  if (result.pairs <= BigInt(options.exact_limit)) {
    // For each S, the pairs that miss are the G-subsets avoiding
    // B = h^{-1}(h(S)) \ S.
    BigInt hits = 0;
    const BigInt per_s = binomial(n - f, g);
    std::vector<bool> in_s(n + 1, false);
    std::vector<bool> image(h.range + 1, false);
    for_each_subset(iota_from_one(n), f, [&](const std::vector<std::uint32_t>& s) {
      std::fill(in_s.begin(), in_s.end(), false);
      std::fill(image.begin(), image.end(), false);
      for (std::uint32_t i : s) {
        in_s[i] = true;
        image[values[i - 1]] = true;
      }
      std::uint32_t blocked = 0;
      for (std::uint32_t t = 1; t <= n; ++t) {
        if (!in_s[t] && image[values[t - 1]]) {
          ++blocked;
        }
      }
      hits += per_s - binomial(n - f - blocked, g);
    });
    result.value = ratio(hits, result.pairs);
    result.exact = true;
    return result;
  }

  std::mt19937_64 rng(options.seed);
  std::vector<std::uint32_t> perm = iota_from_one(n);
  std::vector<bool> image(h.range + 1, false);
  std::uint64_t hits = 0;
  for (std::uint64_t sample = 0; sample < options.samples; ++sample) {
    for (std::uint32_t a = 0; a < f + g; ++a) {
      std::uniform_int_distribution<std::uint32_t> pick(a, n - 1);
      std::swap(perm[a], perm[pick(rng)]);
    }
    std::fill(image.begin(), image.end(), false);
    for (std::uint32_t a = 0; a < f; ++a) {
      image[values[perm[a] - 1]] = true;
    }
    for (std::uint32_t a = f; a < f + g; ++a) {
      if (image[values[perm[a] - 1]]) {
        ++hits;
        break;
      }
    }
  }
  result.value = ratio(BigInt(hits), BigInt(options.samples));
  result.exact = false;
  result.seed = options.seed;
  result.samples = options.samples;
  return result;
}

Poly lp_claw_witness(std::uint32_t f, std::uint32_t g, std::uint32_t m, const Rational& epsilon) {
  DegreeQuery q;
  q.spec = claw_spec(f, g, m);
  q.epsilon = epsilon;
  q.space = Space::FreqZW;
  q.max_degree = f + g;
  const ApproxDegreeResult result = min_approx_degree(q);
  if (!result.d_min) {
    throw std::logic_error("no claw witness found up to degree F + G");
  }
  return expand_freq_to_raw(result.witness, {f, g});
}

AffineMap affine_normalization(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) {
    throw std::invalid_argument("no separating map: lo must be below hi");
  }
  AffineMap map;
  const Rational sum = lo + hi;
  if (sum <= 1) {
    // Balance b + a lo = 1 - (a hi + b) with a = 1 - b.
    map.b = (1 - sum) / (2 - sum);
    map.a = 1 - map.b;
    map.error = map.b + map.a * lo;
  } else {
    map.b = 0;
    map.a = 1 / sum;
    map.error = lo / sum;
  }
  return map;
}

CollisionAverage claw_to_collision_average(const WitnessBuilder& builder, std::uint32_t m, std::uint32_t f,
                                           std::uint32_t g, const Rational& epsilon, std::uint64_t budget) {
  if (static_cast<std::uint64_t>(f) + g > m) {
    throw std::invalid_argument("need F + G <= M");
  }
  const PropertySpec collision = collision_spec(m, m);
  const BigInt pair_count = binomial(m, f) * binomial(m - f, g);
  if (pair_count > BigInt(budget)) {
    throw BudgetExceeded("averaging over " + pair_count.get_str() + " (S,T) pairs exceeds the budget",
                         pair_count);
  }

  CollisionAverage out;
  out.base_witness = builder(f, g, m, epsilon);
  for (const VarId& v : out.base_witness.variables()) {
    const std::uint32_t limit = v.fn == 1 ? f : g;
    if (!v.is_raw() || v.fn < 1 || v.fn > 2 || v.dom < 1 || v.dom > limit || v.rng < 1 || v.rng > m) {
      throw std::invalid_argument("base witness variable " + to_string(v) + " is not a claw indicator");
    }
  }

  Poly sum;
  const std::vector<std::uint32_t> domain = iota_from_one(m);
  for_each_subset(domain, f, [&](const std::vector<std::uint32_t>& s) {
    std::vector<std::uint32_t> rest;
    std::set_difference(domain.begin(), domain.end(), s.begin(), s.end(), std::back_inserter(rest));
    for_each_subset(rest, g, [&](const std::vector<std::uint32_t>& t) {
      sum += rename(out.base_witness, [&](const VarId& v) {
        return VarId::raw(1, v.fn == 1 ? s[v.dom - 1] : t[v.dom - 1], v.rng);
      });
      ++out.pairs;
    });
  });
  out.average = sum.scale(ratio(BigInt(1), BigInt(out.pairs)));
  out.reference_map = (out.average.scale(Rational(25)) + Poly(Rational(18))).scale(make_rational(1, 43));

  out.one_to_one_bound = true;
  out.two_to_one_bound = true;
  bool have_lo = false;
  bool have_hi = false;
  for_each_input(collision, budget, [&](const FunctionTuple& h) {
    const Rational value = eval(out.average, raw_assignment(h));
    ++out.inputs;
    if (eval_property(collision, h)) {
      const Rational p_cl = pcl_exact(h, f, g).value;
      if (value < p_cl * (1 - epsilon)) {
        out.two_to_one_bound = false;
      }
      if (!have_hi || value < out.hi) {
        out.hi = value;
        have_hi = true;
      }
    } else {
      if (value < 0 || value > epsilon) {
        out.one_to_one_bound = false;
      }
      if (!have_lo || value > out.lo) {
        out.lo = value;
        have_lo = true;
      }
    }
  });
  if (have_lo && have_hi && out.lo < out.hi) {
    out.normalization = affine_normalization(out.lo, out.hi);
    out.normalized = out.average.scale(out.normalization->a) + Poly(out.normalization->b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Claw to OR

Poly or_embedding(const Poly& claw_witness) {
  std::map<VarId, Poly> subst;
  for (const VarId& v : claw_witness.variables()) {
    if (!v.is_raw() || v.fn < 1 || v.fn > 2) {
      throw std::invalid_argument("OR embedding expects claw indicators, got " + to_string(v));
    }
    if (v.fn == 1) {
      subst.emplace(v, Poly(Rational(v.rng == 1 ? 1 : 0)));
    } else if (v.rng == 2) {
      subst.emplace(v, Poly(Rational(1)) - Poly(VarId::raw(2, v.dom, 1)));
    } else if (v.rng >= 3) {
      subst.emplace(v, Poly());
    }
  }
  return substitute(claw_witness, subst);
}

bool verify_or(const Poly& p, std::uint32_t g, const Rational& epsilon) {
  if (g >= 32) {
    throw std::invalid_argument("truth table too large");
  }
  for (std::uint32_t mask = 0; mask < (1U << g); ++mask) {
    Assignment a;
    for (std::uint32_t k = 0; k < g; ++k) {
      a.emplace(VarId::raw(2, k + 1, 1), Rational((mask >> k) & 1U));
    }
    const Rational value = eval(p, a);
    const Rational target = mask != 0 ? 1 : 0;
    if (value < 0 || value > 1 || abs(value - target) > epsilon) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Blocks and pSearch

FunctionTuple block_partition_instance(const FunctionTuple& g, std::uint32_t f, std::uint32_t index) {
  if (g.k() != 1) {
    throw std::invalid_argument("block partition takes a single function");
  }
  const auto size = static_cast<std::uint32_t>(g.values[0].size());
  if (f == 0 || size % f != 0) {
    throw std::invalid_argument("block size " + std::to_string(f) + " does not divide " + std::to_string(size));
  }
  if (index < 1 || index > size / f) {
    throw std::invalid_argument("block index " + std::to_string(index) + " outside [" +
                                std::to_string(size / f) + "]");
  }
  FunctionTuple out;
  out.range = g.range;
  const auto begin = g.values[0].begin() + static_cast<std::ptrdiff_t>((index - 1) * f);
  out.values.emplace_back(begin, begin + f);
  return out;
}

std::uint32_t psearch_value(const PartialValues& values) {
  std::size_t count = 0;
  std::uint32_t value = 0;
  for (const auto& v : values) {
    if (v) {
      ++count;
      value = *v;
    }
  }
  if (count != 1) {
    throw PromiseViolation("pSearch block has " + std::to_string(count) + " non-* entries, expected exactly one");
  }
  return value;
}

PartialFunctionBlock::PartialFunctionBlock(PartialValues values, std::uint32_t m)
    : values_(std::move(values)), m_(m) {
  for (const auto& v : values_) {
    if (v && (*v < 1 || *v > m_)) {
      throw std::invalid_argument("block value " + std::to_string(*v) + " outside [" + std::to_string(m_) + "]");
    }
  }
  value_ = psearch_value(values_);
}

std::string to_string(const PartialFunctionBlock& block) {
  std::string out = "(";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += block.values()[i] ? std::to_string(*block.values()[i]) : "*";
  }
  return out + ")";
}

namespace {

void check_layout(const std::vector<PartialFunctionBlock>& f_blocks, const std::vector<PartialFunctionBlock>& g_blocks,
                  std::uint32_t m) {
  if (f_blocks.empty() || g_blocks.empty()) {
    throw std::invalid_argument("both functions need at least one block");
  }
  const std::size_t size = f_blocks.front().size();
  for (const auto* list : {&f_blocks, &g_blocks}) {
    for (const auto& b : *list) {
      if (b.size() != size) {
        throw std::invalid_argument("all blocks must have the same size");
      }
      if (b.range() != m) {
        throw std::invalid_argument("block range differs from M");
      }
    }
  }
}

} // namespace

FunctionTuple psearch_compose_instance(const std::vector<PartialFunctionBlock>& f_blocks,
                                       const std::vector<PartialFunctionBlock>& g_blocks, std::uint32_t m) {
  check_layout(f_blocks, g_blocks, m);
  FunctionTuple out;
  out.range = m + 2;
  out.values.resize(2);
  for (const auto& b : f_blocks) {
    for (const auto& v : b.values()) {
      out.values[0].push_back(v ? *v : m + 1);
    }
  }
  for (const auto& b : g_blocks) {
    for (const auto& v : b.values()) {
      out.values[1].push_back(v ? *v : m + 2);
    }
  }
  return out;
}

FunctionTuple psearch_decode(const std::vector<PartialFunctionBlock>& f_blocks,
                             const std::vector<PartialFunctionBlock>& g_blocks, std::uint32_t m) {
  check_layout(f_blocks, g_blocks, m);
  FunctionTuple out;
  out.range = m;
  out.values.resize(2);
  for (const auto& b : f_blocks) {
    out.values[0].push_back(b.value());
  }
  for (const auto& b : g_blocks) {
    out.values[1].push_back(b.value());
  }
  return out;
}

void for_each_psearch_input(std::uint32_t k, std::uint32_t f, std::uint32_t g, std::uint32_t m,
                            const std::function<void(const std::vector<PartialFunctionBlock>&,
                                                     const std::vector<PartialFunctionBlock>&)>& visit) {
  if (k == 0 || f % k != 0) {
    throw std::invalid_argument("k must divide F");
  }
  const std::uint32_t size = f / k;
  if (size == 0 || g % size != 0) {
    throw std::invalid_argument("F/k must divide G");
  }
  if (m == 0) {
    throw std::invalid_argument("range must be nonempty");
  }
  const std::uint32_t blocks = k + g / size;
  const std::uint32_t states = size * m;
  // state = position * m + (value - 1)
  std::vector<std::uint32_t> state(blocks, 0);
  auto make = [&](std::uint32_t st) {
    PartialValues values(size);
    values[st / m] = st % m + 1;
    return PartialFunctionBlock(std::move(values), m);
  };
  while (true) {
    std::vector<PartialFunctionBlock> fb;
    std::vector<PartialFunctionBlock> gb;
    for (std::uint32_t b = 0; b < blocks; ++b) {
      (b < k ? fb : gb).push_back(make(state[b]));
    }
    visit(fb, gb);
    std::uint32_t b = blocks;
    while (b > 0) {
      --b;
      if (++state[b] < states) {
        break;
      }
      state[b] = 0;
      if (b == 0) {
        return;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Schedule and bounds

std::vector<ScheduleRow> mk_schedule(std::uint64_t f, std::uint64_t g) {
  if (f == 0) {
    throw std::invalid_argument("F must be positive");
  }
  if (g < f) {
    throw std::invalid_argument("schedule needs G >= F");
  }
  if (g > f * f) {
    throw std::invalid_argument("schedule needs G <= F^2");
  }
  std::vector<ScheduleRow> rows;
  for (std::uint64_t k = 1; k <= f; ++k) {
    ScheduleRow row;
    row.k = k;
    const std::uint64_t block = f / k;
    row.f_k = k * block;
    row.g_k = block * (g / block);
    row.m_k = k + k * row.g_k / row.f_k;
    rows.push_back(row);
  }
  return rows;
}

ScheduleCheck check_schedule(const std::vector<ScheduleRow>& rows, std::uint64_t f, std::uint64_t g) {
  ScheduleCheck check;
  check.row_invariants = rows.size() == f;
  check.halves = true;
  check.monotone = true;
  check.ratio = true;
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    const ScheduleRow& r = rows[idx];
    const bool divides = r.k == idx + 1 && r.f_k % r.k == 0 && r.f_k > 0 && r.g_k % (r.f_k / r.k) == 0;
    check.row_invariants = check.row_invariants && divides && (r.k * r.g_k) % r.f_k == 0 &&
                           r.m_k == r.k + r.k * r.g_k / r.f_k;
    check.halves = check.halves && 2 * r.f_k >= f && 2 * r.g_k >= g;
    if (idx > 0) {
      check.monotone = check.monotone && rows[idx - 1].m_k <= r.m_k;
      check.ratio = check.ratio && r.m_k <= 8 * rows[idx - 1].m_k;
    }
  }
  check.endpoints = !rows.empty() && rows.front().m_k == 1 + g / f && rows.back().m_k == f + g;
  return check;
}

std::string to_string(Regime regime) {
  switch (regime) {
  case Regime::SqrtG:
    return "sqrt_g";
  case Regime::MixedSixth:
    return "mixed_sixth";
  case Regime::CubeRootFG:
    return "cube_root_fg";
  }
  return "unknown";
}

BoundFormula lb_formula(std::uint64_t f, std::uint64_t g, std::uint64_t m) {
  if (f == 0 || f > g) {
    throw std::invalid_argument("bound formula needs 1 <= F <= G");
  }
  if (m < 2) {
    throw std::invalid_argument("bound formula needs M >= 2");
  }
  BoundFormula out;
  out.f = f;
  out.g = g;
  out.m = m;
  const BigInt F(std::to_string(f));
  const BigInt G(std::to_string(g));
  const BigInt M(std::to_string(m));
  const BigInt g_cubed = G * G * G;
  auto cmp = [](const BigInt& a, const BigInt& b) { return a < b ? "<" : (a == b ? "=" : ">"); };

  const BigInt f_squared = F * F;
  out.transcript.push_back("G=" + G.get_str() + " " + cmp(G, f_squared) + " F^2=" + f_squared.get_str());
  if (G > f_squared) {
    out.regime = Regime::SqrtG;
    out.sixth_power = g_cubed;
    out.expression = "G^(1/2)";
    return out;
  }
  const BigInt fg = F + G;
  out.transcript.push_back("M=" + M.get_str() + " " + cmp(M, fg) + " F+G=" + fg.get_str());
  if (M >= fg) {
    out.regime = Regime::CubeRootFG;
    out.sixth_power = (F * G) * (F * G);
    out.expression = "(F*G)^(1/3)";
    return out;
  }
  // M >= (G/F)^2  <=>  F^2 G M >= G^3
  const BigInt mixed = f_squared * G * M;
  out.transcript.push_back("F^2*G*M=" + mixed.get_str() + " " + cmp(mixed, g_cubed) + " G^3=" + g_cubed.get_str());
  if (mixed >= g_cubed) {
    out.regime = Regime::MixedSixth;
    out.sixth_power = mixed;
    out.expression = "F^(1/3)*G^(1/6)*M^(1/6)";
    return out;
  }
  out.regime = Regime::SqrtG;
  out.sixth_power = g_cubed;
  out.expression = "G^(1/2)";
  return out;
}

} // namespace clawdeg
