#include "clawdeg/approxdeg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "clawdeg/multisym.hpp"

namespace clawdeg {

std::string to_string(Space space) { return space == Space::RawXY ? "raw" : "freq"; }

std::string to_string(Basis basis) { return basis == Basis::OrbitMonomial ? "orbit" : "powersum"; }

namespace {

// Valid multilinear monomials: at most one range value per (function, domain
// index) slot. Other products vanish on every input.
void collect_raw_monomials(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& slots, std::size_t next,
                           unsigned remaining, std::uint32_t m, std::vector<Monomial::Factor>& current,
                           std::vector<Monomial>& out) {
  out.emplace_back(current);
  if (remaining == 0) {
    return;
  }
  for (std::size_t s = next; s < slots.size(); ++s) {
    for (std::uint32_t j = 1; j <= m; ++j) {
      current.emplace_back(VarId::raw(slots[s].first, slots[s].second, j), 1);
      collect_raw_monomials(slots, s + 1, remaining - 1, m, current, out);
      current.pop_back();
    }
  }
}

// Multisets of nonzero k-vectors with total weight <= budget and at most
// max_count members, each listed in descending order.
void collect_vector_multisets(const std::vector<ExponentRow>& vectors, std::size_t next, unsigned remaining,
                              std::size_t max_count, std::vector<ExponentRow>& current,
                              std::vector<std::vector<ExponentRow>>& out) {
  out.push_back(current);
  if (current.size() == max_count) {
    return;
  }
  for (std::size_t v = next; v < vectors.size(); ++v) {
    unsigned weight = 0;
    for (std::uint32_t e : vectors[v]) {
      weight += e;
    }
    if (weight > remaining) {
      continue;
    }
    current.push_back(vectors[v]);
    collect_vector_multisets(vectors, v, remaining - weight, max_count, current, out);
    current.pop_back();
  }
}

std::vector<ExponentRow> nonzero_vectors(std::size_t k, unsigned max_weight) {
  std::vector<ExponentRow> out;
  ExponentRow v(k, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
    if (pos == k) {
      if (left < max_weight) {
        out.push_back(v);
      }
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      v[pos] = e;
      rec(pos + 1, left - e);
    }
    v[pos] = 0;
  };
  rec(0, max_weight);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

bool raw_monomial_value(const Monomial& m, const FunctionTuple& t) {
  for (const auto& [v, e] : m.factors()) {
    if (t.values[v.fn - 1][v.dom - 1] != v.rng) {
      return false;
    }
  }
  return true;
}

void add_input_rows(LPInstance& lp, std::vector<Rational> coeffs, bool value, const Rational& epsilon) {
  if (value) {
    lp.add(coeffs, Relation::GreaterEq, 1 - epsilon);
    lp.add(std::move(coeffs), Relation::LessEq, Rational(1));
  } else {
    lp.add(coeffs, Relation::GreaterEq, Rational(0));
    lp.add(std::move(coeffs), Relation::LessEq, epsilon);
  }
}

void check_epsilon(const Rational& epsilon) {
  if (epsilon < 0 || epsilon >= make_rational(1, 2)) {
    throw std::invalid_argument("epsilon must lie in [0, 1/2), got " + to_string(epsilon));
  }
}

// Variable lookup for a tuple covering raw and frequency variables.
class TupleValues {
public:
  TupleValues(const PropertySpec& spec, const FunctionTuple& t) : t_(t) {
    counts_.resize(spec.k());
    const FrequencyMatrix fm = freq_matrix(t);
    for (std::size_t l = 0; l < spec.k(); ++l) {
      for (std::uint32_t c : fm[l]) {
        counts_[l].emplace_back(c);
      }
    }
  }

  const Rational* operator()(const VarId& v) const {
    if (v.is_raw()) {
      return t_.values[v.fn - 1][v.dom - 1] == v.rng ? &one_ : &zero_;
    }
    return &counts_[v.fn - 1][v.rng - 1];
  }

private:
  const FunctionTuple& t_;
  std::vector<std::vector<Rational>> counts_;
  Rational one_ = 1;
  Rational zero_ = 0;
};

void check_variables(const Poly& p, const PropertySpec& spec) {
  for (const VarId& v : p.variables()) {
    bool ok = v.fn >= 1 && v.fn <= spec.k() && v.rng >= 1 && v.rng <= spec.range;
    if (ok && v.is_raw()) {
      ok = v.dom >= 1 && v.dom <= spec.domains[v.fn - 1];
    }
    if (!ok) {
      throw std::invalid_argument("variable " + to_string(v) + " does not belong to " + describe(spec));
    }
  }
}

} // namespace

std::vector<Poly> raw_basis(const PropertySpec& spec, unsigned degree) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> slots;
  for (std::size_t l = 0; l < spec.k(); ++l) {
    for (std::uint32_t i = 1; i <= spec.domains[l]; ++i) {
      slots.emplace_back(static_cast<std::uint32_t>(l + 1), i);
    }
  }
  std::vector<Monomial> monomials;
  std::vector<Monomial::Factor> current;
  collect_raw_monomials(slots, 0, degree, spec.range, current, monomials);
  std::sort(monomials.begin(), monomials.end(), GrlexLess());
  std::vector<Poly> out;
  out.reserve(monomials.size());
  for (const auto& m : monomials) {
    out.emplace_back(m, Rational(1));
  }
  return out;
}

std::vector<Poly> freq_basis(const PropertySpec& spec, unsigned degree, Basis basis) {
  const std::size_t k = spec.k();
  const std::uint32_t m = spec.range;
  const auto vectors = nonzero_vectors(k, degree);
  std::vector<std::vector<ExponentRow>> multisets;
  std::vector<ExponentRow> current;
  collect_vector_multisets(vectors, 0, degree, m, current, multisets);

  const VectorLayout layout = VectorLayout::freq_columns();
  std::vector<Poly> out;
  out.reserve(multisets.size());
  for (auto& rows : multisets) {
    if (basis == Basis::OrbitMonomial) {
      rows.resize(m, ExponentRow(k, 0));
      out.push_back(orbit_monomial(ExponentMatrix(rows), layout));
    } else {
      Poly product(Rational(1));
      for (const auto& lambda : rows) {
        product *= power_sum(lambda, m, layout);
      }
      out.push_back(std::move(product));
    }
  }
  return out;
}

FeasibilitySystem build_feasibility_lp(const PropertySpec& spec, const Rational& epsilon, unsigned degree,
                                       Space space, Basis basis, std::uint64_t budget) {
  check_epsilon(epsilon);
  FeasibilitySystem sys;
  if (space == Space::RawXY) {
    sys.basis = raw_basis(spec, degree);
    sys.lp = LPInstance(sys.basis.size());
    std::vector<Monomial> monomials;
    for (const auto& b : sys.basis) {
      monomials.push_back(b.terms().begin()->first);
    }
    for_each_input(spec, budget, [&](const FunctionTuple& t) {
      std::vector<Rational> coeffs(monomials.size());
      for (std::size_t j = 0; j < monomials.size(); ++j) {
        if (raw_monomial_value(monomials[j], t)) {
          coeffs[j] = 1;
        }
      }
      add_input_rows(sys.lp, std::move(coeffs), eval_property(spec, t), epsilon);
      ++sys.orbit_count;
    });
    return sys;
  }

  if (!check_symmetry(spec, SymmetryGroup::Full, budget)) {
    throw std::invalid_argument(describe(spec) + " is not symmetric under domain and range permutations; "
                                "frequency-space constraints would be unsound");
  }
  sys.basis = freq_basis(spec, degree, basis);
  sys.lp = LPInstance(sys.basis.size());
  for (const OrbitClass& cls : orbit_classes(spec, budget)) {
    const TupleValues values(spec, cls.representative);
    std::vector<Rational> coeffs;
    coeffs.reserve(sys.basis.size());
    for (const auto& b : sys.basis) {
      coeffs.push_back(eval(b, std::cref(values)));
    }
    add_input_rows(sys.lp, std::move(coeffs), cls.value, epsilon);
    ++sys.orbit_count;
  }
  return sys;
}

ApproxDegreeResult min_approx_degree(const DegreeQuery& query) {
  ApproxDegreeResult result;
  for (unsigned d = 0; d <= query.max_degree; ++d) {
    FeasibilitySystem sys =
        build_feasibility_lp(query.spec, query.epsilon, d, query.space, query.basis, query.budget);
    const LPOutcome outcome = solve_feasibility(sys.lp);
    result.orbit_count = sys.orbit_count;
    result.per_degree.push_back(
        DegreeStep{d, outcome.feasible, sys.basis.size(), sys.orbit_count, outcome.pivots});
    if (outcome.feasible) {
      result.d_min = d;
      for (std::size_t j = 0; j < sys.basis.size(); ++j) {
        result.witness += sys.basis[j].scale(outcome.point[j]);
      }
      break;
    }
  }
  return result;
}

bool verify_witness(const Poly& p, const PropertySpec& spec, const Rational& epsilon, std::uint64_t budget) {
  check_variables(p, spec);
  bool ok = true;
  for_each_input(spec, budget, [&](const FunctionTuple& t) {
    if (!ok) {
      return;
    }
    const TupleValues values(spec, t);
    const Rational v = eval(p, std::cref(values));
    const Rational target = eval_property(spec, t) ? 1 : 0;
    if (v < 0 || v > 1 || abs(v - target) > epsilon) {
      ok = false;
    }
  });
  return ok;
}

Poly amplify(const Poly& p, unsigned ell) {
  if (ell == 0 || ell % 2 == 0) {
    throw std::invalid_argument("amplification needs an odd number of repetitions");
  }
  const Poly q = Poly(Rational(1)) - p;
  Poly out;
  for (unsigned k = (ell + 1) / 2; k <= ell; ++k) {
    out += (p.pow(k) * q.pow(ell - k)).scale(Rational(binomial(ell, k)));
  }
  return out;
}

Rational amplify(const Rational& v, unsigned ell) {
  if (ell == 0 || ell % 2 == 0) {
    throw std::invalid_argument("amplification needs an odd number of repetitions");
  }
  const Rational w = 1 - v;
  Rational out = 0;
  for (unsigned k = (ell + 1) / 2; k <= ell; ++k) {
    Rational term = Rational(binomial(ell, k));
    for (unsigned a = 0; a < k; ++a) {
      term *= v;
    }
    for (unsigned b = 0; b < ell - k; ++b) {
      term *= w;
    }
    out += term;
  }
  return out;
}

RangeEqualityReport range_equality_report(const PropertySpec& spec, std::uint32_t base_range,
                                          const std::vector<std::uint32_t>& ranges,
                                          const RangeEqualityOptions& options) {
  const std::uint32_t min_range = spec.image_bound.value_or(spec.total_domain());
  if (base_range < min_range) {
    throw std::invalid_argument("base range " + std::to_string(base_range) + " is below " +
                                std::to_string(min_range));
  }
  RangeEqualityReport report;
  report.base_range = base_range;

  std::vector<std::uint32_t> all = {base_range};
  for (std::uint32_t m : ranges) {
    if (m < base_range) {
      throw std::invalid_argument("range " + std::to_string(m) + " is below the base range");
    }
    all.push_back(m);
  }

  for (std::uint32_t m : all) {
    RangeEntry entry;
    entry.range = m;
    DegreeQuery q;
    q.spec = with_range(spec, m);
    q.epsilon = options.epsilon;
    q.space = Space::FreqZW;
    q.max_degree = options.max_degree;
    q.budget = options.budget;
    entry.result = min_approx_degree(q);
    if (options.raw_cross_check) {
      const BigInt cube = cube_size(q.spec);
      if (cube <= BigInt(options.raw_budget)) {
        DegreeQuery raw = q;
        raw.space = Space::RawXY;
        entry.raw_d_min = min_approx_degree(raw).d_min;
      } else {
        entry.notice = "raw cross-check skipped: " + cube.get_str() + " inputs exceed the budget of " +
                       std::to_string(options.raw_budget);
      }
    }
    report.entries.push_back(std::move(entry));
  }

  const RangeEntry& base = report.entries.front();
  report.degrees_equal = base.result.d_min.has_value();
  report.lifts_verified = base.result.d_min.has_value();
  for (auto& entry : report.entries) {
    report.degrees_equal = report.degrees_equal && entry.result.d_min == base.result.d_min &&
                           (!entry.raw_d_min || entry.raw_d_min == entry.result.d_min);
    if (!base.result.d_min) {
      continue;
    }
    entry.lifted = lift_range(base.result.witness, static_cast<std::uint32_t>(spec.k()), base_range, entry.range,
                              min_range);
    entry.lifted_degree = entry.lifted.degree();
    entry.lifted_verified = verify_witness(entry.lifted, with_range(spec, entry.range), options.epsilon,
                                           options.budget);
    report.lifts_verified = report.lifts_verified && entry.lifted_verified &&
                            entry.lifted_degree.at_most(*base.result.d_min);
  }
  return report;
}

} // namespace clawdeg
