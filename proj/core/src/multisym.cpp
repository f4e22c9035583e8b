#include "clawdeg/multisym.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace clawdeg {

VarId VectorLayout::var(std::size_t vec, std::size_t comp) const {
  const auto v = static_cast<std::uint32_t>(vec + 1);
  const auto c = static_cast<std::uint32_t>(comp + 1);
  return raw_ ? VarId::raw(fn_, v, c) : VarId::freq(c, v);
}

// ---------------------------------------------------------------------------
// ExponentMatrix

ExponentMatrix::ExponentMatrix(std::vector<ExponentRow> rows) : rows_(std::move(rows)) {
  m_ = rows_.empty() ? 0 : rows_.front().size();
  for (const auto& row : rows_) {
    if (row.size() != m_) {
      throw std::invalid_argument("exponent matrix rows must have equal length");
    }
  }
}

ExponentMatrix ExponentMatrix::zeros(std::size_t n, std::size_t m) {
  return ExponentMatrix(std::vector<ExponentRow>(n, ExponentRow(m, 0)));
}

std::uint64_t ExponentMatrix::l1() const {
  std::uint64_t total = 0;
  for (const auto& row : rows_) {
    total += std::accumulate(row.begin(), row.end(), std::uint64_t{0});
  }
  return total;
}

namespace {

bool is_zero_row(const ExponentRow& row) {
  return std::all_of(row.begin(), row.end(), [](std::uint32_t e) { return e == 0; });
}

// prod(multiplicity!) over runs of equal entries in a sorted sequence.
template <class T>
BigInt multiplicity_factorials(const std::vector<T>& sorted) {
  BigInt out = 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      out *= factorial(run);
      run = 1;
    }
  }
  return out;
}

} // namespace

std::size_t ExponentMatrix::nonzero_rows() const {
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(), [](const ExponentRow& r) { return !is_zero_row(r); }));
}

ExponentMatrix ExponentMatrix::canonical() const {
  ExponentMatrix out = *this;
  std::sort(out.rows_.begin(), out.rows_.end(), std::greater<>());
  return out;
}

BigInt ExponentMatrix::orbit_size() const {
  ExponentMatrix c = canonical();
  BigInt total = factorial(n());
  BigInt stab = multiplicity_factorials(c.rows_);
  return total / stab;
}

namespace {

std::string row_to_string(const ExponentRow& row) {
  std::string out = "(";
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (c > 0) {
      out += ',';
    }
    out += std::to_string(row[c]);
  }
  return out + ")";
}

} // namespace

std::string to_string(const ExponentMatrix& omega) {
  std::string out = "[";
  for (std::size_t i = 0; i < omega.n(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += row_to_string(omega.rows()[i]);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// PowerSumExpression

void PowerSumExpression::add(Key key, const Rational& coeff) {
  if (key.size() != n_) {
    throw std::invalid_argument("power-sum product must have exactly n factors");
  }
  for (const auto& lambda : key) {
    if (lambda.size() != m_) {
      throw std::invalid_argument("power-sum index has the wrong width");
    }
  }
  if (coeff == 0) {
    return;
  }
  std::sort(key.begin(), key.end(), std::greater<>());
  auto [it, inserted] = terms_.try_emplace(std::move(key), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

void PowerSumExpression::add_scaled(const PowerSumExpression& other, const Rational& factor) {
  if (other.n_ != n_ || other.m_ != m_) {
    throw std::invalid_argument("power-sum expressions of different shapes");
  }
  for (const auto& [key, c] : other.terms_) {
    add(key, c * factor);
  }
}

std::string to_string(const PowerSumExpression& expr) {
  if (expr.terms().empty()) {
    return "0";
  }
  std::string out;
  for (const auto& [key, c] : expr.terms()) {
    if (!out.empty()) {
      out += " + ";
    }
    out += to_string(c);
    for (const auto& lambda : key) {
      out += "*P" + row_to_string(lambda);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Power sums and orbit monomials

Poly power_sum(const PowerSumIndex& lambda, std::size_t n, const VectorLayout& layout) {
  if (n == 0) {
    throw std::invalid_argument("power sum needs at least one vector");
  }
  Poly out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Monomial::Factor> factors;
    for (std::size_t c = 0; c < lambda.size(); ++c) {
      if (lambda[c] > 0) {
        factors.emplace_back(layout.var(i, c), lambda[c]);
      }
    }
    out.add_term(Monomial(std::move(factors)), Rational(1));
  }
  return out;
}

Poly orbit_monomial(const ExponentMatrix& omega, const VectorLayout& layout) {
  std::vector<ExponentRow> rows = omega.rows();
  std::sort(rows.begin(), rows.end());
  Poly out;
  do {
    std::vector<Monomial::Factor> factors;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t c = 0; c < rows[i].size(); ++c) {
        if (rows[i][c] > 0) {
          factors.emplace_back(layout.var(i, c), rows[i][c]);
        }
      }
    }
    out.add_term(Monomial(std::move(factors)), Rational(1));
  } while (std::next_permutation(rows.begin(), rows.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition into power sums

namespace {

std::mutex cache_mutex;
std::map<ExponentMatrix, PowerSumExpression>& decomposition_cache() {
  static std::map<ExponentMatrix, PowerSumExpression> cache;
  return cache;
}

// Calls visit(labels, blocks) for every set partition of [r], encoded as a
// restricted growth string.
template <class Visit>
void for_each_set_partition(std::size_t r, Visit visit) {
  std::vector<std::size_t> labels(r, 0);
  std::vector<std::size_t> prefix_max(r, 0);
  while (true) {
    visit(labels, (r == 0 ? 0 : prefix_max[r - 1] + 1));
    std::size_t i = r;
    bool found = false;
    while (i > 1) {
      --i;
      if (labels[i] <= prefix_max[i - 1]) {
        found = true;
        break;
      }
    }
    if (!found) {
      return;
    }
    ++labels[i];
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
    for (std::size_t j = i + 1; j < r; ++j) {
      labels[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
}

PowerSumExpression decompose_canonical(const ExponentMatrix& omega) {
  const std::size_t n = omega.n();
  const std::size_t m = omega.m();
  std::vector<ExponentRow> nonzero;
  for (const auto& row : omega.rows()) {
    if (!is_zero_row(row)) {
      nonzero.push_back(row);
    }
  }
  const std::size_t r = nonzero.size();

  // prod_i P_{Omega_i} = n^(n-r) * sum over set partitions pi of the nonzero
  // rows of mult(pi) * mon_{Omega(pi)}; the finest partition contributes
  // c_Omega * mon_Omega.
  const BigInt c_omega = multiplicity_factorials(nonzero);
  BigInt zero_power;
  mpz_ui_pow_ui(zero_power.get_mpz_t(), n, n - r);

  PowerSumExpression out(n, m);
  out.add(omega.rows(), Rational(BigInt(1), c_omega * zero_power));
  if (r <= 1) {
    return out;
  }

  for_each_set_partition(r, [&](const std::vector<std::size_t>& labels, std::size_t blocks) {
    if (blocks == r) {
      return;
    }
    std::vector<ExponentRow> sums(blocks, ExponentRow(m, 0));
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t c = 0; c < m; ++c) {
        sums[labels[a]][c] += nonzero[a][c];
      }
    }
    std::sort(sums.begin(), sums.end(), std::greater<>());
    const BigInt mult = multiplicity_factorials(sums);
    sums.resize(n, ExponentRow(m, 0));
    PowerSumExpression coarser = decompose_mon(ExponentMatrix(std::move(sums)));
    Rational weight(mult, c_omega);
    weight.canonicalize();
    out.add_scaled(coarser, -weight);
  });
  return out;
}

} // namespace

PowerSumExpression decompose_mon(const ExponentMatrix& omega) {
  ExponentMatrix key = omega.canonical();
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& cache = decomposition_cache();
    auto it = cache.find(key);
    if (it != cache.end()) {
      return it->second;
    }
  }
  PowerSumExpression result = decompose_canonical(key);
  std::lock_guard<std::mutex> lock(cache_mutex);
  return decomposition_cache().try_emplace(std::move(key), std::move(result)).first->second;
}

Poly expand(const PowerSumExpression& expr, const VectorLayout& layout) {
  std::map<PowerSumIndex, Poly> sums;
  Poly out;
  for (const auto& [key, c] : expr.terms()) {
    Poly term(c);
    for (const auto& lambda : key) {
      auto it = sums.find(lambda);
      if (it == sums.end()) {
        it = sums.emplace(lambda, power_sum(lambda, expr.n(), layout)).first;
      }
      term *= it->second;
    }
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetrization

Poly symmetrize_term(const Monomial& term, std::uint32_t domain_size) {
  if (term.is_one()) {
    return Poly(Rational(1));
  }
  const std::uint32_t fn = term.factors().front().first.fn;
  std::map<std::uint32_t, std::uint32_t> range_of;
  std::vector<std::uint32_t> ranges;
  bool vanishes = false;
  for (const auto& [var, e] : term.factors()) {
    if (!var.is_raw()) {
      throw std::invalid_argument("symmetrize_term expects raw variables, got " + to_string(var));
    }
    if (var.fn != fn) {
      throw std::invalid_argument("symmetrize_term expects variables of a single function");
    }
    if (var.dom < 1 || var.dom > domain_size || var.rng < 1) {
      throw std::invalid_argument("variable " + to_string(var) + " outside domain of size " +
                                  std::to_string(domain_size));
    }
    auto [it, inserted] = range_of.emplace(var.dom, var.rng);
    if (!inserted && it->second != var.rng) {
      vanishes = true;
    }
    ranges.push_back(var.rng);
  }
  // More factors than domain indices always repeats an index.
  if (vanishes) {
    return Poly();
  }
  // Position l (1-based) contributes (z_{j_l} - s_l) / (F - l + 1), where s_l
  // counts earlier positions with the same range value.
  Poly out(Rational(1));
  std::map<std::uint32_t, std::uint32_t> seen;
  for (std::size_t pos = 0; pos < ranges.size(); ++pos) {
    const std::uint32_t j = ranges[pos];
    const std::uint32_t s = seen[j]++;
    Poly factor = Poly(VarId::freq(fn, j)) - Poly(Rational(s));
    out *= factor.scale(Rational(1, domain_size - static_cast<unsigned long>(pos)));
  }
  return out;
}

Poly symmetrize_poly(const Poly& p, const std::vector<std::uint32_t>& sizes) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    std::map<std::uint32_t, std::vector<Monomial::Factor>> blocks;
    for (const auto& [var, e] : m.factors()) {
      if (!var.is_raw()) {
        throw std::invalid_argument("symmetrize_poly expects raw variables, got " + to_string(var));
      }
      if (var.fn < 1 || var.fn > sizes.size()) {
        throw std::invalid_argument("variable " + to_string(var) + " names an undeclared function");
      }
      blocks[var.fn].emplace_back(var, 1);
    }
    Poly term(c);
    for (auto& [fn, factors] : blocks) {
      term *= symmetrize_term(Monomial(std::move(factors)), sizes[fn - 1]);
      if (term.is_zero()) {
        break;
      }
    }
    out += term;
  }
  return out;
}

Poly expand_freq_to_raw(const Poly& q, const std::vector<std::uint32_t>& sizes) {
  std::map<VarId, Poly> subst;
  for (const VarId& v : q.variables()) {
    if (!v.is_freq()) {
      continue;
    }
    if (v.fn < 1 || v.fn > sizes.size()) {
      throw std::invalid_argument("variable " + to_string(v) + " names an undeclared function");
    }
    Poly sum;
    for (std::uint32_t i = 1; i <= sizes[v.fn - 1]; ++i) {
      sum += Poly(VarId::raw(v.fn, i, v.rng));
    }
    subst.emplace(v, std::move(sum));
  }
  return substitute(q, subst);
}

Poly restrict_range(const Poly& q, std::uint32_t m_prime) {
  std::map<VarId, Poly> subst;
  for (const VarId& v : q.variables()) {
    if (v.is_freq() && v.rng > m_prime) {
      subst.emplace(v, Poly());
    }
  }
  return substitute(q, subst);
}

Poly lift_range(const Poly& q_prime, std::uint32_t k, std::uint32_t m_prime, std::uint32_t m,
                std::uint32_t min_range) {
  if (m_prime < min_range) {
    throw std::invalid_argument("range " + std::to_string(m_prime) + " is below the required " +
                                std::to_string(min_range));
  }
  if (m < m_prime) {
    throw std::invalid_argument("target range must be at least the source range");
  }
  if (k == 0 || m_prime == 0) {
    throw std::invalid_argument("lift_range needs k >= 1 and a nonempty range");
  }

  // Average over S_{m'}: each monomial X^Omega becomes mon_Omega / |orbit|.
  std::map<ExponentMatrix, Rational> averaged;
  for (const auto& [mono, c] : q_prime.terms()) {
    std::vector<ExponentRow> rows(m_prime, ExponentRow(k, 0));
    for (const auto& [var, e] : mono.factors()) {
      if (!var.is_freq() || var.fn < 1 || var.fn > k || var.rng < 1 || var.rng > m_prime) {
        throw std::invalid_argument("variable " + to_string(var) + " outside the declared range");
      }
      rows[var.rng - 1][var.fn - 1] = e;
    }
    ExponentMatrix omega = ExponentMatrix(std::move(rows)).canonical();
    Rational share = c / Rational(omega.orbit_size());
    averaged[omega] += share;
  }

  const VectorLayout layout = VectorLayout::freq_columns();
  std::map<PowerSumIndex, Poly> sums;
  Poly out;
  for (const auto& [omega, c] : averaged) {
    if (c == 0) {
      continue;
    }
    const PowerSumExpression expr = decompose_mon(omega);
    for (const auto& [key, coeff] : expr.terms()) {
      Poly term(c * coeff);
      for (const auto& lambda : key) {
        if (is_zero_row(lambda)) {
          term = term.scale(Rational(m_prime));
          continue;
        }
        auto it = sums.find(lambda);
        if (it == sums.end()) {
          it = sums.emplace(lambda, power_sum(lambda, m, layout)).first;
        }
        term *= it->second;
      }
      out += term;
    }
  }
  return out;
}

} // namespace clawdeg
