#include "clawdeg/properties.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "clawdeg/errors.hpp"

namespace clawdeg {

// ---------------------------------------------------------------------------
// FunctionTuple

std::vector<std::uint32_t> FunctionTuple::domains() const {
  std::vector<std::uint32_t> out;
  out.reserve(values.size());
  for (const auto& f : values) {
    out.push_back(static_cast<std::uint32_t>(f.size()));
  }
  return out;
}

void FunctionTuple::validate() const {
  for (std::size_t l = 0; l < values.size(); ++l) {
    for (std::uint32_t v : values[l]) {
      if (v < 1 || v > range) {
        throw std::invalid_argument("value " + std::to_string(v) + " of f" + std::to_string(l + 1) +
                                    " outside [" + std::to_string(range) + "]");
      }
    }
  }
}

std::string to_string(const FunctionTuple& t) {
  std::string out;
  for (std::size_t l = 0; l < t.values.size(); ++l) {
    out += 'f' + std::to_string(l + 1) + '=';
    for (std::size_t i = 0; i < t.values[l].size(); ++i) {
      if (i > 0) {
        out += ',';
      }
      out += std::to_string(t.values[l][i]);
    }
    out += "; ";
  }
  return out + "M=" + std::to_string(t.range);
}

namespace {

class TupleParser {
public:
  explicit TupleParser(std::string_view text) : text_(text) {}

  FunctionTuple parse() {
    FunctionTuple t;
    bool have_range = false;
    while (true) {
      skip_space();
      if (at_end()) {
        break;
      }
      if (peek() == 'M') {
        ++pos_;
        expect('=');
        t.range = parse_uint();
        have_range = true;
      } else if (peek() == 'f') {
        ++pos_;
        std::size_t index_pos = pos_;
        std::uint32_t index = parse_uint();
        if (index != t.values.size() + 1) {
          fail_at(index_pos, "expected f" + std::to_string(t.values.size() + 1));
        }
        expect('=');
        std::vector<std::uint32_t> seq;
        seq.push_back(parse_uint());
        skip_space();
        while (!at_end() && peek() == ',') {
          ++pos_;
          seq.push_back(parse_uint());
          skip_space();
        }
        t.values.push_back(std::move(seq));
      } else {
        fail_at(pos_, std::string("unexpected character '") + peek() + "'");
      }
      skip_space();
      if (at_end()) {
        break;
      }
      expect(';');
    }
    if (!have_range) {
      fail_at(pos_, "missing M=<range>");
    }
    if (t.values.empty()) {
      fail_at(pos_, "no functions given");
    }
    for (std::size_t l = 0; l < t.values.size(); ++l) {
      for (std::uint32_t v : t.values[l]) {
        if (v < 1 || v > t.range) {
          fail_at(pos_, "value " + std::to_string(v) + " of f" + std::to_string(l + 1) + " outside [" +
                            std::to_string(t.range) + "]");
        }
      }
    }
    return t;
  }

private:
  std::uint32_t parse_uint() {
    skip_space();
    std::size_t start = pos_;
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > 0xFFFFFFFFULL) {
        fail_at(start, "number too large");
      }
      ++pos_;
    }
    if (pos_ == start) {
      fail_at(pos_, "expected a number");
    }
    return static_cast<std::uint32_t>(value);
  }

  void expect(char c) {
    skip_space();
    if (at_end() || peek() != c) {
      fail_at(pos_, std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const {
    throw ParseError("function tuple parse error at column " + std::to_string(pos + 1) + ": " + message, 1,
                     pos + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

FunctionTuple parse_function_tuple(std::string_view text) { return TupleParser(text).parse(); }

FrequencyMatrix freq_matrix(const FunctionTuple& t) {
  FrequencyMatrix counts(t.k(), std::vector<std::uint32_t>(t.range, 0));
  for (std::size_t l = 0; l < t.k(); ++l) {
    for (std::uint32_t v : t.values[l]) {
      ++counts[l].at(v - 1);
    }
  }
  return counts;
}

CanonicalKey orbit_canonical(const FunctionTuple& t) {
  const FrequencyMatrix counts = freq_matrix(t);
  CanonicalKey columns(t.range, std::vector<std::uint32_t>(t.k(), 0));
  for (std::size_t l = 0; l < t.k(); ++l) {
    for (std::size_t j = 0; j < t.range; ++j) {
      columns[j][l] = counts[l][j];
    }
  }
  std::sort(columns.begin(), columns.end(), std::greater<>());
  return columns;
}

CanonicalKey strip_zero_columns(CanonicalKey key) {
  key.erase(std::remove_if(key.begin(), key.end(),
                           [](const std::vector<std::uint32_t>& col) {
                             return std::all_of(col.begin(), col.end(), [](std::uint32_t c) { return c == 0; });
                           }),
            key.end());
  return key;
}

std::string to_string(const CanonicalKey& key) {
  std::string out = "{";
  for (std::size_t j = 0; j < key.size(); ++j) {
    if (j > 0) {
      out += ',';
    }
    out += '(';
    for (std::size_t l = 0; l < key[j].size(); ++l) {
      if (l > 0) {
        out += ',';
      }
      out += std::to_string(key[j][l]);
    }
    out += ')';
  }
  return out + "}";
}

Assignment raw_assignment(const FunctionTuple& t) {
  Assignment a;
  for (std::size_t l = 0; l < t.k(); ++l) {
    for (std::size_t i = 0; i < t.values[l].size(); ++i) {
      for (std::uint32_t j = 1; j <= t.range; ++j) {
        a.emplace(VarId::raw(static_cast<std::uint32_t>(l + 1), static_cast<std::uint32_t>(i + 1), j),
                  Rational(t.values[l][i] == j ? 1 : 0));
      }
    }
  }
  return a;
}

Assignment freq_assignment(const FunctionTuple& t) {
  Assignment a;
  const FrequencyMatrix counts = freq_matrix(t);
  for (std::size_t l = 0; l < t.k(); ++l) {
    for (std::uint32_t j = 1; j <= t.range; ++j) {
      a.emplace(VarId::freq(static_cast<std::uint32_t>(l + 1), j), Rational(counts[l][j - 1]));
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Property specs

std::uint32_t PropertySpec::total_domain() const {
  return std::accumulate(domains.begin(), domains.end(), std::uint32_t{0});
}

namespace {

void require_range(std::uint32_t m) {
  if (m == 0) {
    throw std::invalid_argument("range must be nonempty");
  }
}

} // namespace

PropertySpec claw_spec(std::uint32_t f, std::uint32_t g, std::uint32_t m) {
  require_range(m);
  PropertySpec spec;
  spec.kind = PropertyKind::Claw;
  spec.domains = {f, g};
  spec.range = m;
  spec.label = "claw";
  return spec;
}

PropertySpec kclaw_spec(std::vector<std::uint32_t> domains, std::uint32_t m) {
  require_range(m);
  if (domains.empty()) {
    throw std::invalid_argument("k-claw needs at least one function");
  }
  PropertySpec spec;
  spec.kind = PropertyKind::KClaw;
  spec.domains = std::move(domains);
  spec.range = m;
  spec.label = "kclaw";
  return spec;
}

PropertySpec collision_spec(std::uint32_t n, std::uint32_t m) {
  require_range(m);
  if (n % 2 != 0) {
    throw std::invalid_argument("two-to-one inputs need an even domain size, got " + std::to_string(n));
  }
  PropertySpec spec;
  spec.kind = PropertyKind::CollisionPromise;
  spec.domains = {n};
  spec.range = m;
  spec.label = "collision";
  return spec;
}

PropertySpec or_on_second_spec(std::uint32_t f, std::uint32_t g, std::uint32_t m, std::uint32_t target) {
  require_range(m);
  if (target < 1 || target > m) {
    throw std::invalid_argument("OR target outside the range");
  }
  PropertySpec spec;
  spec.kind = PropertyKind::OrOnSecond;
  spec.domains = {f, g};
  spec.range = m;
  spec.target = target;
  spec.label = "or";
  return spec;
}

PropertySpec custom_table_spec(std::vector<std::uint32_t> domains, std::uint32_t m,
                               std::map<CanonicalKey, bool> table) {
  require_range(m);
  PropertySpec spec;
  spec.kind = PropertyKind::CustomTable;
  spec.domains = std::move(domains);
  spec.range = m;
  for (auto& [key, value] : table) {
    spec.table.emplace(strip_zero_columns(key), value);
  }
  spec.label = "table";
  return spec;
}

PropertySpec custom_predicate_spec(std::vector<std::uint32_t> domains, std::uint32_t m,
                                   std::function<bool(const FunctionTuple&)> predicate, std::string label) {
  require_range(m);
  PropertySpec spec;
  spec.kind = PropertyKind::CustomPredicate;
  spec.domains = std::move(domains);
  spec.range = m;
  spec.predicate = std::move(predicate);
  spec.label = std::move(label);
  return spec;
}

PropertySpec with_range(PropertySpec spec, std::uint32_t m) {
  require_range(m);
  if (spec.kind == PropertyKind::OrOnSecond && spec.target > m) {
    throw std::invalid_argument("OR target outside the new range");
  }
  spec.range = m;
  return spec;
}

std::string describe(const PropertySpec& spec) {
  std::string out = spec.label + "(F=";
  for (std::size_t l = 0; l < spec.domains.size(); ++l) {
    if (l > 0) {
      out += ',';
    }
    out += std::to_string(spec.domains[l]);
  }
  out += "; M=" + std::to_string(spec.range);
  if (spec.kind == PropertyKind::OrOnSecond) {
    out += "; target=" + std::to_string(spec.target);
  }
  if (spec.image_bound) {
    out += "; image<=" + std::to_string(*spec.image_bound);
  }
  return out + ")";
}

namespace {

bool shape_matches(const PropertySpec& spec, const FunctionTuple& t) {
  return t.range == spec.range && t.domains() == spec.domains;
}

bool is_two_to_one(const std::vector<std::uint32_t>& counts) {
  return std::all_of(counts.begin(), counts.end(), [](std::uint32_t c) { return c == 0 || c == 2; });
}

bool is_one_to_one(const std::vector<std::uint32_t>& counts) {
  return std::all_of(counts.begin(), counts.end(), [](std::uint32_t c) { return c <= 1; });
}

std::size_t image_size(const FrequencyMatrix& counts, std::uint32_t m) {
  std::size_t n = 0;
  for (std::uint32_t j = 0; j < m; ++j) {
    for (const auto& row : counts) {
      if (row[j] > 0) {
        ++n;
        break;
      }
    }
  }
  return n;
}

bool kind_promise(const PropertySpec& spec, const FunctionTuple& t, const FrequencyMatrix& counts) {
  switch (spec.kind) {
  case PropertyKind::CollisionPromise:
    return is_one_to_one(counts[0]) || is_two_to_one(counts[0]);
  case PropertyKind::CustomTable:
    return spec.table.count(strip_zero_columns(orbit_canonical(t))) > 0;
  default:
    return true;
  }
}

bool raw_value(const PropertySpec& spec, const FunctionTuple& t, const FrequencyMatrix& counts) {
  switch (spec.kind) {
  case PropertyKind::Claw:
  case PropertyKind::KClaw:
    for (std::uint32_t j = 0; j < spec.range; ++j) {
      if (std::all_of(counts.begin(), counts.end(), [j](const auto& row) { return row[j] > 0; })) {
        return true;
      }
    }
    return false;
  case PropertyKind::CollisionPromise:
    return is_two_to_one(counts[0]);
  case PropertyKind::OrOnSecond:
    return counts[1][spec.target - 1] > 0;
  case PropertyKind::CustomTable:
    return spec.table.at(strip_zero_columns(orbit_canonical(t)));
  case PropertyKind::CustomPredicate:
    return spec.predicate(t);
  }
  throw std::logic_error("unknown property kind");
}

} // namespace

bool in_promise(const PropertySpec& spec, const FunctionTuple& t) {
  if (!shape_matches(spec, t)) {
    return false;
  }
  const FrequencyMatrix counts = freq_matrix(t);
  if (!kind_promise(spec, t, counts)) {
    return false;
  }
  if (spec.image_bound && image_size(counts, spec.range) > *spec.image_bound) {
    return false;
  }
  return !spec.promise || spec.promise(t);
}

bool eval_property(const PropertySpec& spec, const FunctionTuple& t) {
  if (!shape_matches(spec, t)) {
    throw std::invalid_argument("tuple " + to_string(t) + " does not match " + describe(spec));
  }
  t.validate();
  if (!in_promise(spec, t)) {
    throw PromiseViolation("tuple " + to_string(t) + " is outside the promise of " + describe(spec));
  }
  return raw_value(spec, t, freq_matrix(t));
}

BigInt cube_size(const PropertySpec& spec) {
  BigInt total = 1;
  for (std::uint32_t f : spec.domains) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), spec.range, f);
    total *= p;
  }
  return total;
}

namespace {

void check_budget(const PropertySpec& spec, std::uint64_t budget) {
  const BigInt count = cube_size(spec);
  if (count > BigInt(budget)) {
    throw BudgetExceeded("enumerating " + describe(spec) + " needs " + count.get_str() +
                             " tuples, budget is " + std::to_string(budget),
                         count);
  }
}

// Visits every tuple of the unrestricted cube.
void for_each_cube_point(const PropertySpec& spec, const std::function<void(const FunctionTuple&)>& visit) {
  FunctionTuple t;
  t.range = spec.range;
  for (std::uint32_t f : spec.domains) {
    t.values.emplace_back(f, 1);
  }
  while (true) {
    visit(t);
    std::size_t l = t.values.size();
    bool advanced = false;
    while (l > 0 && !advanced) {
      --l;
      auto& seq = t.values[l];
      std::size_t i = seq.size();
      while (i > 0) {
        --i;
        if (seq[i] < spec.range) {
          ++seq[i];
          advanced = true;
          break;
        }
        seq[i] = 1;
      }
    }
    if (!advanced) {
      return;
    }
  }
}

} // namespace

void for_each_input(const PropertySpec& spec, std::uint64_t budget,
                    const std::function<void(const FunctionTuple&)>& visit) {
  check_budget(spec, budget);
  for_each_cube_point(spec, [&](const FunctionTuple& t) {
    if (in_promise(spec, t)) {
      visit(t);
    }
  });
}

std::vector<FunctionTuple> enumerate_domain(const PropertySpec& spec, std::uint64_t budget) {
  std::vector<FunctionTuple> out;
  for_each_input(spec, budget, [&](const FunctionTuple& t) { out.push_back(t); });
  return out;
}

std::vector<OrbitClass> orbit_classes(const PropertySpec& spec, std::uint64_t budget) {
  std::map<CanonicalKey, OrbitClass> classes;
  for_each_input(spec, budget, [&](const FunctionTuple& t) {
    CanonicalKey key = orbit_canonical(t);
    const bool value = raw_value(spec, t, freq_matrix(t));
    auto [it, inserted] = classes.try_emplace(key);
    if (inserted) {
      it->second.key = key;
      it->second.representative = t;
      it->second.value = value;
    } else if (it->second.value != value) {
      throw std::logic_error(describe(spec) + " is not constant on the class " + to_string(key));
    }
    ++it->second.size;
  });
  std::vector<OrbitClass> out;
  out.reserve(classes.size());
  for (auto& [key, cls] : classes) {
    out.push_back(std::move(cls));
  }
  return out;
}

namespace {

// Generators of the symmetry group acting on tuples: a transposition and an
// n-cycle of each domain, and of the range when requested.
std::vector<std::function<FunctionTuple(const FunctionTuple&)>> generators(const PropertySpec& spec,
                                                                            SymmetryGroup group) {
  std::vector<std::function<FunctionTuple(const FunctionTuple&)>> gens;
  for (std::size_t l = 0; l < spec.domains.size(); ++l) {
    if (spec.domains[l] < 2) {
      continue;
    }
    gens.emplace_back([l](const FunctionTuple& t) {
      FunctionTuple u = t;
      std::swap(u.values[l][0], u.values[l][1]);
      return u;
    });
    if (spec.domains[l] > 2) {
      gens.emplace_back([l](const FunctionTuple& t) {
        FunctionTuple u = t;
        std::rotate(u.values[l].begin(), u.values[l].begin() + 1, u.values[l].end());
        return u;
      });
    }
  }
  if (group == SymmetryGroup::Full && spec.range >= 2) {
    const std::uint32_t m = spec.range;
    gens.emplace_back([](const FunctionTuple& t) {
      FunctionTuple u = t;
      for (auto& seq : u.values) {
        for (auto& v : seq) {
          v = v == 1 ? 2 : (v == 2 ? 1 : v);
        }
      }
      return u;
    });
    if (m > 2) {
      gens.emplace_back([m](const FunctionTuple& t) {
        FunctionTuple u = t;
        for (auto& seq : u.values) {
          for (auto& v : seq) {
            v = v % m + 1;
          }
        }
        return u;
      });
    }
  }
  return gens;
}

} // namespace

bool check_symmetry(const PropertySpec& spec, SymmetryGroup group, std::uint64_t budget) {
  check_budget(spec, budget);
  const auto gens = generators(spec, group);
  bool symmetric = true;
  for_each_cube_point(spec, [&](const FunctionTuple& t) {
    if (!symmetric || !in_promise(spec, t)) {
      return;
    }
    const bool value = raw_value(spec, t, freq_matrix(t));
    for (const auto& g : gens) {
      const FunctionTuple u = g(t);
      if (!in_promise(spec, u) || raw_value(spec, u, freq_matrix(u)) != value) {
        symmetric = false;
        return;
      }
    }
  });
  return symmetric;
}

} // namespace clawdeg
