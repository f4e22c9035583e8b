#include "clawdeg/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "clawdeg/errors.hpp"

namespace clawdeg {

std::string to_string(const VarId& var) {
  std::ostringstream out;
  if (var.is_raw()) {
    out << "x[" << var.fn << ',' << var.dom << ',' << var.rng << ']';
  } else {
    out << "z[" << var.fn << ',' << var.rng << ']';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const VarId& var, std::uint32_t exponent) {
  if (exponent > 0) {
    factors_.emplace_back(var, exponent);
    degree_ = exponent;
  }
}

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  for (const auto& [var, e] : factors) {
    if (e == 0) {
      continue;
    }
    if (!factors_.empty() && factors_.back().first == var) {
      factors_.back().second += e;
    } else {
      factors_.emplace_back(var, e);
    }
    degree_ += e;
  }
}

std::uint32_t Monomial::exponent(const VarId& var) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), var,
                             [](const Factor& f, const VarId& v) { return f.first < v; });
  return (it != factors_.end() && it->first == var) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (const auto& [var, e] : m.factors()) {
    if (!out.empty()) {
      out += '*';
    }
    out += to_string(var);
    if (e != 1) {
      out += '^' + std::to_string(e);
    }
  }
  return out.empty() ? "1" : out;
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) {
    return c;
  }
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  const std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (fa[i].first != fb[i].first) {
      // The monomial carrying the earlier variable has the larger exponent there.
      return fa[i].first < fb[i].first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (fa[i].second != fb[i].second) {
      return fa[i].second <=> fb[i].second;
    }
  }
  // Equal degree and equal common prefix means equal factor lists.
  return fa.size() <=> fb.size();
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& constant) {
  if (constant != 0) {
    terms_.emplace(Monomial(), constant);
  }
}

Poly::Poly(const VarId& var) { terms_.emplace(Monomial(var), Rational(1)); }

Poly::Poly(const Monomial& m, const Rational& coeff) {
  if (coeff != 0) {
    terms_.emplace(m, coeff);
  }
}

Degree Poly::degree() const {
  if (terms_.empty()) {
    return Degree::neg_infinity();
  }
  // The map is ordered by grlex, so the last key has the maximal degree.
  return Degree::of(terms_.rbegin()->first.degree());
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<VarId> Poly::variables() const {
  std::vector<VarId> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.factors()) {
      vars.push_back(v);
    }
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) {
    c = -c;
  }
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) {
    add_term(m, c);
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) {
    add_term(m, -c);
  }
  return *this;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly Poly::operator+(const Poly& other) const {
  Poly out = *this;
  out += other;
  return out;
}

Poly Poly::operator-(const Poly& other) const {
  Poly out = *this;
  out -= other;
  return out;
}

Poly Poly::operator*(const Poly& other) const {
  Poly out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

Poly Poly::scale(const Rational& c) const {
  if (c == 0) {
    return Poly();
  }
  Poly out = *this;
  for (auto& [m, coeff] : out.terms_) {
    coeff *= c;
  }
  return out;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(Rational(1));
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) {
      result *= base;
    }
    exponent >>= 1U;
    if (exponent > 0) {
      base *= base;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Evaluation and substitution

Rational eval(const Poly& p, const std::function<const Rational*(const VarId&)>& lookup) {
  Rational total = 0;
  Rational term;
  Rational power;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (const auto& [v, e] : m.factors()) {
      const Rational* value = lookup(v);
      if (value == nullptr) {
        throw MissingVariable(v);
      }
      if (e == 1) {
        term *= *value;
      } else {
        mpz_pow_ui(mpq_numref(power.get_mpq_t()), value->get_num_mpz_t(), e);
        mpz_pow_ui(mpq_denref(power.get_mpq_t()), value->get_den_mpz_t(), e);
        term *= power;
      }
    }
    total += term;
  }
  return total;
}

Rational eval(const Poly& p, const Assignment& assignment) {
  return eval(p, [&](const VarId& v) -> const Rational* {
    auto it = assignment.find(v);
    return it == assignment.end() ? nullptr : &it->second;
  });
}

Poly substitute(const Poly& p, const std::map<VarId, Poly>& subst) {
  // Powers of substituted images are reused across terms.
  std::map<std::pair<VarId, std::uint32_t>, Poly> powers;
  auto power_of = [&](const VarId& v, std::uint32_t e, const Poly& image) -> const Poly& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it == powers.end()) {
      it = powers.emplace(key, image.pow(e)).first;
    }
    return it->second;
  };

  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Poly term(Monomial(), c);
    std::vector<Monomial::Factor> kept;
    for (const auto& [v, e] : m.factors()) {
      auto it = subst.find(v);
      if (it == subst.end()) {
        kept.emplace_back(v, e);
        continue;
      }
      term *= power_of(v, e, it->second);
      if (term.is_zero()) {
        break;
      }
    }
    if (term.is_zero()) {
      continue;
    }
    if (!kept.empty()) {
      term *= Poly(Monomial(std::move(kept)), Rational(1));
    }
    out += term;
  }
  return out;
}

Poly rename(const Poly& p, const std::function<VarId(const VarId&)>& relabel) {
  Poly out;
  std::vector<Monomial::Factor> factors;
  for (const auto& [m, c] : p.terms()) {
    factors.clear();
    for (const auto& [v, e] : m.factors()) {
      factors.emplace_back(relabel(v), e);
    }
    out.add_term(Monomial(factors), c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const Poly& p) {
  if (p.is_zero()) {
    return "0";
  }
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!out.empty()) {
      out += " + ";
    }
    out += to_string(it->second);
    if (!it->first.is_one()) {
      out += '*';
      out += to_string(it->first);
    }
  }
  return out;
}

namespace {

class PolyParser {
public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Poly parse() {
    skip_space();
    if (at_end()) {
      fail("empty polynomial");
    }
    Poly out;
    bool first = true;
    while (true) {
      skip_space();
      bool negate = false;
      if (!first) {
        if (at_end()) {
          break;
        }
        char op = text_[pos_];
        if (op != '+' && op != '-') {
          fail("expected '+' or '-' between terms");
        }
        negate = op == '-';
        ++pos_;
        skip_space();
      }
      Poly term = parse_term();
      out += negate ? -term : term;
      first = false;
      skip_space();
      if (at_end()) {
        break;
      }
    }
    return out;
  }

private:
  Poly parse_term() {
    Rational coeff = 1;
    std::vector<Monomial::Factor> factors;
    if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '-')) {
      coeff = parse_number();
    } else {
      factors.push_back(parse_factor());
    }
    while (true) {
      std::size_t save = pos_;
      skip_space();
      if (at_end() || peek() != '*') {
        pos_ = save;
        break;
      }
      ++pos_;
      skip_space();
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff *= parse_number();
      } else {
        factors.push_back(parse_factor());
      }
    }
    return Poly(Monomial(std::move(factors)), coeff);
  }

  Rational parse_number() {
    std::size_t start = pos_;
    if (peek() == '-') {
      ++pos_;
    }
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) {
      ++pos_;
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), 1, start + e.column());
    }
  }

  Monomial::Factor parse_factor() {
    if (at_end()) {
      fail("expected variable");
    }
    char kind = peek();
    if (kind != 'x' && kind != 'z') {
      fail(std::string("expected variable 'x[' or 'z[' but found '") + kind + "'");
    }
    ++pos_;
    expect('[');
    std::vector<std::uint32_t> idx;
    idx.push_back(parse_index());
    while (!at_end() && peek() == ',') {
      ++pos_;
      idx.push_back(parse_index());
    }
    expect(']');
    VarId var;
    if (kind == 'x') {
      if (idx.size() != 3) {
        fail("raw variable needs three indices x[l,i,j]");
      }
      var = VarId::raw(idx[0], idx[1], idx[2]);
    } else {
      if (idx.size() != 2) {
        fail("frequency variable needs two indices z[l,j]");
      }
      var = VarId::freq(idx[0], idx[1]);
    }
    std::uint32_t exponent = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      exponent = parse_index();
      if (exponent == 0) {
        fail("zero exponent");
      }
    }
    return {var, exponent};
  }

  std::uint32_t parse_index() {
    skip_space();
    std::size_t start = pos_;
    unsigned long value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<unsigned long>(peek() - '0');
      if (value > 0xFFFFFFFFUL) {
        fail("index too large");
      }
      ++pos_;
    }
    if (pos_ == start) {
      fail("expected non-negative integer");
    }
    skip_space();
    return static_cast<std::uint32_t>(value);
  }

  void expect(char c) {
    if (at_end() || peek() != c) {
      fail(std::string("expected '") + c + "'");
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

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + message, 1,
                     pos_ + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

Poly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

} // namespace clawdeg
