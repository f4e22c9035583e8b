#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clawdeg/rational.hpp"

namespace clawdeg {

// A polynomial variable. Raw variables are the indicators x[l,i,j] = [f_l(i) = j];
// frequency variables are the preimage counts z[l,j] = |f_l^{-1}(j)|. All indices
// are 1-based. The derived ordering is the fixed variable order used by every
// canonical form in the library: frequency variables first, then raw, each
// ordered by (function, domain index, range index).
struct VarId {
  enum class Kind : std::uint8_t { Freq = 0, Raw = 1 };

  Kind kind = Kind::Freq;
  std::uint32_t fn = 0;
  std::uint32_t dom = 0; // always 0 for Freq
  std::uint32_t rng = 0;

  static VarId raw(std::uint32_t fn, std::uint32_t dom, std::uint32_t rng) {
    return VarId{Kind::Raw, fn, dom, rng};
  }
  static VarId freq(std::uint32_t fn, std::uint32_t rng) { return VarId{Kind::Freq, fn, 0, rng}; }

  bool is_raw() const { return kind == Kind::Raw; }
  bool is_freq() const { return kind == Kind::Freq; }

  friend auto operator<=>(const VarId&, const VarId&) = default;
};

std::string to_string(const VarId& var);

class MissingVariable : public std::runtime_error {
public:
  explicit MissingVariable(const VarId& var)
      : std::runtime_error("no value assigned to variable " + to_string(var)), var_(var) {}
  const VarId& var() const { return var_; }

private:
  VarId var_;
};

// Total degree with a distinct negative-infinity value for the zero polynomial.
// value() refuses to hand out the sentinel as a number.
class Degree {
public:
  static Degree neg_infinity() { return Degree(); }
  static Degree of(unsigned d) { return Degree(d); }

  bool is_neg_infinity() const { return !value_.has_value(); }
  unsigned value() const {
    if (!value_) {
      throw std::logic_error("degree of the zero polynomial is -infinity");
    }
    return *value_;
  }

  friend bool operator==(const Degree&, const Degree&) = default;
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (a.is_neg_infinity() || b.is_neg_infinity()) {
      return static_cast<int>(!a.is_neg_infinity()) <=> static_cast<int>(!b.is_neg_infinity());
    }
    return *a.value_ <=> *b.value_;
  }
  // Comparison against a finite bound, -infinity being below every bound.
  bool at_most(unsigned bound) const { return is_neg_infinity() || *value_ <= bound; }

  std::string to_string() const { return value_ ? std::to_string(*value_) : "-inf"; }

private:
  Degree() = default;
  explicit Degree(unsigned d) : value_(d) {}
  std::optional<unsigned> value_;
};

// A power product of variables; no zero exponents are stored.
class Monomial {
public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(const VarId& var, std::uint32_t exponent = 1);
  // Factors may arrive unsorted and with repeats; they are merged.
  explicit Monomial(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t exponent(const VarId& var) const;

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

std::string to_string(const Monomial& m);

// Graded lexicographic order: total degree first, then lexicographic on the
// exponent vector in VarId order (a larger exponent on an earlier variable wins).
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) < 0; }
};

// Sparse multivariate polynomial with exact rational coefficients. Values are
// immutable in spirit: every operation returns a new polynomial in canonical
// form (no zero coefficients).
class Poly {
public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  Poly() = default;
  Poly(const Rational& constant);               // NOLINT(google-explicit-constructor)
  Poly(long constant) : Poly(Rational(constant)) {} // NOLINT(google-explicit-constructor)
  explicit Poly(const VarId& var);
  Poly(const Monomial& m, const Rational& coeff);

  static Poly var(const VarId& v) { return Poly(v); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Degree degree() const;
  // Coefficient of the constant monomial.
  Rational constant_term() const;
  std::vector<VarId> variables() const;

  Poly operator-() const;
  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly scale(const Rational& c) const;
  Poly pow(unsigned exponent) const;

  // Adds c * m in place.
  void add_term(const Monomial& m, const Rational& c);

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

private:
  TermMap terms_;
};

using Assignment = std::map<VarId, Rational>;

// Exact evaluation; throws MissingVariable naming the first unassigned variable.
Rational eval(const Poly& p, const Assignment& assignment);

// Evaluation through a lookup callback returning nullptr for unknown variables.
Rational eval(const Poly& p, const std::function<const Rational*(const VarId&)>& lookup);

// Simultaneous substitution: every variable in `subst` is replaced by its image;
// other variables are kept.
Poly substitute(const Poly& p, const std::map<VarId, Poly>& subst);

// Renames variables; the map must be injective on the variables of p for the
// result to be a pure relabeling.
Poly rename(const Poly& p, const std::function<VarId(const VarId&)>& relabel);

// Canonical text: terms in decreasing grlex order joined by " + ", each term
// "p/q" followed by "*var" or "*var^e"; the zero polynomial is "0".
std::string to_string(const Poly& p);
Poly parse_poly(std::string_view text);

} // namespace clawdeg
