#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clawdeg/poly.hpp"

namespace clawdeg {

// How n vectors of m variables map onto polynomial variables.
//   RawRows(fn):  vector i, component c  ->  x[fn, i, c]
//   FreqColumns:  vector j, component l  ->  z[l, j]
// The column view treats the range coordinate j as the vector index, so a
// polynomial in the frequency variables of k functions over range M is a
// polynomial in M vectors of k components.
class VectorLayout {
public:
  static VectorLayout raw_rows(std::uint32_t fn) { return VectorLayout(true, fn); }
  static VectorLayout freq_columns() { return VectorLayout(false, 0); }

  // 0-based vector and component indices.
  VarId var(std::size_t vec, std::size_t comp) const;

private:
  VectorLayout(bool raw, std::uint32_t fn) : raw_(raw), fn_(fn) {}
  bool raw_;
  std::uint32_t fn_;
};

using ExponentRow = std::vector<std::uint32_t>;

// Power-sum index lambda: one exponent per vector component.
using PowerSumIndex = ExponentRow;

// n x m matrix of nonnegative exponents; row i is the exponent vector of X_i.
class ExponentMatrix {
public:
  ExponentMatrix() = default;
  // All rows must have the same length.
  explicit ExponentMatrix(std::vector<ExponentRow> rows);
  // n rows of width m, all zero.
  static ExponentMatrix zeros(std::size_t n, std::size_t m);

  std::size_t n() const { return rows_.size(); }
  std::size_t m() const { return m_; }
  const std::vector<ExponentRow>& rows() const { return rows_; }

  std::uint64_t l1() const;
  std::size_t nonzero_rows() const;
  // Rows sorted descending lexicographically.
  ExponentMatrix canonical() const;
  // n! / prod(multiplicity!) over identical rows.
  BigInt orbit_size() const;

  friend auto operator<=>(const ExponentMatrix&, const ExponentMatrix&) = default;

private:
  std::vector<ExponentRow> rows_;
  std::size_t m_ = 0;
};

std::string to_string(const ExponentMatrix& omega);

// Linear combination of products P_{lambda_1} ... P_{lambda_n}. Each key is a
// multiset of exactly n indices stored sorted descending; zero indices stand
// for P_0 = n.
class PowerSumExpression {
public:
  using Key = std::vector<PowerSumIndex>;

  PowerSumExpression(std::size_t n, std::size_t m) : n_(n), m_(m) {}

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const std::map<Key, Rational>& terms() const { return terms_; }

  // Key is canonicalized (sorted) and must have n entries of width m.
  void add(Key key, const Rational& coeff);
  void add_scaled(const PowerSumExpression& other, const Rational& factor);

  friend bool operator==(const PowerSumExpression&, const PowerSumExpression&) = default;

private:
  std::size_t n_;
  std::size_t m_;
  std::map<Key, Rational> terms_;
};

// Terms in key order, e.g. "1/2*P(1)*P(1) + -1/2*P(2)*P(0)".
std::string to_string(const PowerSumExpression& expr);

// sum_{i < n} X_i^lambda.
Poly power_sum(const PowerSumIndex& lambda, std::size_t n, const VectorLayout& layout);

// Sum of X^Lambda over the distinct row permutations Lambda of omega.
Poly orbit_monomial(const ExponentMatrix& omega, const VectorLayout& layout);

// Expresses mon_omega as a rational combination of power-sum products, by
// recursion on the number of nonzero rows. Results are cached per canonical
// matrix; the cache is safe for concurrent use.
PowerSumExpression decompose_mon(const ExponentMatrix& omega);

// Re-expands a power-sum expression with the n vectors of `layout`.
Poly expand(const PowerSumExpression& expr, const VectorLayout& layout);

// Average of a multilinear raw term of one function over all permutations of
// its domain [F], written in that function's frequency variables. Exponents
// above 1 are reduced (x^2 = x on 0/1 inputs); a domain index used with two
// range values gives 0. Throws std::invalid_argument for mixed functions,
// frequency variables, or domain indices outside [F].
Poly symmetrize_term(const Monomial& term, std::uint32_t domain_size);

// Average over independent domain permutations of every function.
// sizes[l-1] is the domain size of function l.
Poly symmetrize_poly(const Poly& p, const std::vector<std::uint32_t>& sizes);

// z[l,j] -> sum_{i <= F_l} x[l,i,j] for every frequency variable.
Poly expand_freq_to_raw(const Poly& q, const std::vector<std::uint32_t>& sizes);

// Sets every frequency variable with range index above m_prime to zero.
Poly restrict_range(const Poly& q, std::uint32_t m_prime);

// Carries a frequency polynomial of k functions on range m_prime to range m:
// averages it over range permutations, decomposes into power sums and
// re-expands them on m coordinates. P_0 factors keep their value m_prime, so
// the result agrees with the average on every tuple whose image lies in
// [m_prime]. Throws std::invalid_argument if m_prime < min_range or
// m < m_prime, or if q_prime mentions raw variables, functions above k or
// range indices above m_prime.
Poly lift_range(const Poly& q_prime, std::uint32_t k, std::uint32_t m_prime, std::uint32_t m,
                std::uint32_t min_range);

} // namespace clawdeg
