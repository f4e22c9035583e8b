#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clawdeg/rational.hpp"

namespace clawdeg {

enum class Relation { LessEq, GreaterEq, Equal };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::LessEq;
  Rational rhs;
};

// Missing bounds are infinite.
struct VarBounds {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

// Feasibility system over num_vars variables. Variables are free unless
// bounds are given; `bounds` is either empty or has one entry per variable.
struct LPInstance {
  std::size_t num_vars = 0;
  std::vector<Constraint> constraints;
  std::vector<VarBounds> bounds;

  explicit LPInstance(std::size_t n = 0) : num_vars(n) {}

  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs);
  void set_bounds(std::size_t var, std::optional<Rational> lower, std::optional<Rational> upper);
  // Throws std::invalid_argument on inconsistent lengths.
  void validate() const;
};

struct LPOutcome {
  bool feasible = false;
  std::vector<Rational> point; // empty when infeasible
  std::size_t pivots = 0;
};

// Exact phase-one simplex with bounded variables and Bland's rule. Rows with
// proportional coefficient vectors are merged into one ranged row first.
LPOutcome solve_feasibility(const LPInstance& lp);

// Exact check of every constraint and bound.
bool verify_solution(const LPInstance& lp, const std::vector<Rational>& point);

// Plain-text form, one item per line:
//   lp <num_vars>
//   bound <var> <lower|-inf> <upper|inf>      (var is 1-based)
//   row <a_1> ... <a_n> <=|>=|= <rhs>
// Blank lines and lines starting with '#' are ignored by the parser.
std::string to_string(const LPInstance& lp);
LPInstance parse_lp(std::string_view text);

} // namespace clawdeg
