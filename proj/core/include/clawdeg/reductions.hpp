#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clawdeg/poly.hpp"
#include "clawdeg/properties.hpp"

namespace clawdeg {

// ---------------------------------------------------------------------------
// Claw to collision

// Probability that a uniform F-subset S of [M] has h|_S injective, for a
// two-to-one h on [M]. Requires M even and 2F <= M.
Rational injectivity_prob(std::uint32_t m, std::uint32_t f);

// Probability that a uniform G-subset of [M] \ S meets h^{-1}(h(S)) \ S,
// given h|_S injective. Requires M even, 2F <= M and G <= M - F.
Rational intersect_prob(std::uint32_t m, std::uint32_t f, std::uint32_t g);

struct PclOptions {
  // Exact enumeration when C(N,F) * C(N-F,G) is at most this.
  std::uint64_t exact_limit = 10'000'000;
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 20240611;
};

struct PclResult {
  Rational value;
  bool exact = true;
  BigInt pairs;                       // number of (S, T) pairs
  std::optional<std::uint64_t> seed;  // set when sampled
  std::uint64_t samples = 0;
};

// Probability that h|_S and h|_T share a value, over a uniform F-subset S of
// the domain and a uniform G-subset T of the rest. h is the single function
// of t.
PclResult pcl_exact(const FunctionTuple& h, std::uint32_t f, std::uint32_t g, const PclOptions& options = {});

// Builds a raw claw witness for claw_spec(F, G, M) at the given error, in the
// variables x[1,i,j] (first function) and x[2,k,j] (second function).
using WitnessBuilder =
    std::function<Poly(std::uint32_t f, std::uint32_t g, std::uint32_t m, const Rational& epsilon)>;

// Frequency-space LP witness expanded back to raw variables.
Poly lp_claw_witness(std::uint32_t f, std::uint32_t g, std::uint32_t m, const Rational& epsilon);

// P~ = a P + b.
struct AffineMap {
  Rational a;
  Rational b;
  Rational error; // guaranteed distance from the target on every promise input
};

struct CollisionAverage {
  Poly base_witness;
  Poly average;               // P, in the variables x[1,i,j] of h
  Poly reference_map;             // (25 P + 18) / 43
  // Exact map built from lo and hi below; empty when lo >= hi.
  std::optional<AffineMap> normalization;
  Poly normalized;
  Rational lo;                // max of P over one-to-one inputs
  Rational hi;                // min of P over two-to-one inputs
  bool one_to_one_bound = false; // 0 <= P(h) <= eps on one-to-one h
  bool two_to_one_bound = false; // P(h) >= p_cl(h) (1 - eps) on two-to-one h
  std::uint64_t pairs = 0;
  std::uint64_t inputs = 0;
};

// Averages the witness over every disjoint (S, T) pair, where the base
// witness is renamed x[1,i,j] -> x[1,S_i,j] and x[2,k,j] -> x[1,T_k,j], then
// checks both bounds on every input of collision_spec(M, M).
CollisionAverage claw_to_collision_average(const WitnessBuilder& builder, std::uint32_t m, std::uint32_t f,
                                           std::uint32_t g, const Rational& epsilon,
                                           std::uint64_t budget = kDefaultEnumerationBudget);

// Smallest-error map a P + b with a + b <= 1, b >= 0 separating [0, lo] from
// [hi, 1]. Requires lo < hi.
AffineMap affine_normalization(const Rational& lo, const Rational& hi);

// ---------------------------------------------------------------------------
// Claw to OR

// x[1,i,1] = 1, x[1,i,j>=2] = 0, x[2,k,j>=3] = 0, x[2,k,2] = 1 - x[2,k,1]. The
// result is a polynomial in u_k = x[2,k,1].
Poly or_embedding(const Poly& claw_witness);

// Exact check of |OR(u) - p(u)| <= eps and p(u) in [0,1] on {0,1}^G, with u_k = x[2,k,1].
bool verify_or(const Poly& p, std::uint32_t g, const Rational& epsilon);

// ---------------------------------------------------------------------------
// Blocks and pSearch

// Values g(F(i-1)+1), ..., g(F i) of the single function of t, over the same range.
FunctionTuple block_partition_instance(const FunctionTuple& g, std::uint32_t f, std::uint32_t index);

// std::nullopt is the symbol *.
using PartialValues = std::vector<std::optional<std::uint32_t>>;

// The unique non-* entry; PromiseViolation if there are none or several.
std::uint32_t psearch_value(const PartialValues& values);

class PartialFunctionBlock {
public:
  // Throws PromiseViolation unless exactly one entry is non-*, and
  // std::invalid_argument for values outside [M].
  PartialFunctionBlock(PartialValues values, std::uint32_t m);

  const PartialValues& values() const { return values_; }
  std::uint32_t range() const { return m_; }
  std::uint32_t value() const { return value_; }
  std::size_t size() const { return values_.size(); }

private:
  PartialValues values_;
  std::uint32_t m_;
  std::uint32_t value_;
};

std::string to_string(const PartialFunctionBlock& block);

// Flattens the blocks to (f', g') over [M+2], writing * as M+1 in f' and as
// M+2 in g'. All blocks must share one size and range.
FunctionTuple psearch_compose_instance(const std::vector<PartialFunctionBlock>& f_blocks,
                                       const std::vector<PartialFunctionBlock>& g_blocks, std::uint32_t m);

// The pair (pSearch(f_1), ..., pSearch(f_k)), (pSearch(g_1), ...) over [M].
FunctionTuple psearch_decode(const std::vector<PartialFunctionBlock>& f_blocks,
                             const std::vector<PartialFunctionBlock>& g_blocks, std::uint32_t m);

// Every promise input with f split into k blocks and g into kG/F blocks of
// size F/k. Requires k | F and (F/k) | G.
void for_each_psearch_input(std::uint32_t k, std::uint32_t f, std::uint32_t g, std::uint32_t m,
                            const std::function<void(const std::vector<PartialFunctionBlock>&,
                                                     const std::vector<PartialFunctionBlock>&)>& visit);

// ---------------------------------------------------------------------------
// Schedule and bounds

struct ScheduleRow {
  std::uint64_t k = 0;
  std::uint64_t f_k = 0; // F'_k = k floor(F/k)
  std::uint64_t g_k = 0; // G'_k = (F'_k/k) floor(G / (F'_k/k))
  std::uint64_t m_k = 0; // M_k = k + k G'_k / F'_k
};

// Rows for k = 1..F. Requires F <= G <= F^2.
std::vector<ScheduleRow> mk_schedule(std::uint64_t f, std::uint64_t g);

struct ScheduleCheck {
  bool row_invariants = false; // divisibility and the M_k identity
  bool halves = false;         // 2 F'_k >= F and 2 G'_k >= G
  bool monotone = false;       // M_k nondecreasing
  bool endpoints = false;      // M_1 = 1 + floor(G/F), M_F = F + G
  bool ratio = false;          // M_{k+1} <= 8 M_k
  bool passed() const { return row_invariants && halves && monotone && endpoints && ratio; }
};

ScheduleCheck check_schedule(const std::vector<ScheduleRow>& rows, std::uint64_t f, std::uint64_t g);

enum class Regime {
  SqrtG,      // G^(1/2)
  MixedSixth, // F^(1/3) G^(1/6) M^(1/6)
  CubeRootFG, // (F G)^(1/3)
};

std::string to_string(Regime regime);

struct BoundFormula {
  std::uint64_t f = 0;
  std::uint64_t g = 0;
  std::uint64_t m = 0;
  Regime regime = Regime::SqrtG;
  // The bound's value is irrational in general; its exact sixth power is kept.
  BigInt sixth_power;
  std::string expression;
  // Integer comparisons that selected the regime, in the order they were made.
  std::vector<std::string> transcript;
};

// Requires F <= G and M >= 2.
BoundFormula lb_formula(std::uint64_t f, std::uint64_t g, std::uint64_t m);

} // namespace clawdeg
