#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clawdeg/lpsolver.hpp"
#include "clawdeg/poly.hpp"
#include "clawdeg/properties.hpp"

namespace clawdeg {

// RawXY: polynomials in the indicators x[l,i,j]. FreqZW: polynomials in the
// preimage counts z[l,j], one constraint per orbit of inputs.
enum class Space { RawXY, FreqZW };

// FreqZW basis: orbit monomials mon_Omega over the M range columns, or
// products of nonzero power sums. Ignored in RawXY.
enum class Basis { OrbitMonomial, PowerSumProduct };

std::string to_string(Space space);
std::string to_string(Basis basis);

struct DegreeQuery {
  PropertySpec spec;
  Rational epsilon = make_rational(1, 3);
  Space space = Space::FreqZW;
  Basis basis = Basis::OrbitMonomial;
  unsigned max_degree = 8;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

struct FeasibilitySystem {
  LPInstance lp;
  std::vector<Poly> basis;       // LP variable j is the coefficient of basis[j]
  std::size_t orbit_count = 0;   // constraint inputs: orbits (FreqZW) or tuples (RawXY)
};

// Rows: Phi(u) = 1 gives 1 - eps <= p(u) <= 1; Phi(u) = 0 gives 0 <= p(u) <= eps.
// FreqZW requires check_symmetry(spec) and throws std::invalid_argument
// otherwise. Throws BudgetExceeded when the input cube is too large.
FeasibilitySystem build_feasibility_lp(const PropertySpec& spec, const Rational& epsilon, unsigned degree,
                                       Space space, Basis basis = Basis::OrbitMonomial,
                                       std::uint64_t budget = kDefaultEnumerationBudget);

// Degree-<=d basis polynomials in the given space.
std::vector<Poly> raw_basis(const PropertySpec& spec, unsigned degree);
std::vector<Poly> freq_basis(const PropertySpec& spec, unsigned degree, Basis basis);

struct DegreeStep {
  unsigned degree = 0;
  bool feasible = false;
  std::size_t basis_size = 0;
  std::size_t orbit_count = 0;
  std::size_t pivots = 0;
};

struct ApproxDegreeResult {
  std::optional<unsigned> d_min; // empty when no degree up to the cap works
  Poly witness;
  std::vector<DegreeStep> per_degree;
  std::size_t orbit_count = 0;
};

// Ascends d = 0, 1, ... up to the cap and stops at the first feasible degree.
ApproxDegreeResult min_approx_degree(const DegreeQuery& query);

// Exact check over the full promise domain: p(u) in [0,1] and
// |Phi(u) - p(u)| <= eps. p may use raw and frequency variables of the
// spec's functions; other variables raise std::invalid_argument.
bool verify_witness(const Poly& p, const PropertySpec& spec, const Rational& epsilon,
                    std::uint64_t budget = kDefaultEnumerationBudget);

// Majority-of-ell amplification A(p) = sum_{k > ell/2} C(ell,k) p^k (1-p)^(ell-k).
// ell must be odd.
Poly amplify(const Poly& p, unsigned ell);
Rational amplify(const Rational& v, unsigned ell);

struct RangeEntry {
  std::uint32_t range = 0;
  ApproxDegreeResult result;
  // Witness of the base range carried to this range, and its checks.
  Poly lifted;
  bool lifted_verified = false;
  Degree lifted_degree = Degree::neg_infinity();
  std::optional<unsigned> raw_d_min;
  std::string notice;
};

struct RangeEqualityReport {
  std::uint32_t base_range = 0;
  std::vector<RangeEntry> entries; // entries[0] is the base range
  bool degrees_equal = false;
  bool lifts_verified = false;
  bool passed() const { return degrees_equal && lifts_verified; }
};

struct RangeEqualityOptions {
  Rational epsilon = make_rational(1, 3);
  unsigned max_degree = 8;
  bool raw_cross_check = false;
  std::uint64_t budget = kDefaultEnumerationBudget;
  // Budget on the raw input cube for the optional cross-check.
  std::uint64_t raw_budget = 5000;
};

// d_min in FreqZW at the base range and at each larger range, plus the base
// witness lifted to each range and verified there. The base range must be at
// least the property's image bound, or the total domain size when none is set.
RangeEqualityReport range_equality_report(const PropertySpec& spec, std::uint32_t base_range,
                                          const std::vector<std::uint32_t>& ranges,
                                          const RangeEqualityOptions& options = {});

} // namespace clawdeg
