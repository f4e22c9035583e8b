#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clawdeg/poly.hpp"

namespace clawdeg {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 4'000'000;

// k functions f_l : [F_l] -> [M], each stored as its value sequence (1-based values).
struct FunctionTuple {
  std::uint32_t range = 0;
  std::vector<std::vector<std::uint32_t>> values;

  std::size_t k() const { return values.size(); }
  std::vector<std::uint32_t> domains() const;
  // Throws std::invalid_argument if a value is outside [M].
  void validate() const;

  friend auto operator<=>(const FunctionTuple&, const FunctionTuple&) = default;
};

// "f1=1,1,2; f2=2,1; M=3"
std::string to_string(const FunctionTuple& t);
// Throws ParseError carrying the column of the offending character.
FunctionTuple parse_function_tuple(std::string_view text);

// counts[l][j-1] = |f_l^{-1}(j)|.
using FrequencyMatrix = std::vector<std::vector<std::uint32_t>>;
FrequencyMatrix freq_matrix(const FunctionTuple& t);

// Columns of the frequency matrix sorted descending lexicographically.
using CanonicalKey = std::vector<std::vector<std::uint32_t>>;
CanonicalKey orbit_canonical(const FunctionTuple& t);
// The same key with all-zero columns removed; independent of M.
CanonicalKey strip_zero_columns(CanonicalKey key);
std::string to_string(const CanonicalKey& key);

// Indicator values x[l,i,j] for every l, i and j in [M].
Assignment raw_assignment(const FunctionTuple& t);
// Frequency values z[l,j] for every l and j in [M].
Assignment freq_assignment(const FunctionTuple& t);

enum class PropertyKind {
  Claw,             // f(x) = g(y) for some x, y
  KClaw,            // all k functions hit a common value
  CollisionPromise, // one function, promised one-to-one or two-to-one; 1 iff two-to-one
  OrOnSecond,       // g(y) = target for some y
  CustomTable,      // value looked up by stripped canonical key; missing keys are outside the promise
  CustomPredicate,  // arbitrary predicate, not assumed symmetric
};

struct PropertySpec {
  PropertyKind kind = PropertyKind::Claw;
  std::vector<std::uint32_t> domains;
  std::uint32_t range = 0;
  std::uint32_t target = 1;
  std::map<CanonicalKey, bool> table;
  std::function<bool(const FunctionTuple&)> predicate;
  // Extra input filter on top of the kind's own promise.
  std::function<bool(const FunctionTuple&)> promise;
  // Promise that the union of the images has at most this many values.
  std::optional<std::uint32_t> image_bound;
  std::string label;

  std::size_t k() const { return domains.size(); }
  std::uint32_t total_domain() const;
};

PropertySpec claw_spec(std::uint32_t f, std::uint32_t g, std::uint32_t m);
PropertySpec kclaw_spec(std::vector<std::uint32_t> domains, std::uint32_t m);
// Domain size n must be even; n = m is the usual collision problem.
PropertySpec collision_spec(std::uint32_t n, std::uint32_t m);
PropertySpec or_on_second_spec(std::uint32_t f, std::uint32_t g, std::uint32_t m, std::uint32_t target);
PropertySpec custom_table_spec(std::vector<std::uint32_t> domains, std::uint32_t m,
                               std::map<CanonicalKey, bool> table);
PropertySpec custom_predicate_spec(std::vector<std::uint32_t> domains, std::uint32_t m,
                                   std::function<bool(const FunctionTuple&)> predicate, std::string label);

// The same property with the range replaced (the promise and table carry over).
PropertySpec with_range(PropertySpec spec, std::uint32_t m);

std::string describe(const PropertySpec& spec);

// Whether t has the property's shape and satisfies every promise.
bool in_promise(const PropertySpec& spec, const FunctionTuple& t);

// Throws std::invalid_argument on shape mismatch and PromiseViolation outside
// the promise domain.
bool eval_property(const PropertySpec& spec, const FunctionTuple& t);

// prod_l M^{F_l}, the size of the unrestricted input cube.
BigInt cube_size(const PropertySpec& spec);

// Visits the promise domain in odometer order (last domain index of the last
// function varies fastest). Throws BudgetExceeded if the cube is larger than
// the budget.
void for_each_input(const PropertySpec& spec, std::uint64_t budget,
                    const std::function<void(const FunctionTuple&)>& visit);
std::vector<FunctionTuple> enumerate_domain(const PropertySpec& spec,
                                            std::uint64_t budget = kDefaultEnumerationBudget);

struct OrbitClass {
  CanonicalKey key;
  FunctionTuple representative; // first member in enumeration order
  std::uint64_t size = 0;
  bool value = false;
};

// Promise domain grouped by canonical key, in key order. Throws
// std::logic_error if the property is not constant on some class.
std::vector<OrbitClass> orbit_classes(const PropertySpec& spec,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

enum class SymmetryGroup {
  Full,       // domain permutations of every function and a common range permutation
  DomainOnly, // domain permutations only
};

// 1 iff the promise domain is closed under the group's generators and the
// property is invariant under them.
bool check_symmetry(const PropertySpec& spec, SymmetryGroup group = SymmetryGroup::Full,
                    std::uint64_t budget = kDefaultEnumerationBudget);

} // namespace clawdeg
