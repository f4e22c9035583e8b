#include <gtest/gtest.h>

#include "clawdeg/multisym.hpp"
#include "clawdeg/properties.hpp"
#include "oracles.hpp"

using namespace clawdeg;

namespace {

Poly x(std::uint32_t fn, std::uint32_t i, std::uint32_t j) { return Poly(VarId::raw(fn, i, j)); }
Poly z(std::uint32_t fn, std::uint32_t j) { return Poly(VarId::freq(fn, j)); }

const VectorLayout kRows = VectorLayout::raw_rows(1);

// Every n x m matrix with entries summing to at most `total`.
std::vector<ExponentMatrix> matrices(std::size_t n, std::size_t m, std::uint32_t total) {
  std::vector<ExponentMatrix> out;
  std::vector<std::uint32_t> cells(n * m, 0);
  while (true) {
    std::uint32_t sum = 0;
    for (std::uint32_t c : cells) {
      sum += c;
    }
    if (sum <= total) {
      std::vector<ExponentRow> rows(n, ExponentRow(m));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          rows[i][j] = cells[i * m + j];
        }
      }
      out.emplace_back(std::move(rows));
    }
    std::size_t pos = 0;
    while (pos < cells.size() && cells[pos] == total) {
      cells[pos] = 0;
      ++pos;
    }
    if (pos == cells.size()) {
      break;
    }
    ++cells[pos];
  }
  return out;
}

} // namespace

TEST(PowerSum, Definition) {
  EXPECT_EQ(power_sum({1, 0}, 2, kRows), x(1, 1, 1) + x(1, 2, 1));
  EXPECT_EQ(power_sum({0, 0}, 3, kRows), Poly(3));
  EXPECT_EQ(power_sum({1, 1}, 2, kRows), x(1, 1, 1) * x(1, 1, 2) + x(1, 2, 1) * x(1, 2, 2));
}

TEST(OrbitMonomial, Examples) {
  const ExponentMatrix omega({{0, 1}, {1, 0}});
  EXPECT_EQ(orbit_monomial(omega, kRows), x(1, 1, 2) * x(1, 2, 1) + x(1, 2, 2) * x(1, 1, 1));
  EXPECT_EQ(orbit_monomial(ExponentMatrix::zeros(3, 2), kRows), Poly(1));
  EXPECT_EQ(orbit_monomial(ExponentMatrix({{1}, {1}}), kRows), x(1, 1, 1) * x(1, 2, 1));
  EXPECT_EQ(omega.orbit_size(), 2);
  EXPECT_EQ(to_string(omega.canonical()), "[(1,0),(0,1)]");
}

TEST(OrbitMonomial, MatchesExplicitPermutationSum) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 2; ++m) {
      for (const ExponentMatrix& omega : matrices(n, m, 3)) {
        EXPECT_EQ(orbit_monomial(omega, kRows), oracle::orbit_sum(omega, kRows)) << to_string(omega);
      }
    }
  }
}

TEST(DecomposeMon, ZeroMatrix) {
  const PowerSumExpression expr = decompose_mon(ExponentMatrix::zeros(2, 1));
  ASSERT_EQ(expr.terms().size(), 1u);
  const auto& [key, coeff] = *expr.terms().begin();
  EXPECT_EQ(key, (PowerSumExpression::Key{{0}, {0}}));
  EXPECT_EQ(coeff, make_rational(1, 4));
}

TEST(DecomposeMon, SingleNonzeroRow) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<ExponentRow> rows(n, ExponentRow{0, 0});
    rows[0] = {2, 1};
    const PowerSumExpression expr = decompose_mon(ExponentMatrix(rows));
    ASSERT_EQ(expr.terms().size(), 1u);
    unsigned long power = 1;
    for (std::size_t t = 1; t < n; ++t) {
      power *= n;
    }
    const Rational expected(1, power);
    EXPECT_EQ(expr.terms().begin()->second, expected);
  }
}

TEST(DecomposeMon, TwoEqualRows) {
  const PowerSumExpression expr = decompose_mon(ExponentMatrix({{1}, {1}}));
  PowerSumExpression expected(2, 1);
  expected.add({{1}, {1}}, make_rational(1, 2));
  expected.add({{2}, {0}}, make_rational(-1, 4));
  // P_0 = n = 2, so -P_2 / 2 is stored as -1/4 * P_2 * P_0.
  EXPECT_EQ(expr, expected);
  EXPECT_EQ(expand(expr, kRows),
            (power_sum({1}, 2, kRows).pow(2) - power_sum({2}, 2, kRows)).scale(make_rational(1, 2)));
}

TEST(DecomposeMon, ReexpandsWithinL1) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t m = 1; m <= 2; ++m) {
      for (const ExponentMatrix& omega : matrices(n, m, 3)) {
        const PowerSumExpression expr = decompose_mon(omega);
        EXPECT_EQ(expand(expr, kRows), orbit_monomial(omega, kRows)) << to_string(omega);
        for (const auto& [key, coeff] : expr.terms()) {
          std::uint64_t weight = 0;
          for (const auto& lambda : key) {
            for (auto e : lambda) {
              weight += e;
            }
          }
          EXPECT_LE(weight, omega.l1());
        }
      }
    }
  }
}

TEST(Symmetrize, SingleVariable) {
  for (std::uint32_t f = 1; f <= 4; ++f) {
    const Poly p = symmetrize_term(Monomial(VarId::raw(1, 1, 2)), f);
    EXPECT_EQ(p, z(1, 2).scale(make_rational(1, f)));
  }
}

TEST(Symmetrize, TwoIndicesSameValue) {
  const std::uint32_t f = 4;
  const Monomial term(std::vector<Monomial::Factor>{{VarId::raw(1, 1, 3), 1}, {VarId::raw(1, 2, 3), 1}});
  EXPECT_EQ(symmetrize_term(term, f), (z(1, 3) * (z(1, 3) - Poly(1))).scale(make_rational(1, f * (f - 1))));
}

TEST(Symmetrize, CrossTermAtFTwo) {
  const Monomial term(std::vector<Monomial::Factor>{{VarId::raw(1, 1, 1), 1}, {VarId::raw(1, 2, 2), 1}});
  const Poly p = symmetrize_term(term, 2);
  EXPECT_EQ(p, (z(1, 1) * z(1, 2)).scale(make_rational(1, 2)));
  EXPECT_EQ(oracle::permutation_average(term, {1, 2}), make_rational(1, 2));
}

TEST(Symmetrize, ConflictingIndicatorIsZero) {
  const Monomial term(std::vector<Monomial::Factor>{{VarId::raw(1, 1, 1), 1}, {VarId::raw(1, 1, 2), 1}});
  EXPECT_TRUE(symmetrize_term(term, 3).is_zero());
}

TEST(Symmetrize, RejectsBadTerms) {
  EXPECT_THROW(symmetrize_term(Monomial(VarId::freq(1, 1)), 2), std::invalid_argument);
  EXPECT_THROW(symmetrize_term(Monomial(VarId::raw(1, 3, 1)), 2), std::invalid_argument);
  const Monomial mixed(std::vector<Monomial::Factor>{{VarId::raw(1, 1, 1), 1}, {VarId::raw(2, 1, 1), 1}});
  EXPECT_THROW(symmetrize_term(mixed, 2), std::invalid_argument);
}

TEST(Symmetrize, PolyOverTwoFunctions) {
  EXPECT_EQ(symmetrize_poly(x(1, 1, 1) * x(2, 1, 1), {1, 1}), z(1, 1) * z(2, 1));
  EXPECT_EQ(symmetrize_poly(x(1, 1, 1) * x(2, 1, 1) + x(1, 1, 2) * x(2, 1, 2), {1, 1}),
            z(1, 1) * z(2, 1) + z(1, 2) * z(2, 2));
  EXPECT_EQ(symmetrize_poly(Poly(1), {2, 3}), Poly(1));
}

TEST(Symmetrize, AgreesWithPermutationAverage) {
  for (std::uint32_t f = 1; f <= 4; ++f) {
    for (std::uint32_t m = 1; m <= 3; ++m) {
      const auto functions = oracle::all_functions(f, m);
      // Terms x[1,1,j1] x[1,2,j2] (as far as F allows).
      for (std::uint32_t j1 = 1; j1 <= m; ++j1) {
        for (std::uint32_t j2 = 1; j2 <= m; ++j2) {
          std::vector<Monomial::Factor> factors{{VarId::raw(1, 1, j1), 1}};
          if (f >= 2) {
            factors.push_back({VarId::raw(1, 2, j2), 1});
          }
          const Monomial term(factors);
          const Poly sym = symmetrize_term(term, f);
          for (const auto& values : functions) {
            const FunctionTuple t{m, {values}};
            EXPECT_EQ(eval(sym, freq_assignment(t)), oracle::permutation_average(term, values));
          }
        }
      }
    }
  }
}

TEST(RangeMaps, ExpandFreqToRaw) {
  EXPECT_EQ(expand_freq_to_raw(z(1, 1), {2}), x(1, 1, 1) + x(1, 2, 1));
  EXPECT_EQ(expand_freq_to_raw(z(1, 1) * z(2, 1), {1, 1}), x(1, 1, 1) * x(2, 1, 1));
  EXPECT_EQ(expand_freq_to_raw(Poly(4), {3}), Poly(4));
}

TEST(RangeMaps, RestrictRange) {
  EXPECT_EQ(restrict_range(z(1, 1) * z(1, 3) + z(2, 2), 2), z(2, 2));
  const Poly low = z(1, 1) + z(2, 2);
  EXPECT_EQ(restrict_range(low, 2), low);
  const Poly p11 = z(1, 1) * z(2, 1) + z(1, 2) * z(2, 2) + z(1, 3) * z(2, 3);
  EXPECT_EQ(restrict_range(p11, 2), z(1, 1) * z(2, 1) + z(1, 2) * z(2, 2));
}

TEST(RangeMaps, LiftRange) {
  const Poly p11 = z(1, 1) * z(2, 1) + z(1, 2) * z(2, 2);
  EXPECT_EQ(lift_range(p11, 2, 2, 3, 2), p11 + z(1, 3) * z(2, 3));
  EXPECT_EQ(lift_range(z(1, 1) + z(1, 2), 1, 2, 3, 2), z(1, 1) + z(1, 2) + z(1, 3));
  EXPECT_EQ(lift_range(Poly(make_rational(2, 7)), 2, 2, 5, 2), Poly(make_rational(2, 7)));
  EXPECT_THROW(lift_range(p11, 2, 1, 3, 2), std::invalid_argument);
  EXPECT_THROW(lift_range(p11, 2, 3, 2, 2), std::invalid_argument);
  EXPECT_THROW(lift_range(x(1, 1, 1), 1, 2, 3, 2), std::invalid_argument);
}

TEST(RangeMaps, LiftAgreesWithAverageOnSmallImages) {
  // An asymmetric q' at M' = 3 lifted to M = 5 equals the S_3-average of q' on
  // every tuple whose image lies in [3].
  const Poly q = z(1, 1).pow(2) * z(2, 2) + z(1, 3).scale(3) - z(2, 1) * z(2, 3) + Poly(1);
  const Poly lifted = lift_range(q, 2, 3, 5, 3);
  std::vector<std::uint32_t> sigma{1, 2, 3};
  for (const auto& f : oracle::all_functions(2, 3)) {
    for (const auto& g : oracle::all_functions(1, 3)) {
      const FunctionTuple small{3, {f, g}};
      Rational avg = 0;
      do {
        FunctionTuple moved = small;
        for (auto& row : moved.values) {
          for (auto& v : row) {
            v = sigma[v - 1];
          }
        }
        avg += eval(q, freq_assignment(moved));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
      avg /= 6;
      const FunctionTuple big{5, {f, g}};
      EXPECT_EQ(eval(lifted, freq_assignment(big)), avg);
    }
  }
}

TEST(Symmetrize, MoreFactorsThanDomainIndices) {
  const Monomial term(std::vector<Monomial::Factor>{{VarId::raw(1, 1, 1), 1}, {VarId::raw(1, 1, 2), 1}});
  EXPECT_TRUE(symmetrize_term(term, 1).is_zero());
}
