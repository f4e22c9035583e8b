// Acceptance suite: one PASS/FAIL line per criterion. All checks are exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "clawdeg/clawdeg.hpp"
#include "oracles.hpp"

using namespace clawdeg;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  failures += v.pass ? 0 : 1;
  char timing[32];
  std::snprintf(timing, sizeof(timing), "%.2fs", secs);
  std::cout << (v.pass ? "PASS" : "FAIL") << " " << id << " " << name << " [" << v.detail << "; " << timing << "]"
            << std::endl;
}

const Rational kTenth = make_rational(1, 10);
const Rational kThird = make_rational(1, 3);

// Canonical n x m exponent matrices (rows descending) with |Omega|_1 <= total.
std::vector<ExponentMatrix> canonical_matrices(std::size_t n, std::size_t m, std::uint32_t total) {
  std::vector<ExponentRow> rows;
  for (const auto& r : oracle::all_functions(static_cast<std::uint32_t>(m), total + 1)) {
    ExponentRow row;
    std::uint32_t s = 0;
    for (auto v : r) {
      row.push_back(v - 1);
      s += v - 1;
    }
    if (s <= total) {
      rows.push_back(row);
    }
  }
  std::vector<ExponentMatrix> out;
  std::set<ExponentMatrix> seen;
  std::function<void(std::vector<ExponentRow>&, std::uint32_t)> grow = [&](std::vector<ExponentRow>& cur,
                                                                           std::uint32_t used) {
    if (cur.size() == n) {
      ExponentMatrix omega(cur);
      if (seen.insert(omega.canonical()).second) {
        out.push_back(omega.canonical());
      }
      return;
    }
    for (const ExponentRow& r : rows) {
      std::uint32_t s = 0;
      for (auto v : r) {
        s += v;
      }
      if (used + s > total || (!cur.empty() && cur.back() < r)) {
        continue;
      }
      cur.push_back(r);
      grow(cur, used + s);
      cur.pop_back();
    }
  };
  std::vector<ExponentRow> cur;
  grow(cur, 0);
  return out;
}

std::optional<unsigned> d_min(const PropertySpec& spec, const Rational& eps, Space space) {
  DegreeQuery q;
  q.spec = spec;
  q.epsilon = eps;
  q.space = space;
  const ApproxDegreeResult r = min_approx_degree(q);
  if (r.d_min && !oracle::approximates(r.witness, spec, eps)) {
    throw std::logic_error("witness of " + describe(spec) + " fails the brute-force check");
  }
  return r.d_min;
}

std::string show(const std::optional<unsigned>& d) { return d ? std::to_string(*d) : "none"; }

// Two-to-one functions [m] -> [m].
std::vector<std::vector<std::uint32_t>> two_to_one(std::uint32_t m) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const FunctionTuple& t : enumerate_domain(collision_spec(m, m))) {
    if (eval_property(collision_spec(m, m), t)) {
      out.push_back(t.values[0]);
    }
  }
  return out;
}

} // namespace

int main() {
  criterion(1, "orbit monomials decompose into power sums", [] {
    std::size_t cases = 0;
    bool ok = true;
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t m = 1; m <= 3; ++m) {
        const VectorLayout layout = VectorLayout::raw_rows(1);
        for (const ExponentMatrix& omega : canonical_matrices(n, m, 4)) {
          const PowerSumExpression expr = decompose_mon(omega);
          const Poly mon = oracle::orbit_sum(omega, layout);
          ok = ok && expand(expr, layout) == mon && orbit_monomial(omega, layout) == mon;
          for (const auto& [key, coeff] : expr.terms()) {
            std::uint64_t weight = 0;
            for (const auto& lambda : key) {
              for (auto e : lambda) {
                weight += e;
              }
            }
            ok = ok && weight <= omega.l1();
          }
          ++cases;
        }
      }
    }
    return Verdict{ok && cases >= 100, std::to_string(cases) + " canonical matrices"};
  });

  criterion(2, "symmetrization equals the permutation average", [] {
    std::size_t checks = 0;
    bool ok = true;
    for (std::uint32_t f = 1; f <= 5; ++f) {
      for (std::uint32_t m = 1; m <= 3; ++m) {
        std::vector<VarId> vars;
        for (std::uint32_t i = 1; i <= f; ++i) {
          for (std::uint32_t j = 1; j <= m; ++j) {
            vars.push_back(VarId::raw(1, i, j));
          }
        }
        std::vector<std::uint32_t> idx(vars.size());
        for (std::size_t t = 0; t < idx.size(); ++t) {
          idx[t] = static_cast<std::uint32_t>(t);
        }
        const auto functions = oracle::all_functions(f, m);
        for (std::uint32_t deg = 0; deg <= 3; ++deg) {
          for (const auto& pick : oracle::subsets(idx, deg)) {
            std::vector<Monomial::Factor> factors;
            for (auto p : pick) {
              factors.emplace_back(vars[p], 1);
            }
            const Monomial term(factors);
            const Poly sym = symmetrize_term(term, f);
            for (const auto& values : functions) {
              ok = ok && eval(sym, freq_assignment(FunctionTuple{m, {values}})) ==
                             oracle::permutation_average(term, values);
              ++checks;
            }
          }
        }
      }
    }
    return Verdict{ok, std::to_string(checks) + " term/function checks"};
  });

  criterion(3, "raw and frequency spaces give equal minimal degrees", [] {
    std::vector<PropertySpec> specs{claw_spec(1, 1, 2), claw_spec(1, 2, 3), claw_spec(2, 2, 4),
                                    collision_spec(2, 2), collision_spec(4, 4)};
    std::ostringstream detail;
    bool ok = true;
    for (const PropertySpec& spec : specs) {
      for (const Rational& eps : {kTenth, kThird}) {
        const auto raw = d_min(spec, eps, Space::RawXY);
        const auto freq = d_min(spec, eps, Space::FreqZW);
        ok = ok && raw && raw == freq;
        detail << describe(spec) << "@" << to_string(eps) << ":" << show(raw) << "=" << show(freq) << " ";
      }
    }
    return Verdict{ok, detail.str()};
  });

  criterion(4, "minimal degree is unchanged by enlarging the range", [] {
    struct Case {
      PropertySpec spec;
      std::uint32_t base;
      std::vector<std::uint32_t> ranges;
    };
    const std::vector<Case> cases{{claw_spec(1, 1, 2), 2, {3, 4}},
                                  {claw_spec(1, 2, 3), 3, {4, 5}},
                                  {claw_spec(2, 2, 4), 4, {5}},
                                  {kclaw_spec({1, 1, 1}, 3), 3, {4}}};
    std::ostringstream detail;
    bool ok = true;
    for (const Case& c : cases) {
      RangeEqualityOptions opts;
      opts.epsilon = kThird;
      const RangeEqualityReport r = range_equality_report(c.spec, c.base, c.ranges, opts);
      ok = ok && r.passed() && r.entries[0].result.d_min.has_value();
      for (const RangeEntry& e : r.entries) {
        ok = ok && oracle::approximates(e.lifted, with_range(c.spec, e.range), kThird);
      }
      detail << describe(c.spec) << ":";
      for (const RangeEntry& e : r.entries) {
        detail << " M=" << e.range << "->" << show(e.result.d_min);
      }
      detail << "; ";
    }
    return Verdict{ok, detail.str()};
  });

  criterion(5, "collision probabilities match enumeration", [] {
    std::size_t functions = 0;
    bool ok = true;
    std::mt19937_64 rng(20240611);
    for (std::uint32_t m = 2; m <= 10; m += 2) {
      // Every two-to-one function for M <= 6; above that the paired function
      // and seeded random relabelings of it (all two-to-one functions are
      // related by domain and range permutations).
      std::vector<std::vector<std::uint32_t>> hs;
      if (m <= 6) {
        hs = two_to_one(m);
      } else {
        std::vector<std::uint32_t> base;
        for (std::uint32_t i = 0; i < m; ++i) {
          base.push_back(i / 2 + 1);
        }
        hs.push_back(base);
        std::vector<std::uint32_t> sigma(m);
        for (std::uint32_t j = 0; j < m; ++j) {
          sigma[j] = j + 1;
        }
        for (int r = 0; r < 3; ++r) {
          std::shuffle(base.begin(), base.end(), rng);
          std::shuffle(sigma.begin(), sigma.end(), rng);
          std::vector<std::uint32_t> h;
          for (auto v : base) {
            h.push_back(sigma[v - 1]);
          }
          hs.push_back(h);
        }
      }
      for (const auto& h : hs) {
        for (std::uint32_t f = 0; f <= 3 && 2 * f <= m; ++f) {
          const Rational inj = injectivity_prob(m, f);
          ok = ok && inj == oracle::injective_fraction(h, f);
          for (std::uint32_t g = 0; g <= 4 && f + g <= m; ++g) {
            const Rational hit = intersect_prob(m, f, g);
            ok = ok && hit == oracle::intersect_fraction(h, f, g);
            const Rational pcl = pcl_exact(FunctionTuple{m, {h}}, f, g).value;
            ok = ok && pcl == oracle::claw_fraction(h, f, g) && pcl >= inj * hit;
          }
        }
        ++functions;
      }
    }
    return Verdict{ok, std::to_string(functions) + " two-to-one functions, M <= 10, F <= 3, G <= 4"};
  });

  criterion(6, "averaged claw witness separates one-to-one from two-to-one", [] {
    std::ostringstream detail;
    bool ok = true;
    for (std::uint32_t m : {4u, 6u}) {
      for (auto [f, g] : {std::pair{1u, 1u}, std::pair{1u, 2u}}) {
        for (const Rational& eps : {kTenth, kThird}) {
          const CollisionAverage avg = claw_to_collision_average(lp_claw_witness, m, f, g, eps);
          bool exact = true;
          const PropertySpec coll = collision_spec(m, m);
          for_each_input(coll, kDefaultEnumerationBudget, [&](const FunctionTuple& h) {
            const Rational v = eval(avg.average, raw_assignment(h));
            if (eval_property(coll, h)) {
              exact = exact && v >= oracle::claw_fraction(h.values[0], f, g) * (1 - eps);
            } else {
              exact = exact && v >= 0 && v <= eps;
            }
          });
          ok = ok && exact && avg.one_to_one_bound && avg.two_to_one_bound;
          detail << "M=" << m << ",F=" << f << ",G=" << g << ",eps=" << to_string(eps) << ":lo=" << to_string(avg.lo)
                 << ",hi=" << to_string(avg.hi) << " ";
        }
      }
    }
    return Verdict{ok, detail.str()};
  });

  criterion(7, "embedded claw witness approximates OR", [] {
    std::ostringstream detail;
    bool ok = true;
    for (std::uint32_t g = 1; g <= 3; ++g) {
      for (const Rational& eps : {kTenth, kThird}) {
        const Poly p = or_embedding(lp_claw_witness(1, g, 2, eps));
        bool table = true;
        for (std::uint32_t mask = 0; mask < (1u << g); ++mask) {
          Assignment a;
          for (std::uint32_t k = 1; k <= g; ++k) {
            a[VarId::raw(2, k, 1)] = (mask >> (k - 1)) & 1u;
          }
          const Rational v = eval(p, a);
          const Rational target = mask != 0 ? 1 : 0;
          table = table && v >= 0 && v <= 1 && v - target <= eps && target - v <= eps;
        }
        ok = ok && table && verify_or(p, g, eps);
        detail << "G=" << g << "@" << to_string(eps) << ":deg " << p.degree().to_string() << " ";
      }
    }
    return Verdict{ok, detail.str()};
  });

  criterion(8, "claw of the composed instance equals claw after pSearch", [] {
    std::ostringstream detail;
    bool ok = true;
    for (auto [k, f, g, m] : {std::tuple{1u, 2u, 2u, 2u}, std::tuple{2u, 4u, 4u, 3u}}) {
      const PropertySpec composed = claw_spec(f, g, m + 2);
      const PropertySpec outer = claw_spec(k, g * k / f, m);
      std::uint64_t inputs = 0;
      std::uint64_t mismatches = 0;
      for_each_psearch_input(k, f, g, m, [&](const auto& fb, const auto& gb) {
        ++inputs;
        mismatches += eval_property(composed, psearch_compose_instance(fb, gb, m)) ==
                              eval_property(outer, psearch_decode(fb, gb, m))
                          ? 0
                          : 1;
      });
      ok = ok && mismatches == 0 && inputs > 0;
      detail << "(k,F,G,M)=(" << k << "," << f << "," << g << "," << m << "):" << inputs << " inputs ";
    }
    return Verdict{ok, detail.str()};
  });

  criterion(9, "range schedule properties", [] {
    std::size_t pairs = 0;
    bool ok = true;
    for (std::uint64_t f = 1; f <= 50; ++f) {
      for (std::uint64_t g = f; g <= std::min<std::uint64_t>(f * f, 200); ++g) {
        const auto rows = mk_schedule(f, g);
        ok = ok && check_schedule(rows, f, g).passed();
        for (const ScheduleRow& r : rows) {
          ok = ok && r.m_k == oracle::schedule_value(r.k, f, g);
        }
        ++pairs;
      }
    }
    return Verdict{ok, std::to_string(pairs) + " (F,G) pairs"};
  });

  criterion(10, "query algorithm amplitudes have bounded degree", [] {
    std::mt19937_64 rng(20240611);
    std::size_t circuits = 0;
    bool ok = true;
    for (OracleMode mode : {OracleMode::AdditionModM, OracleMode::BitwiseXor}) {
      for (std::uint32_t f = 1; f <= 2; ++f) {
        for (std::uint32_t g = 1; g <= 2; ++g) {
          const OracleSpec spec{mode, f, g, 2};
          const auto labels = all_labels(spec, 2);
          const std::set<BasisLabel> accepting(labels.begin(), labels.begin() + static_cast<long>(labels.size() / 2));
          const auto pairs = enumerate_domain(claw_spec(f, g, 2));
          for (unsigned q = 0; q <= 3; ++q) {
            for (int trial = 0; trial < 3; ++trial) {
              SymbolicState st = init_state();
              for (unsigned call = 0; call <= q; ++call) {
                st = apply_unitary(st, random_orthogonal(labels, rng));
                ok = ok && st.max_degree().at_most(call);
                if (call < q) {
                  st = apply_oracle(st, spec);
                  ok = ok && st.max_degree().at_most(call + 1);
                }
              }
              ok = ok && acceptance_polynomial(st, accepting).degree().at_most(2 * q);
              Poly total;
              for (const auto& [label, amp] : st.amplitudes()) {
                total += amp * amp;
              }
              for (const FunctionTuple& t : pairs) {
                ok = ok && eval(total, raw_assignment(t)) == 1;
              }
              ++circuits;
            }
          }
        }
      }
    }
    return Verdict{ok, std::to_string(circuits) + " random circuits, q <= 3"};
  });

  criterion(11, "amplification identities", [] {
    bool ok = true;
    const Poly p(VarId::freq(1, 1));
    ok = ok && amplify(p, 1) == p;
    ok = ok && amplify(p, 3) == p.pow(2).scale(3) - p.pow(3).scale(2);
    ok = ok && amplify(make_rational(1, 5), 3) == make_rational(13, 125);
    for (unsigned ell = 1; ell <= 9; ell += 2) {
      ok = ok && amplify(Rational(0), ell) == 0 && amplify(Rational(1), ell) == 1 &&
           amplify(make_rational(1, 2), ell) == make_rational(1, 2);
      Rational prev = -1;
      for (long k = 0; k <= 40; ++k) {
        const Rational v = make_rational(k, 40);
        const Rational a = amplify(v, ell);
        ok = ok && amplify(1 - v, ell) == 1 - a && a >= prev;
        ok = ok && eval(amplify(p, ell), Assignment{{VarId::freq(1, 1), v}}) == a;
        prev = a;
      }
    }
    return Verdict{ok, "ell in {1,3,5,7,9}, 41-point grid"};
  });

  criterion(12, "lower-bound regime follows the range boundaries", [] {
    std::size_t checks = 0;
    bool ok = true;
    auto check = [&](std::uint64_t f, std::uint64_t g, std::uint64_t m) {
      const BoundFormula b = lb_formula(f, g, m);
      ok = ok && b.regime == oracle::boundary_regime(f, g, m) && !b.transcript.empty();
      BigInt six;
      switch (b.regime) {
      case Regime::SqrtG:
        six = BigInt(static_cast<unsigned long>(g * g * g));
        break;
      case Regime::MixedSixth:
        six = BigInt(static_cast<unsigned long>(f * f * g * m));
        break;
      case Regime::CubeRootFG:
        six = BigInt(static_cast<unsigned long>(f * g * f * g));
        break;
      }
      ok = ok && b.sixth_power == six;
      ++checks;
    };
    for (std::uint64_t f = 1; f <= 10; ++f) {
      for (std::uint64_t g = f; g <= f * f + 5; ++g) {
        for (std::uint64_t m = 2; m <= f * g + 2; ++m) {
          check(f, g, m);
        }
        // Column boundaries: M = (G/F)^2 when integral, M = F + G.
        if ((g * g) % (f * f) == 0 && g * g / (f * f) >= 2) {
          const std::uint64_t edge = g * g / (f * f);
          check(f, g, edge - 1 >= 2 ? edge - 1 : 2);
          check(f, g, edge);
        }
        check(f, g, f + g - 1 >= 2 ? f + g - 1 : 2);
        check(f, g, f + g);
      }
      // Row boundary: G = F^2 and G = F^2 + 1.
      check(f, f * f, 2);
      check(f, f * f + 1, 2);
    }
    return Verdict{ok, std::to_string(checks) + " (F,G,M) triples"};
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
