#include "clawdeg/querypoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace clawdeg {

std::string to_string(const BasisLabel& label) {
  return "|" + std::to_string(label.s) + "," + std::to_string(label.i) + ">|" + std::to_string(label.b) + ">|" +
         std::to_string(label.z) + ">";
}

void OracleSpec::validate() const {
  if (m == 0) {
    throw std::invalid_argument("oracle range must be nonempty");
  }
  if (mode == OracleMode::BitwiseXor && (m & (m - 1)) != 0) {
    throw std::invalid_argument("XOR oracle needs M to be a power of two, got " + std::to_string(m));
  }
}

void SymbolicState::add(const BasisLabel& label, const Poly& amplitude) {
  if (amplitude.is_zero()) {
    return;
  }
  auto [it, inserted] = amps_.try_emplace(label, amplitude);
  if (!inserted) {
    it->second += amplitude;
    if (it->second.is_zero()) {
      amps_.erase(it);
    }
  }
}

Degree SymbolicState::max_degree() const {
  Degree d = Degree::neg_infinity();
  for (const auto& [label, amp] : amps_) {
    d = std::max(d, amp.degree());
  }
  return d;
}

SymbolicState init_state() {
  SymbolicState st;
  st.add(BasisLabel{0, 1, 0, 0}, Poly(Rational(1)));
  return st;
}

SymbolicState apply_oracle(const SymbolicState& state, const OracleSpec& spec) {
  spec.validate();
  SymbolicState out;
  for (const auto& [label, amp] : state.amplitudes()) {
    if (label.s > 1) {
      throw std::invalid_argument("selector must be 0 or 1 in " + to_string(label));
    }
    if (label.b >= spec.m) {
      throw std::invalid_argument("answer register out of range in " + to_string(label));
    }
    const std::uint32_t domain = label.s == 0 ? spec.f : spec.g;
    if (label.i < 1 || label.i > domain) {
      out.add(label, amp);
      continue;
    }
    for (std::uint32_t j = 1; j <= spec.m; ++j) {
      BasisLabel target = label;
      if (spec.mode == OracleMode::AdditionModM) {
        target.b = (label.b + j) % spec.m;
      } else {
        target.b = label.b ^ (j % spec.m);
      }
      out.add(target, amp * Poly(VarId::raw(label.s + 1, label.i, j)));
    }
  }
  return out;
}

std::set<BasisLabel> LabelMatrix::support() const {
  std::set<BasisLabel> labels;
  for (const auto& [r, row] : rows) {
    labels.insert(r);
    for (const auto& [c, v] : row) {
      labels.insert(c);
    }
  }
  return labels;
}

bool is_orthogonal(const LabelMatrix& u) {
  const auto labels = u.support();
  for (const BasisLabel& r1 : labels) {
    auto it1 = u.rows.find(r1);
    for (const BasisLabel& r2 : labels) {
      if (r2 < r1) {
        continue;
      }
      auto it2 = u.rows.find(r2);
      Rational dot = 0;
      if (it1 != u.rows.end() && it2 != u.rows.end()) {
        for (const auto& [c, v] : it1->second) {
          auto jt = it2->second.find(c);
          if (jt != it2->second.end()) {
            dot += v * jt->second;
          }
        }
      }
      if (dot != (r1 == r2 ? 1 : 0)) {
        return false;
      }
    }
  }
  return true;
}

SymbolicState apply_unitary(const SymbolicState& state, const LabelMatrix& u) {
  if (!is_orthogonal(u)) {
    throw std::invalid_argument("matrix is not orthogonal on its support");
  }
  const auto labels = u.support();
  SymbolicState out;
  for (const auto& [label, amp] : state.amplitudes()) {
    if (labels.count(label) == 0) {
      out.add(label, amp);
    }
  }
  for (const auto& [r, row] : u.rows) {
    for (const auto& [c, v] : row) {
      auto it = state.amplitudes().find(c);
      if (it != state.amplitudes().end() && v != 0) {
        out.add(r, it->second.scale(v));
      }
    }
  }
  return out;
}

Poly acceptance_polynomial(const SymbolicState& state, const std::set<BasisLabel>& accepting) {
  Poly out;
  for (const auto& [label, amp] : state.amplitudes()) {
    if (accepting.count(label) > 0) {
      out += amp * amp;
    }
  }
  return out;
}

std::vector<BasisLabel> all_labels(const OracleSpec& spec, std::uint32_t work) {
  std::vector<BasisLabel> out;
  for (std::uint32_t s = 0; s < 2; ++s) {
    const std::uint32_t domain = s == 0 ? spec.f : spec.g;
    for (std::uint32_t i = 1; i <= domain; ++i) {
      for (std::uint32_t b = 0; b < spec.m; ++b) {
        for (std::uint32_t z = 0; z < work; ++z) {
          out.push_back(BasisLabel{s, i, b, z});
        }
      }
    }
  }
  return out;
}

LabelMatrix random_orthogonal(const std::vector<BasisLabel>& labels, std::mt19937_64& rng, unsigned rotations) {
  static const std::pair<long, long> kTriples[] = {{3, 4}, {5, 12}, {8, 15}, {7, 24}, {20, 21}};
  static const long kHypotenuse[] = {5, 13, 17, 25, 29};
  const std::size_t n = labels.size();
  std::vector<std::vector<Rational>> dense(n, std::vector<Rational>(n));
  std::vector<std::size_t> perm(n);
  for (std::size_t a = 0; a < n; ++a) {
    perm[a] = a;
  }
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t a = 0; a < n; ++a) {
    dense[a][perm[a]] = 1;
  }
  if (n >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<std::size_t> triple(0, std::size(kTriples) - 1);
    std::bernoulli_distribution coin(0.5);
    for (unsigned r = 0; r < rotations; ++r) {
      const std::size_t p = pick(rng);
      std::size_t q = pick(rng);
      while (q == p) {
        q = pick(rng);
      }
      const std::size_t t = triple(rng);
      const Rational c = make_rational(kTriples[t].first, kHypotenuse[t]);
      const Rational s = make_rational(coin(rng) ? kTriples[t].second : -kTriples[t].second, kHypotenuse[t]);
      // Rows p and q become c*row_p - s*row_q and s*row_p + c*row_q.
      for (std::size_t col = 0; col < n; ++col) {
        const Rational a = dense[p][col];
        const Rational b = dense[q][col];
        dense[p][col] = c * a - s * b;
        dense[q][col] = s * a + c * b;
      }
    }
  }
  LabelMatrix u;
  for (std::size_t a = 0; a < n; ++a) {
    auto& row = u.rows[labels[a]];
    for (std::size_t b = 0; b < n; ++b) {
      if (dense[a][b] != 0) {
        row.emplace(labels[b], dense[a][b]);
      }
    }
  }
  return u;
}

} // namespace clawdeg
