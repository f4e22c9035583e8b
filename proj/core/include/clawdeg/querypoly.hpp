#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "clawdeg/poly.hpp"

namespace clawdeg {

// Basis state |s, i>|b>|z>: s selects the queried function (0 for f, 1 for
// g), i is a 1-based domain index, b in [0, M) is the answer register and z
// is an opaque work label.
struct BasisLabel {
  std::uint32_t s = 0;
  std::uint32_t i = 1;
  std::uint32_t b = 0;
  std::uint32_t z = 0;

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

std::string to_string(const BasisLabel& label);

enum class OracleMode { AdditionModM, BitwiseXor };

struct OracleSpec {
  OracleMode mode = OracleMode::AdditionModM;
  std::uint32_t f = 1; // domain size of the first function
  std::uint32_t g = 1; // domain size of the second function
  std::uint32_t m = 2;
  // Throws std::invalid_argument for M = 0, or XOR mode with M not a power of two.
  void validate() const;
};

// Amplitudes are polynomials in x[1,i,j] (first function) and x[2,k,j]
// (second function). Zero amplitudes are not stored.
class SymbolicState {
public:
  const std::map<BasisLabel, Poly>& amplitudes() const { return amps_; }
  void add(const BasisLabel& label, const Poly& amplitude);
  // Largest amplitude degree; -inf for the zero state.
  Degree max_degree() const;

private:
  std::map<BasisLabel, Poly> amps_;
};

// Amplitude 1 on the all-zero label (s=0, i=1, b=0, z=0).
SymbolicState init_state();

// |s,i>|b>|z> -> |s,i>|b + h_s(i)>|z> with h_0 = f, h_1 = g, written as
// beta_{s,i,b,z} = sum_j x[s+1,i,j] alpha_{s,i,b-j,z}. In XOR mode b - j is
// replaced by b XOR (j mod M). Labels whose i lies outside the domain are
// left unchanged.
SymbolicState apply_oracle(const SymbolicState& state, const OracleSpec& spec);

// Sparse rational matrix over basis labels: rows[r][c] = U_{r,c}.
struct LabelMatrix {
  std::map<BasisLabel, std::map<BasisLabel, Rational>> rows;
  // Labels appearing as a row or a column index.
  std::set<BasisLabel> support() const;
};

// beta = U alpha on U's support; other labels pass through. Throws
// std::invalid_argument unless U U^T = I exactly on the support.
SymbolicState apply_unitary(const SymbolicState& state, const LabelMatrix& u);

bool is_orthogonal(const LabelMatrix& u);

// sum of alpha^2 over the accepting labels.
Poly acceptance_polynomial(const SymbolicState& state, const std::set<BasisLabel>& accepting);

// Every label (s, i, b, z) for the oracle's sizes and z < work.
std::vector<BasisLabel> all_labels(const OracleSpec& spec, std::uint32_t work);

// Random rational orthogonal matrix on `labels`: a random permutation
// followed by `rotations` Givens rotations with Pythagorean-triple angles.
LabelMatrix random_orthogonal(const std::vector<BasisLabel>& labels, std::mt19937_64& rng,
                              unsigned rotations = 6);

} // namespace clawdeg
