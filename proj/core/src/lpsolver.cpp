#include "clawdeg/lpsolver.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "clawdeg/errors.hpp"

namespace clawdeg {

void LPInstance::add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  if (coeffs.size() != num_vars) {
    throw std::invalid_argument("constraint has " + std::to_string(coeffs.size()) + " coefficients, expected " +
                                std::to_string(num_vars));
  }
  constraints.push_back(Constraint{std::move(coeffs), rel, std::move(rhs)});
}

void LPInstance::set_bounds(std::size_t var, std::optional<Rational> lower, std::optional<Rational> upper) {
  if (var >= num_vars) {
    throw std::invalid_argument("bound on unknown variable " + std::to_string(var));
  }
  if (bounds.empty()) {
    bounds.resize(num_vars);
  }
  bounds[var] = VarBounds{std::move(lower), std::move(upper)};
}

void LPInstance::validate() const {
  if (!bounds.empty() && bounds.size() != num_vars) {
    throw std::invalid_argument("bounds list length differs from the variable count");
  }
  for (const auto& c : constraints) {
    if (c.coeffs.size() != num_vars) {
      throw std::invalid_argument("constraint row length differs from the variable count");
    }
  }
}

bool verify_solution(const LPInstance& lp, const std::vector<Rational>& point) {
  if (point.size() != lp.num_vars) {
    return false;
  }
  for (std::size_t j = 0; j < lp.bounds.size(); ++j) {
    const auto& b = lp.bounds[j];
    if ((b.lower && point[j] < *b.lower) || (b.upper && point[j] > *b.upper)) {
      return false;
    }
  }
  Rational lhs;
  for (const auto& c : lp.constraints) {
    lhs = 0;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      if (c.coeffs[j] != 0) {
        lhs += c.coeffs[j] * point[j];
      }
    }
    switch (c.rel) {
    case Relation::LessEq:
      if (lhs > c.rhs) {
        return false;
      }
      break;
    case Relation::GreaterEq:
      if (lhs < c.rhs) {
        return false;
      }
      break;
    case Relation::Equal:
      if (lhs != c.rhs) {
        return false;
      }
      break;
    }
  }
  return true;
}

namespace {

struct Range {
  std::optional<Rational> lower;
  std::optional<Rational> upper;

  void tighten_lower(const Rational& v) {
    if (!lower || v > *lower) {
      lower = v;
    }
  }
  void tighten_upper(const Rational& v) {
    if (!upper || v < *upper) {
      upper = v;
    }
  }
  bool empty() const { return lower && upper && *lower > *upper; }
  bool contains(const Rational& v) const { return (!lower || v >= *lower) && (!upper || v <= *upper); }
};

struct Presolved {
  bool infeasible = false;
  std::vector<Range> var_ranges;
  std::vector<std::vector<Rational>> rows;
  std::vector<Range> row_ranges;
};

// Scales every row so its first nonzero coefficient is 1, merges rows with
// equal coefficient vectors into one ranged row, turns single-variable rows
// into bounds and checks empty rows.
Presolved presolve(const LPInstance& lp) {
  Presolved out;
  out.var_ranges.resize(lp.num_vars);
  for (std::size_t j = 0; j < lp.bounds.size(); ++j) {
    out.var_ranges[j] = Range{lp.bounds[j].lower, lp.bounds[j].upper};
  }

  std::map<std::vector<Rational>, std::size_t> index;
  for (const auto& c : lp.constraints) {
    std::size_t lead = 0;
    while (lead < lp.num_vars && c.coeffs[lead] == 0) {
      ++lead;
    }
    Range range;
    if (lead == lp.num_vars) {
      const Rational zero = 0;
      if ((c.rel == Relation::LessEq && zero > c.rhs) || (c.rel == Relation::GreaterEq && zero < c.rhs) ||
          (c.rel == Relation::Equal && zero != c.rhs)) {
        out.infeasible = true;
        return out;
      }
      continue;
    }
    const Rational scale = 1 / c.coeffs[lead];
    std::vector<Rational> row(lp.num_vars);
    for (std::size_t j = lead; j < lp.num_vars; ++j) {
      row[j] = c.coeffs[j] * scale;
    }
    const Rational rhs = c.rhs * scale;
    Relation rel = c.rel;
    if (scale < 0 && rel != Relation::Equal) {
      rel = rel == Relation::LessEq ? Relation::GreaterEq : Relation::LessEq;
    }
    if (rel != Relation::GreaterEq) {
      range.tighten_upper(rhs);
    }
    if (rel != Relation::LessEq) {
      range.tighten_lower(rhs);
    }

    std::size_t nonzeros = 0;
    for (std::size_t j = lead; j < lp.num_vars; ++j) {
      nonzeros += row[j] != 0 ? 1 : 0;
    }
    Range* target = nullptr;
    if (nonzeros == 1) {
      target = &out.var_ranges[lead];
    } else {
      auto [it, inserted] = index.try_emplace(row, out.rows.size());
      if (inserted) {
        out.rows.push_back(std::move(row));
        out.row_ranges.emplace_back();
      }
      target = &out.row_ranges[it->second];
    }
    if (range.lower) {
      target->tighten_lower(*range.lower);
    }
    if (range.upper) {
      target->tighten_upper(*range.upper);
    }
  }
  for (const auto& r : out.var_ranges) {
    out.infeasible = out.infeasible || r.empty();
  }
  for (const auto& r : out.row_ranges) {
    out.infeasible = out.infeasible || r.empty();
  }
  return out;
}

constexpr std::size_t kArtificial = static_cast<std::size_t>(-1);

// Dense bounded-variable tableau. Columns are the structural variables
// followed by one variable per row (r_i = a_i . x). Row i reads
//   basic_i + sum_j tab[i][j] * v_j = const.
// Rows whose initial point violates their range start with an artificial
// basic variable; artificial columns are never stored, so once an artificial
// leaves it cannot come back.
class Tableau {
public:
  explicit Tableau(const Presolved& pre)
      : n_(pre.var_ranges.size()), m_(pre.rows.size()), cols_(n_ + m_) {
    ranges_ = pre.var_ranges;
    ranges_.insert(ranges_.end(), pre.row_ranges.begin(), pre.row_ranges.end());
    value_.resize(cols_);
    basic_.assign(cols_, false);
    basis_.resize(m_);
    art_value_.resize(m_);

    for (std::size_t j = 0; j < n_; ++j) {
      const Range& r = ranges_[j];
      value_[j] = r.lower ? *r.lower : (r.upper ? *r.upper : Rational(0));
    }
    tab_.assign(m_, std::vector<Rational>(cols_));
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& a = pre.rows[i];
      Rational start = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (a[j] != 0) {
          start += a[j] * value_[j];
        }
      }
      const std::size_t rv = n_ + i;
      const Range& range = ranges_[rv];
      if (range.contains(start)) {
        basis_[i] = rv;
        basic_[rv] = true;
        value_[rv] = start;
        for (std::size_t j = 0; j < n_; ++j) {
          tab_[i][j] = -a[j];
        }
        tab_[i][rv] = 1;
      } else {
        const Rational bound = (range.lower && start < *range.lower) ? *range.lower : *range.upper;
        const bool positive = bound > start;
        basis_[i] = kArtificial;
        value_[rv] = bound;
        art_value_[i] = positive ? Rational(bound - start) : Rational(start - bound);
        for (std::size_t j = 0; j < n_; ++j) {
          tab_[i][j] = positive ? Rational(a[j]) : Rational(-a[j]);
        }
        tab_[i][rv] = positive ? -1 : 1;
      }
    }
  }

  // Returns true when a feasible point is reached.
  bool run(std::size_t& pivots) {
    std::vector<Rational> reduced(cols_);
    Rational step;
    Rational candidate;
    while (true) {
      bool any_art = false;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] == kArtificial && art_value_[i] != 0) {
          any_art = true;
          break;
        }
      }
      if (!any_art) {
        return true;
      }

      // Reduced costs of the phase-one objective (sum of artificials).
      for (auto& d : reduced) {
        d = 0;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != kArtificial) {
          continue;
        }
        for (std::size_t j = 0; j < cols_; ++j) {
          if (tab_[i][j] != 0) {
            reduced[j] -= tab_[i][j];
          }
        }
      }

      // Bland: smallest eligible entering index.
      std::size_t q = cols_;
      int dir = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (basic_[j] || reduced[j] == 0) {
          continue;
        }
        const Range& r = ranges_[j];
        if (reduced[j] < 0 && (!r.upper || value_[j] < *r.upper)) {
          q = j;
          dir = 1;
          break;
        }
        if (reduced[j] > 0 && (!r.lower || value_[j] > *r.lower)) {
          q = j;
          dir = -1;
          break;
        }
      }
      if (q == cols_) {
        return false;
      }

      // Ratio test; ties go to artificials, then to the smallest variable index.
      bool have_step = false;
      std::size_t leave_row = m_;
      std::size_t leave_key = 0;
      const Range& qr = ranges_[q];
      if (dir > 0 && qr.upper) {
        step = *qr.upper - value_[q];
        have_step = true;
        leave_key = q + 1;
      } else if (dir < 0 && qr.lower) {
        step = value_[q] - *qr.lower;
        have_step = true;
        leave_key = q + 1;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& alpha = tab_[i][q];
        if (alpha == 0) {
          continue;
        }
        // basic_i moves by -alpha * dir per unit step.
        const bool rises = (alpha < 0) == (dir > 0);
        const std::size_t b = basis_[i];
        std::size_t key = 0;
        if (b == kArtificial) {
          if (rises) {
            continue;
          }
          candidate = art_value_[i] / abs(alpha);
          key = 0;
        } else {
          const Range& br = ranges_[b];
          if (rises && br.upper) {
            candidate = (*br.upper - value_[b]) / abs(alpha);
          } else if (!rises && br.lower) {
            candidate = (value_[b] - *br.lower) / abs(alpha);
          } else {
            continue;
          }
          key = b + 1;
        }
        if (!have_step || candidate < step || (candidate == step && key < leave_key)) {
          step = candidate;
          have_step = true;
          leave_row = i;
          leave_key = key;
        }
      }
      if (!have_step) {
        throw std::logic_error("phase-one objective unbounded; tableau is inconsistent");
      }

      // Move along the edge.
      const Rational delta = dir > 0 ? step : Rational(-step);
      value_[q] += delta;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& alpha = tab_[i][q];
        if (alpha == 0) {
          continue;
        }
        if (basis_[i] == kArtificial) {
          art_value_[i] -= alpha * delta;
        } else {
          value_[basis_[i]] -= alpha * delta;
        }
      }
      if (leave_row == m_) {
        continue; // bound flip
      }

      const std::size_t leaving = basis_[leave_row];
      if (leaving != kArtificial) {
        basic_[leaving] = false;
        const Range& lr = ranges_[leaving];
        // Snap to the bound that was hit.
        if (lr.lower && value_[leaving] <= *lr.lower) {
          value_[leaving] = *lr.lower;
        } else if (lr.upper) {
          value_[leaving] = *lr.upper;
        }
      } else {
        art_value_[leave_row] = 0;
      }
      pivot(leave_row, q);
      basis_[leave_row] = q;
      basic_[q] = true;
      ++pivots;
    }
  }

  std::vector<Rational> structural_point() const {
    return std::vector<Rational>(value_.begin(), value_.begin() + static_cast<std::ptrdiff_t>(n_));
  }

private:
  void pivot(std::size_t r, std::size_t q) {
    auto& prow = tab_[r];
    const Rational inv = 1 / prow[q];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (prow[j] != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    Rational factor;
    Rational tmp;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || tab_[i][q] == 0) {
        continue;
      }
      auto& row = tab_[i];
      factor = row[q];
      for (std::size_t j : nz) {
        mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), prow[j].get_mpq_t());
        mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp.get_mpq_t());
      }
    }
  }

  std::size_t n_;
  std::size_t m_;
  std::size_t cols_;
  std::vector<Range> ranges_;
  std::vector<Rational> value_;
  std::vector<bool> basic_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> art_value_;
  std::vector<std::vector<Rational>> tab_;
};

} // namespace

LPOutcome solve_feasibility(const LPInstance& lp) {
  lp.validate();
  LPOutcome outcome;
  const Presolved pre = presolve(lp);
  if (pre.infeasible) {
    return outcome;
  }
  Tableau tableau(pre);
  if (!tableau.run(outcome.pivots)) {
    return outcome;
  }
  outcome.point = tableau.structural_point();
  if (!verify_solution(lp, outcome.point)) {
    throw std::logic_error("simplex produced a point that fails verification");
  }
  outcome.feasible = true;
  return outcome;
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const LPInstance& lp) {
  std::ostringstream out;
  out << "lp " << lp.num_vars << '\n';
  for (std::size_t j = 0; j < lp.bounds.size(); ++j) {
    const auto& b = lp.bounds[j];
    if (!b.lower && !b.upper) {
      continue;
    }
    out << "bound " << j + 1 << ' ' << (b.lower ? to_string(*b.lower) : "-inf") << ' '
        << (b.upper ? to_string(*b.upper) : "inf") << '\n';
  }
  for (const auto& c : lp.constraints) {
    out << "row";
    for (const auto& a : c.coeffs) {
      out << ' ' << to_string(a);
    }
    switch (c.rel) {
    case Relation::LessEq:
      out << " <= ";
      break;
    case Relation::GreaterEq:
      out << " >= ";
      break;
    case Relation::Equal:
      out << " = ";
      break;
    }
    out << to_string(c.rhs) << '\n';
  }
  return out.str();
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      out.push_back(Token{line.substr(start, i - start), start + 1});
    }
  }
  return out;
}

Rational rational_at(const Token& tok, std::size_t line) {
  try {
    return parse_rational(tok.text);
  } catch (const ParseError&) {
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(tok.column) +
                         ": expected a rational, got '" + std::string(tok.text) + "'",
                     line, tok.column);
  }
}

[[noreturn]] void lp_fail(std::size_t line, std::size_t column, const std::string& message) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message, line,
                   column);
}

} // namespace

LPInstance parse_lp(std::string_view text) {
  LPInstance lp;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0].text.front() == '#') {
      if (end == text.size()) {
        break;
      }
      continue;
    }
    const Token& head = tokens[0];
    if (head.text == "lp") {
      if (have_header) {
        lp_fail(line_no, head.column, "duplicate 'lp' header");
      }
      if (tokens.size() != 2) {
        lp_fail(line_no, head.column, "expected 'lp <num_vars>'");
      }
      Rational n = rational_at(tokens[1], line_no);
      if (n.get_den() != 1 || n < 0) {
        lp_fail(line_no, tokens[1].column, "variable count must be a nonnegative integer");
      }
      lp = LPInstance(n.get_num().get_ui());
      have_header = true;
    } else if (!have_header) {
      lp_fail(line_no, head.column, "expected 'lp <num_vars>' before other lines");
    } else if (head.text == "bound") {
      if (tokens.size() != 4) {
        lp_fail(line_no, head.column, "expected 'bound <var> <lower> <upper>'");
      }
      Rational var = rational_at(tokens[1], line_no);
      if (var.get_den() != 1 || var < 1 || var > lp.num_vars) {
        lp_fail(line_no, tokens[1].column, "variable index out of range");
      }
      std::optional<Rational> lower;
      std::optional<Rational> upper;
      if (tokens[2].text != "-inf") {
        lower = rational_at(tokens[2], line_no);
      }
      if (tokens[3].text != "inf") {
        upper = rational_at(tokens[3], line_no);
      }
      lp.set_bounds(var.get_num().get_ui() - 1, lower, upper);
    } else if (head.text == "row") {
      if (tokens.size() != lp.num_vars + 3) {
        lp_fail(line_no, head.column,
                "expected " + std::to_string(lp.num_vars) + " coefficients, a relation and a right-hand side");
      }
      std::vector<Rational> coeffs;
      for (std::size_t j = 0; j < lp.num_vars; ++j) {
        coeffs.push_back(rational_at(tokens[1 + j], line_no));
      }
      const Token& rel_tok = tokens[1 + lp.num_vars];
      Relation rel;
      if (rel_tok.text == "<=") {
        rel = Relation::LessEq;
      } else if (rel_tok.text == ">=") {
        rel = Relation::GreaterEq;
      } else if (rel_tok.text == "=") {
        rel = Relation::Equal;
      } else {
        lp_fail(line_no, rel_tok.column, "expected <=, >= or =");
      }
      lp.add(std::move(coeffs), rel, rational_at(tokens.back(), line_no));
    } else {
      lp_fail(line_no, head.column, "unknown directive '" + std::string(head.text) + "'");
    }
    if (end == text.size()) {
      break;
    }
  }
  if (!have_header) {
    lp_fail(line_no == 0 ? 1 : line_no, 1, "missing 'lp <num_vars>' header");
  }
  return lp;
}

} // namespace clawdeg
