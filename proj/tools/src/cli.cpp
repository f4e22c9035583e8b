#include "clawdeg_cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "clawdeg/clawdeg.hpp"

namespace clawdeg::cli {

namespace {

using nlohmann::json;

const std::vector<CommandSpec> kCommands = {
    {"degree",
     "Minimal approximate degree of a property by ascending LP feasibility",
     {{"property", "claw", "claw | kclaw | collision | or"},
      {"F", "1", "domain size of the first function"},
      {"G", "1", "domain size of the second function"},
      {"domains", "", "kclaw domain sizes, e.g. 1,1,1"},
      {"n", "", "collision domain size (defaults to M)"},
      {"target", "1", "or: the value searched for in g"},
      {"M", "2", "range size"},
      {"eps", "1/3", "error bound p/q in [0, 1/2)"},
      {"space", "freq", "raw | freq"},
      {"basis", "orbit", "orbit | powersum"},
      {"max_degree", "8", "largest degree tried"},
      {"budget", "4000000", "largest input cube enumerated"},
      {"output", "", "report path (standard output when empty)"}}},
    {"range-equality",
     "Compares minimal degrees across ranges and lifts the base witness",
     {{"property", "claw", "claw | kclaw"},
      {"F", "1", "domain size of the first function"},
      {"G", "1", "domain size of the second function"},
      {"domains", "", "kclaw domain sizes, e.g. 1,1,1"},
      {"Mprime", "", "base range (at least the total domain size)"},
      {"M", "", "larger ranges, comma separated"},
      {"eps", "1/3", "error bound p/q in [0, 1/2)"},
      {"max_degree", "8", "largest degree tried"},
      {"raw_check", "false", "also solve in raw variables where small enough"},
      {"witness", "false", "include the lifted witnesses"},
      {"budget", "4000000", "largest input cube enumerated"},
      {"output", "", "report path (standard output when empty)"}}},
    {"decompose-mon",
     "Writes an orbit monomial as a combination of power-sum products",
     {{"omega", "", "exponent matrix rows, e.g. 1,0;0,1"}, {"output", "", "report path"}}},
    {"symmetrize",
     "Averages a raw polynomial over domain permutations",
     {{"poly", "", "polynomial text in x[l,i,j] variables"},
      {"sizes", "", "domain sizes of the functions, comma separated"},
      {"output", "", "report path"}}},
    {"claw-to-collision",
     "Averages a claw witness into a collision polynomial and checks its bounds",
     {{"M", "4", "collision domain and range size"},
      {"F", "1", "claw domain size of the first function"},
      {"G", "1", "claw domain size of the second function"},
      {"eps", "1/3", "error bound of the claw witness"},
      {"witness", "false", "include the averaged polynomial"},
      {"budget", "4000000", "largest enumeration"},
      {"output", "", "report path"}}},
    {"pcl",
     "Probability that a random (S, T) split of h contains a claw",
     {{"input", "", "function tuple, e.g. f1=1,1,2,2; M=2"},
      {"F", "1", "size of S"},
      {"G", "1", "size of T"},
      {"exact_limit", "10000000", "largest pair count enumerated exactly"},
      {"samples", "200000", "Monte Carlo samples above the exact limit"},
      {"seed", "20240611", "sampling seed"},
      {"output", "", "report path"}}},
    {"or-embed",
     "Restricts a claw witness to an OR approximation and checks it",
     {{"F", "1", "claw domain size of the first function"},
      {"G", "2", "claw domain size of the second function"},
      {"M", "2", "claw range size"},
      {"eps", "1/3", "error bound"},
      {"output", "", "report path"}}},
    {"psearch-compose",
     "Checks claw(f', g') = claw(pSearch blocks) on every promise input",
     {{"k", "1", "number of blocks of f"},
      {"F", "2", "domain size of f'"},
      {"G", "2", "domain size of g'"},
      {"M", "2", "range of the block values"},
      {"output", "", "report path"}}},
    {"mk-schedule",
     "Range schedule M_k for k = 1..F and its properties",
     {{"F", "", "domain size of f"}, {"G", "", "domain size of g"}, {"output", "", "report path"}}},
    {"lb-formula",
     "Selects the lower-bound regime by exact integer comparisons",
     {{"F", "", "domain size of f"},
      {"G", "", "domain size of g"},
      {"M", "", "range size"},
      {"output", "", "report path"}}},
    {"querypoly-audit",
     "Tracks amplitude degrees through random oracle/orthogonal interleavings",
     {{"F", "1", "domain size of f"},
      {"G", "1", "domain size of g"},
      {"M", "2", "range size"},
      {"q", "2", "largest number of oracle calls"},
      {"mode", "add", "add | xor"},
      {"work", "1", "number of work labels"},
      {"trials", "3", "random circuits per query count"},
      {"rotations", "6", "Givens rotations per orthogonal step"},
      {"seed", "20240611", "circuit seed"},
      {"output", "", "report path"}}},
};

bool valid_key(std::string_view key) {
  if (key.empty() || !(std::isalpha(static_cast<unsigned char>(key[0])) || key[0] == '_')) {
    return false;
  }
  return std::all_of(key.begin(), key.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Resolved parameters with typed access. Value errors point into the value
// text, which sits on a single line.
class Params {
public:
  Params(const CommandSpec& spec, const std::map<std::string, std::string>& given) : given_(given) {
    for (const ParamSpec& p : spec.params) {
      values_[p.key] = p.default_value;
    }
    for (const auto& [key, value] : given) {
      if (values_.count(key) == 0) {
        throw std::invalid_argument("unknown key '" + key + "' for command '" + spec.name + "'");
      }
      values_[key] = value;
    }
  }

  const std::map<std::string, std::string>& all() const { return values_; }
  bool supplied(const std::string& key) const { return given_.count(key) > 0; }

  const std::string& str(const std::string& key) const { return values_.at(key); }

  const std::string& required(const std::string& key) const {
    const std::string& v = values_.at(key);
    if (v.empty()) {
      throw std::invalid_argument("missing value for '" + key + "'");
    }
    return v;
  }

  std::uint64_t uint(const std::string& key) const { return parse_uint(key, required(key), 0); }

  std::uint32_t uint32(const std::string& key) const {
    const std::uint64_t v = uint(key);
    if (v > 0xffffffffULL) {
      throw ParseError("value of '" + key + "' is too large", 1, 1);
    }
    return static_cast<std::uint32_t>(v);
  }

  std::vector<std::uint32_t> uint_list(const std::string& key) const {
    const std::string& text = required(key);
    std::vector<std::uint32_t> out;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      const std::uint64_t v = parse_uint(key, item, start);
      if (v > 0xffffffffULL) {
        throw ParseError("value of '" + key + "' is too large", 1, start + 1);
      }
      out.push_back(static_cast<std::uint32_t>(v));
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
    return out;
  }

  Rational rational(const std::string& key) const {
    try {
      return parse_rational(required(key));
    } catch (const ParseError& e) {
      throw ParseError("value of '" + key + "': " + e.what(), 1, e.column());
    }
  }

  bool boolean(const std::string& key) const {
    const std::string& v = required(key);
    if (v == "true" || v == "1" || v == "yes") {
      return true;
    }
    if (v == "false" || v == "0" || v == "no") {
      return false;
    }
    throw ParseError("value of '" + key + "' must be true or false", 1, 1);
  }

private:
  static std::uint64_t parse_uint(const std::string& key, const std::string& text, std::size_t offset) {
    if (text.empty()) {
      throw ParseError("empty number in '" + key + "'", 1, offset + 1);
    }
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError("unexpected '" + std::string(1, c) + "' in '" + key + "'", 1, offset + i + 1);
      }
      if (v > (~0ULL - 9) / 10) {
        throw ParseError("value of '" + key + "' is too large", 1, offset + 1);
      }
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  }

  std::map<std::string, std::string> given_;
  std::map<std::string, std::string> values_;
};

class Report {
public:
  explicit Report(std::ostream& os) : os_(os) {}
  void emit(const json& record) { os_ << record.dump() << '\n'; }

private:
  std::ostream& os_;
};

json header(const RunConfig& config, const Params& params) {
  json h;
  h["record"] = "header";
  h["command"] = config.command;
  h["version"] = CLAWDEG_VERSION;
  json p = json::object();
  for (const auto& [key, value] : params.all()) {
    if (key != "output") {
      p[key] = value;
    }
  }
  h["params"] = p;
  if (params.all().count("seed") > 0) {
    h["seed"] = {{"value", params.str("seed")}, {"source", params.supplied("seed") ? "supplied" : "default"}};
  }
  return h;
}

json opt_uint(const std::optional<unsigned>& v) {
  return v ? json(*v) : json(nullptr);
}

json summary(bool pass) {
  return {{"record", "summary"}, {"status", pass ? "pass" : "fail"}};
}

PropertySpec property_from(const Params& params, std::uint32_t m) {
  const std::string& kind = params.str("property");
  if (kind == "claw") {
    return claw_spec(params.uint32("F"), params.uint32("G"), m);
  }
  if (kind == "kclaw") {
    return kclaw_spec(params.uint_list("domains"), m);
  }
  if (kind == "collision") {
    const std::uint32_t n = params.str("n").empty() ? m : params.uint32("n");
    return collision_spec(n, m);
  }
  if (kind == "or") {
    return or_on_second_spec(params.uint32("F"), params.uint32("G"), m, params.uint32("target"));
  }
  throw std::invalid_argument("unknown property '" + kind + "'");
}

Space space_from(const std::string& s) {
  if (s == "raw") {
    return Space::RawXY;
  }
  if (s == "freq") {
    return Space::FreqZW;
  }
  throw std::invalid_argument("space must be raw or freq, got '" + s + "'");
}

Basis basis_from(const std::string& s) {
  if (s == "orbit") {
    return Basis::OrbitMonomial;
  }
  if (s == "powersum") {
    return Basis::PowerSumProduct;
  }
  throw std::invalid_argument("basis must be orbit or powersum, got '" + s + "'");
}

int cmd_degree(const Params& params, Report& report) {
  DegreeQuery query;
  query.spec = property_from(params, params.uint32("M"));
  query.epsilon = params.rational("eps");
  query.space = space_from(params.str("space"));
  query.basis = basis_from(params.str("basis"));
  query.max_degree = static_cast<unsigned>(params.uint32("max_degree"));
  query.budget = params.uint("budget");
  const ApproxDegreeResult result = min_approx_degree(query);
  for (const DegreeStep& step : result.per_degree) {
    report.emit({{"record", "degree_step"},
                 {"degree", step.degree},
                 {"feasible", step.feasible},
                 {"basis_size", step.basis_size},
                 {"constraint_inputs", step.orbit_count},
                 {"pivots", step.pivots}});
  }
  bool verified = true;
  if (result.d_min) {
    verified = verify_witness(result.witness, query.spec, query.epsilon, query.budget);
  }
  report.emit({{"record", "result"},
               {"property", describe(query.spec)},
               {"space", to_string(query.space)},
               {"eps", to_string(query.epsilon)},
               {"d_min", opt_uint(result.d_min)},
               {"witness", result.d_min ? to_string(result.witness) : ""},
               {"witness_verified", result.d_min ? json(verified) : json(nullptr)}});
  report.emit(summary(verified));
  return verified ? kExitOk : kExitAssertionFailed;
}

int cmd_range_equality(const Params& params, Report& report) {
  const std::uint32_t base = params.uint32("Mprime");
  const PropertySpec spec = property_from(params, base);
  RangeEqualityOptions options;
  options.epsilon = params.rational("eps");
  options.max_degree = static_cast<unsigned>(params.uint32("max_degree"));
  options.raw_cross_check = params.boolean("raw_check");
  options.budget = params.uint("budget");
  const bool with_witness = params.boolean("witness");
  const RangeEqualityReport eq = range_equality_report(spec, base, params.uint_list("M"), options);
  for (const RangeEntry& entry : eq.entries) {
    json r = {{"record", "range"},
              {"M", entry.range},
              {"d_min", opt_uint(entry.result.d_min)},
              {"lifted_degree", entry.lifted_degree.to_string()},
              {"lifted_verified", entry.lifted_verified},
              {"raw_d_min", opt_uint(entry.raw_d_min)},
              {"notice", entry.notice}};
    if (with_witness) {
      r["lifted"] = to_string(entry.lifted);
    }
    report.emit(r);
  }
  report.emit({{"record", "range_equality"},
               {"property", describe(spec)},
               {"base_range", eq.base_range},
               {"degrees_equal", eq.degrees_equal},
               {"lifts_verified", eq.lifts_verified}});
  report.emit(summary(eq.passed()));
  return eq.passed() ? kExitOk : kExitAssertionFailed;
}

ExponentMatrix parse_omega(const std::string& text) {
  std::vector<ExponentRow> rows;
  std::size_t start = 0;
  while (true) {
    const std::size_t semi = text.find(';', start);
    const std::string row_text = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    ExponentRow row;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = row_text.find(',', pos);
      const std::string item = row_text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (item.empty() || !std::all_of(item.begin(), item.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw ParseError("exponents must be nonnegative integers", 1, start + pos + 1);
      }
      row.push_back(static_cast<std::uint32_t>(std::stoul(item)));
      if (comma == std::string::npos) {
        break;
      }
      pos = comma + 1;
    }
    rows.push_back(std::move(row));
    if (semi == std::string::npos) {
      break;
    }
    start = semi + 1;
  }
  const std::size_t width = rows.front().size();
  for (const ExponentRow& row : rows) {
    if (row.size() != width) {
      throw std::invalid_argument("all rows of omega need the same length");
    }
  }
  return ExponentMatrix(std::move(rows));
}

int cmd_decompose_mon(const Params& params, Report& report) {
  const ExponentMatrix omega = parse_omega(params.required("omega"));
  const PowerSumExpression expr = decompose_mon(omega);
  const VectorLayout layout = VectorLayout::raw_rows(1);
  const bool reexpands = expand(expr, layout) == orbit_monomial(omega, layout);
  bool within_l1 = true;
  for (const auto& [key, coeff] : expr.terms()) {
    std::uint64_t total = 0;
    for (const PowerSumIndex& lambda : key) {
      for (std::uint32_t e : lambda) {
        total += e;
      }
    }
    within_l1 = within_l1 && total <= omega.l1();
  }
  report.emit({{"record", "decomposition"},
               {"omega", to_string(omega.canonical())},
               {"expression", to_string(expr)},
               {"terms", expr.terms().size()},
               {"reexpands", reexpands},
               {"within_l1", within_l1}});
  const bool pass = reexpands && within_l1;
  report.emit(summary(pass));
  return pass ? kExitOk : kExitAssertionFailed;
}

int cmd_symmetrize(const Params& params, Report& report) {
  const Poly p = parse_poly(params.required("poly"));
  const Poly q = symmetrize_poly(p, params.uint_list("sizes"));
  report.emit({{"record", "symmetrized"}, {"input", to_string(p)}, {"output", to_string(q)}});
  report.emit(summary(true));
  return kExitOk;
}

int cmd_claw_to_collision(const Params& params, Report& report) {
  const CollisionAverage avg = claw_to_collision_average(lp_claw_witness, params.uint32("M"), params.uint32("F"),
                                                         params.uint32("G"), params.rational("eps"),
                                                         params.uint("budget"));
  json normalization = nullptr;
  if (avg.normalization) {
    normalization = {{"a", to_string(avg.normalization->a)},
                     {"b", to_string(avg.normalization->b)},
                     {"error", to_string(avg.normalization->error)}};
  }
  json r = {{"record", "collision_average"},
            {"pairs", avg.pairs},
            {"inputs", avg.inputs},
            {"base_witness", to_string(avg.base_witness)},
            {"lo", to_string(avg.lo)},
            {"hi", to_string(avg.hi)},
            {"one_to_one_bound", avg.one_to_one_bound},
            {"two_to_one_bound", avg.two_to_one_bound},
            {"normalization", normalization}};
  if (params.boolean("witness")) {
    r["average"] = to_string(avg.average);
    r["reference_map"] = to_string(avg.reference_map);
  }
  report.emit(r);
  const bool pass = avg.one_to_one_bound && avg.two_to_one_bound;
  report.emit(summary(pass));
  return pass ? kExitOk : kExitAssertionFailed;
}

int cmd_pcl(const Params& params, Report& report) {
  const FunctionTuple h = parse_function_tuple(params.required("input"));
  h.validate();
  if (h.k() != 1) {
    throw std::invalid_argument("pcl takes a single function");
  }
  const std::uint32_t f = params.uint32("F");
  const std::uint32_t g = params.uint32("G");
  PclOptions options;
  options.exact_limit = params.uint("exact_limit");
  options.samples = params.uint("samples");
  options.seed = params.uint("seed");
  const PclResult res = pcl_exact(h, f, g, options);
  json r = {{"record", "pcl"},
            {"input", to_string(h)},
            {"value", to_string(res.value)},
            {"exact", res.exact},
            {"pairs", res.pairs.get_str()}};
  if (res.seed) {
    r["seed"] = *res.seed;
    r["samples"] = res.samples;
  }
  bool pass = true;
  const std::uint32_t n = static_cast<std::uint32_t>(h.values[0].size());
  if (res.exact && n == h.range && n % 2 == 0 && 2 * f <= n && f + g <= n) {
    const PropertySpec collision = collision_spec(n, n);
    if (in_promise(collision, h) && eval_property(collision, h)) {
      const Rational bound = injectivity_prob(n, f) * intersect_prob(n, f, g);
      r["lower_bound"] = to_string(bound);
      r["bound_holds"] = res.value >= bound;
      pass = res.value >= bound;
    }
  }
  report.emit(r);
  report.emit(summary(pass));
  return pass ? kExitOk : kExitAssertionFailed;
}

int cmd_or_embed(const Params& params, Report& report) {
  const std::uint32_t g = params.uint32("G");
  const Rational eps = params.rational("eps");
  const Poly witness = lp_claw_witness(params.uint32("F"), g, params.uint32("M"), eps);
  const Poly embedded = or_embedding(witness);
  const bool verified = verify_or(embedded, g, eps);
  report.emit({{"record", "or_embedding"},
               {"claw_witness", to_string(witness)},
               {"embedded", to_string(embedded)},
               {"degree", embedded.degree().to_string()},
               {"verified", verified}});
  report.emit(summary(verified));
  return verified ? kExitOk : kExitAssertionFailed;
}

int cmd_psearch_compose(const Params& params, Report& report) {
  const std::uint32_t k = params.uint32("k");
  const std::uint32_t f = params.uint32("F");
  const std::uint32_t g = params.uint32("G");
  const std::uint32_t m = params.uint32("M");
  if (k == 0 || f % k != 0) {
    throw std::invalid_argument("k must divide F");
  }
  const std::uint32_t block = f / k;
  if (g % block != 0) {
    throw std::invalid_argument("F/k must divide G");
  }
  const PropertySpec composed = claw_spec(f, g, m + 2);
  const PropertySpec outer = claw_spec(k, g / block, m);
  std::uint64_t inputs = 0;
  std::uint64_t positive = 0;
  std::uint64_t mismatches = 0;
  for_each_psearch_input(k, f, g, m,
                         [&](const std::vector<PartialFunctionBlock>& fb, const std::vector<PartialFunctionBlock>& gb) {
                           const bool lhs = eval_property(composed, psearch_compose_instance(fb, gb, m));
                           const bool rhs = eval_property(outer, psearch_decode(fb, gb, m));
                           ++inputs;
                           positive += lhs ? 1 : 0;
                           mismatches += lhs == rhs ? 0 : 1;
                         });
  report.emit({{"record", "composition"},
               {"inputs", inputs},
               {"claws", positive},
               {"mismatches", mismatches}});
  report.emit(summary(mismatches == 0));
  return mismatches == 0 ? kExitOk : kExitAssertionFailed;
}

int cmd_mk_schedule(const Params& params, Report& report) {
  const std::uint64_t f = params.uint("F");
  const std::uint64_t g = params.uint("G");
  const std::vector<ScheduleRow> rows = mk_schedule(f, g);
  for (const ScheduleRow& row : rows) {
    report.emit({{"record", "schedule_row"}, {"k", row.k}, {"f_k", row.f_k}, {"g_k", row.g_k}, {"m_k", row.m_k}});
  }
  const ScheduleCheck check = check_schedule(rows, f, g);
  report.emit({{"record", "schedule_check"},
               {"row_invariants", check.row_invariants},
               {"halves", check.halves},
               {"monotone", check.monotone},
               {"endpoints", check.endpoints},
               {"ratio", check.ratio}});
  report.emit(summary(check.passed()));
  return check.passed() ? kExitOk : kExitAssertionFailed;
}

int cmd_lb_formula(const Params& params, Report& report) {
  const BoundFormula b = lb_formula(params.uint("F"), params.uint("G"), params.uint("M"));
  report.emit({{"record", "bound"},
               {"regime", to_string(b.regime)},
               {"sixth_power", b.sixth_power.get_str()},
               {"expression", b.expression},
               {"transcript", b.transcript}});
  report.emit(summary(true));
  return kExitOk;
}

int cmd_querypoly_audit(const Params& params, Report& report) {
  OracleSpec spec;
  spec.f = params.uint32("F");
  spec.g = params.uint32("G");
  spec.m = params.uint32("M");
  const std::string& mode = params.str("mode");
  if (mode == "add") {
    spec.mode = OracleMode::AdditionModM;
  } else if (mode == "xor") {
    spec.mode = OracleMode::BitwiseXor;
  } else {
    throw std::invalid_argument("mode must be add or xor, got '" + mode + "'");
  }
  spec.validate();
  const std::uint32_t max_q = params.uint32("q");
  const std::uint32_t work = params.uint32("work");
  const std::uint32_t trials = params.uint32("trials");
  const auto rotations = static_cast<unsigned>(params.uint32("rotations"));
  if (work == 0) {
    throw std::invalid_argument("work must be at least 1");
  }
  const std::vector<BasisLabel> labels = all_labels(spec, work);
  std::set<BasisLabel> accepting;
  for (const BasisLabel& l : labels) {
    if (l.b == 0) {
      accepting.insert(l);
    }
  }
  const std::vector<FunctionTuple> pairs = enumerate_domain(claw_spec(spec.f, spec.g, spec.m));
  std::mt19937_64 rng(params.uint("seed"));
  bool pass = true;
  for (std::uint32_t q = 0; q <= max_q; ++q) {
    for (std::uint32_t t = 0; t < trials; ++t) {
      SymbolicState st = init_state();
      bool degrees_ok = true;
      for (std::uint32_t call = 0; call <= q; ++call) {
        st = apply_unitary(st, random_orthogonal(labels, rng, rotations));
        degrees_ok = degrees_ok && st.max_degree().at_most(call);
        if (call < q) {
          st = apply_oracle(st, spec);
          degrees_ok = degrees_ok && st.max_degree().at_most(call + 1);
        }
      }
      const Poly acceptance = acceptance_polynomial(st, accepting);
      Poly total;
      for (const auto& [label, amp] : st.amplitudes()) {
        total += amp * amp;
      }
      bool unit = true;
      for (const FunctionTuple& fg : pairs) {
        unit = unit && eval(total, raw_assignment(fg)) == 1;
      }
      const bool acceptance_ok = acceptance.degree().at_most(2 * q);
      const bool ok = degrees_ok && acceptance_ok && unit;
      pass = pass && ok;
      report.emit({{"record", "audit"},
                   {"q", q},
                   {"trial", t},
                   {"amplitude_degree", st.max_degree().to_string()},
                   {"acceptance_degree", acceptance.degree().to_string()},
                   {"degrees_ok", degrees_ok && acceptance_ok},
                   {"total_probability_one", unit},
                   {"function_pairs", pairs.size()}});
    }
  }
  report.emit(summary(pass));
  return pass ? kExitOk : kExitAssertionFailed;
}

using Handler = std::function<int(const Params&, Report&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"degree", cmd_degree},
      {"range-equality", cmd_range_equality},
      {"decompose-mon", cmd_decompose_mon},
      {"symmetrize", cmd_symmetrize},
      {"claw-to-collision", cmd_claw_to_collision},
      {"pcl", cmd_pcl},
      {"or-embed", cmd_or_embed},
      {"psearch-compose", cmd_psearch_compose},
      {"mk-schedule", cmd_mk_schedule},
      {"lb-formula", cmd_lb_formula},
      {"querypoly-audit", cmd_querypoly_audit},
  };
  return table;
}

} // namespace

const std::vector<CommandSpec>& commands() { return kCommands; }

const CommandSpec* find_command(std::string_view name) {
  for (const CommandSpec& c : kCommands) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

std::map<std::string, std::string> parse_config_text(std::string_view text, const CommandSpec* command) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    ++line_no;
    pos = end + 1;

    std::size_t first = 0;
    while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first]))) {
      ++first;
    }
    if (first == line.size() || line[first] == '#') {
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", line_no, line.size() + 1);
    }
    std::size_t key_end = eq;
    while (key_end > first && std::isspace(static_cast<unsigned char>(line[key_end - 1]))) {
      --key_end;
    }
    const std::string key(line.substr(first, key_end - first));
    if (!valid_key(key)) {
      std::size_t bad = first;
      while (bad < key_end && (std::isalnum(static_cast<unsigned char>(line[bad])) || line[bad] == '_')) {
        ++bad;
      }
      throw ParseError("invalid key '" + key + "'", line_no, (key.empty() ? eq : bad) + 1);
    }
    if (command != nullptr &&
        std::none_of(command->params.begin(), command->params.end(),
                     [&](const ParamSpec& p) { return p.key == key; })) {
      throw ParseError("unknown key '" + key + "' for command '" + command->name + "'", line_no, first + 1);
    }
    std::size_t v_begin = eq + 1;
    while (v_begin < line.size() && std::isspace(static_cast<unsigned char>(line[v_begin]))) {
      ++v_begin;
    }
    std::size_t v_end = line.size();
    while (v_end > v_begin && std::isspace(static_cast<unsigned char>(line[v_end - 1]))) {
      --v_end;
    }
    if (v_begin == v_end) {
      throw ParseError("missing value for '" + key + "'", line_no, eq + 2);
    }
    if (!out.emplace(key, std::string(line.substr(v_begin, v_end - v_begin))).second) {
      throw ParseError("duplicate key '" + key + "'", line_no, first + 1);
    }
  }
  return out;
}

std::map<std::string, std::string> load_config_file(const std::string& path, const CommandSpec* command) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), command);
}

RunConfig merge_config(std::string command, const std::map<std::string, std::string>& file_values,
                       const std::map<std::string, std::string>& flag_values) {
  RunConfig config{std::move(command), file_values};
  for (const auto& [key, value] : flag_values) {
    config.parameters[key] = value;
  }
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const CommandSpec* spec = find_command(config.command);
    if (spec == nullptr) {
      err << "error: unknown command '" << config.command << "'\n";
      return kExitUsage;
    }
    const Params params(*spec, config.parameters);
    std::ofstream file;
    const std::string& path = params.str("output");
    if (!path.empty()) {
      file.open(path);
      if (!file) {
        err << "error: cannot write '" << path << "'\n";
        return kExitUsage;
      }
    }
    std::ostream& sink = path.empty() ? out : file;
    Report report(sink);
    report.emit(header(config, params));
    const int code = handlers().at(config.command)(params, report);
    sink.flush();
    return code;
  } catch (const ParseError& e) {
    err << "error: " << e.line() << ":" << e.column() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (count " << e.count().get_str() << ")\n";
    return kExitBudget;
  } catch (const PromiseViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

} // namespace clawdeg::cli
