#include "slitlogic/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slitlogic/constructs.hpp"
#include "slitlogic/error.hpp"
#include "slitlogic/formula.hpp"
#include "slitlogic/interference.hpp"
#include "slitlogic/poly.hpp"
#include "slitlogic/quantum_sim.hpp"

namespace slitlogic::cli {
namespace {

using Json = nlohmann::ordered_json;

/// Bad command-line values that CLI11 itself cannot catch.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Range {
  std::size_t lo;
  std::size_t hi;
};

std::size_t parse_count(const std::string& s, const std::string& what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("bad " + what + " '" + s + "'");
  return value;
}

double parse_double(const std::string& s, const std::string& what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("bad " + what + " '" + s + "'");
  return value;
}

/// "5" or "2..8".
Range parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const std::size_t n = parse_count(s, "n");
    return {n, n};
  }
  Range r{parse_count(s.substr(0, dots), "range start"), parse_count(s.substr(dots + 2), "range end")};
  if (r.lo > r.hi) throw UsageError("empty range '" + s + "'");
  return r;
}

/// "start:stop:count".
DetectorGrid parse_grid(const std::string& s) {
  const auto a = s.find(':');
  const auto b = a == std::string::npos ? std::string::npos : s.find(':', a + 1);
  if (b == std::string::npos) throw UsageError("grid must be start:stop:count, got '" + s + "'");
  const double start = parse_double(s.substr(0, a), "grid start");
  const double stop = parse_double(s.substr(a + 1, b - a - 1), "grid stop");
  const std::size_t count = parse_count(s.substr(b + 1), "grid count");
  try {
    return DetectorGrid::linspace(start, stop, count);
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> names;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return names;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

Json terms_json(const MultilinearPoly& p) {
  Json terms = Json::array();
  for (const Term& t : p.terms()) {
    Json coefficient;
    if (t.coefficient >= std::numeric_limits<long long>::min() &&
        t.coefficient <= std::numeric_limits<long long>::max()) {
      coefficient = static_cast<long long>(t.coefficient);
    } else {
      coefficient = t.coefficient.str();
    }
    terms.push_back({{"monomial", to_string(t.monomial)}, {"coefficient", coefficient}});
  }
  return terms;
}

Json poly_json(const MultilinearPoly& p) {
  return {{"nvars", p.nvars()}, {"polynomial", to_string(p)}, {"terms", terms_json(p)}};
}

MultilinearPoly build_construct(const std::string& name, std::size_t n) {
  if (name == "xor") return xor_chain(n);
  if (name == "upsilon") return upsilon(n);
  if (name == "delta") return delta(n);
  if (name == "exactly-one") return exactly_one(n);
  throw UsageError("unknown construct '" + name + "'");
}

const std::vector<std::string> kConstructs = {"xor", "upsilon", "delta", "exactly-one", "interference"};

struct Common {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

void add_format(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

int emit(std::ostream& out, const Common& common, const Json& doc, const std::string& text, int status) {
  if (common.json()) {
    out << doc.dump(2) << '\n';
  } else {
    out << text;
  }
  return status;
}

// ---------------------------------------------------------------- expand

struct ExpandArgs {
  Common common;
  std::string construct;
  std::optional<std::size_t> n;
  std::optional<std::size_t> xor_n, upsilon_n, delta_n, exactly_one_n;
};

int do_expand(const ExpandArgs& a, std::ostream& out) {
  std::vector<std::pair<std::string, std::size_t>> picks;
  if (!a.construct.empty()) {
    if (!a.n) throw UsageError("construct '" + a.construct + "' needs --n");
    picks.emplace_back(a.construct, *a.n);
  }
  if (a.xor_n) picks.emplace_back("xor", *a.xor_n);
  if (a.upsilon_n) picks.emplace_back("upsilon", *a.upsilon_n);
  if (a.delta_n) picks.emplace_back("delta", *a.delta_n);
  if (a.exactly_one_n) picks.emplace_back("exactly-one", *a.exactly_one_n);
  if (picks.size() != 1) throw UsageError("expand needs exactly one construct");
  const auto& [name, n] = picks.front();

  if (name == "interference") {
    Json groups = Json::object();
    std::string text;
    for (const auto& [degree, part] : interference_terms(n)) {
      groups[std::to_string(degree)] = poly_json(part);
      text += "I" + std::to_string(degree) + "=" + to_string(part) + "\n";
    }
    return emit(out, a.common, {{"construct", name}, {"n", n}, {"degrees", groups}}, text, kSuccess);
  }
  const MultilinearPoly p = build_construct(name, n);
  Json doc = {{"construct", name}, {"n", n}};
  doc.update(poly_json(p));
  return emit(out, a.common, doc, to_string(p) + "\n", kSuccess);
}

// ---------------------------------------------------------------- table

struct TableArgs {
  Common common;
  std::string formula;
  std::string order;
  std::string construct;
  std::optional<std::size_t> n;
};

int do_table(const TableArgs& a, std::ostream& out) {
  MultilinearPoly p;
  std::vector<std::string> names;
  if (!a.formula.empty() == !a.construct.empty()) {
    throw UsageError("table needs exactly one of --formula or --construct");
  }
  if (!a.formula.empty()) {
    const Formula f = parse(a.formula);
    names = a.order.empty() ? variables(f) : split_names(a.order);
    p = ast_to_poly(f, names);
  } else {
    if (!a.n) throw UsageError("--construct needs --n");
    if (a.construct == "interference") throw UsageError("no truth table for 'interference'");
    p = build_construct(a.construct, *a.n);
    for (std::size_t i = 1; i <= *a.n; ++i) names.push_back("x" + std::to_string(i));
  }
  const TruthTable t = to_truth_table(p);

  std::string text;
  for (const std::string& name : names) text += name + ",";
  text += "value\n";
  Json rows = Json::array();
  for (std::uint32_t m = 0; m < t.size(); ++m) {
    std::vector<int> bits;
    for (std::size_t i = 0; i < names.size(); ++i) {
      bits.push_back(static_cast<int>((m >> i) & 1u));
      text += std::to_string(bits.back()) + ",";
    }
    text += t[m].str() + "\n";
    rows.push_back({{"assignment", bits}, {"value", static_cast<long long>(t[m])}});
  }
  return emit(out, a.common, {{"variables", names}, {"rows", rows}}, text, kSuccess);
}

// ---------------------------------------------------------------- parse

struct ParseArgs {
  Common common;
  std::string formula;
  bool to_poly = false;
  std::string order;
  std::vector<std::string> check_equiv;
};

std::string kind_name(FormulaKind k) {
  switch (k) {
    case FormulaKind::variable: return "var";
    case FormulaKind::constant: return "const";
    case FormulaKind::negation: return "not";
    case FormulaKind::conjunction: return "and";
    case FormulaKind::disjunction: return "or";
    case FormulaKind::exclusive_or: return "xor";
  }
  return "";
}

std::string tree_text(const Formula& f) {
  if (f.kind() == FormulaKind::variable) return f.name();
  if (f.kind() == FormulaKind::constant) return f.value() ? "1" : "0";
  std::string s = kind_name(f.kind()) + "(";
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    if (i) s += ", ";
    s += tree_text(f.children()[i]);
  }
  return s + ")";
}

Json tree_json(const Formula& f) {
  Json j = {{"kind", kind_name(f.kind())}};
  if (f.kind() == FormulaKind::variable) j["name"] = f.name();
  if (f.kind() == FormulaKind::constant) j["value"] = f.value() ? 1 : 0;
  if (!f.children().empty()) {
    Json children = Json::array();
    for (const Formula& c : f.children()) children.push_back(tree_json(c));
    j["children"] = children;
  }
  return j;
}

int do_parse(const ParseArgs& a, std::ostream& out) {
  if (!a.check_equiv.empty()) {
    if (!a.formula.empty() || a.to_poly) throw UsageError("--check-equiv takes its own two formulas");
    const EquivalenceResult r = equivalence(parse(a.check_equiv[0]), parse(a.check_equiv[1]));
    std::string text = r.equivalent ? "equivalent" : "not equivalent";
    Json witness = nullptr;
    if (r.witness) {
      witness = Json::object();
      text += " witness=";
      for (std::size_t i = 0; i < r.order.size(); ++i) {
        if (i) text += ",";
        text += r.order[i] + "=" + std::to_string((*r.witness)[i]);
        witness[r.order[i]] = (*r.witness)[i];
      }
    }
    Json doc = {{"equivalent", r.equivalent}, {"order", r.order}, {"witness", witness}};
    return emit(out, a.common, doc, text + "\n", r.equivalent ? kSuccess : kVerificationFailure);
  }
  if (a.formula.empty()) throw UsageError("parse needs a formula or --check-equiv");
  const Formula f = parse(a.formula);
  if (a.to_poly) {
    const std::vector<std::string> order = a.order.empty() ? variables(f) : split_names(a.order);
    const MultilinearPoly p = ast_to_poly(f, order);
    std::string text = "order=";
    for (std::size_t i = 0; i < order.size(); ++i) text += (i ? "," : "") + order[i];
    text += "\npolynomial=" + to_string(p) + "\n";
    Json doc = {{"order", order}};
    doc.update(poly_json(p));
    return emit(out, a.common, doc, text, kSuccess);
  }
  Json doc = {{"rendered", render(f)}, {"ast", tree_json(f)}};
  return emit(out, a.common, doc, "ast=" + tree_text(f) + "\nrendered=" + render(f) + "\n", kSuccess);
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  std::string identity = "reduction";
  std::string range = "2..10";
  bool verbose = false;
};

int do_verify(const VerifyArgs& a, std::ostream& out) {
  const Range r = parse_range(a.range);
  bool all = true;
  Json results = Json::array();
  std::string text;
  for (std::size_t n = r.lo; n <= r.hi; ++n) {
    bool holds = false;
    Json entry;
    std::string line;
    if (a.identity == "reduction") {
      const IdentityReport report = verify_reduction_identity(n);
      holds = report.equal;
      entry = to_json(report, a.verbose);
      line = to_text(report, a.verbose);
    } else if (a.identity == "coefficients") {
      const CoefficientReport report = verify_coefficient_laws(n);
      holds = report.all_hold();
      entry = to_json(report);
      line = to_text(report);
    } else {
      const AssignmentSearchResult result = noncontextual_assignments(n);
      holds = n == 1 ? result.consistent == std::vector<std::vector<int>>{{1}} : result.consistent.empty();
      entry = to_json(result);
      entry["holds"] = holds;
      line = to_text(result) + " holds=" + (holds ? "true" : "false");
    }
    all = all && holds;
    results.push_back(std::move(entry));
    text += a.identity + " " + line + "\n";
  }
  text += std::string("verified=") + (all ? "true" : "false") + "\n";
  Json doc = {{"identity", a.identity}, {"results", results}, {"verified", all}};
  return emit(out, a.common, doc, text, all ? kSuccess : kVerificationFailure);
}

// ---------------------------------------------------------------- sorkin

struct SorkinArgs {
  Common common;
  std::string input;
  bool check = false;
  double tolerance = 1e-10;
};

bool born_identities_hold(const std::map<int, double>& sorkin_values, double pairwise, double tolerance) {
  for (const auto& [k, v] : sorkin_values) {
    if (k >= 3 && std::abs(v) > tolerance) return false;
  }
  return std::abs(pairwise) <= tolerance;
}

int do_sorkin(const SorkinArgs& a, std::ostream& out) {
  std::ifstream in = open_input(a.input);
  const InterferenceReport report = hierarchy_report(read_subset_probabilities(in));
  int status = kSuccess;
  std::string text = to_text(report);
  Json doc = to_json(report);
  if (a.check) {
    const bool holds = born_identities_hold(report.sorkin_values, report.pairwise_residual, a.tolerance);
    text += std::string("holds=") + (holds ? "true" : "false") + "\n";
    doc["holds"] = holds;
    if (!holds) status = kVerificationFailure;
  }
  return emit(out, a.common, doc, text, status);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  Common common;
  std::string config;
  std::string model = "born";
  double epsilon = 0.1;
  std::string grid = "-0.01:0.01:101";
  std::string pattern;
  bool per_point = false;
  bool check = false;
  double tolerance = 1e-10;
};

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  std::ifstream in = open_input(a.config);
  const SlitConfig config = read_slit_config(in);
  const DetectorGrid grid = parse_grid(a.grid);
  Model model = Model::born();
  if (a.model == "decohered") {
    model = Model::decohered();
  } else if (a.model == "nonquantum") {
    model = Model::nonquantum(a.epsilon);
  }

  if (!a.pattern.empty()) {
    std::ofstream pattern_out(a.pattern);
    if (!pattern_out) throw UsageError("cannot write '" + a.pattern + "'");
    write_pattern(pattern_out, generate(config, grid, model));
  }
  const ScanReport scan = scan_report(config, grid, model);
  std::string text = to_text(scan, a.per_point);
  Json doc = to_json(scan, a.per_point);
  int status = kSuccess;
  if (a.check) {
    const bool holds = model.kind() == Model::Kind::decohered
                           ? scan.max_abs_decohered_residual <= a.tolerance
                           : born_identities_hold(scan.max_abs_sorkin, scan.max_abs_pairwise_residual, a.tolerance);
    text += std::string("holds=") + (holds ? "true" : "false") + "\n";
    doc["holds"] = holds;
    if (!holds) status = kVerificationFailure;
  }
  return emit(out, a.common, doc, text, status);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact multilinear algebra of slit propositions and Sorkin-hierarchy checks", "slitlogic"};
  app.require_subcommand(1);

  ExpandArgs expand;
  auto* expand_cmd = app.add_subcommand("expand", "Print a named construct in canonical form");
  expand_cmd->add_option("construct", expand.construct, "xor | upsilon | delta | exactly-one | interference")
      ->check(CLI::IsMember(kConstructs));
  expand_cmd->add_option("--n", expand.n, "Number of variables");
  expand_cmd->add_option("--xor", expand.xor_n, "Exclusive-or chain over N variables");
  expand_cmd->add_option("--upsilon", expand.upsilon_n, "Pairwise part of the chain");
  expand_cmd->add_option("--delta", expand.delta_n, "Product of (1 xor x_i x_j x_k) over triples");
  expand_cmd->add_option("--exactly-one", expand.exactly_one_n, "Exactly-one indicator");
  add_format(expand_cmd, expand.common);

  TableArgs table;
  auto* table_cmd = app.add_subcommand("table", "Truth table of a formula or construct");
  table_cmd->add_option("--formula", table.formula, "Propositional formula");
  table_cmd->add_option("--order", table.order, "Comma-separated variable order");
  table_cmd->add_option("--construct", table.construct, "xor | upsilon | delta | exactly-one")
      ->check(CLI::IsMember(kConstructs));
  table_cmd->add_option("--n", table.n, "Number of variables for --construct");
  add_format(table_cmd, table.common);

  ParseArgs parse_args;
  auto* parse_cmd = app.add_subcommand("parse", "Parse formulas, lower them, compare them");
  parse_cmd->add_option("formula", parse_args.formula, "Formula to parse");
  parse_cmd->add_flag("--to-poly", parse_args.to_poly, "Print the lowered polynomial");
  parse_cmd->add_option("--order", parse_args.order, "Comma-separated variable order for --to-poly");
  parse_cmd->add_option("--check-equiv", parse_args.check_equiv, "Two formulas to compare")->expected(2);
  add_format(parse_cmd, parse_args.common);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check identities exactly over a range of n");
  verify_cmd->add_option("--identity", verify.identity, "reduction | coefficients | ks")
      ->check(CLI::IsMember({"reduction", "coefficients", "ks"}))
      ->capture_default_str();
  verify_cmd->add_option("--n", verify.range, "n or lo..hi")->capture_default_str();
  verify_cmd->add_flag("--verbose", verify.verbose, "Include both sides of the reduction identity");
  add_format(verify_cmd, verify.common);

  SorkinArgs sorkin_args;
  auto* sorkin_cmd = app.add_subcommand("sorkin", "Interference report for a subset,P table");
  sorkin_cmd->add_option("input", sorkin_args.input, "subset,P file")->required();
  sorkin_cmd->add_flag("--check", sorkin_args.check, "Exit 1 unless I_K (K>=3) and the pairwise residual vanish");
  sorkin_cmd->add_option("--tolerance", sorkin_args.tolerance, "Absolute tolerance")->capture_default_str();
  add_format(sorkin_cmd, sorkin_args.common);

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate subset patterns over a detector grid");
  simulate_cmd->add_option("--config", simulate.config, "Slit config (JSON)")->required();
  simulate_cmd->add_option("--model", simulate.model, "born | decohered | nonquantum")
      ->check(CLI::IsMember({"born", "decohered", "nonquantum"}))
      ->capture_default_str();
  simulate_cmd->add_option("--epsilon", simulate.epsilon, "Violation strength for nonquantum")
      ->capture_default_str();
  simulate_cmd->add_option("--grid", simulate.grid, "start:stop:count")->capture_default_str();
  simulate_cmd->add_option("--pattern", simulate.pattern, "Write the x,subset,P pattern here");
  simulate_cmd->add_flag("--per-point", simulate.per_point, "Include every grid point in the report");
  simulate_cmd->add_flag("--check", simulate.check, "Exit 1 unless the model's identities hold");
  simulate_cmd->add_option("--tolerance", simulate.tolerance, "Absolute tolerance")->capture_default_str();
  add_format(simulate_cmd, simulate.common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (expand_cmd->parsed()) return do_expand(expand, out);
    if (table_cmd->parsed()) return do_table(table, out);
    if (parse_cmd->parsed()) return do_parse(parse_args, out);
    if (verify_cmd->parsed()) return do_verify(verify, out);
    if (sorkin_cmd->parsed()) return do_sorkin(sorkin_args, out);
    if (simulate_cmd->parsed()) return do_simulate(simulate, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace slitlogic::cli
