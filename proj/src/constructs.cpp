#include "slitlogic/constructs.hpp"

#include <bit>
#include <cstdint>

#include "slitlogic/error.hpp"

namespace slitlogic {
namespace {

void check_range(std::size_t n, std::size_t lo, std::size_t cap, const char* op) {
  if (cap > kMaxVariables) {
    throw ArgumentError(std::string(op) + ": cap " + std::to_string(cap) + " exceeds " +
                        std::to_string(kMaxVariables));
  }
  if (n < lo || n > cap) {
    throw ArgumentError(std::string(op) + ": n = " + std::to_string(n) + " outside " +
                        std::to_string(lo) + ".." + std::to_string(cap));
  }
}

MultilinearPoly var(std::size_t n, std::size_t i) { return MultilinearPoly::variable(n, i); }

// Indicator of a weight predicate, interpolated from its truth table.
template <typename Pred>
MultilinearPoly weight_interpolant(std::size_t n, Pred pred) {
  std::vector<Integer> values(std::size_t{1} << n);
  for (std::size_t m = 0; m < values.size(); ++m) {
    values[m] = pred(std::popcount(m)) ? 1 : 0;
  }
  return from_truth_table(TruthTable(n, std::move(values)), n);
}

template <typename Formula>
bool coefficients_follow(const MultilinearPoly& p, Formula formula) {
  const std::size_t n = p.nvars();
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m) {
    if (p.coefficient(Monomial{m}) != formula(std::popcount(m))) return false;
  }
  return p.coefficient(Monomial::one()) == 0;
}

Integer pow_int(int base, int exp) {
  Integer r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

MultilinearPoly xor_chain(std::size_t n, std::size_t cap) {
  check_range(n, 1, cap, "xor_chain");
  MultilinearPoly chain = var(n, 1);
  for (std::size_t i = 2; i <= n; ++i) chain = xor_op(chain, var(n, i));
  return chain;
}

MultilinearPoly upsilon(std::size_t n, std::size_t cap) {
  check_range(n, 2, cap, "upsilon");
  MultilinearPoly pairs(n);
  MultilinearPoly singles(n);
  for (std::size_t i = 1; i <= n; ++i) {
    singles = add(singles, var(n, i));
    for (std::size_t j = i + 1; j <= n; ++j) pairs = add(pairs, xor_op(var(n, i), var(n, j)));
  }
  return subtract(pairs, scale(singles, static_cast<long>(n) - 2));
}

MultilinearPoly delta(std::size_t n, std::size_t cap) {
  check_range(n, 1, cap, "delta");
  const auto one = MultilinearPoly::constant(n, 1);
  MultilinearPoly product = one;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      for (std::size_t k = j + 1; k <= n; ++k) {
        const auto triple = MultilinearPoly::monomial(n, Monomial::of({i, j, k}));
        product = multiply(product, xor_op(one, triple));
      }
    }
  }
  return product;
}

MultilinearPoly exactly_one(std::size_t n, std::size_t cap) {
  check_range(n, 1, cap, "exactly_one");
  return multiply(xor_chain(n, cap), delta(n, cap));
}

IdentityReport verify_reduction_identity(std::size_t n, std::size_t cap) {
  check_range(n, 2, cap, "verify_reduction_identity");
  IdentityReport report;
  report.n = n;
  report.lhs = multiply(xor_chain(n, cap), delta(n, cap));
  report.rhs = multiply(upsilon(n, cap), delta(n, cap));
  report.equal = report.lhs == report.rhs;
  if (n >= 3) {
    for (const auto& [degree, part] : interference_terms(n, cap)) {
      report.vanished_terms.push_back({degree, part.size()});
    }
  }
  return report;
}

std::map<int, MultilinearPoly> interference_terms(std::size_t n, std::size_t cap) {
  check_range(n, 3, cap, "interference_terms");
  const MultilinearPoly rest = subtract(xor_chain(n, cap), upsilon(n, cap));
  std::map<int, MultilinearPoly> groups;
  for (int k = 0; k <= static_cast<int>(n); ++k) {
    MultilinearPoly part = degree_part(rest, k);
    if (!part.is_zero()) groups.emplace(k, std::move(part));
  }
  return groups;
}

AssignmentSearchResult noncontextual_assignments(std::size_t n, std::size_t cap) {
  check_range(n, 1, cap, "noncontextual_assignments");
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  AssignmentSearchResult result;
  result.n = n;
  for (std::uint32_t values = 0; values <= full; ++values) {
    bool consistent = true;
    for (std::uint32_t open = 1; open <= full && consistent; ++open) {
      consistent = std::popcount(values & open) == 1;
    }
    if (!consistent) continue;
    std::vector<int> assignment(n);
    for (std::size_t i = 0; i < n; ++i) assignment[i] = static_cast<int>((values >> i) & 1u);
    result.consistent.push_back(std::move(assignment));
  }
  return result;
}

bool CoefficientReport::all_hold() const {
  for (const LawCheck& c : checks) {
    if (!c.holds) return false;
  }
  return true;
}

CoefficientReport verify_coefficient_laws(std::size_t n, std::size_t cap) {
  check_range(n, 2, cap, "verify_coefficient_laws");
  const MultilinearPoly chain = xor_chain(n, cap);
  const MultilinearPoly one_hot = exactly_one(n, cap);
  const MultilinearPoly ups = upsilon(n, cap);

  CoefficientReport report;
  report.n = n;
  auto check = [&report](std::string name, bool holds) {
    report.checks.push_back({std::move(name), holds});
  };

  check("xor_chain_is_parity", chain == weight_interpolant(n, [](int w) { return w % 2 == 1; }));
  check("xor_chain_coefficients",
        coefficients_follow(chain, [](int k) { return pow_int(-2, k - 1); }));
  check("exactly_one_is_weight_one", one_hot == weight_interpolant(n, [](int w) { return w == 1; }));
  check("exactly_one_coefficients", coefficients_follow(one_hot, [](int k) {
          return Integer((k % 2 == 1) ? k : -k);
        }));
  check("delta_is_weight_at_most_two",
        delta(n, cap) == weight_interpolant(n, [](int w) { return w <= 2; }));
  check("upsilon_is_truncated_chain", ups == truncate_degree(chain, 2));
  if (n >= 3) {
    MultilinearPoly closure = ups;
    for (const auto& [degree, part] : interference_terms(n, cap)) closure = add(closure, part);
    check("decomposition_closure", closure == chain);
  }
  return report;
}

std::string to_text(const IdentityReport& report, bool with_polynomials) {
  std::string s = "n=" + std::to_string(report.n) + " equal=" + (report.equal ? "true" : "false") +
                  " vanished_terms=";
  if (report.vanished_terms.empty()) s += "none";
  for (std::size_t i = 0; i < report.vanished_terms.size(); ++i) {
    if (i != 0) s += ",";
    s += std::to_string(report.vanished_terms[i].degree) + ":" +
         std::to_string(report.vanished_terms[i].monomials);
  }
  s += " lhs_terms=" + std::to_string(report.lhs.size()) +
       " rhs_terms=" + std::to_string(report.rhs.size());
  if (with_polynomials) {
    s += " lhs=" + to_string(report.lhs) + " rhs=" + to_string(report.rhs);
  }
  return s;
}

std::string to_text(const AssignmentSearchResult& result) {
  std::string s = "n=" + std::to_string(result.n) +
                  " consistent_count=" + std::to_string(result.consistent.size()) + " consistent=";
  if (result.consistent.empty()) s += "none";
  for (std::size_t i = 0; i < result.consistent.size(); ++i) {
    if (i != 0) s += ",";
    s += "(";
    for (std::size_t j = 0; j < result.consistent[i].size(); ++j) {
      if (j != 0) s += " ";
      s += std::to_string(result.consistent[i][j]);
    }
    s += ")";
  }
  return s;
}

std::string to_text(const CoefficientReport& report) {
  std::string s = "n=" + std::to_string(report.n) + " holds=" + (report.all_hold() ? "true" : "false");
  for (const LawCheck& c : report.checks) s += " " + c.name + "=" + (c.holds ? "true" : "false");
  return s;
}

nlohmann::ordered_json to_json(const IdentityReport& report, bool with_polynomials) {
  nlohmann::ordered_json vanished = nlohmann::ordered_json::array();
  for (const VanishedDegree& v : report.vanished_terms) {
    vanished.push_back({{"degree", v.degree}, {"monomials", v.monomials}});
  }
  nlohmann::ordered_json j = {{"n", report.n},
                      {"equal", report.equal},
                      {"vanished_terms", vanished},
                      {"lhs_terms", report.lhs.size()},
                      {"rhs_terms", report.rhs.size()}};
  if (with_polynomials) {
    j["lhs"] = to_string(report.lhs);
    j["rhs"] = to_string(report.rhs);
  }
  return j;
}

nlohmann::ordered_json to_json(const AssignmentSearchResult& result) {
  return {{"n", result.n}, {"consistent", result.consistent}};
}

nlohmann::ordered_json to_json(const CoefficientReport& report) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::object();
  for (const LawCheck& c : report.checks) checks[c.name] = c.holds;
  return {{"n", report.n}, {"holds", report.all_hold()}, {"checks", checks}};
}

}  // namespace slitlogic
