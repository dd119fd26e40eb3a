#include "slitlogic/poly.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include "slitlogic/error.hpp"

namespace slitlogic {
namespace {

void check_nvars(std::size_t nvars) {
  if (nvars > kMaxVariables) {
    throw ArgumentError("polynomial declares " + std::to_string(nvars) +
                        " variables; at most " + std::to_string(kMaxVariables) + " are supported");
  }
}

void check_same_nvars(const MultilinearPoly& p, const MultilinearPoly& q, const char* op) {
  if (p.nvars() != q.nvars()) {
    throw ArgumentError(std::string(op) + ": variable-count mismatch (" + std::to_string(p.nvars()) +
                        " vs " + std::to_string(q.nvars()) + ")");
  }
}

void check_cap(std::size_t nvars, std::size_t cap, const char* op) {
  if (nvars > cap || nvars > kMaxVariables) {
    throw ArgumentError(std::string(op) + ": " + std::to_string(nvars) +
                        " variables exceeds the symbolic cap of " + std::to_string(cap));
  }
}

bool by_monomial(const Term& a, const Term& b) { return a.monomial < b.monomial; }

}  // namespace

Monomial Monomial::of(std::initializer_list<std::size_t> vars) {
  std::uint32_t bits = 0;
  for (std::size_t v : vars) {
    if (v < 1 || v > kMaxVariables) {
      throw ArgumentError("variable index " + std::to_string(v) + " out of range");
    }
    bits |= std::uint32_t{1} << (v - 1);
  }
  return Monomial{bits};
}

MultilinearPoly::MultilinearPoly(std::size_t nvars) : nvars_(nvars) { check_nvars(nvars); }

MultilinearPoly::MultilinearPoly(Canonical, std::size_t nvars, std::vector<Term> terms)
    : nvars_(nvars), terms_(std::move(terms)) {}

MultilinearPoly MultilinearPoly::constant(std::size_t nvars, const Integer& value) {
  return monomial(nvars, Monomial::one(), value);
}

MultilinearPoly MultilinearPoly::variable(std::size_t nvars, std::size_t var) {
  if (var < 1 || var > nvars) {
    throw ArgumentError("variable x" + std::to_string(var) + " outside 1.." + std::to_string(nvars));
  }
  return monomial(nvars, Monomial{std::uint32_t{1} << (var - 1)}, 1);
}

MultilinearPoly MultilinearPoly::monomial(std::size_t nvars, Monomial m, const Integer& coefficient) {
  std::vector<Term> terms;
  terms.push_back({m, coefficient});
  return from_terms(nvars, std::move(terms));
}

MultilinearPoly MultilinearPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  check_nvars(nvars);
  for (const Term& t : terms) {
    if (t.monomial.highest_variable() > nvars) {
      throw ArgumentError("monomial " + to_string(t.monomial) + " uses a variable beyond x" +
                          std::to_string(nvars));
    }
  }
  std::sort(terms.begin(), terms.end(), by_monomial);
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (Term& t : terms) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coefficient += t.coefficient;
    } else {
      if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coefficient == 0) merged.pop_back();
  return MultilinearPoly(Canonical{}, nvars, std::move(merged));
}

int MultilinearPoly::degree() const noexcept {
  return terms_.empty() ? -1 : terms_.back().monomial.degree();
}

Integer MultilinearPoly::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{m, 0}, by_monomial);
  if (it != terms_.end() && it->monomial == m) return it->coefficient;
  return 0;
}

TruthTable::TruthTable(std::size_t nvars, std::vector<Integer> values)
    : nvars_(nvars), values_(std::move(values)) {
  check_nvars(nvars);
  if (values_.size() != (std::size_t{1} << nvars)) {
    throw ArgumentError("truth table over " + std::to_string(nvars) + " variables needs " +
                        std::to_string(std::size_t{1} << nvars) + " entries, got " +
                        std::to_string(values_.size()));
  }
}

TruthTable TruthTable::from_values(std::vector<Integer> values) {
  if (!std::has_single_bit(values.size())) {
    throw ArgumentError("truth table length " + std::to_string(values.size()) +
                        " is not a power of two");
  }
  const auto nvars = static_cast<std::size_t>(std::countr_zero(values.size()));
  return TruthTable(nvars, std::move(values));
}

bool TruthTable::is_indicator() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Integer& v) { return v == 0 || v == 1; });
}

MultilinearPoly add(const MultilinearPoly& p, const MultilinearPoly& q) {
  check_same_nvars(p, q, "add");
  std::vector<Term> out;
  out.reserve(p.size() + q.size());
  auto a = p.terms().begin();
  auto b = q.terms().begin();
  const auto a_end = p.terms().end();
  const auto b_end = q.terms().end();
  while (a != a_end || b != b_end) {
    if (b == b_end || (a != a_end && a->monomial < b->monomial)) {
      out.push_back(*a++);
    } else if (a == a_end || b->monomial < a->monomial) {
      out.push_back(*b++);
    } else {
      Integer c = a->coefficient + b->coefficient;
      if (c != 0) out.push_back({a->monomial, std::move(c)});
      ++a;
      ++b;
    }
  }
  return MultilinearPoly(MultilinearPoly::Canonical{}, p.nvars(), std::move(out));
}

MultilinearPoly subtract(const MultilinearPoly& p, const MultilinearPoly& q) {
  return add(p, scale(q, -1));
}

MultilinearPoly scale(const MultilinearPoly& p, const Integer& k) {
  if (k == 0) return MultilinearPoly(p.nvars());
  std::vector<Term> out(p.terms().begin(), p.terms().end());
  for (Term& t : out) t.coefficient *= k;
  return MultilinearPoly(MultilinearPoly::Canonical{}, p.nvars(), std::move(out));
}

MultilinearPoly multiply(const MultilinearPoly& p, const MultilinearPoly& q) {
  check_same_nvars(p, q, "multiply");
  const std::size_t n = p.nvars();
  if (p.is_zero() || q.is_zero()) return MultilinearPoly(n);

  const std::size_t products = p.size() * q.size();
  std::vector<Term> out;

  // Dense accumulation once the product count is comparable to 2^n.
  if (n <= 20 && products >= ((std::size_t{1} << n) >> 3)) {
    std::vector<Integer> dense(std::size_t{1} << n);
    for (const Term& a : p.terms()) {
      for (const Term& b : q.terms()) {
        dense[(a.monomial * b.monomial).bits()] += a.coefficient * b.coefficient;
      }
    }
    for (std::size_t m = 0; m < dense.size(); ++m) {
      if (dense[m] != 0) out.push_back({Monomial{static_cast<std::uint32_t>(m)}, std::move(dense[m])});
    }
  } else {
    std::unordered_map<std::uint32_t, Integer> acc;
    acc.reserve(products);
    for (const Term& a : p.terms()) {
      for (const Term& b : q.terms()) {
        acc[(a.monomial * b.monomial).bits()] += a.coefficient * b.coefficient;
      }
    }
    out.reserve(acc.size());
    for (auto& [bits, c] : acc) {
      if (c != 0) out.push_back({Monomial{bits}, std::move(c)});
    }
  }
  std::sort(out.begin(), out.end(), by_monomial);
  return MultilinearPoly(MultilinearPoly::Canonical{}, n, std::move(out));
}

MultilinearPoly xor_op(const MultilinearPoly& p, const MultilinearPoly& q, XorValidation validation) {
  check_same_nvars(p, q, "xor_op");
  if (validation == XorValidation::on) {
    if (!to_truth_table(p, kDefaultSymbolicCap).is_indicator() ||
        !to_truth_table(q, kDefaultSymbolicCap).is_indicator()) {
      throw ArgumentError("xor_op: operand is not a 0/1-valued indicator polynomial");
    }
  }
  return add(add(p, q), scale(multiply(p, q), -2));
}

MultilinearPoly truncate_degree(const MultilinearPoly& p, int d) {
  std::vector<Term> out;
  for (const Term& t : p.terms()) {
    if (t.monomial.degree() <= d) out.push_back(t);
  }
  return MultilinearPoly(MultilinearPoly::Canonical{}, p.nvars(), std::move(out));
}

MultilinearPoly degree_part(const MultilinearPoly& p, int d) {
  std::vector<Term> out;
  for (const Term& t : p.terms()) {
    if (t.monomial.degree() == d) out.push_back(t);
  }
  return MultilinearPoly(MultilinearPoly::Canonical{}, p.nvars(), std::move(out));
}

Integer evaluate(const MultilinearPoly& p, std::span<const int> assignment) {
  if (assignment.size() != p.nvars()) {
    throw ArgumentError("evaluate: assignment has length " + std::to_string(assignment.size()) +
                        ", polynomial has " + std::to_string(p.nvars()) + " variables");
  }
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != 0 && assignment[i] != 1) {
      throw ArgumentError("evaluate: entry " + std::to_string(i + 1) + " is not 0 or 1");
    }
    if (assignment[i] == 1) mask |= std::uint32_t{1} << i;
  }
  return evaluate_at(p, mask);
}

Integer evaluate_at(const MultilinearPoly& p, std::uint32_t assignment) {
  Integer sum = 0;
  for (const Term& t : p.terms()) {
    if (t.monomial.divides(assignment)) sum += t.coefficient;
  }
  return sum;
}

TruthTable to_truth_table(const MultilinearPoly& p, std::size_t cap) {
  const std::size_t n = p.nvars();
  check_cap(n, cap, "to_truth_table");
  std::vector<Integer> values(std::size_t{1} << n);
  for (const Term& t : p.terms()) values[t.monomial.bits()] = t.coefficient;
  // Zeta transform: value(m) = sum of coefficients over submasks of m.
  for (std::size_t bit = 1; bit < values.size(); bit <<= 1) {
    for (std::size_t m = 0; m < values.size(); ++m) {
      if (m & bit) values[m] += values[m ^ bit];
    }
  }
  return TruthTable(n, std::move(values));
}

MultilinearPoly from_truth_table(const TruthTable& t, std::size_t cap) {
  const std::size_t n = t.nvars();
  check_cap(n, cap, "from_truth_table");
  std::vector<Integer> coeffs(t.values().begin(), t.values().end());
  for (std::size_t bit = 1; bit < coeffs.size(); bit <<= 1) {
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      if (m & bit) coeffs[m] -= coeffs[m ^ bit];
    }
  }
  std::vector<Term> out;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (coeffs[m] != 0) out.push_back({Monomial{static_cast<std::uint32_t>(m)}, std::move(coeffs[m])});
  }
  std::sort(out.begin(), out.end(), by_monomial);
  return MultilinearPoly(MultilinearPoly::Canonical{}, n, std::move(out));
}

std::string to_string(Monomial m) {
  if (m.is_one()) return "1";
  std::string s;
  for (std::size_t v = 1; v <= m.highest_variable(); ++v) {
    if (m.contains(v)) s += "x" + std::to_string(v);
  }
  return s;
}

std::string to_string(const MultilinearPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const Term& t : p.terms()) {
    const bool negative = t.coefficient < 0;
    const Integer magnitude = negative ? Integer(-t.coefficient) : t.coefficient;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (t.monomial.is_one()) {
      s += magnitude.str();
    } else {
      if (magnitude != 1) s += magnitude.str() + "*";
      s += to_string(t.monomial);
    }
  }
  return s;
}

}  // namespace slitlogic
