#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "slitlogic/poly.hpp"

namespace slitlogic {

/// x_1 xor ... xor x_n as a multilinear polynomial, 1 <= n <= cap.
MultilinearPoly xor_chain(std::size_t n, std::size_t cap = kDefaultSymbolicCap);

/// Sum of the pairwise exclusive-or propositions minus (n-2) times the
/// singles; reduces to sum x_i - 2 sum_{i<j} x_i x_j. Requires 2 <= n <= cap.
MultilinearPoly upsilon(std::size_t n, std::size_t cap = kDefaultSymbolicCap);

/// Product of (1 xor x_i x_j x_k) over all triples; the constant 1 for n < 3.
MultilinearPoly delta(std::size_t n, std::size_t cap = kDefaultSymbolicCap);

/// xor_chain(n) * delta(n): the indicator that exactly one variable is 1.
MultilinearPoly exactly_one(std::size_t n, std::size_t cap = kDefaultSymbolicCap);

struct VanishedDegree {
  int degree = 0;
  std::size_t monomials = 0;

  friend bool operator==(const VanishedDegree&, const VanishedDegree&) = default;
};

/// Outcome of checking xor_chain(n) * delta(n) == upsilon(n) * delta(n).
struct IdentityReport {
  std::size_t n = 0;
  MultilinearPoly lhs;
  MultilinearPoly rhs;
  bool equal = false;
  /// Higher-order groups of xor_chain(n) (degrees 3..n) annihilated by delta(n).
  std::vector<VanishedDegree> vanished_terms;
};

/// Builds both sides of the suppression identity from scratch and compares
/// their canonical forms. Requires 2 <= n <= cap.
IdentityReport verify_reduction_identity(std::size_t n, std::size_t cap = kDefaultSymbolicCap);

/// xor_chain(n) - upsilon(n) split by degree (3..n). Requires 3 <= n <= cap.
std::map<int, MultilinearPoly> interference_terms(std::size_t n,
                                                  std::size_t cap = kDefaultSymbolicCap);

struct AssignmentSearchResult {
  std::size_t n = 0;
  /// Fixed 0/1 assignments (entry i-1 is x_i) under which every nonempty set
  /// of open slits has exactly one true variable.
  std::vector<std::vector<int>> consistent;
};

/// Exhaustive search over all 2^n assignments and 2^n - 1 blocking contexts.
AssignmentSearchResult noncontextual_assignments(std::size_t n,
                                                 std::size_t cap = kDefaultSymbolicCap);

struct LawCheck {
  std::string name;
  bool holds = false;
};

/// Closed-form and interpolation checks for the named constructs at one n.
struct CoefficientReport {
  std::size_t n = 0;
  std::vector<LawCheck> checks;

  bool all_hold() const;
};

/// Compares xor_chain, exactly_one, delta and upsilon against the Moebius
/// interpolants of their weight-based truth tables and against the closed
/// coefficient formulas. Requires 2 <= n <= cap.
CoefficientReport verify_coefficient_laws(std::size_t n, std::size_t cap = kDefaultSymbolicCap);

/// One-line key=value rendering; polynomials are included on request.
std::string to_text(const IdentityReport& report, bool with_polynomials = false);
std::string to_text(const AssignmentSearchResult& result);
std::string to_text(const CoefficientReport& report);

nlohmann::ordered_json to_json(const IdentityReport& report, bool with_polynomials = true);
nlohmann::ordered_json to_json(const AssignmentSearchResult& result);
nlohmann::ordered_json to_json(const CoefficientReport& report);

}  // namespace slitlogic
