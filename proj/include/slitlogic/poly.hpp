#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace slitlogic {

using Integer = boost::multiprecision::cpp_int;

/// Width of the monomial bit pattern; no polynomial may declare more variables.
inline constexpr std::size_t kMaxVariables = 31;

/// Default ceiling on N for operations whose cost grows as 2^N.
inline constexpr std::size_t kDefaultSymbolicCap = 16;

/// A product of distinct variables. Bit i-1 set <=> x_i present; the empty
/// pattern is the constant monomial 1.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint32_t bits) : bits_(bits) {}

  /// Builds a monomial from 1-based variable indices. Repeats collapse (x*x = x).
  static Monomial of(std::initializer_list<std::size_t> vars);
  static constexpr Monomial one() noexcept { return Monomial{}; }

  constexpr std::uint32_t bits() const noexcept { return bits_; }
  constexpr int degree() const noexcept { return std::popcount(bits_); }
  constexpr bool is_one() const noexcept { return bits_ == 0; }
  constexpr bool contains(std::size_t var) const noexcept {
    return var >= 1 && var <= kMaxVariables && ((bits_ >> (var - 1)) & 1u) != 0;
  }
  /// Largest variable index present, 0 for the constant monomial.
  constexpr std::size_t highest_variable() const noexcept {
    return static_cast<std::size_t>(std::bit_width(bits_));
  }
  /// True iff every variable of this monomial is set in `mask`.
  constexpr bool divides(std::uint32_t mask) const noexcept { return (bits_ & ~mask) == 0; }

  /// Product under idempotent reduction is set union.
  friend constexpr Monomial operator*(Monomial a, Monomial b) noexcept {
    return Monomial{a.bits_ | b.bits_};
  }
  friend constexpr bool operator==(Monomial, Monomial) = default;

  /// Canonical term order: by degree, then by bit pattern.
  friend constexpr std::strong_ordering operator<=>(Monomial a, Monomial b) noexcept {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint32_t bits_ = 0;
};

class TruthTable;

struct Term {
  Monomial monomial;
  Integer coefficient;

  friend bool operator==(const Term& a, const Term& b) {
    return a.monomial == b.monomial && a.coefficient == b.coefficient;
  }
};

/// Integer-coefficient multilinear polynomial over 0/1 variables x_1..x_nvars.
///
/// Terms are kept in canonical order with no zero coefficients, so two
/// polynomials over the same variables are equal iff their term lists match.
/// Values are immutable once constructed.
class MultilinearPoly {
 public:
  /// The zero polynomial.
  explicit MultilinearPoly(std::size_t nvars = 0);

  static MultilinearPoly constant(std::size_t nvars, const Integer& value);
  static MultilinearPoly variable(std::size_t nvars, std::size_t var);
  static MultilinearPoly monomial(std::size_t nvars, Monomial m, const Integer& coefficient = 1);

  /// Canonicalizes an arbitrary term list: duplicates are summed, zeros dropped.
  static MultilinearPoly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Highest monomial degree, -1 for the zero polynomial.
  int degree() const noexcept;
  Integer coefficient(Monomial m) const;

  friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  struct Canonical {};
  MultilinearPoly(Canonical, std::size_t nvars, std::vector<Term> terms);

  friend MultilinearPoly add(const MultilinearPoly&, const MultilinearPoly&);
  friend MultilinearPoly scale(const MultilinearPoly&, const Integer&);
  friend MultilinearPoly multiply(const MultilinearPoly&, const MultilinearPoly&);
  friend MultilinearPoly truncate_degree(const MultilinearPoly&, int);
  friend MultilinearPoly degree_part(const MultilinearPoly&, int);
  friend MultilinearPoly from_truth_table(const TruthTable&, std::size_t);

  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// Values of a function on all 2^nvars assignments. Entry m is the value at the
/// assignment where x_i = bit i-1 of m.
class TruthTable {
 public:
  TruthTable(std::size_t nvars, std::vector<Integer> values);
  /// Infers nvars from the length, which must be a power of two.
  static TruthTable from_values(std::vector<Integer> values);

  std::size_t nvars() const noexcept { return nvars_; }
  std::span<const Integer> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Integer& operator[](std::uint32_t assignment) const { return values_.at(assignment); }
  /// True iff every value is 0 or 1.
  bool is_indicator() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::size_t nvars_;
  std::vector<Integer> values_;
};

enum class XorValidation { off, on };

MultilinearPoly add(const MultilinearPoly& p, const MultilinearPoly& q);
MultilinearPoly subtract(const MultilinearPoly& p, const MultilinearPoly& q);
MultilinearPoly scale(const MultilinearPoly& p, const Integer& k);
/// Distributive product with x_i^2 reduced to x_i.
MultilinearPoly multiply(const MultilinearPoly& p, const MultilinearPoly& q);
/// p + q - 2pq. With validation on, both operands must be 0/1-valued.
MultilinearPoly xor_op(const MultilinearPoly& p, const MultilinearPoly& q,
                       XorValidation validation = XorValidation::off);

/// Keeps the monomials of degree <= d.
MultilinearPoly truncate_degree(const MultilinearPoly& p, int d);
/// Keeps the monomials of degree exactly d.
MultilinearPoly degree_part(const MultilinearPoly& p, int d);

/// Exact value at an assignment given as a 0/1 vector of length nvars.
Integer evaluate(const MultilinearPoly& p, std::span<const int> assignment);
/// Exact value at the assignment encoded as a bit pattern.
Integer evaluate_at(const MultilinearPoly& p, std::uint32_t assignment);

TruthTable to_truth_table(const MultilinearPoly& p, std::size_t cap = kDefaultSymbolicCap);
/// The unique multilinear interpolant of `t` (Moebius inversion on the subset lattice).
MultilinearPoly from_truth_table(const TruthTable& t, std::size_t cap = kDefaultSymbolicCap);

/// Deterministic rendering, e.g. "x1 + x2 - 2*x1x2"; the zero polynomial is "0".
std::string to_string(const MultilinearPoly& p);
std::string to_string(Monomial m);

inline MultilinearPoly operator+(const MultilinearPoly& p, const MultilinearPoly& q) { return add(p, q); }
inline MultilinearPoly operator-(const MultilinearPoly& p, const MultilinearPoly& q) { return subtract(p, q); }
inline MultilinearPoly operator*(const MultilinearPoly& p, const MultilinearPoly& q) { return multiply(p, q); }

}  // namespace slitlogic
