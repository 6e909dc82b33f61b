#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "cf/coefficient.hpp"

namespace cf {

// Exponent vector of a Laurent monomial; lexicographic order is the term order.
using Exponents = boost::container::small_vector<std::int32_t, 8>;

// Componentwise sum and difference with overflow checks (std::overflow_error).
Exponents add_exponents(const Exponents& a, const Exponents& b);
Exponents sub_exponents(const Exponents& a, const Exponents& b);
Exponents scale_exponents(const Exponents& a, std::int64_t factor);
Exponents unit_exponents(std::size_t nvars, std::size_t index, std::int32_t power = 1);

struct Term {
  Exponents exponents;
  Coefficient coeff;

  bool operator==(const Term&) const = default;
};

// Resource ceilings shared by every potentially unbounded computation.
struct Limits {
  std::size_t max_terms = 1'000'000;
  std::size_t max_seeds = 100'000;
  std::size_t max_products = 10'000'000;
};

// Sparse Laurent polynomial over a Field. Terms are stored in strictly
// descending lexicographic exponent order with no zero coefficients, so
// structural equality is mathematical equality.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static LaurentPoly constant(Field field, std::size_t nvars, const Coefficient& c);
  static LaurentPoly constant(Field field, std::size_t nvars, long c) {
    return constant(field, nvars, Coefficient(field, c));
  }
  static LaurentPoly monomial(Field field, Exponents exponents, const Coefficient& c);
  static LaurentPoly monomial(Field field, Exponents exponents) {
    return monomial(field, std::move(exponents), Coefficient::one(field));
  }
  static LaurentPoly variable(Field field, std::size_t nvars, std::size_t index,
                              std::int32_t power = 1);
  // Sorts, merges equal exponents and drops zeros.
  static LaurentPoly from_terms(Field field, std::size_t nvars, std::vector<Term> terms);
  // Caller guarantees strictly descending order and nonzero coefficients.
  static LaurentPoly from_sorted_terms(Field field, std::size_t nvars, std::vector<Term> terms);

  Field field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  // No negative exponents.
  bool is_polynomial() const;
  std::span<const Term> terms() const { return terms_; }
  const Term& leading_term() const { return terms_.front(); }
  // Coefficient of the given monomial (zero when absent).
  Coefficient coefficient(const Exponents& exponents) const;

  // Componentwise minimum / maximum exponent over the support; empty for zero.
  Exponents min_exponents() const;
  Exponents max_exponents() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly scaled(const Coefficient& c) const;
  // Multiplication by the monomial x^shift.
  LaurentPoly shifted(const Exponents& shift) const;

  // Maps rational coefficients into F_p (used to reduce Q-data mod p).
  LaurentPoly to_field(Field target) const;

  bool operator==(const LaurentPoly& other) const;
  // Deterministic total order used for canonical listings.
  std::strong_ordering operator<=>(const LaurentPoly& other) const;

 private:
  void check_compatible(const LaurentPoly& other) const;
  LaurentPoly combine(const LaurentPoly& other, bool subtract) const;

  Field field_;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// Parallel product kernel (OpenMP over chunks of the left operand, each chunk
// merged by a heap over rows, chunk results merged in fixed order).
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly pow(const LaurentPoly& base, std::uint64_t exponent);

namespace serial {
// Reference kernels: ordered-map accumulation, single thread.
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly pow(const LaurentPoly& base, std::uint64_t exponent);
}  // namespace serial

// Exact quotient a / b in the Laurent ring by leading-term elimination.
// Quotient terms are confined to the box [min(a) - min(b), max(a) - max(b)]
// (Newton polytope of a quotient), which bounds the search; the remainder is
// also capped at limits.max_terms. Throws NotDivisible, BudgetExceeded.
LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b, const Limits& limits = {});
std::optional<LaurentPoly> try_exact_divide(const LaurentPoly& a, const LaurentPoly& b,
                                            const Limits& limits = {});

LaurentPoly partial_derivative(const LaurentPoly& f, std::size_t index);

// Unreduced fraction of Laurent polynomials; no gcd is ever taken.
class RationalExpr {
 public:
  RationalExpr() = default;
  RationalExpr(LaurentPoly numerator);  // NOLINT: implicit promotion is intended
  RationalExpr(LaurentPoly numerator, LaurentPoly denominator);

  const LaurentPoly& numerator() const { return num_; }
  const LaurentPoly& denominator() const { return den_; }
  Field field() const { return num_.field(); }
  std::size_t nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }

  RationalExpr& operator+=(const RationalExpr& other);
  RationalExpr& operator-=(const RationalExpr& other);
  RationalExpr& operator*=(const RationalExpr& other);
  RationalExpr& operator/=(const RationalExpr& other);
  friend RationalExpr operator+(RationalExpr a, const RationalExpr& b) { return a += b; }
  friend RationalExpr operator-(RationalExpr a, const RationalExpr& b) { return a -= b; }
  friend RationalExpr operator*(RationalExpr a, const RationalExpr& b) { return a *= b; }
  friend RationalExpr operator/(RationalExpr a, const RationalExpr& b) { return a /= b; }

  RationalExpr to_field(Field target) const;

  // Equality of the represented field elements (cross multiplication).
  bool equals(const RationalExpr& other) const;
  // The Laurent polynomial this fraction equals, if any.
  std::optional<LaurentPoly> to_laurent(const Limits& limits = {}) const;

 private:
  LaurentPoly num_;
  LaurentPoly den_;
};

}  // namespace cf
