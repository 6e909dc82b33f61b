#include "cf/laurent.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "cf/error.hpp"

namespace cf {

namespace {

std::int32_t checked_narrow(std::int64_t v) {
  if (v < std::numeric_limits<std::int32_t>::min() ||
      v > std::numeric_limits<std::int32_t>::max()) {
    throw std::overflow_error("exponent overflow");
  }
  return static_cast<std::int32_t>(v);
}

void check_lengths(const Exponents& a, const Exponents& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent vectors differ in length");
}

bool descending(const Term& x, const Term& y) { return x.exponents > y.exponents; }

}  // namespace

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  check_lengths(a, b);
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = checked_narrow(std::int64_t{a[i]} + b[i]);
  }
  return r;
}

Exponents sub_exponents(const Exponents& a, const Exponents& b) {
  check_lengths(a, b);
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = checked_narrow(std::int64_t{a[i]} - b[i]);
  }
  return r;
}

Exponents scale_exponents(const Exponents& a, std::int64_t factor) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t v = 0;
    if (__builtin_mul_overflow(std::int64_t{a[i]}, factor, &v)) {
      throw std::overflow_error("exponent overflow");
    }
    r[i] = checked_narrow(v);
  }
  return r;
}

Exponents unit_exponents(std::size_t nvars, std::size_t index, std::int32_t power) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponents r(nvars, 0);
  r[index] = power;
  return r;
}

LaurentPoly LaurentPoly::constant(Field field, std::size_t nvars, const Coefficient& c) {
  return monomial(field, Exponents(nvars, 0), c.to_field(field));
}

LaurentPoly LaurentPoly::monomial(Field field, Exponents exponents, const Coefficient& c) {
  LaurentPoly p(field, exponents.size());
  if (c.field() != field) throw FieldMismatch("monomial coefficient field mismatch");
  if (!c.is_zero()) p.terms_.push_back(Term{std::move(exponents), c});
  return p;
}

LaurentPoly LaurentPoly::variable(Field field, std::size_t nvars, std::size_t index,
                                  std::int32_t power) {
  return monomial(field, unit_exponents(nvars, index, power));
}

LaurentPoly LaurentPoly::from_terms(Field field, std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.exponents.size() != nvars) throw std::invalid_argument("term arity mismatch");
    if (t.coeff.field() != field) throw FieldMismatch("term coefficient field mismatch");
  }
  std::stable_sort(terms.begin(), terms.end(), descending);
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().exponents == t.exponents) {
      merged.back().coeff += t.coeff;
    } else {
      if (!merged.empty() && merged.back().coeff.is_zero()) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coeff.is_zero()) merged.pop_back();
  return from_sorted_terms(field, nvars, std::move(merged));
}

LaurentPoly LaurentPoly::from_sorted_terms(Field field, std::size_t nvars,
                                           std::vector<Term> terms) {
  LaurentPoly p(field, nvars);
  p.terms_ = std::move(terms);
  return p;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].coeff.is_one() &&
         std::all_of(terms_[0].exponents.begin(), terms_[0].exponents.end(),
                     [](std::int32_t e) { return e == 0; });
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && std::all_of(terms_[0].exponents.begin(), terms_[0].exponents.end(),
                                           [](std::int32_t e) { return e == 0; });
}

bool LaurentPoly::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return std::all_of(t.exponents.begin(), t.exponents.end(),
                       [](std::int32_t e) { return e >= 0; });
  });
}

Coefficient LaurentPoly::coefficient(const Exponents& exponents) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponents,
                             [](const Term& t, const Exponents& e) { return t.exponents > e; });
  if (it != terms_.end() && it->exponents == exponents) return it->coeff;
  return Coefficient::zero(field_);
}

Exponents LaurentPoly::min_exponents() const {
  if (terms_.empty()) return {};
  Exponents r = terms_[0].exponents;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) r[i] = std::min(r[i], t.exponents[i]);
  }
  return r;
}

Exponents LaurentPoly::max_exponents() const {
  if (terms_.empty()) return {};
  Exponents r = terms_[0].exponents;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) r[i] = std::max(r[i], t.exponents[i]);
  }
  return r;
}

void LaurentPoly::check_compatible(const LaurentPoly& other) const {
  if (field_ != other.field_) {
    throw FieldMismatch("polynomial fields differ: " + field_.name() + " vs " +
                        other.field_.name());
  }
  if (nvars_ != other.nvars_) {
    throw FieldMismatch("polynomial arities differ: " + std::to_string(nvars_) + " vs " +
                        std::to_string(other.nvars_));
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

// Linear merge of two descending term lists.
LaurentPoly LaurentPoly::combine(const LaurentPoly& other, bool subtract) const {
  check_compatible(other);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size() ||
        (i < terms_.size() && terms_[i].exponents > other.terms_[j].exponents)) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || other.terms_[j].exponents > terms_[i].exponents) {
      Term t = other.terms_[j++];
      if (subtract) t.coeff = -t.coeff;
      out.push_back(std::move(t));
    } else {
      Term t = terms_[i++];
      if (subtract) {
        t.coeff -= other.terms_[j++].coeff;
      } else {
        t.coeff += other.terms_[j++].coeff;
      }
      if (!t.coeff.is_zero()) out.push_back(std::move(t));
    }
  }
  return from_sorted_terms(field_, nvars_, std::move(out));
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  *this = combine(other, false);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  *this = combine(other, true);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = mul(*this, other);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return mul(a, b); }

LaurentPoly LaurentPoly::scaled(const Coefficient& c) const {
  if (c.field() != field_) throw FieldMismatch("scalar field mismatch");
  if (c.is_zero()) return LaurentPoly(field_, nvars_);
  LaurentPoly r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

LaurentPoly LaurentPoly::shifted(const Exponents& shift) const {
  if (shift.size() != nvars_) throw std::invalid_argument("shift arity mismatch");
  LaurentPoly r(*this);
  for (auto& t : r.terms_) t.exponents = add_exponents(t.exponents, shift);
  return r;
}

LaurentPoly LaurentPoly::to_field(Field target) const {
  if (target == field_) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Coefficient c = t.coeff.to_field(target);
    if (!c.is_zero()) out.push_back(Term{t.exponents, std::move(c)});
  }
  return from_sorted_terms(target, nvars_, std::move(out));
}

bool LaurentPoly::operator==(const LaurentPoly& other) const {
  return field_ == other.field_ && nvars_ == other.nvars_ && terms_ == other.terms_;
}

std::strong_ordering LaurentPoly::operator<=>(const LaurentPoly& other) const {
  check_compatible(other);
  const std::size_t n = std::min(terms_.size(), other.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = terms_[i];
    const auto& b = other.terms_[i];
    if (a.exponents != b.exponents) {
      return a.exponents > b.exponents ? std::strong_ordering::greater
                                       : std::strong_ordering::less;
    }
    if (auto c = a.coeff <=> b.coeff; c != 0) return c;
  }
  return terms_.size() <=> other.terms_.size();
}

LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b, const Limits& limits) {
  if (a.field() != b.field() || a.nvars() != b.nvars()) {
    throw FieldMismatch("exact_divide operands are incompatible");
  }
  if (b.is_zero()) throw std::domain_error("exact_divide by zero");
  const Field field = a.field();
  const std::size_t n = a.nvars();
  if (a.is_zero()) return LaurentPoly(field, n);

  const Exponents lo = sub_exponents(a.min_exponents(), b.min_exponents());
  const Exponents hi = sub_exponents(a.max_exponents(), b.max_exponents());
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] > hi[i]) throw NotDivisible("quotient support is empty");
  }

  std::map<Exponents, Coefficient, std::greater<>> remainder;
  for (const auto& t : a.terms()) remainder.emplace(t.exponents, t.coeff);

  const Term& lead = b.leading_term();
  const Coefficient lead_inv = lead.coeff.inverse();
  std::vector<Term> quotient;
  std::size_t used = 0;
  while (!remainder.empty()) {
    used += b.size();
    if (used > limits.max_products) throw BudgetExceeded("term-products", limits.max_products);
    auto top = remainder.begin();
    Exponents q_exp = sub_exponents(top->first, lead.exponents);
    for (std::size_t i = 0; i < n; ++i) {
      if (q_exp[i] < lo[i] || q_exp[i] > hi[i]) {
        throw NotDivisible("remainder term cannot be cancelled inside the quotient support");
      }
    }
    const Coefficient q_coeff = top->second * lead_inv;
    remainder.erase(top);
    for (const auto& t : b.terms().subspan(1)) {
      Exponents key = add_exponents(q_exp, t.exponents);
      Coefficient delta = q_coeff * t.coeff;
      auto [it, inserted] = remainder.try_emplace(std::move(key), -delta);
      if (!inserted) {
        it->second -= delta;
        if (it->second.is_zero()) remainder.erase(it);
      }
    }
    if (remainder.size() > limits.max_terms) {
      throw BudgetExceeded("terms", limits.max_terms);
    }
    quotient.push_back(Term{std::move(q_exp), q_coeff});
    if (quotient.size() > limits.max_terms) throw BudgetExceeded("terms", limits.max_terms);
  }
  return LaurentPoly::from_sorted_terms(field, n, std::move(quotient));
}

std::optional<LaurentPoly> try_exact_divide(const LaurentPoly& a, const LaurentPoly& b,
                                            const Limits& limits) {
  try {
    return exact_divide(a, b, limits);
  } catch (const NotDivisible&) {
    return std::nullopt;
  }
}

LaurentPoly partial_derivative(const LaurentPoly& f, std::size_t index) {
  if (index >= f.nvars()) throw std::out_of_range("variable index out of range");
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    const std::int32_t e = t.exponents[index];
    if (e == 0) continue;
    Coefficient c = t.coeff.scaled(e);
    if (c.is_zero()) continue;
    Exponents d = t.exponents;
    d[index] = checked_narrow(std::int64_t{e} - 1);
    out.push_back(Term{std::move(d), std::move(c)});
  }
  // Lowering one coordinate by one keeps the descending order intact.
  return LaurentPoly::from_sorted_terms(f.field(), f.nvars(), std::move(out));
}

RationalExpr::RationalExpr(LaurentPoly numerator)
    : num_(std::move(numerator)),
      den_(LaurentPoly::constant(num_.field(), num_.nvars(), 1L)) {}

RationalExpr::RationalExpr(LaurentPoly numerator, LaurentPoly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_.field() != den_.field() || num_.nvars() != den_.nvars()) {
    throw FieldMismatch("numerator and denominator are incompatible");
  }
  if (den_.is_zero()) throw std::domain_error("zero denominator");
}

RationalExpr& RationalExpr::operator+=(const RationalExpr& other) {
  if (den_ == other.den_) {
    num_ += other.num_;
  } else {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ = den_ * other.den_;
  }
  return *this;
}

RationalExpr& RationalExpr::operator-=(const RationalExpr& other) {
  if (den_ == other.den_) {
    num_ -= other.num_;
  } else {
    num_ = num_ * other.den_ - other.num_ * den_;
    den_ = den_ * other.den_;
  }
  return *this;
}

RationalExpr& RationalExpr::operator*=(const RationalExpr& other) {
  num_ = num_ * other.num_;
  den_ = den_ * other.den_;
  return *this;
}

RationalExpr& RationalExpr::operator/=(const RationalExpr& other) {
  if (other.num_.is_zero()) throw std::domain_error("division by zero fraction");
  num_ = num_ * other.den_;
  den_ = den_ * other.num_;
  return *this;
}

RationalExpr RationalExpr::to_field(Field target) const {
  return RationalExpr(num_.to_field(target), den_.to_field(target));
}

bool RationalExpr::equals(const RationalExpr& other) const {
  return num_ * other.den_ == other.num_ * den_;
}

std::optional<LaurentPoly> RationalExpr::to_laurent(const Limits& limits) const {
  return try_exact_divide(num_, den_, limits);
}

}  // namespace cf
