#include "cf/coefficient.hpp"

#include <stdexcept>

#include "cf/error.hpp"

namespace cf {

namespace {

std::uint64_t reduce_mod(const mpz_class& value, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p);
  return r.get_ui();
}

std::uint64_t reduce_mod(long value, std::uint64_t p) {
  const auto m = static_cast<std::int64_t>(p);
  std::int64_t r = static_cast<std::int64_t>(value) % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp != 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return result;
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime_number(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (p >= (1ULL << 31)) throw std::invalid_argument("prime must be below 2^31");
  return Field(p);
}

std::string Field::name() const {
  return is_rational() ? std::string("Q") : "F_" + std::to_string(p_);
}

Coefficient::Coefficient(Field field, long value) : field_(field) {
  if (field.is_rational()) {
    value_ = mpq_class(value);
  } else {
    value_ = reduce_mod(value, field.characteristic());
  }
}

Coefficient::Coefficient(Field field, const mpq_class& value) : field_(field) {
  if (field.is_rational()) {
    mpq_class v(value);
    v.canonicalize();
    value_ = std::move(v);
    return;
  }
  const std::uint64_t p = field.characteristic();
  const std::uint64_t den = reduce_mod(value.get_den(), p);
  if (den == 0) throw std::domain_error("denominator not invertible in " + field.name());
  const std::uint64_t num = reduce_mod(value.get_num(), p);
  value_ = num * pow_mod(den, p - 2, p) % p;
}

bool Coefficient::is_zero() const {
  if (field_.is_rational()) return sgn(rational()) == 0;
  return residue() == 0;
}

bool Coefficient::is_one() const {
  if (field_.is_rational()) return rational() == 1;
  return residue() == 1;
}

int Coefficient::sign() const {
  if (field_.is_rational()) return sgn(rational());
  return residue() == 0 ? 0 : 1;
}

void Coefficient::check_same_field(const Coefficient& other) const {
  if (field_ != other.field_) {
    throw FieldMismatch("coefficient fields differ: " + field_.name() + " vs " +
                        other.field_.name());
  }
}

Coefficient Coefficient::operator-() const {
  Coefficient r(*this);
  if (field_.is_rational()) {
    std::get<mpq_class>(r.value_) = -rational();
  } else {
    const std::uint64_t v = residue();
    std::get<std::uint64_t>(r.value_) = v == 0 ? 0 : field_.characteristic() - v;
  }
  return r;
}

Coefficient& Coefficient::operator+=(const Coefficient& other) {
  check_same_field(other);
  if (field_.is_rational()) {
    std::get<mpq_class>(value_) += other.rational();
  } else {
    auto& v = std::get<std::uint64_t>(value_);
    v = (v + other.residue()) % field_.characteristic();
  }
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& other) {
  check_same_field(other);
  if (field_.is_rational()) {
    std::get<mpq_class>(value_) -= other.rational();
  } else {
    const std::uint64_t p = field_.characteristic();
    auto& v = std::get<std::uint64_t>(value_);
    v = (v + p - other.residue()) % p;
  }
  return *this;
}

Coefficient& Coefficient::operator*=(const Coefficient& other) {
  check_same_field(other);
  if (field_.is_rational()) {
    std::get<mpq_class>(value_) *= other.rational();
  } else {
    auto& v = std::get<std::uint64_t>(value_);
    v = v * other.residue() % field_.characteristic();
  }
  return *this;
}

Coefficient Coefficient::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in " + field_.name());
  Coefficient r(*this);
  if (field_.is_rational()) {
    std::get<mpq_class>(r.value_) = 1 / rational();
  } else {
    const std::uint64_t p = field_.characteristic();
    std::get<std::uint64_t>(r.value_) = pow_mod(residue(), p - 2, p);
  }
  return r;
}

Coefficient Coefficient::scaled(std::int64_t factor) const {
  if (field_.is_rational()) {
    return Coefficient(field_, rational() * mpq_class(static_cast<long>(factor)));
  }
  return *this * Coefficient(field_, static_cast<long>(factor));
}

bool Coefficient::operator==(const Coefficient& other) const {
  return field_ == other.field_ && value_ == other.value_;
}

std::strong_ordering Coefficient::operator<=>(const Coefficient& other) const {
  check_same_field(other);
  if (field_.is_rational()) {
    const int c = cmp(rational(), other.rational());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return residue() <=> other.residue();
}

std::string Coefficient::to_string() const {
  if (field_.is_rational()) return rational().get_str();
  return std::to_string(residue());
}

std::string Coefficient::magnitude_string() const {
  if (field_.is_rational()) return mpq_class(abs(rational())).get_str();
  return std::to_string(residue());
}

Coefficient Coefficient::to_field(Field target) const {
  if (target == field_) return *this;
  if (!field_.is_rational()) {
    throw FieldMismatch("cannot convert " + field_.name() + " to " + target.name());
  }
  return Coefficient(target, rational());
}

}  // namespace cf
