#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace cf {

// Ground field of a computation: the rationals or a prime field F_p.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field(); }
  // p must be prime and below 2^31 so residue products fit in 64 bits.
  static Field prime(std::uint64_t p);

  constexpr bool is_rational() const { return p_ == 0; }
  constexpr bool is_prime() const { return p_ != 0; }
  // 0 for the rationals.
  constexpr std::uint64_t characteristic() const { return p_; }

  constexpr bool operator==(const Field&) const = default;

  std::string name() const;

 private:
  constexpr explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

bool is_prime_number(std::uint64_t n);

// An element of a Field. Rationals are kept reduced with positive
// denominator (mpq canonical form); residues are kept in [0, p).
class Coefficient {
 public:
  Coefficient() : value_(mpq_class(0)) {}
  Coefficient(Field field, long value);
  Coefficient(Field field, const mpq_class& value);

  static Coefficient zero(Field field) { return Coefficient(field, 0L); }
  static Coefficient one(Field field) { return Coefficient(field, 1L); }

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  // Rationals: sign of the value. Residues are never negative.
  int sign() const;

  // Only valid on rationals.
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  // Only valid on residues.
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }

  Coefficient operator-() const;
  Coefficient& operator+=(const Coefficient& other);
  Coefficient& operator-=(const Coefficient& other);
  Coefficient& operator*=(const Coefficient& other);
  // Throws std::domain_error on division by zero.
  Coefficient inverse() const;

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend Coefficient operator/(const Coefficient& a, const Coefficient& b) {
    return a * b.inverse();
  }

  // Multiply by a machine integer (used for exponents in derivatives).
  Coefficient scaled(std::int64_t factor) const;

  bool operator==(const Coefficient& other) const;
  // Total order inside one field: numeric for rationals, by representative for residues.
  std::strong_ordering operator<=>(const Coefficient& other) const;

  std::string to_string() const;
  // Absolute value rendering for rationals; same as to_string for residues.
  std::string magnitude_string() const;

  // Re-interpret a rational in F_p; throws std::domain_error if the
  // denominator is divisible by p. Residues convert only to their own field.
  Coefficient to_field(Field target) const;

 private:
  void check_same_field(const Coefficient& other) const;

  Field field_;
  std::variant<mpq_class, std::uint64_t> value_;
};

}  // namespace cf
