#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cf/frobenius.hpp"
#include "cf/laurent.hpp"
#include "cf/seed.hpp"

namespace cf {

// Triangle quiver with a-fold arrows 1->2, 2->3, 3->1 (a = 2: Markov).
Seed markov_seed(int a, Field field);
// M = (x1^a + x2^a + x3^a) / (x1 x2 x3).
RationalExpr markov_M(int a, Field field);
// x1 x2 x3 M - x1^a - x2^a - x3^a == 0 as a fraction.
bool markov_relation_holds(int a, Field field);

// deg(x_i) = 1, deg(M) = a - 3.
struct Grading {
  int a = 2;
  std::int64_t degree_of_M() const { return a - 3; }
  // Degree of x^b M^c.
  std::int64_t degree(const Exponents& x_powers, unsigned m_power) const;
};

// Common total degree of every term, or nullopt if f is not homogeneous
// (zero has no degree).
std::optional<std::int64_t> homogeneous_degree(const LaurentPoly& f);

struct MarkovFregCertificate {
  std::uint64_t prime = 0;
  unsigned e = 1;
  std::string twist;
  std::string checked_element;
  std::string value;
  bool pass = false;
};

// Test-element certificate with twist M^3/6 on c = x1 x2 x3.
// Throws BadCharacteristic for p in {2, 3}.
MarkovFregCertificate markov_freg_certificate(std::uint64_t p, unsigned e,
                                              const Limits& limits = {});

// x^b M^c with |b| <= x_degree, c <= m_power.
struct GradedMonomial {
  Exponents x_powers;
  unsigned m_power = 0;
};

struct ObstructionSample {
  GradedMonomial monomial;
  std::int64_t degree = 0;
  std::string image;  // phi^e of the Laurent expansion
  bool positive_or_zero = false;
};

struct ObstructionReport {
  int a = 3;
  std::uint64_t prime = 0;
  unsigned e = 1;
  std::int64_t degree_of_M = 0;
  bool m_degree_matches = false;      // every term of M has degree a - 3 >= 0
  bool relation_homogeneous = false;  // relation is homogeneous of degree a
  std::vector<ObstructionSample> samples;
  bool pass() const;
};

// Positive-degree samples x^b M^c with |b| <= x_degree and c <= m_power.
std::vector<GradedMonomial> obstruction_sample(int a, unsigned x_degree = 5, unsigned m_power = 2);

// Checks that phi^e maps each positive-degree sample to zero or to an element
// all of whose terms have positive degree. Requires a >= 3.
ObstructionReport graded_obstruction_check(int a, std::uint64_t p, unsigned e,
                                           const std::vector<GradedMonomial>& sample,
                                           const Limits& limits = {});

// Grading identity on an explored mutation class: every cluster variable is
// homogeneous of degree 1.
bool cluster_variables_have_degree_one(const ExploreResult& explored);

}  // namespace cf
