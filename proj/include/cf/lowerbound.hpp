#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cf/laurent.hpp"
#include "cf/seed.hpp"

namespace cf {

// Presentation of the algebra generated by x_1..x_n and x_1'..x_n' as a
// quotient of the polynomial ring in x_1..x_n, y_1..y_n (variable i is x_i,
// variable n + i is y_i).
struct LowerBoundPresentation {
  Seed base;
  std::vector<LaurentPoly> plus;   // p_i^+ in n variables
  std::vector<LaurentPoly> minus;  // p_i^- in n variables
  // x_1..x_n, x_1'..x_n' as fractions in n variables.
  std::vector<RationalExpr> generators;
  // g_i = x_i y_i - p_i^+ - p_i^- in 2n variables, one per vertex.
  std::vector<LaurentPoly> relations;
  LaurentPoly f;  // product of the relations

  std::size_t rank() const { return base.size(); }
};

// Requires the seed to be in its initial chart (identity variables). Every
// vertex contributes a relation, frozen ones included.
LowerBoundPresentation lower_bound_generators(const Seed& s);

// Names x1..xn, y1..yn.
std::vector<std::string> lower_bound_variable_names(std::size_t n);

// Psi((f^{p-1} r)^{1/p}): keeps the terms of f^{p-1} r whose exponents are all
// p - 1 mod p and sends exponent a to (a - (p - 1)) / p. The expansion is done
// one factor at a time; raw term products are charged against
// limits.max_products ("term-products").
LaurentPoly psi_f_apply(const LowerBoundPresentation& pres, const LaurentPoly& r, std::uint64_t p,
                        const Limits& limits = {});

// Psi applied to an already expanded f^{p-1} r.
LaurentPoly psi_extract(const LaurentPoly& expanded, std::uint64_t p);

// f^k over F_p, factor at a time, under the term-product budget.
LaurentPoly f_power(const LowerBoundPresentation& pres, std::uint64_t p, std::uint64_t k,
                    const Limits& limits = {});

// psi_f_apply(pres, 1, p) == 1.
bool verify_lb_splitting(const LowerBoundPresentation& pres, std::uint64_t p,
                         const Limits& limits = {});

struct CompatSample {
  LaurentPoly g;
  LaurentPoly image;  // psi_f_apply(pres, f g, p)
  bool divisible = false;
};

struct CompatReport {
  std::uint64_t prime = 0;
  std::vector<CompatSample> samples;
  bool pass() const;
};

// Checks that psi_f_apply(pres, f g, p) is divisible by f for every sample.
CompatReport compat_check(const LowerBoundPresentation& pres, std::uint64_t p,
                          std::span<const LaurentPoly> samples, const Limits& limits = {});

// All monomials of total degree <= degree in the 2n variables, over F_p.
std::vector<LaurentPoly> monomial_samples(std::size_t n, unsigned degree, std::uint64_t p);

// Substituting y_i := x_i' into g_i gives 0 for every i.
bool localization_identity_holds(const LowerBoundPresentation& pres);

}  // namespace cf
