#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cf/laurent.hpp"
#include "cf/seed.hpp"

namespace cf {

// p^e with overflow check.
std::uint64_t prime_power(std::uint64_t p, unsigned e);

// phi^e(f^{1/p^e}) for the standard splitting: keeps the terms whose
// exponents are all divisible by p^e and divides those exponents by p^e.
// Coefficients are kept (Frobenius is the identity on F_p). f must live over F_p.
LaurentPoly standard_split(const LaurentPoly& f, std::uint64_t p, unsigned e = 1);

// r |-> phi^e((twist * r)^{1/p^e}). Elements of R^{1/p^e} are carried by
// their p^e-th powers.
class SplittingMap {
 public:
  SplittingMap(std::uint64_t p, unsigned e, RationalExpr twist);

  std::uint64_t prime() const { return p_; }
  unsigned iterations() const { return e_; }
  const RationalExpr& twist() const { return twist_; }

 private:
  std::uint64_t p_;
  unsigned e_;
  RationalExpr twist_;
};

// The untwisted iterate phi^e in `nvars` variables.
SplittingMap untwisted(std::uint64_t p, unsigned e, std::size_t nvars);

struct SplitResult {
  RationalExpr value;
  // Set when the final exact division succeeded.
  std::optional<LaurentPoly> laurent;
};

// Fraction-clearing extension to the fraction field:
// phi^e((a/b)^{1/q}) = standard_split(a * b^{q-1}) / b, applied to twist * r.
SplitResult split_apply(const SplittingMap& m, const RationalExpr& r, const Limits& limits = {});

// Basis exponent vector (0 <= a_i < p) -> value of psi on x^a. Missing keys are 0.
using BasisValues = std::map<Exponents, LaurentPoly>;

// s = sum_a psi(x^a)^p x^{-a}, checked on every basis vector before returning.
// Throws VerificationFailed on disagreement, std::invalid_argument on keys
// outside the basis.
LaurentPoly hom_generator(std::uint64_t p, std::size_t nvars, const BasisValues& values);

// psi = phi o s^{1/p} read off on the basis.
BasisValues basis_values(const LaurentPoly& s, std::uint64_t p);

struct InvarianceSample {
  Exponents alpha;
  std::string via_old_cluster;   // phi_x((x'^alpha)^{1/p}) re-expressed in x'
  std::string in_new_cluster;    // phi_{x'} applied directly
  bool equal = false;
};

struct InvarianceReport {
  std::size_t vertex = 0;
  std::uint64_t prime = 0;
  std::vector<InvarianceSample> samples;
  bool all_equal() const;
};

// Compares the splitting of the seed's own cluster with the splitting of the
// cluster mutated at k, on the monomials x'^alpha of the mutated cluster.
InvarianceReport splitting_invariance_check(const Seed& s0, std::size_t k, std::uint64_t p,
                                            std::span<const Exponents> sample,
                                            const Limits& limits = {});
// All alpha with |alpha_i| <= bound.
std::vector<Exponents> exponent_box(std::size_t nvars, std::int32_t bound);

struct FregWitness {
  std::size_t sink = 0;
  unsigned e = 0;
  LaurentPoly plus;
  LaurentPoly minus;
  SplittingMap map;
  RationalExpr value;  // psi(x_sink^{1/p^e})
  bool verified = false;
};

// Witness psi = phi^e o (x_k'/p_k^-)^{1/p^e} at the first sink k, in the
// seed's own chart, with the smallest e such that p^e exceeds every exponent
// of p_k^+ and p_k^-. Throws NotAcyclic, NoMutableVertex.
FregWitness freg_witness_sink(const Seed& s, std::uint64_t p, const Limits& limits = {});

// split_apply(m, c) == 1 exactly.
bool test_element_verify(const LaurentPoly& c, const SplittingMap& m, const Limits& limits = {});

}  // namespace cf
