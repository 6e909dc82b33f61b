#include <doctest.h>

#include "cf/error.hpp"
#include "cf/lowerbound.hpp"
#include "cf/text.hpp"
#include "support.hpp"

using namespace cf;
using cft::c;
using cft::x;

namespace {

const Field Q = Field::rationals();

LowerBoundPresentation pres_of(const char* name) {
  return lower_bound_generators(cft::corpus_seed(name));
}

// Oracle: expand f^(p-1) r densely and extract the all-(p-1) residues by hand.
LaurentPoly oracle_psi(const LowerBoundPresentation& pres, const LaurentPoly& r, std::uint64_t p) {
  const Field F = Field::prime(p);
  const cft::Oracle prod = cft::oracle_mul(
      cft::oracle_pow(cft::to_oracle(pres.f.to_field(F)), static_cast<unsigned>(p - 1)),
      cft::to_oracle(r));
  cft::Oracle out{p, prod.nvars, {}};
  for (const auto& [e, coeff] : prod.terms) {
    bool keep = true;
    std::vector<int> root;
    for (int a : e) {
      keep = keep && a % static_cast<int>(p) == static_cast<int>(p) - 1;
      root.push_back((a - static_cast<int>(p) + 1) / static_cast<int>(p));
    }
    if (keep) out.terms[root] = coeff;
  }
  return cft::from_oracle(out);
}

}  // namespace

TEST_CASE("presentations") {
  const auto names = lower_bound_variable_names(2);
  const auto a2 = pres_of("a2");
  REQUIRE(a2.relations.size() == 2);
  CHECK(render(a2.relations[0], names) == "x1*y1 - x2 - 1");
  CHECK(render(a2.relations[1], names) == "-x1 + x2*y2 - 1");
  const auto m = pres_of("markov");
  const auto mn = lower_bound_variable_names(3);
  CHECK(render(m.relations[0], mn) == "x1*y1 - x2^2 - x3^2");
  CHECK(render(m.relations[1], mn) == "-x1^2 + x2*y2 - x3^2");
  CHECK(render(m.relations[2], mn) == "-x1^2 - x2^2 + x3*y3");
  const auto fr = pres_of("frozen1");
  CHECK(render(fr.relations[0], names) == "x1*y1 - x2 - 1");
  for (const char* name : {"a2", "a3", "markov", "frozen1", "cycle3_frozen", "path3_frozen"}) {
    const auto p = pres_of(name);
    CHECK(p.relations.size() == p.rank());
    LaurentPoly prod = c(Q, 2 * p.rank(), 1);
    for (const auto& g : p.relations) {
      CHECK(g.is_polynomial());
      prod = prod * g;
    }
    CHECK(prod == p.f);
    CHECK(localization_identity_holds(p));
  }
  const Seed moved = mutate(cft::corpus_seed("a2"), 0);
  CHECK_THROWS_AS(lower_bound_generators(moved), std::invalid_argument);
}

TEST_CASE("psi examples") {
  const auto a2 = pres_of("a2");
  const Field F3 = Field::prime(3);
  CHECK(psi_f_apply(a2, c(F3, 4, 1), 3).is_one());
  CHECK(psi_f_apply(a2, a2.f.to_field(F3), 3).is_zero());
  // Exactly one monomial of f^2 has every exponent equal to 2 mod 3.
  const LaurentPoly f2 = pow(a2.f.to_field(F3), 2);
  std::size_t hits = 0;
  for (const auto& t : f2.terms()) {
    bool all = true;
    for (std::int32_t a : t.exponents) all = all && a % 3 == 2;
    if (all) {
      ++hits;
      CHECK(t.exponents == Exponents{2, 2, 2, 2});
      CHECK(t.coeff.is_one());
    }
  }
  CHECK(hits == 1);
}

TEST_CASE("psi matches the dense oracle") {
  auto rng = cft::make_rng(51);
  for (const char* name : {"a2", "a3", "frozen1"}) {
    const auto pres = pres_of(name);
    for (std::uint64_t p : {2ULL, 3ULL}) {
      for (int trial = 0; trial < 5; ++trial) {
        const auto r = cft::random_laurent(rng, Field::prime(p), 2 * pres.rank(), 3, 0, 3);
        CHECK(psi_f_apply(pres, r, p) == oracle_psi(pres, r, p));
      }
    }
  }
}

TEST_CASE("psi is additive and p-linear") {
  auto rng = cft::make_rng(52);
  const auto pres = pres_of("a2");
  for (std::uint64_t p : {3ULL, 5ULL}) {
    const Field F = Field::prime(p);
    for (int trial = 0; trial < 5; ++trial) {
      const auto r = cft::random_laurent(rng, F, 4, 4, 0, 4);
      const auto s = cft::random_laurent(rng, F, 4, 4, 0, 4);
      const auto h = cft::random_laurent(rng, F, 4, 2, 0, 1);
      CHECK(psi_f_apply(pres, r + s, p) == psi_f_apply(pres, r, p) + psi_f_apply(pres, s, p));
      CHECK(psi_f_apply(pres, pow(h, p) * r, p) == h * psi_f_apply(pres, r, p));
    }
  }
}

TEST_CASE("splitting of the lower bound algebra") {
  for (const char* name : {"a2", "a3", "markov", "frozen1", "cycle3_frozen", "path3_frozen"}) {
    const auto pres = pres_of(name);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) CHECK(verify_lb_splitting(pres, p));
  }
}

TEST_CASE("compatibility of the ideal generated by f") {
  const auto a2 = pres_of("a2");
  const Field F3 = Field::prime(3);
  const std::vector<LaurentPoly> g{c(F3, 4, 1), x(F3, 4, 0)};
  const CompatReport r = compat_check(a2, 3, g);
  CHECK(r.pass());
  CHECK(r.samples[0].image.is_zero());
  // Samples whose image is a nonzero multiple of f.
  const LaurentPoly top = LaurentPoly::monomial(F3, Exponents{2, 2, 2, 2});
  const std::vector<LaurentPoly> h{top, top * x(F3, 4, 0, 3), top * (x(F3, 4, 1, 3) + c(F3, 4, 1))};
  const CompatReport rh = compat_check(a2, 3, h);
  CHECK(rh.pass());
  for (const auto& s : rh.samples) CHECK_FALSE(s.image.is_zero());
  CHECK(rh.samples[0].image == a2.f.to_field(F3));
  for (const char* name : {"a2", "a3", "markov", "frozen1"}) {
    const auto pres = pres_of(name);
    CHECK(compat_check(pres, 3, monomial_samples(pres.rank(), 2, 3)).pass());
  }
  CHECK(monomial_samples(2, 2, 3).size() == 15);
  CHECK(monomial_samples(3, 2, 3).size() == 28);
}

TEST_CASE("term-product budget") {
  const auto pres = pres_of("markov");
  const Field F5 = Field::prime(5);
  CHECK_THROWS_AS(psi_f_apply(pres, c(F5, 6, 1), 5, Limits{1'000'000, 100'000, 100}),
                  BudgetExceeded);
  try {
    f_power(pres, 5, 4, Limits{1'000'000, 100'000, 100});
  } catch (const BudgetExceeded& e) {
    CHECK(e.budget() == "term-products");
  }
}
