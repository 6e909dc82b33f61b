#include <doctest.h>

#include "cf/error.hpp"
#include "cf/text.hpp"
#include "cf/volform.hpp"
#include "support.hpp"

using namespace cf;
using cft::c;
using cft::x;

namespace {
const Field Q = Field::rationals();
}

TEST_CASE("determinant") {
  const std::size_t n = 2;
  // [[x1, 1], [x2, x1]] -> x1^2 - x2
  const std::vector<LaurentPoly> m{x(Q, n, 0), c(Q, n, 1), x(Q, n, 1), x(Q, n, 0)};
  CHECK(determinant(m, 2) == x(Q, n, 0, 2) - x(Q, n, 1));
  // Permutation matrix of a 3-cycle has determinant +1, a transposition -1.
  const LaurentPoly o = LaurentPoly(Q, 1);
  const LaurentPoly l = c(Q, 1, 1);
  CHECK(determinant(std::vector<LaurentPoly>{o, l, o, o, o, l, l, o, o}, 3).is_one());
  CHECK(determinant(std::vector<LaurentPoly>{o, l, o, l, o, o, o, o, l}, 3) == -l);
  auto rng = cft::make_rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<LaurentPoly> a;
    std::vector<LaurentPoly> b;
    for (int i = 0; i < 9; ++i) {
      a.push_back(cft::random_laurent(rng, Q, 2, 2, -1, 1));
      b.push_back(cft::random_laurent(rng, Q, 2, 2, -1, 1));
    }
    std::vector<LaurentPoly> ab(9, LaurentPoly(Q, 2));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) ab[i * 3 + j] += a[i * 3 + k] * b[k * 3 + j];
      }
    }
    CHECK(determinant(ab, 3) == determinant(a, 3) * determinant(b, 3));
  }
}

TEST_CASE("sign examples") {
  const auto r = volume_form_mutation_sign(cft::corpus_seed("a2"), 0);
  CHECK(r.sign == -1);
  CHECK(r.identity_holds);
  const auto m = volume_form_mutation_sign(cft::corpus_seed("markov"), 0);
  CHECK(m.mutated_variable == "x1^-1*x2^2 + x1^-1*x3^2");
  CHECK(m.sign == -1);
  const std::vector<std::size_t> twice{0, 0};
  CHECK(path_sign(cft::corpus_seed("markov"), twice) == 1);
  CHECK_THROWS_AS(volume_form_mutation_sign(cft::corpus_seed("frozen1"), 1), MutationAtFrozen);
}

TEST_CASE("log volume forms through the Jacobian") {
  for (const char* name : {"a2", "a3", "markov", "cycle3_frozen", "frozen1"}) {
    const Seed s = cft::corpus_seed(name);
    CHECK(log_volume_form(s).sign == 1);
    const ExploreResult r = explore(s, 3);
    for (const Seed& t : r.seeds) {
      const int expected = t.path.size() % 2 == 0 ? 1 : -1;
      CHECK(log_volume_form(t).sign == expected);
      CHECK(path_sign(s, t.path) == expected);
      for (std::size_t k : t.quiver.mutable_vertices()) {
        CHECK(volume_form_mutation_sign(t, k).sign == -1);
      }
    }
  }
}

TEST_CASE("the identity holds at every chart variable") {
  auto rng = cft::make_rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const Quiver q = cft::random_quiver(rng, 4);
    const Seed s = initial_seed(q, Q);
    for (std::size_t k : q.mutable_vertices()) CHECK(volume_form_mutation_sign(s, k).identity_holds);
  }
}
