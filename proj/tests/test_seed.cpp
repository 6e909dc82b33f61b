#include <doctest.h>

#include <set>

#include "cf/error.hpp"
#include "cf/seed.hpp"
#include "cf/text.hpp"
#include "support.hpp"

using namespace cf;
using cft::c;
using cft::x;

namespace {

const Field Q = Field::rationals();

RationalExpr markov_M() {
  return RationalExpr(x(Q, 3, 0, 2) + x(Q, 3, 1, 2) + x(Q, 3, 2, 2),
                      LaurentPoly::monomial(Q, Exponents{1, 1, 1}));
}

std::vector<std::size_t> random_path(std::mt19937_64& rng, const Seed& s, std::size_t len) {
  const auto mut = s.quiver.mutable_vertices();
  std::uniform_int_distribution<std::size_t> pick(0, mut.size() - 1);
  std::vector<std::size_t> path;
  for (std::size_t i = 0; i < len; ++i) path.push_back(mut[pick(rng)]);
  return path;
}

}  // namespace

TEST_CASE("exchange monomials") {
  const Seed a2 = cft::corpus_seed("a2");
  const auto em = exchange_monomials(a2, 1);
  CHECK(em.plus == x(Q, 2, 0));
  CHECK(em.minus.is_one());
  const Seed m = cft::corpus_seed("markov");
  const auto em1 = exchange_monomials(m, 0);
  CHECK(em1.plus == x(Q, 3, 2, 2));
  CHECK(em1.minus == x(Q, 3, 1, 2));
  CHECK_THROWS_AS(exchange_monomials(cft::corpus_seed("frozen1"), 1), MutationAtFrozen);
}

TEST_CASE("mutation examples") {
  const Seed a2 = cft::corpus_seed("a2");
  CHECK(render(mutate(a2, 0).vars[0]) == "x1^-1*x2 + x1^-1");
  const Seed m = cft::corpus_seed("markov");
  const Seed m1 = mutate(m, 0);
  CHECK(render(m1.vars[0]) == "x1^-1*x2^2 + x1^-1*x3^2");
  CHECK(m1.path == std::vector<std::size_t>{0});
  CHECK(mutate(m1, 0) == m);
  CHECK_THROWS_AS(mutate(cft::corpus_seed("frozen1"), 1), MutationAtFrozen);
}

TEST_CASE("involution and exchange identity on random paths") {
  auto rng = cft::make_rng(31);
  for (const char* name : {"a2", "a3", "markov", "frozen1", "cycle3_frozen", "path3_frozen"}) {
    Seed s = cft::corpus_seed(name);
    for (int trial = 0; trial < 20; ++trial) {
      Seed cur = s;
      for (std::size_t k : random_path(rng, s, 4)) {
        const Seed next = mutate(cur, k);
        const auto em = exchange_monomials(cur, k);
        CHECK(cur.vars[k] * next.vars[k] == em.plus + em.minus);
        CHECK(mutate(next, k) == cur);
        cur = next;
      }
    }
  }
}

TEST_CASE("explore: the pentagon") {
  const ExploreResult r = explore(cft::corpus_seed("a2"), 10);
  CHECK(r.closed);
  CHECK(r.seeds.size() == 5);
  const std::set<LaurentPoly> got(r.variables.begin(), r.variables.end());
  const std::size_t n = 2;
  const LaurentPoly x1 = x(Q, n, 0);
  const LaurentPoly x2 = x(Q, n, 1);
  const LaurentPoly one = c(Q, n, 1);
  const std::set<LaurentPoly> expected{
      x1,
      x2,
      *RationalExpr(one + x2, x1).to_laurent(),
      *RationalExpr(one + x1 + x2, x1 * x2).to_laurent(),
      *RationalExpr(one + x1, x2).to_laurent(),
  };
  CHECK(got == expected);
}

TEST_CASE("explore: depth 0 and growth") {
  const Seed m = cft::corpus_seed("markov");
  const ExploreResult r0 = explore(m, 0);
  CHECK(r0.seeds.size() == 1);
  CHECK(r0.variables.size() == 3);
  std::size_t previous = 3;
  for (std::size_t d = 1; d <= 3; ++d) {
    const ExploreResult r = explore(m, d);
    CHECK_FALSE(r.closed);
    CHECK(r.variables.size() > previous);
    previous = r.variables.size();
  }
  CHECK_THROWS_AS(explore(m, 6, Limits{1'000'000, 20, 10'000'000}), BudgetExceeded);
}

TEST_CASE("Laurent phenomenon to depth 4") {
  for (const char* name : {"a2", "a3", "markov", "cycle3_frozen", "path3_frozen", "frozen1", "gmarkov3"}) {
    CHECK_NOTHROW(explore(cft::corpus_seed(name), 4));
  }
  const ExploreResult a3 = explore(cft::corpus_seed("a3"), 20);
  CHECK(a3.closed);
  CHECK(a3.variables.size() == 9);  // A3 has 9 cluster variables
  CHECK(explore(cft::corpus_seed("frozen1"), 10).variables.size() == 3);
}

TEST_CASE("explore is independent of scheduling") {
  const Seed m = cft::corpus_seed("markov");
  const ExploreResult a = explore(m, 4);
  const ExploreResult b = explore(m, 4);
  CHECK(a.variables == b.variables);
  REQUIRE(a.seeds.size() == b.seeds.size());
  for (std::size_t i = 0; i < a.seeds.size(); ++i) CHECK(a.seeds[i].path == b.seeds[i].path);
}

TEST_CASE("express_in_cluster") {
  const Seed m = cft::corpus_seed("markov");
  const std::vector<std::size_t> one{0};
  const auto e = express_in_cluster(markov_M(), m, one);
  REQUIRE(e.has_value());
  // (y1^2 + x2^2 + x3^2)/(y1 x2 x3) with y1 in slot 1.
  const LaurentPoly y1 = x(Q, 3, 0);
  const LaurentPoly expected =
      *RationalExpr(y1 * y1 + x(Q, 3, 1, 2) + x(Q, 3, 2, 2), y1 * x(Q, 3, 1) * x(Q, 3, 2))
           .to_laurent();
  CHECK(*e == expected);
  CHECK(e->size() == 3);
  CHECK(express_in_cluster(RationalExpr(x(Q, 3, 0)), m, {}) == x(Q, 3, 0));
  const RationalExpr bad(c(Q, 3, 1), x(Q, 3, 0) + c(Q, 3, 1));
  for (const auto& path : reduced_paths(m.quiver, 2)) {
    CHECK_FALSE(express_in_cluster(bad, m, path).has_value());
  }
}

TEST_CASE("express_in_cluster agrees with forward mutation") {
  // A variable of the seed reached along `path` is a monomial in its own cluster.
  auto rng = cft::make_rng(32);
  for (const char* name : {"a3", "markov", "cycle3_frozen"}) {
    const Seed s = cft::corpus_seed(name);
    for (int trial = 0; trial < 5; ++trial) {
      const auto path = random_path(rng, s, 3);
      const Seed t = mutate_along(s, path);
      for (std::size_t i = 0; i < s.size(); ++i) {
        const auto e = express_in_cluster(RationalExpr(t.vars[i]), s, path);
        REQUIRE(e.has_value());
        CHECK(*e == x(Q, s.size(), i));
      }
    }
  }
}

TEST_CASE("upper membership sampling") {
  const Seed m = cft::corpus_seed("markov");
  const MembershipVerdict v = upper_membership_sample(markov_M(), m, 2);
  CHECK(v.in_all_sampled_clusters);
  CHECK(v.depth == 2);
  CHECK(v.paths_checked == 10);
  const Seed a2 = cft::corpus_seed("a2");
  const MembershipVerdict w = upper_membership_sample(RationalExpr(x(Q, 2, 0, -1)), a2, 1);
  CHECK_FALSE(w.in_all_sampled_clusters);
  REQUIRE(w.failing_path.has_value());
  CHECK(*w.failing_path == std::vector<std::size_t>{0});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(upper_membership_sample(RationalExpr(x(Q, 3, i)), m, 3).in_all_sampled_clusters);
  }
}

TEST_CASE("seed files with explicit variables") {
  const QuiverFile f = parse_quiver_file(
      R"({"n": 2, "arrows": [[2,1,1]], "vars": ["x1^-1*x2 + x1^-1", "x2"]})");
  const Seed s = seed_from_file(f, Q);
  CHECK_FALSE(s.is_initial_chart());
  CHECK(render(s.vars[0]) == "x1^-1*x2 + x1^-1");
  CHECK(render_path(std::vector<std::size_t>{0, 2}) == "[1,3]");
}
