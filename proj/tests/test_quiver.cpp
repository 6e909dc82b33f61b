#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "cf/error.hpp"
#include "cf/quiver.hpp"
#include "support.hpp"

using namespace cf;

namespace {

Quiver markov() {
  const std::vector<Arrow> arrows{{0, 1, 2}, {1, 2, 2}, {2, 0, 2}};
  return Quiver::from_arrows(3, arrows);
}

Quiver a2(std::int64_t mult = 1) {
  const std::vector<Arrow> arrows{{0, 1, mult}};
  return Quiver::from_arrows(2, arrows);
}

// Three-step rule on nonnegative arrow counts: add i->j for every path
// i->k->j, reverse arrows at k, cancel 2-cycles.
Quiver three_step(const Quiver& q, std::size_t k) {
  const std::size_t n = q.size();
  std::vector<std::vector<std::int64_t>> count(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) count[i][j] = std::max<std::int64_t>(q(i, j), 0);
  }
  auto next = count;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != k && j != k && i != j) next[i][j] += count[i][k] * count[k][j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) continue;
    next[i][k] = count[k][i];
    next[k][i] = count[i][k];
  }
  std::vector<std::int64_t> b(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b[i * n + j] = next[i][j] - next[j][i];
  }
  return Quiver(n, b, q.frozen_mask());
}

Quiver relabel(const Quiver& q, const std::vector<std::size_t>& perm) {
  const std::size_t n = q.size();
  std::vector<std::int64_t> b(n * n);
  std::vector<bool> fr(n);
  for (std::size_t i = 0; i < n; ++i) {
    fr[perm[i]] = q.is_frozen(i);
    for (std::size_t j = 0; j < n; ++j) b[perm[i] * n + perm[j]] = q(i, j);
  }
  return Quiver(n, b, fr);
}

bool isomorphic(const Quiver& a, const Quiver& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (relabel(a, perm) == b) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(Quiver(2, {0, 1, 1, 0}, {false, false}), std::invalid_argument);
  CHECK_THROWS_AS(Quiver(2, {1, 0, 0, 0}, {false, false}), std::invalid_argument);
  const std::vector<Arrow> loop{{0, 0, 1}};
  CHECK_THROWS(Quiver::from_arrows(2, loop));
  // An isolated vertex is frozen.
  const std::vector<Arrow> one{{0, 1, 1}};
  const Quiver q = Quiver::from_arrows(3, one);
  CHECK(q.is_frozen(2));
  CHECK(q.mutable_rank() == 2);
}

TEST_CASE("mutation examples") {
  const Quiver m1 = mutate(markov(), 0);
  CHECK(m1(1, 0) == 2);
  CHECK(m1(0, 2) == 2);
  CHECK(m1(2, 1) == 2);
  const Quiver a = mutate(a2(), 0);
  CHECK(a(1, 0) == 1);
  CHECK(a(0, 1) == -1);
  const std::vector<Arrow> arrows{{1, 0, 1}};
  const Quiver frozen = Quiver::from_arrows(2, arrows, std::vector<std::size_t>{1});
  CHECK_THROWS_AS(mutate(frozen, 1), MutationAtFrozen);
}

TEST_CASE("matrix rule agrees with the three-step arrow rule") {
  auto rng = cft::make_rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Quiver q = cft::random_quiver(rng, 2 + trial % 5);
    for (std::size_t k : q.mutable_vertices()) {
      const Quiver m = mutate(q, k);
      CHECK(m == three_step(q, k));
      CHECK(mutate(m, k) == q);
      CHECK(m.frozen_mask() == q.frozen_mask());
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) CHECK(m(i, j) == -m(j, i));
      }
    }
  }
}

TEST_CASE("acyclicity and sinks") {
  CHECK(is_acyclic(a2()));
  CHECK_FALSE(is_acyclic(markov()));
  const std::vector<std::size_t> two{1};
  CHECK(is_acyclic(freeze(markov(), two)));
  CHECK(find_sink(a2()) == std::optional<std::size_t>(1));
  CHECK_FALSE(find_sink(markov()).has_value());
  auto rng = cft::make_rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const Quiver q = cft::random_quiver(rng, 2 + trial % 5);
    if (is_acyclic(q) && q.mutable_rank() > 0) {
      const auto k = find_sink(q);
      REQUIRE(k.has_value());
      for (std::size_t j : q.mutable_vertices()) CHECK(q(*k, j) <= 0);
    }
  }
}

TEST_CASE("freeze") {
  const std::vector<std::size_t> first{0};
  const Quiver f = freeze(markov(), first);
  CHECK(f.is_frozen(0));
  CHECK(is_acyclic(f));
  CHECK(freeze(markov(), std::vector<std::size_t>{}) == markov());
  const Quiver all = freeze(markov(), markov().mutable_vertices());
  CHECK(all.mutable_rank() == 0);
  CHECK_THROWS_AS(freeze(markov(), std::vector<std::size_t>{5}), std::out_of_range);
  auto rng = cft::make_rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Quiver q = cft::random_quiver(rng, 5);
    const auto mut = q.mutable_vertices();
    if (mut.empty()) continue;
    const std::vector<std::size_t> s{mut.front()};
    const Quiver g = freeze(q, s);
    for (std::size_t v : q.frozen_vertices()) CHECK(g.is_frozen(v));
    if (is_acyclic(q)) CHECK(is_acyclic(g));
  }
}

TEST_CASE("canonical forms") {
  const std::vector<std::size_t> perm{2, 0, 1};
  CHECK(canonical_form(markov()) == canonical_form(relabel(markov(), perm)));
  CHECK(canonical_form(a2()) != canonical_form(a2(2)));
  // Reversing every arrow of the directed triangle is undone by the
  // relabeling that swaps vertices 2 and 3, so both orientations share a form.
  const Quiver opposite = mutate(markov(), 0);
  CHECK(isomorphic(opposite, markov()));
  CHECK(canonical_form(opposite) == canonical_form(markov()));
  auto rng = cft::make_rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const Quiver a = cft::random_quiver(rng, 4, 1);
    const Quiver b = cft::random_quiver(rng, 4, 1);
    CHECK((canonical_form(a) == canonical_form(b)) == isomorphic(a, b));
  }
  CHECK_THROWS_AS(canonical_form(Quiver(9, std::vector<std::int64_t>(81, 0),
                                        std::vector<bool>(9, true))),
                  SizeLimit);
}

TEST_CASE("quiver files") {
  const QuiverFile f = parse_quiver_file(R"({"n": 3, "frozen": [2], "arrows": [[1,2,2],[2,3,2],[3,1,2]]})");
  CHECK(f.quiver.is_frozen(1));
  CHECK(f.quiver(0, 1) == 2);
  CHECK(f.quiver(0, 2) == -2);
  CHECK(parse_quiver_file(quiver_to_json(f.quiver)).quiver == f.quiver);
  CHECK(quiver_hash(f.quiver) == quiver_hash(parse_quiver_file(quiver_to_json(f.quiver)).quiver));
  CHECK(quiver_hash(f.quiver) != quiver_hash(markov()));
  for (const char* bad : {
           R"({"n": 2, "arrows": [[1,1,1]]})",
           R"({"n": 2, "arrows": [[1,2,-1]]})",
           R"({"n": 2, "arrows": [[1,3,1]]})",
           R"({"n": 2, "arrows": [[1,2,1],[1,2,1]]})",
           R"({"n": 2, "arrows": [[1,2,1],[2,1,1]]})",
           R"({"n": 2, "arrows": [[1,2,1]], "colour": 1})",
       }) {
    CHECK_THROWS_AS(parse_quiver_file(bad), ParseError);
  }
  try {
    parse_quiver_file("{\"n\": 2,\n \"arrows\": [[1, 2, 1]");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
