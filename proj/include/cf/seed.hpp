#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cf/laurent.hpp"
#include "cf/quiver.hpp"

namespace cf {

// A quiver with, at each vertex, its cluster variable expanded as a Laurent
// polynomial in the fixed initial cluster x1..xn.
struct Seed {
  Quiver quiver;
  std::vector<LaurentPoly> vars;
  // Mutation sequence from the initial seed; provenance only.
  std::vector<std::size_t> path;

  Field field() const { return vars.empty() ? Field() : vars.front().field(); }
  std::size_t size() const { return quiver.size(); }
  bool is_initial_chart() const;

  // Quiver and variables; the path is ignored.
  bool operator==(const Seed& other) const {
    return quiver == other.quiver && vars == other.vars;
  }
};

// vars[i] = x_i.
Seed initial_seed(const Quiver& quiver, Field field);
// Same quiver with identity variables: the seed's own cluster as coordinates.
Seed own_chart(const Seed& s);
// Seed file contents. Missing vars mean the initial cluster.
Seed seed_from_file(const QuiverFile& file, Field field);

struct ExchangeMonomials {
  LaurentPoly plus;   // product over arrows into k
  LaurentPoly minus;  // product over arrows out of k
};
ExchangeMonomials exchange_monomials(const Seed& s, std::size_t k, const Limits& limits = {});

// Exchange relation x_k x_k' = p+ + p-, with x_k' obtained by exact division.
// Throws MutationAtFrozen, LaurentViolation, BudgetExceeded.
Seed mutate(const Seed& s, std::size_t k, const Limits& limits = {});
Seed mutate_along(const Seed& s, std::span<const std::size_t> path, const Limits& limits = {});

struct ExploreResult {
  std::vector<Seed> seeds;              // discovery order
  std::vector<LaurentPoly> variables;   // canonical (sorted) order
  bool closed = false;                  // no new seed appeared before `depth` ran out
  std::size_t levels = 0;               // BFS levels actually expanded
};

// Breadth-first mutation closure up to `depth`, deduplicated by
// (canonical quiver form, multiset of variables). Each frontier is expanded in
// parallel and merged in index order, so results do not depend on scheduling.
ExploreResult explore(const Seed& s0, std::size_t depth, const Limits& limits = {});

// Expansion of g, written in the cluster of s0, as a Laurent polynomial in the
// cluster reached by `path` (variables indexed by vertex). nullopt when that
// expansion is not Laurent.
std::optional<LaurentPoly> express_in_cluster(const RationalExpr& g, const Seed& s0,
                                              std::span<const std::size_t> path,
                                              const Limits& limits = {});

struct MembershipVerdict {
  bool in_all_sampled_clusters = true;
  std::size_t depth = 0;
  std::size_t paths_checked = 0;
  std::optional<std::vector<std::size_t>> failing_path;
};

// Sampled necessary condition for membership in the upper cluster algebra:
// express_in_cluster along every reduced path (no immediate repeats) of
// length <= depth. The first failing path in enumeration order is reported.
MembershipVerdict upper_membership_sample(const RationalExpr& g, const Seed& s0,
                                          std::size_t depth, const Limits& limits = {});

// All reduced mutation paths of length <= depth over the mutable vertices,
// shortest first, lexicographic within a length.
std::vector<std::vector<std::size_t>> reduced_paths(const Quiver& q, std::size_t depth);

std::string render_path(std::span<const std::size_t> path);

}  // namespace cf
