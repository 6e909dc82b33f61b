#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cf {

// Net arrow count, 0-based vertices.
struct Arrow {
  std::size_t from;
  std::size_t to;
  std::int64_t multiplicity;

  bool operator==(const Arrow&) const = default;
};

// Quiver without loops or 2-cycles, stored as its skew-symmetric exchange
// matrix B (B[i][j] = #(i->j) - #(j->i)) together with the frozen set.
// Construction freezes every vertex that touches no arrow.
class Quiver {
 public:
  Quiver() = default;
  // `exchange` is row-major n*n; throws std::invalid_argument unless skew-symmetric.
  Quiver(std::size_t n, std::vector<std::int64_t> exchange, std::vector<bool> frozen);

  static Quiver from_arrows(std::size_t n, std::span<const Arrow> arrows,
                            std::span<const std::size_t> frozen = {});

  std::size_t size() const { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return b_[i * n_ + j]; }
  bool is_frozen(std::size_t v) const { return frozen_.at(v); }
  bool is_mutable(std::size_t v) const { return !frozen_.at(v); }
  std::vector<std::size_t> mutable_vertices() const;
  std::vector<std::size_t> frozen_vertices() const;
  std::size_t mutable_rank() const;
  const std::vector<std::int64_t>& exchange_matrix() const { return b_; }
  const std::vector<bool>& frozen_mask() const { return frozen_; }

  // Positive entries of B, ordered by (from, to).
  std::vector<Arrow> arrows() const;

  bool operator==(const Quiver&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> b_;
  std::vector<bool> frozen_;
};

// Three-step mutation rule in matrix form. Throws MutationAtFrozen.
Quiver mutate(const Quiver& q, std::size_t k);
// No directed cycle among mutable vertices.
bool is_acyclic(const Quiver& q);
// Smallest mutable vertex with no arrow to another mutable vertex.
std::optional<std::size_t> find_sink(const Quiver& q);
// Freezes `vertices` (already-frozen members are accepted) and re-imposes the
// isolated-vertex convention.
Quiver freeze(const Quiver& q, std::span<const std::size_t> vertices);

// Relabeling-invariant key: the lexicographically least (frozen flags, B)
// over all vertex permutations. Throws SizeLimit above `max_vertices`.
using CanonicalKey = std::vector<std::int64_t>;
CanonicalKey canonical_form(const Quiver& q, std::size_t max_vertices = 8);

// Quiver file: {"n": 3, "frozen": [2], "arrows": [[1,2,2],[2,3,2],[3,1,2]]}
// with 1-based vertices, plus an optional "vars" list of canonical renderings.
struct QuiverFile {
  Quiver quiver;
  std::optional<std::vector<std::string>> vars;
};
// Throws ParseError (line/column of the offending token where available).
QuiverFile parse_quiver_file(const std::string& text);
QuiverFile load_quiver_file(const std::string& path);
std::string quiver_to_json(const Quiver& q);
// Stable 64-bit FNV-1a digest of (n, frozen set, B), rendered as hex.
std::string quiver_hash(const Quiver& q);

}  // namespace cf
