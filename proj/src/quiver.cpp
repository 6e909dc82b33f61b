#include "cf/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cf/error.hpp"

namespace cf {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("arrow count overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("arrow count overflow");
  return r;
}

int sgn(std::int64_t v) { return (v > 0) - (v < 0); }

}  // namespace

Quiver::Quiver(std::size_t n, std::vector<std::int64_t> exchange, std::vector<bool> frozen)
    : n_(n), b_(std::move(exchange)), frozen_(std::move(frozen)) {
  if (b_.size() != n * n) throw std::invalid_argument("exchange matrix must be n*n");
  if (frozen_.size() != n) throw std::invalid_argument("frozen mask must have length n");
  for (std::size_t i = 0; i < n; ++i) {
    if (b_[i * n + i] != 0) throw std::invalid_argument("exchange matrix has a loop");
    bool touches = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (b_[i * n + j] != -b_[j * n + i]) {
        throw std::invalid_argument("exchange matrix is not skew-symmetric");
      }
      touches = touches || b_[i * n + j] != 0;
    }
    if (!touches) frozen_[i] = true;
  }
}

Quiver Quiver::from_arrows(std::size_t n, std::span<const Arrow> arrows,
                           std::span<const std::size_t> frozen) {
  std::vector<std::int64_t> b(n * n, 0);
  for (const auto& a : arrows) {
    if (a.from >= n || a.to >= n) throw std::out_of_range("arrow endpoint out of range");
    if (a.from == a.to) throw std::invalid_argument("loops are not allowed");
    if (a.multiplicity < 0) throw std::invalid_argument("negative arrow multiplicity");
    b[a.from * n + a.to] = checked_add(b[a.from * n + a.to], a.multiplicity);
    b[a.to * n + a.from] = checked_add(b[a.to * n + a.from], -a.multiplicity);
  }
  std::vector<bool> mask(n, false);
  for (std::size_t v : frozen) mask.at(v) = true;
  return Quiver(n, std::move(b), std::move(mask));
}

std::vector<std::size_t> Quiver::mutable_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n_; ++v) {
    if (!frozen_[v]) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> Quiver::frozen_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n_; ++v) {
    if (frozen_[v]) out.push_back(v);
  }
  return out;
}

std::size_t Quiver::mutable_rank() const {
  return static_cast<std::size_t>(std::count(frozen_.begin(), frozen_.end(), false));
}

std::vector<Arrow> Quiver::arrows() const {
  std::vector<Arrow> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (b_[i * n_ + j] > 0) out.push_back(Arrow{i, j, b_[i * n_ + j]});
    }
  }
  return out;
}

Quiver mutate(const Quiver& q, std::size_t k) {
  const std::size_t n = q.size();
  if (k >= n) throw std::out_of_range("mutation vertex out of range");
  if (q.is_frozen(k)) throw MutationAtFrozen(k);
  std::vector<std::int64_t> b(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k) {
        b[i * n + j] = -q(i, j);
      } else {
        const std::int64_t through = checked_mul(q(i, k), q(k, j));
        b[i * n + j] = checked_add(q(i, j), sgn(q(i, k)) * std::max<std::int64_t>(through, 0));
      }
    }
  }
  return Quiver(n, std::move(b), q.frozen_mask());
}

bool is_acyclic(const Quiver& q) {
  const std::size_t n = q.size();
  // Kahn's algorithm on the mutable subquiver.
  std::vector<std::size_t> indegree(n, 0);
  const auto mut = q.mutable_vertices();
  for (std::size_t i : mut) {
    for (std::size_t j : mut) {
      if (q(i, j) > 0) ++indegree[j];
    }
  }
  std::vector<std::size_t> ready;
  for (std::size_t v : mut) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t j : mut) {
      if (q(v, j) > 0 && --indegree[j] == 0) ready.push_back(j);
    }
  }
  return removed == mut.size();
}

std::optional<std::size_t> find_sink(const Quiver& q) {
  const auto mut = q.mutable_vertices();
  for (std::size_t k : mut) {
    const bool sink =
        std::all_of(mut.begin(), mut.end(), [&](std::size_t j) { return q(k, j) <= 0; });
    if (sink) return k;
  }
  return std::nullopt;
}

Quiver freeze(const Quiver& q, std::span<const std::size_t> vertices) {
  std::vector<bool> mask = q.frozen_mask();
  for (std::size_t v : vertices) {
    if (v >= q.size()) throw std::out_of_range("freeze vertex out of range");
    mask[v] = true;
  }
  return Quiver(q.size(), q.exchange_matrix(), std::move(mask));
}

CanonicalKey canonical_form(const Quiver& q, std::size_t max_vertices) {
  const std::size_t n = q.size();
  if (n > max_vertices) {
    throw SizeLimit("canonical_form supports at most " + std::to_string(max_vertices) +
                    " vertices, got " + std::to_string(n));
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CanonicalKey best;
  CanonicalKey key(1 + n + n * n);
  do {
    // perm[new] = old
    key[0] = static_cast<std::int64_t>(n);
    for (std::size_t v = 0; v < n; ++v) key[1 + v] = q.is_frozen(perm[v]) ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) key[1 + n + i * n + j] = q(perm[i], perm[j]);
    }
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best.empty()) best = {0};
  return best;
}

}  // namespace cf
