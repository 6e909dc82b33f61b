#include "cf/seed.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <utility>

#include "cf/error.hpp"
#include "cf/text.hpp"

namespace cf {

namespace {

void check_terms(const LaurentPoly& f, const Limits& limits) {
  if (f.size() > limits.max_terms) throw BudgetExceeded("terms", limits.max_terms);
}

// Repeated multiplication, charging |a|*|b| term products against the budget
// before each step.
LaurentPoly product_of_powers(const Seed& s, std::size_t k, bool incoming, const Limits& limits,
                              std::size_t& used) {
  const Field field = s.field();
  const std::size_t n = s.size();
  LaurentPoly acc = LaurentPoly::constant(field, n, 1L);
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t b = incoming ? s.quiver(j, k) : s.quiver(k, j);
    for (std::int64_t r = 0; r < b; ++r) {
      used += acc.size() * s.vars[j].size();
      if (used > limits.max_products) throw BudgetExceeded("term-products", limits.max_products);
      acc = acc * s.vars[j];
      check_terms(acc, limits);
    }
  }
  return acc;
}

using SeedKey = std::pair<CanonicalKey, std::vector<LaurentPoly>>;

SeedKey seed_key(const Seed& s) {
  std::vector<LaurentPoly> vars = s.vars;
  std::sort(vars.begin(), vars.end());
  return {canonical_form(s.quiver), std::move(vars)};
}

// Substitution of a Laurent polynomial f(x) at x_i := values[i], written as
// x^shift * P(values) with P a polynomial, so only nonnegative powers of the
// values are formed. Returns P(values); `shift` receives min exponents of f.
class Substitution {
 public:
  Substitution(std::span<const LaurentPoly> values, const Limits& limits)
      : values_(values), limits_(limits), powers_(values.size()) {}

  LaurentPoly polynomial_part(const LaurentPoly& f, Exponents& shift) {
    const LaurentPoly& model = values_.front();
    LaurentPoly acc(model.field(), model.nvars());
    if (f.is_zero()) {
      shift = Exponents(f.nvars(), 0);
      return acc;
    }
    shift = f.min_exponents();
    for (const auto& t : f.terms()) {
      LaurentPoly term = LaurentPoly::constant(model.field(), model.nvars(), t.coeff);
      for (std::size_t i = 0; i < f.nvars(); ++i) {
        const auto e = static_cast<std::size_t>(t.exponents[i] - shift[i]);
        if (e > 0) term = term * power(i, e);
      }
      acc += term;
      check_terms(acc, limits_);
    }
    return acc;
  }

  const LaurentPoly& power(std::size_t i, std::size_t e) {
    auto& table = powers_[i];
    if (table.empty()) {
      table.push_back(LaurentPoly::constant(values_[i].field(), values_[i].nvars(), 1L));
    }
    while (table.size() <= e) {
      table.push_back(table.back() * values_[i]);
      check_terms(table.back(), limits_);
    }
    return table[e];
  }

 private:
  std::span<const LaurentPoly> values_;
  const Limits& limits_;
  std::vector<std::vector<LaurentPoly>> powers_;
};

}  // namespace

bool Seed::is_initial_chart() const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] != LaurentPoly::variable(field(), vars.size(), i)) return false;
  }
  return true;
}

Seed initial_seed(const Quiver& quiver, Field field) {
  Seed s;
  s.quiver = quiver;
  const std::size_t n = quiver.size();
  s.vars.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.vars.push_back(LaurentPoly::variable(field, n, i));
  return s;
}

Seed own_chart(const Seed& s) { return initial_seed(s.quiver, s.field()); }

Seed seed_from_file(const QuiverFile& file, Field field) {
  Seed s = initial_seed(file.quiver, field);
  if (file.vars) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      s.vars[i] = parse_laurent((*file.vars)[i], field, s.size());
    }
  }
  return s;
}

ExchangeMonomials exchange_monomials(const Seed& s, std::size_t k, const Limits& limits) {
  if (k >= s.size()) throw std::out_of_range("vertex out of range");
  if (s.quiver.is_frozen(k)) throw MutationAtFrozen(k);
  std::size_t used = 0;
  LaurentPoly plus = product_of_powers(s, k, true, limits, used);
  return {std::move(plus), product_of_powers(s, k, false, limits, used)};
}

Seed mutate(const Seed& s, std::size_t k, const Limits& limits) {
  const ExchangeMonomials em = exchange_monomials(s, k, limits);
  const LaurentPoly numerator = em.plus + em.minus;
  check_terms(numerator, limits);
  Seed out;
  out.quiver = mutate(s.quiver, k);
  out.vars = s.vars;
  try {
    out.vars[k] = exact_divide(numerator, s.vars[k], limits);
  } catch (const NotDivisible&) {
    throw LaurentViolation("exchange relation at vertex " + std::to_string(k + 1) +
                           " is not an exact Laurent division");
  }
  check_terms(out.vars[k], limits);
  out.path = s.path;
  out.path.push_back(k);
  return out;
}

Seed mutate_along(const Seed& s, std::span<const std::size_t> path, const Limits& limits) {
  Seed cur = s;
  for (std::size_t k : path) cur = mutate(cur, k, limits);
  return cur;
}

ExploreResult explore(const Seed& s0, std::size_t depth, const Limits& limits) {
  ExploreResult result;
  std::set<SeedKey> seen;
  std::set<LaurentPoly> variables(s0.vars.begin(), s0.vars.end());
  seen.insert(seed_key(s0));
  result.seeds.push_back(s0);
  std::vector<std::size_t> frontier{0};
  const auto mut = s0.quiver.mutable_vertices();
  if (mut.empty()) result.closed = true;

  for (std::size_t level = 1; level <= depth && !frontier.empty(); ++level) {
    const std::size_t jobs = frontier.size() * mut.size();
    std::vector<std::optional<Seed>> children(jobs);
    std::vector<std::exception_ptr> errors(jobs);
    const auto njobs = static_cast<std::int64_t>(jobs);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t job = 0; job < njobs; ++job) {
      const auto j = static_cast<std::size_t>(job);
      const Seed& parent = result.seeds[frontier[j / mut.size()]];
      const std::size_t k = mut[j % mut.size()];
      // Undoing the last step only returns the parent.
      if (!parent.path.empty() && parent.path.back() == k) continue;
      try {
        children[j] = mutate(parent, k, limits);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    std::vector<std::size_t> next;
    for (auto& child : children) {
      if (!child) continue;
      if (!seen.insert(seed_key(*child)).second) continue;
      variables.insert(child->vars.begin(), child->vars.end());
      next.push_back(result.seeds.size());
      result.seeds.push_back(std::move(*child));
      if (result.seeds.size() > limits.max_seeds) throw BudgetExceeded("seeds", limits.max_seeds);
    }
    result.levels = level;
    frontier = std::move(next);
    if (frontier.empty()) result.closed = true;
  }
  result.variables.assign(variables.begin(), variables.end());
  return result;
}

std::optional<LaurentPoly> express_in_cluster(const RationalExpr& g, const Seed& s0,
                                              std::span<const std::size_t> path,
                                              const Limits& limits) {
  const std::size_t n = s0.size();
  if (g.nvars() != n) throw std::invalid_argument("expression arity does not match the seed");
  const Field field = s0.field();
  if (g.field() != field) throw FieldMismatch("expression field does not match the seed");
  for (std::size_t k : path) {
    if (k >= n) throw std::out_of_range("path vertex out of range");
    if (s0.quiver.is_frozen(k)) throw MutationAtFrozen(k);
  }

  // Old cluster in the coordinates of the target cluster: mutate the target
  // seed back along the reversed path (each step is x = (p+ + p-)/x').
  Quiver target = s0.quiver;
  for (std::size_t k : path) target = mutate(target, k);
  std::vector<std::size_t> back(path.rbegin(), path.rend());
  const Seed old_in_new = mutate_along(initial_seed(target, field), back, limits);

  Substitution sub(old_in_new.vars, limits);
  Exponents num_shift;
  Exponents den_shift;
  LaurentPoly num = sub.polynomial_part(g.numerator(), num_shift);
  LaurentPoly den = sub.polynomial_part(g.denominator(), den_shift);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t w = std::int64_t{num_shift[i]} - den_shift[i];
    if (w > 0) num = num * sub.power(i, static_cast<std::size_t>(w));
    if (w < 0) den = den * sub.power(i, static_cast<std::size_t>(-w));
    check_terms(num, limits);
    check_terms(den, limits);
  }
  return try_exact_divide(num, den, limits);
}

std::vector<std::vector<std::size_t>> reduced_paths(const Quiver& q, std::size_t depth) {
  const auto mut = q.mutable_vertices();
  std::vector<std::vector<std::size_t>> all{{}};
  std::vector<std::vector<std::size_t>> layer{{}};
  for (std::size_t len = 1; len <= depth; ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : layer) {
      for (std::size_t k : mut) {
        if (!p.empty() && p.back() == k) continue;
        auto ext = p;
        ext.push_back(k);
        next.push_back(std::move(ext));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

MembershipVerdict upper_membership_sample(const RationalExpr& g, const Seed& s0,
                                          std::size_t depth, const Limits& limits) {
  const auto paths = reduced_paths(s0.quiver, depth);
  std::vector<char> ok(paths.size(), 0);
  std::vector<std::exception_ptr> errors(paths.size());
  const auto npaths = static_cast<std::int64_t>(paths.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < npaths; ++i) {
    try {
      ok[i] = express_in_cluster(g, s0, paths[i], limits).has_value() ? 1 : 0;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  MembershipVerdict verdict;
  verdict.depth = depth;
  verdict.paths_checked = paths.size();
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (ok[i] == 0) {
      verdict.in_all_sampled_clusters = false;
      verdict.failing_path = paths[i];
      verdict.paths_checked = i + 1;
      break;
    }
  }
  return verdict;
}

std::string render_path(std::span<const std::size_t> path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(path[i] + 1);
  }
  return out + "]";
}

}  // namespace cf
