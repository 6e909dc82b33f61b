#include "cf/lowerbound.hpp"

#include <exception>
#include <stdexcept>

#include "cf/error.hpp"
#include "cf/frobenius.hpp"

namespace cf {

namespace {

LaurentPoly over(const LaurentPoly& f, std::uint64_t p) {
  const Field target = Field::prime(p);
  if (f.field().is_rational()) return f.to_field(target);
  if (f.field() != target) throw FieldMismatch("presentation lives over " + f.field().name());
  return f;
}

// Lifts an n-variable polynomial into the first n of 2n variables.
LaurentPoly lift(const LaurentPoly& f, std::size_t n) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Exponents e(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = t.exponents[i];
    terms.push_back(Term{std::move(e), t.coeff});
  }
  // Padding with trailing zeros keeps the order.
  return LaurentPoly::from_sorted_terms(f.field(), 2 * n, std::move(terms));
}

class ProductBudget {
 public:
  explicit ProductBudget(const Limits& limits) : limits_(limits) {}

  LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b) {
    used_ += a.size() * b.size();
    if (used_ > limits_.max_products) throw BudgetExceeded("term-products", limits_.max_products);
    LaurentPoly out = a * b;
    if (out.size() > limits_.max_terms) throw BudgetExceeded("terms", limits_.max_terms);
    return out;
  }

 private:
  const Limits& limits_;
  std::size_t used_ = 0;
};

}  // namespace

LowerBoundPresentation lower_bound_generators(const Seed& s) {
  if (!s.is_initial_chart()) {
    throw std::invalid_argument("lower bound presentation needs a seed in its initial chart");
  }
  const Field field = s.field();
  const std::size_t n = s.size();
  LowerBoundPresentation pres;
  pres.base = s;
  pres.f = LaurentPoly::constant(field, 2 * n, 1L);
  for (std::size_t i = 0; i < n; ++i) {
    Exponents in(n, 0);
    Exponents out(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t b = s.quiver(j, i);
      if (b > 0) in[j] = static_cast<std::int32_t>(b);
      if (b < 0) out[j] = static_cast<std::int32_t>(-b);
    }
    pres.plus.push_back(LaurentPoly::monomial(field, in));
    pres.minus.push_back(LaurentPoly::monomial(field, out));
  }
  for (std::size_t i = 0; i < n; ++i) pres.generators.emplace_back(s.vars[i]);
  for (std::size_t i = 0; i < n; ++i) {
    pres.generators.emplace_back(pres.plus[i] + pres.minus[i], s.vars[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Exponents xy(2 * n, 0);
    xy[i] = 1;
    xy[n + i] = 1;
    LaurentPoly g = LaurentPoly::monomial(field, xy) - lift(pres.plus[i], n) - lift(pres.minus[i], n);
    pres.f = pres.f * g;
    pres.relations.push_back(std::move(g));
  }
  return pres;
}

std::vector<std::string> lower_bound_variable_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) names.push_back("y" + std::to_string(i + 1));
  return names;
}

LaurentPoly f_power(const LowerBoundPresentation& pres, std::uint64_t p, std::uint64_t k,
                    const Limits& limits) {
  ProductBudget budget(limits);
  const Field field = Field::prime(p);
  const std::size_t nv = 2 * pres.rank();
  LaurentPoly acc = LaurentPoly::constant(field, nv, 1L);
  for (const auto& g0 : pres.relations) {
    const LaurentPoly g = over(g0, p);
    LaurentPoly gk = LaurentPoly::constant(field, nv, 1L);
    for (std::uint64_t i = 0; i < k; ++i) gk = budget.multiply(gk, g);
    acc = budget.multiply(acc, gk);
  }
  return acc;
}

LaurentPoly psi_extract(const LaurentPoly& expanded, std::uint64_t p) {
  const auto pp = static_cast<std::int64_t>(p);
  std::vector<Term> out;
  for (const auto& t : expanded.terms()) {
    bool keep = true;
    for (std::int32_t a : t.exponents) {
      if (a < 0) throw std::invalid_argument("psi is defined on polynomials only");
      keep = keep && (a % pp == pp - 1);
    }
    if (!keep) continue;
    Exponents e(t.exponents.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = static_cast<std::int32_t>((t.exponents[i] - (pp - 1)) / pp);
    }
    out.push_back(Term{std::move(e), t.coeff});
  }
  // a -> (a - p + 1) / p is strictly increasing on the kept residues.
  return LaurentPoly::from_sorted_terms(expanded.field(), expanded.nvars(), std::move(out));
}

LaurentPoly psi_f_apply(const LowerBoundPresentation& pres, const LaurentPoly& r, std::uint64_t p,
                        const Limits& limits) {
  if (!r.is_polynomial()) throw std::invalid_argument("r must have nonnegative exponents");
  if (r.nvars() != 2 * pres.rank()) throw std::invalid_argument("r must live in 2n variables");
  const LaurentPoly fp1 = f_power(pres, p, p - 1, limits);
  const LaurentPoly rp = over(r, p);
  if (fp1.size() * rp.size() > limits.max_products) {
    throw BudgetExceeded("term-products", limits.max_products);
  }
  return psi_extract(fp1 * rp, p);
}

bool verify_lb_splitting(const LowerBoundPresentation& pres, std::uint64_t p,
                         const Limits& limits) {
  const LaurentPoly one = LaurentPoly::constant(Field::prime(p), 2 * pres.rank(), 1L);
  return psi_f_apply(pres, one, p, limits).is_one();
}

bool CompatReport::pass() const {
  for (const auto& s : samples) {
    if (!s.divisible) return false;
  }
  return true;
}

CompatReport compat_check(const LowerBoundPresentation& pres, std::uint64_t p,
                          std::span<const LaurentPoly> samples, const Limits& limits) {
  const LaurentPoly fp = f_power(pres, p, p, limits);
  const LaurentPoly f = over(pres.f, p);
  CompatReport report;
  report.prime = p;
  report.samples.resize(samples.size());
  std::vector<std::exception_ptr> errors(samples.size());
  const auto count = static_cast<std::int64_t>(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      CompatSample& out = report.samples[i];
      out.g = over(samples[i], p);
      if (!out.g.is_polynomial() || out.g.nvars() != f.nvars()) {
        throw std::invalid_argument("compatibility samples must be polynomials in 2n variables");
      }
      if (fp.size() * out.g.size() > limits.max_products) {
        throw BudgetExceeded("term-products", limits.max_products);
      }
      // f^{p-1} (f g) = f^p g
      out.image = psi_extract(fp * out.g, p);
      out.divisible = out.image.is_zero() || try_exact_divide(out.image, f, limits).has_value();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return report;
}

std::vector<LaurentPoly> monomial_samples(std::size_t n, unsigned degree, std::uint64_t p) {
  const Field field = Field::prime(p);
  const std::size_t nv = 2 * n;
  std::vector<LaurentPoly> out;
  Exponents cur(nv, 0);
  // Odometer over [0, degree]^{2n}, keeping total degree <= degree.
  while (true) {
    std::int64_t total = 0;
    for (std::int32_t a : cur) total += a;
    if (total <= degree) out.push_back(LaurentPoly::monomial(field, cur));
    std::size_t i = nv;
    bool done = true;
    while (i > 0) {
      --i;
      if (++cur[i] <= static_cast<std::int32_t>(degree)) {
        done = false;
        break;
      }
      cur[i] = 0;
    }
    if (done || nv == 0) break;
  }
  return out;
}

bool localization_identity_holds(const LowerBoundPresentation& pres) {
  const std::size_t n = pres.rank();
  const Field field = pres.base.field();
  for (const auto& g : pres.relations) {
    RationalExpr value(LaurentPoly(field, n));
    for (const auto& t : g.terms()) {
      RationalExpr term(LaurentPoly::constant(field, n, t.coeff));
      for (std::size_t v = 0; v < 2 * n; ++v) {
        for (std::int32_t e = 0; e < t.exponents[v]; ++e) term *= pres.generators[v];
      }
      value += term;
    }
    if (!value.is_zero()) return false;
  }
  return true;
}

}  // namespace cf
