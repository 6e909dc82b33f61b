#include "cf/frobenius.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "cf/error.hpp"
#include "cf/text.hpp"

namespace cf {

namespace {

Field prime_field_for(std::uint64_t p) { return Field::prime(p); }

void check_over(const LaurentPoly& f, std::uint64_t p) {
  if (f.field() != Field::prime(p)) {
    throw FieldMismatch("expected a polynomial over F_" + std::to_string(p) + ", got " +
                        f.field().name());
  }
}

RationalExpr over(const RationalExpr& r, std::uint64_t p) {
  return r.field().is_rational() ? r.to_field(Field::prime(p)) : r;
}

}  // namespace

std::uint64_t prime_power(std::uint64_t p, unsigned e) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(q, p, &q) || q > (1ULL << 31)) {
      throw std::overflow_error("p^e is too large");
    }
  }
  return q;
}

LaurentPoly standard_split(const LaurentPoly& f, std::uint64_t p, unsigned e) {
  if (e == 0) throw std::invalid_argument("splitting iterate e must be at least 1");
  check_over(f, p);
  const auto q = static_cast<std::int64_t>(prime_power(p, e));
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    bool divisible = true;
    for (std::int32_t a : t.exponents) divisible = divisible && (a % q == 0);
    if (!divisible) continue;
    Exponents root(t.exponents.size());
    for (std::size_t i = 0; i < root.size(); ++i) {
      root[i] = static_cast<std::int32_t>(t.exponents[i] / q);
    }
    out.push_back(Term{std::move(root), t.coeff});
  }
  return LaurentPoly::from_sorted_terms(f.field(), f.nvars(), std::move(out));
}

SplittingMap::SplittingMap(std::uint64_t p, unsigned e, RationalExpr twist)
    : p_(p), e_(e), twist_(std::move(twist)) {
  if (!is_prime_number(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (e == 0) throw std::invalid_argument("splitting iterate e must be at least 1");
  twist_ = over(twist_, p);
  if (twist_.field() != Field::prime(p)) throw FieldMismatch("twist must live over F_p");
}

SplittingMap untwisted(std::uint64_t p, unsigned e, std::size_t nvars) {
  const Field f = prime_field_for(p);
  return SplittingMap(p, e, RationalExpr(LaurentPoly::constant(f, nvars, 1L)));
}

SplitResult split_apply(const SplittingMap& m, const RationalExpr& r, const Limits& limits) {
  const RationalExpr twisted = m.twist() * over(r, m.prime());
  const std::uint64_t q = prime_power(m.prime(), m.iterations());
  const LaurentPoly& b = twisted.denominator();
  const LaurentPoly cleared = twisted.numerator() * pow(b, q - 1);
  if (cleared.size() > limits.max_terms) throw BudgetExceeded("terms", limits.max_terms);
  LaurentPoly num = standard_split(cleared, m.prime(), m.iterations());
  SplitResult out{RationalExpr(num, b), std::nullopt};
  out.laurent = try_exact_divide(num, b, limits);
  return out;
}

namespace {

// Every vector in [0, p)^n, lexicographic.
std::vector<Exponents> basis_vectors(std::uint64_t p, std::size_t n) {
  std::vector<Exponents> out;
  Exponents cur(n, 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (static_cast<std::uint64_t>(++cur[i]) < p) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

bool in_basis(const Exponents& a, std::uint64_t p, std::size_t n) {
  if (a.size() != n) return false;
  for (std::int32_t v : a) {
    if (v < 0 || static_cast<std::uint64_t>(v) >= p) return false;
  }
  return true;
}

}  // namespace

LaurentPoly hom_generator(std::uint64_t p, std::size_t nvars, const BasisValues& values) {
  const Field field = Field::prime(p);
  LaurentPoly s(field, nvars);
  for (const auto& [a, v] : values) {
    if (!in_basis(a, p, nvars)) throw std::invalid_argument("value given off the monomial basis");
    check_over(v, p);
    if (v.nvars() != nvars) throw std::invalid_argument("value arity mismatch");
    s += pow(v, p).shifted(scale_exponents(a, -1));
  }
  for (const auto& b : basis_vectors(p, nvars)) {
    const LaurentPoly got = standard_split(s.shifted(b), p, 1);
    auto it = values.find(b);
    const LaurentPoly want = it == values.end() ? LaurentPoly(field, nvars) : it->second;
    if (got != want) {
      throw VerificationFailed("reconstructed map disagrees on basis monomial " +
                               render(LaurentPoly::monomial(field, b)));
    }
  }
  return s;
}

BasisValues basis_values(const LaurentPoly& s, std::uint64_t p) {
  check_over(s, p);
  BasisValues out;
  for (const auto& a : basis_vectors(p, s.nvars())) {
    LaurentPoly v = standard_split(s.shifted(a), p, 1);
    if (!v.is_zero()) out.emplace(a, std::move(v));
  }
  return out;
}

bool InvarianceReport::all_equal() const {
  for (const auto& s : samples) {
    if (!s.equal) return false;
  }
  return true;
}

std::vector<Exponents> exponent_box(std::size_t nvars, std::int32_t bound) {
  std::vector<Exponents> out;
  Exponents cur(nvars, -bound);
  if (bound < 0) return out;
  while (true) {
    out.push_back(cur);
    std::size_t i = nvars;
    bool carried_out = true;
    while (i > 0) {
      --i;
      if (++cur[i] <= bound) {
        carried_out = false;
        break;
      }
      cur[i] = -bound;
    }
    if (carried_out) return out;
  }
}

InvarianceReport splitting_invariance_check(const Seed& s0, std::size_t k, std::uint64_t p,
                                            std::span<const Exponents> sample,
                                            const Limits& limits) {
  const Field field = Field::prime(p);
  const Seed chart = initial_seed(s0.quiver, field);
  const std::size_t n = chart.size();
  const ExchangeMonomials em = exchange_monomials(chart, k);
  const LaurentPoly numerator = em.plus + em.minus;
  const SplittingMap phi = untwisted(p, 1, n);
  const std::vector<std::size_t> path{k};
  const std::vector<std::string> new_names = [&] {
    auto names = default_variable_names(n);
    names[k] += "'";
    return names;
  }();

  InvarianceReport report;
  report.vertex = k;
  report.prime = p;
  report.samples.resize(sample.size());
  std::vector<std::exception_ptr> errors(sample.size());
  const auto count = static_cast<std::int64_t>(sample.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const Exponents& alpha = sample[idx];
    InvarianceSample& out = report.samples[idx];
    try {
      if (alpha.size() != n) throw std::invalid_argument("sample exponent arity mismatch");
      out.alpha = alpha;
      // x'^alpha = (p+ + p-)^{alpha_k} x_k^{-alpha_k} prod_{j != k} x_j^{alpha_j}
      Exponents mono = alpha;
      mono[k] = -alpha[k];
      LaurentPoly num = LaurentPoly::monomial(field, mono);
      LaurentPoly den = LaurentPoly::constant(field, n, 1L);
      if (alpha[k] >= 0) {
        num = num * pow(numerator, static_cast<std::uint64_t>(alpha[k]));
      } else {
        den = pow(numerator, static_cast<std::uint64_t>(-std::int64_t{alpha[k]}));
      }
      const SplitResult lhs = split_apply(phi, RationalExpr(num, den), limits);
      const auto via_old = express_in_cluster(lhs.value, chart, path, limits);
      const LaurentPoly direct = standard_split(LaurentPoly::monomial(field, alpha), p, 1);
      out.in_new_cluster = render(direct, new_names);
      out.via_old_cluster = via_old ? render(*via_old, new_names) : "not Laurent";
      out.equal = via_old.has_value() && *via_old == direct;
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return report;
}

FregWitness freg_witness_sink(const Seed& s, std::uint64_t p, const Limits& limits) {
  const Field field = Field::prime(p);
  if (s.quiver.mutable_rank() == 0) throw NoMutableVertex("seed has no mutable vertex");
  if (!is_acyclic(s.quiver)) throw NotAcyclic("mutable part of the quiver has a directed cycle");
  const Seed chart = initial_seed(s.quiver, field);
  const std::size_t n = chart.size();
  const std::size_t k = *find_sink(chart.quiver);
  const ExchangeMonomials em = exchange_monomials(chart, k);

  std::int64_t largest = 0;
  for (const LaurentPoly* m : {&em.plus, &em.minus}) {
    for (std::int32_t a : m->leading_term().exponents) largest = std::max<std::int64_t>(largest, a);
  }
  unsigned e = 1;
  while (static_cast<std::int64_t>(prime_power(p, e)) <= largest) ++e;

  const LaurentPoly xk = LaurentPoly::variable(field, n, k);
  RationalExpr twist(em.plus + em.minus, xk * em.minus);
  SplittingMap map(p, e, twist);
  SplitResult value = split_apply(map, RationalExpr(xk), limits);
  const bool verified = value.laurent.has_value() && value.laurent->is_one();
  return FregWitness{k, e, em.plus, em.minus, std::move(map), std::move(value.value), verified};
}

bool test_element_verify(const LaurentPoly& c, const SplittingMap& m, const Limits& limits) {
  const SplitResult r = split_apply(m, RationalExpr(c), limits);
  return r.laurent.has_value() && r.laurent->is_one();
}

}  // namespace cf
