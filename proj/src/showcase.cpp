#include "cf/showcase.hpp"

#include <exception>
#include <numeric>
#include <stdexcept>

#include "cf/error.hpp"
#include "cf/text.hpp"

namespace cf {

namespace {

void require_a(int a, int least) {
  if (a < least) throw std::invalid_argument("parameter a must be at least " + std::to_string(least));
}

LaurentPoly power_sum(int a, Field field) {
  LaurentPoly sum(field, 3);
  for (std::size_t i = 0; i < 3; ++i) sum += LaurentPoly::variable(field, 3, i, a);
  return sum;
}

LaurentPoly xyz(Field field) { return LaurentPoly::monomial(field, Exponents{1, 1, 1}); }

}  // namespace

Seed markov_seed(int a, Field field) {
  require_a(a, 2);
  const std::vector<Arrow> arrows{{0, 1, a}, {1, 2, a}, {2, 0, a}};
  return initial_seed(Quiver::from_arrows(3, arrows), field);
}

RationalExpr markov_M(int a, Field field) {
  require_a(a, 2);
  return RationalExpr(power_sum(a, field), xyz(field));
}

bool markov_relation_holds(int a, Field field) {
  const RationalExpr relation =
      RationalExpr(xyz(field)) * markov_M(a, field) - RationalExpr(power_sum(a, field));
  return relation.is_zero();
}

std::int64_t Grading::degree(const Exponents& x_powers, unsigned m_power) const {
  return std::accumulate(x_powers.begin(), x_powers.end(), std::int64_t{0}) +
         static_cast<std::int64_t>(m_power) * degree_of_M();
}

std::optional<std::int64_t> homogeneous_degree(const LaurentPoly& f) {
  if (f.is_zero()) return std::nullopt;
  std::optional<std::int64_t> degree;
  for (const auto& t : f.terms()) {
    const std::int64_t d = std::accumulate(t.exponents.begin(), t.exponents.end(), std::int64_t{0});
    if (degree && *degree != d) return std::nullopt;
    degree = d;
  }
  return degree;
}

MarkovFregCertificate markov_freg_certificate(std::uint64_t p, unsigned e, const Limits& limits) {
  if (p == 2 || p == 3) {
    throw BadCharacteristic("the twist M^3/6 needs 6 to be invertible; characteristic " +
                            std::to_string(p) + " is excluded");
  }
  const Field field = Field::prime(p);
  const RationalExpr M = markov_M(2, field);
  RationalExpr twist = M * M * M;
  twist *= RationalExpr(LaurentPoly::constant(field, 3, Coefficient(field, 6L).inverse()));
  const SplittingMap map(p, e, twist);
  const LaurentPoly c = xyz(field);
  const SplitResult r = split_apply(map, RationalExpr(c), limits);

  MarkovFregCertificate cert;
  cert.prime = p;
  cert.e = e;
  cert.twist = render(twist);
  cert.checked_element = render(c);
  cert.value = r.laurent ? render(*r.laurent) : render(r.value);
  cert.pass = r.laurent.has_value() && r.laurent->is_one();
  return cert;
}

bool ObstructionReport::pass() const {
  if (!m_degree_matches || !relation_homogeneous) return false;
  for (const auto& s : samples) {
    if (!s.positive_or_zero) return false;
  }
  return true;
}

std::vector<GradedMonomial> obstruction_sample(int a, unsigned x_degree, unsigned m_power) {
  const Grading grading{a};
  std::vector<GradedMonomial> out;
  for (unsigned c = 0; c <= m_power; ++c) {
    for (unsigned total = 0; total <= x_degree; ++total) {
      for (unsigned b1 = total + 1; b1-- > 0;) {
        for (unsigned b2 = total - b1 + 1; b2-- > 0;) {
          const unsigned b3 = total - b1 - b2;
          Exponents b{static_cast<std::int32_t>(b1), static_cast<std::int32_t>(b2),
                      static_cast<std::int32_t>(b3)};
          if (grading.degree(b, c) > 0) out.push_back(GradedMonomial{std::move(b), c});
        }
      }
    }
  }
  return out;
}

ObstructionReport graded_obstruction_check(int a, std::uint64_t p, unsigned e,
                                           const std::vector<GradedMonomial>& sample,
                                           const Limits& limits) {
  require_a(a, 3);
  const Field field = Field::prime(p);
  const Grading grading{a};
  const RationalExpr M = markov_M(a, field);
  // M has a monomial denominator, so its expansion is Laurent.
  const LaurentPoly m_laurent = *M.to_laurent(limits);

  ObstructionReport report;
  report.a = a;
  report.prime = p;
  report.e = e;
  report.degree_of_M = grading.degree_of_M();
  report.m_degree_matches =
      homogeneous_degree(m_laurent) == grading.degree_of_M() && grading.degree_of_M() >= 0;
  const LaurentPoly lhs = xyz(field) * m_laurent;
  const LaurentPoly relation = lhs - power_sum(a, field);
  report.relation_homogeneous = relation.is_zero() && homogeneous_degree(lhs) == a &&
                                homogeneous_degree(power_sum(a, field)) == a;

  std::vector<LaurentPoly> m_powers{LaurentPoly::constant(field, 3, 1L)};
  report.samples.resize(sample.size());
  unsigned max_power = 0;
  for (const auto& g : sample) max_power = std::max(max_power, g.m_power);
  while (m_powers.size() <= max_power) m_powers.push_back(m_powers.back() * m_laurent);

  std::vector<std::exception_ptr> errors(sample.size());
  const auto count = static_cast<std::int64_t>(sample.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      const GradedMonomial& g = sample[i];
      ObstructionSample& out = report.samples[i];
      out.monomial = g;
      out.degree = grading.degree(g.x_powers, g.m_power);
      const LaurentPoly f = m_powers[g.m_power].shifted(g.x_powers);
      const LaurentPoly image = standard_split(f, p, e);
      out.image = render(image);
      bool ok = out.degree > 0;
      for (const auto& t : image.terms()) {
        const std::int64_t d =
            std::accumulate(t.exponents.begin(), t.exponents.end(), std::int64_t{0});
        ok = ok && d > 0;
      }
      out.positive_or_zero = ok;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return report;
}

bool cluster_variables_have_degree_one(const ExploreResult& explored) {
  for (const auto& v : explored.variables) {
    if (homogeneous_degree(v) != std::optional<std::int64_t>(1)) return false;
  }
  return true;
}

}  // namespace cf
