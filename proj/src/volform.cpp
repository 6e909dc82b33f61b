#include "cf/volform.hpp"

#include <stdexcept>
#include <vector>

#include "cf/error.hpp"
#include "cf/text.hpp"

namespace cf {

LaurentPoly determinant(std::span<const LaurentPoly> m, std::size_t n) {
  if (m.size() != n * n) throw std::invalid_argument("matrix shape mismatch");
  if (n == 0) throw std::invalid_argument("empty matrix");
  if (n > 16) throw SizeLimit("determinant limited to 16 x 16");
  // minors[S] = det of rows 0..|S|-1 against the column set S, expanded along
  // the last row.
  const std::size_t full = std::size_t{1} << n;
  std::vector<LaurentPoly> minors(full, LaurentPoly(m[0].field(), m[0].nvars()));
  minors[0] = LaurentPoly::constant(m[0].field(), m[0].nvars(), 1L);
  for (std::size_t set = 1; set < full; ++set) {
    const auto row = static_cast<std::size_t>(__builtin_popcountll(set)) - 1;
    LaurentPoly acc(m[0].field(), m[0].nvars());
    for (std::size_t col = 0; col < n; ++col) {
      if ((set & (std::size_t{1} << col)) == 0) continue;
      const std::size_t rest = set & ~(std::size_t{1} << col);
      const std::size_t later = static_cast<std::size_t>(__builtin_popcountll(set >> (col + 1)));
      const LaurentPoly& entry = m[row * n + col];
      if (!entry.is_zero() && !minors[rest].is_zero()) {
        const LaurentPoly t = entry * minors[rest];
        if (later % 2 == 0) acc += t;
        else acc -= t;
      }
    }
    minors[set] = std::move(acc);
  }
  return minors[full - 1];
}

LogVolumeForm log_volume_form(const Seed& s, const Limits& limits) {
  const std::size_t n = s.size();
  const Field field = s.field();
  std::vector<LaurentPoly> jac;
  jac.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) jac.push_back(partial_derivative(s.vars[i], j));
  }
  LaurentPoly prod_x = LaurentPoly::monomial(field, Exponents(n, 1));
  LaurentPoly prod_vars = LaurentPoly::constant(field, n, 1L);
  for (const auto& v : s.vars) prod_vars = prod_vars * v;
  LogVolumeForm form;
  form.chart = s;
  form.coefficient = RationalExpr(determinant(jac, n) * prod_x, prod_vars);
  form.sign = 0;
  if (auto c = form.coefficient.to_laurent(limits)) {
    const LaurentPoly one = LaurentPoly::constant(field, n, 1L);
    if (*c == one) form.sign = 1;
    if (*c == -one) form.sign = -1;
  }
  return form;
}

VolumeSignReport volume_form_mutation_sign(const Seed& s, std::size_t k, const Limits& limits) {
  const Seed chart = own_chart(s);
  const Seed next = mutate(chart, k, limits);
  const LaurentPoly& xk = chart.vars[k];
  const LaurentPoly& xk_new = next.vars[k];
  const LaurentPoly identity = xk * partial_derivative(xk_new, k) + xk_new;

  VolumeSignReport report;
  report.vertex = k;
  report.mutated_variable = render(xk_new);
  report.identity = render(xk) + "*d/dx" + std::to_string(k + 1) + "(" + report.mutated_variable +
                    ") + " + report.mutated_variable + " = " + render(identity);
  report.identity_holds = identity.is_zero();
  if (!report.identity_holds) {
    throw VerificationFailed("volume form identity fails at vertex " + std::to_string(k + 1) +
                             ": " + render(identity));
  }
  // d x_k'/d x_k = -x_k'/x_k and every other Jacobian entry is the identity.
  report.sign = -1;
  return report;
}

int path_sign(const Seed& s, std::span<const std::size_t> path, const Limits& limits) {
  int sign = 1;
  Seed cur = s;
  for (std::size_t k : path) {
    sign *= volume_form_mutation_sign(cur, k, limits).sign;
    cur = mutate(cur, k, limits);
  }
  return sign;
}

}  // namespace cf
