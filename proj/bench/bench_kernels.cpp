// Serial reference kernels against the OpenMP kernels on the expansions that
// dominate the certificate suite.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <omp.h>

#include "cf/lowerbound.hpp"
#include "cf/showcase.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
             .count() / reps;
}

void compare(const std::string& label, const cf::LaurentPoly& a, const cf::LaurentPoly& b,
             int reps) {
  cf::LaurentPoly par;
  cf::LaurentPoly ser;
  const double t_ser = time_ms([&] { ser = cf::serial::mul(a, b); }, reps);
  const double t_par = time_ms([&] { par = cf::mul(a, b); }, reps);
  std::printf("%-34s %8zu x %-8zu -> %9zu terms  serial %9.2f ms  parallel %9.2f ms  %s\n",
              label.c_str(), a.size(), b.size(), par.size(), t_ser, t_par,
              par == ser ? "agree" : "DISAGREE");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  const cf::Seed markov = cf::markov_seed(2, cf::Field::rationals());

  for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
    const cf::LowerBoundPresentation pres = cf::lower_bound_generators(markov);
    const cf::LaurentPoly f = pres.f.to_field(cf::Field::prime(p));
    const cf::LaurentPoly half = cf::pow(f, (p - 1) / 2);
    compare("Markov f^" + std::to_string(p - 1) + " (F_" + std::to_string(p) + ")", half, half, 3);
  }

  const cf::RationalExpr M = cf::markov_M(2, cf::Field::prime(7));
  const cf::LaurentPoly m = *M.to_laurent();
  const cf::LaurentPoly m8 = cf::pow(m, 8);
  compare("Markov M^16 (F_7)", m8, m8, 3);

  const cf::ExploreResult r = cf::explore(markov, 4);
  const cf::LaurentPoly& big = r.variables.back();
  compare("Markov variable squared (Q)", big, big, 3);
  return 0;
}
