#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cf/laurent.hpp"
#include "cf/quiver.hpp"
#include "cf/seed.hpp"

namespace cft {

// Property tests draw from this seed; override with CF_TEST_SEED.
inline std::uint64_t test_seed() {
  if (const char* env = std::getenv("CF_TEST_SEED")) return std::strtoull(env, nullptr, 10);
  return 20261014ULL;
}

inline std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(test_seed() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

inline std::string corpus(const std::string& name) {
  return std::string(CF_CORPUS_DIR) + "/" + name + ".quiver";
}

inline cf::Seed corpus_seed(const std::string& name, cf::Field field = cf::Field::rationals()) {
  return cf::seed_from_file(cf::load_quiver_file(corpus(name)), field);
}

inline cf::LaurentPoly random_laurent(std::mt19937_64& rng, cf::Field field, std::size_t nvars,
                                      std::size_t max_terms, int lo, int hi, long cmax = 5) {
  std::uniform_int_distribution<std::size_t> nterms(1, max_terms);
  std::uniform_int_distribution<int> exp(lo, hi);
  std::uniform_int_distribution<long> coeff(-cmax, cmax);
  std::vector<cf::Term> terms;
  const std::size_t k = nterms(rng);
  for (std::size_t t = 0; t < k; ++t) {
    cf::Exponents e(nvars);
    for (auto& a : e) a = exp(rng);
    long c = coeff(rng);
    if (c == 0) c = 1;
    terms.push_back(cf::Term{e, cf::Coefficient(field, c)});
  }
  return cf::LaurentPoly::from_terms(field, nvars, std::move(terms));
}

inline cf::LaurentPoly random_nonzero(std::mt19937_64& rng, cf::Field field, std::size_t nvars,
                                      std::size_t max_terms, int lo, int hi) {
  while (true) {
    auto f = random_laurent(rng, field, nvars, max_terms, lo, hi);
    if (!f.is_zero()) return f;
  }
}

// Independent dense reference arithmetic: exponent vectors as std::vector<int>,
// rational coefficients reduced mod p by hand when p != 0.
struct Oracle {
  std::uint64_t p = 0;
  std::size_t nvars = 0;
  std::map<std::vector<int>, mpq_class> terms;

  void reduce() {
    for (auto it = terms.begin(); it != terms.end();) {
      if (p != 0) {
        mpz_class r = it->second.get_num() % mpz_class(static_cast<unsigned long>(p));
        if (r < 0) r += static_cast<unsigned long>(p);
        it->second = mpq_class(r);
      }
      if (it->second == 0) it = terms.erase(it);
      else ++it;
    }
  }
};

inline Oracle to_oracle(const cf::LaurentPoly& f) {
  Oracle o;
  o.p = f.field().characteristic();
  o.nvars = f.nvars();
  for (const auto& t : f.terms()) {
    std::vector<int> e(t.exponents.begin(), t.exponents.end());
    o.terms[e] = f.field().is_rational() ? t.coeff.rational()
                                         : mpq_class(static_cast<unsigned long>(t.coeff.residue()));
  }
  return o;
}

inline cf::LaurentPoly from_oracle(const Oracle& o) {
  const cf::Field field = o.p == 0 ? cf::Field::rationals() : cf::Field::prime(o.p);
  std::vector<cf::Term> terms;
  for (const auto& [e, c] : o.terms) {
    terms.push_back(cf::Term{cf::Exponents(e.begin(), e.end()), cf::Coefficient(field, c)});
  }
  return cf::LaurentPoly::from_terms(field, o.nvars, std::move(terms));
}

inline Oracle oracle_mul(const Oracle& a, const Oracle& b) {
  Oracle out{a.p, a.nvars, {}};
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.terms[e] += ca * cb;
    }
  }
  out.reduce();
  return out;
}

inline Oracle oracle_pow(const Oracle& a, unsigned k) {
  Oracle out{a.p, a.nvars, {{std::vector<int>(a.nvars, 0), mpq_class(1)}}};
  for (unsigned i = 0; i < k; ++i) out = oracle_mul(out, a);
  return out;
}

// Random skew-symmetric exchange data; vertices freeze with probability 1/4.
inline cf::Quiver random_quiver(std::mt19937_64& rng, std::size_t n, int max_mult = 2) {
  std::uniform_int_distribution<int> mult(-max_mult, max_mult);
  std::bernoulli_distribution frozen(0.25);
  std::vector<std::int64_t> b(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      b[i * n + j] = mult(rng);
      b[j * n + i] = -b[i * n + j];
    }
  }
  std::vector<bool> fr(n);
  for (std::size_t i = 0; i < n; ++i) fr[i] = frozen(rng);
  return cf::Quiver(n, std::move(b), std::move(fr));
}

inline cf::LaurentPoly x(cf::Field field, std::size_t n, std::size_t i, int power = 1) {
  return cf::LaurentPoly::variable(field, n, i, power);
}

inline cf::LaurentPoly c(cf::Field field, std::size_t n, long v) {
  return cf::LaurentPoly::constant(field, n, v);
}

}  // namespace cft
