#include <algorithm>
#include <climits>
#include <cstdint>
#include <stdexcept>
#include <exception>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include <omp.h>

#include "cf/error.hpp"
#include "cf/laurent.hpp"

namespace cf {

namespace {

void check_operands(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.field() != b.field() || a.nvars() != b.nvars()) {
    throw FieldMismatch("product operands are incompatible (" + a.field().name() + "/" +
                        std::to_string(a.nvars()) + " vs " + b.field().name() + "/" +
                        std::to_string(b.nvars()) + ")");
  }
}

// Below this many term products the kernel stays on one thread.
constexpr std::size_t kParallelThreshold = 1U << 14;

struct Cursor {
  Exponents key;
  std::size_t row;
  std::size_t col;
};

struct CursorLess {
  bool operator()(const Cursor& x, const Cursor& y) const { return x.key < y.key; }
};

// Coefficients in a form that multiplies without allocation: integer
// numerators over one common denominator for Q, raw residues for F_p.
struct Scaled {
  std::vector<mpz_class> num;
  mpz_class den = 1;
  std::vector<std::uint64_t> res;
};

Scaled scale(std::span<const Term> t, Field field) {
  Scaled s;
  if (field.is_prime()) {
    s.res.reserve(t.size());
    for (const auto& x : t) s.res.push_back(x.coeff.residue());
    return s;
  }
  for (const auto& x : t) mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), x.coeff.rational().get_den_mpz_t());
  s.num.reserve(t.size());
  for (const auto& x : t) {
    const mpq_class& q = x.coeff.rational();
    mpz_class v = s.den / q.get_den();
    v *= q.get_num();
    s.num.push_back(std::move(v));
  }
  return s;
}

// rows * cols[col_begin..col_end). Each row r * cols is already sorted
// because monomial multiplication preserves the lex order, so a max-heap
// with one cursor per row emits the product in descending order.
std::vector<Term> heap_product(std::span<const Term> rows, const Scaled& rs,
                               std::span<const Term> cols, const Scaled& cs, Field field,
                               std::size_t col_begin, std::size_t col_end) {
  std::vector<Term> out;
  if (col_begin >= col_end || rows.empty()) return out;
  // Max-heap kept by hand so cursors can be moved out of it.
  std::vector<Cursor> heap;
  heap.reserve(rows.size());
  const CursorLess less;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    heap.push_back(Cursor{add_exponents(rows[i].exponents, cols[col_begin].exponents), i, col_begin});
  }
  std::make_heap(heap.begin(), heap.end(), less);
  const bool rational = field.is_rational();
  const std::uint64_t p = field.characteristic();
  const mpz_class den = rs.den * cs.den;
  mpz_class acc;
  std::uint64_t racc = 0;
  // Pops the top cursor into the back slot, accumulates it and refills it.
  auto take = [&](bool first) {
    std::pop_heap(heap.begin(), heap.end(), less);
    Cursor& c = heap.back();
    if (rational) {
      if (first) {
        mpz_mul(acc.get_mpz_t(), rs.num[c.row].get_mpz_t(), cs.num[c.col].get_mpz_t());
      } else {
        mpz_addmul(acc.get_mpz_t(), rs.num[c.row].get_mpz_t(), cs.num[c.col].get_mpz_t());
      }
    } else {
      const std::uint64_t v = rs.res[c.row] * cs.res[c.col] % p;
      racc = first ? v : (racc + v) % p;
    }
    if (c.col + 1 < col_end) {
      ++c.col;
      const Exponents& r = rows[c.row].exponents;
      const Exponents& k = cols[c.col].exponents;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const std::int64_t v = std::int64_t{r[i]} + k[i];
        if (v > INT32_MAX || v < INT32_MIN) throw std::overflow_error("exponent overflow");
        c.key[i] = static_cast<std::int32_t>(v);
      }
      std::push_heap(heap.begin(), heap.end(), less);
    } else {
      heap.pop_back();
    }
  };
  Exponents key;
  while (!heap.empty()) {
    key = heap.front().key;
    take(true);
    while (!heap.empty() && heap.front().key == key) take(false);
    if (rational) {
      if (sgn(acc) != 0) out.push_back(Term{key, Coefficient(field, mpq_class(acc, den))});
    } else if (racc != 0) {
      out.push_back(Term{key, Coefficient(field, static_cast<long>(racc))});
    }
  }
  return out;
}

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const {
    std::size_t h = e.size();
    for (std::int32_t v : e) h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::uint32_t>(v);
    return h ^ (h >> 29U);
  }
};

// Same contract as heap_product; hashes every product and sorts the result
// afterwards, which wins once the heap would be deep.
std::vector<Term> hash_product(std::span<const Term> rows, const Scaled& rs,
                               std::span<const Term> cols, const Scaled& cs, Field field,
                               std::size_t col_begin, std::size_t col_end) {
  const bool rational = field.is_rational();
  const std::uint64_t p = field.characteristic();
  std::unordered_map<Exponents, std::size_t, ExponentsHash> slot;
  std::vector<mpz_class> num;
  std::vector<std::uint64_t> res;
  std::vector<Exponents> keys;
  Exponents key;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = col_begin; j < col_end; ++j) {
      key = add_exponents(rows[i].exponents, cols[j].exponents);
      auto [it, inserted] = slot.try_emplace(key, keys.size());
      if (inserted) {
        keys.push_back(key);
        if (rational) {
          num.emplace_back();
          mpz_mul(num.back().get_mpz_t(), rs.num[i].get_mpz_t(), cs.num[j].get_mpz_t());
        } else {
          res.push_back(rs.res[i] * cs.res[j] % p);
        }
      } else if (rational) {
        mpz_addmul(num[it->second].get_mpz_t(), rs.num[i].get_mpz_t(), cs.num[j].get_mpz_t());
      } else {
        res[it->second] = (res[it->second] + rs.res[i] * cs.res[j]) % p;
      }
    }
  }
  std::vector<std::size_t> order(keys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return keys[x] > keys[y]; });
  const mpz_class den = rs.den * cs.den;
  std::vector<Term> out;
  out.reserve(order.size());
  for (std::size_t i : order) {
    if (rational) {
      if (sgn(num[i]) != 0) out.push_back(Term{std::move(keys[i]), Coefficient(field, mpq_class(num[i], den))});
    } else if (res[i] != 0) {
      out.push_back(Term{std::move(keys[i]), Coefficient(field, static_cast<long>(res[i]))});
    }
  }
  return out;
}

// Heap depth at which hashing takes over.
constexpr std::size_t kHashRows = 32;

std::vector<Term> product_block(std::span<const Term> rows, const Scaled& rs,
                                std::span<const Term> cols, const Scaled& cs, Field field,
                                std::size_t col_begin, std::size_t col_end) {
  if (rows.size() > kHashRows) return hash_product(rows, rs, cols, cs, field, col_begin, col_end);
  return heap_product(rows, rs, cols, cs, field, col_begin, col_end);
}

}  // namespace

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
  check_operands(a, b);
  const Field field = a.field();
  const std::size_t n = a.nvars();
  if (a.is_zero() || b.is_zero()) return LaurentPoly(field, n);
  // One heap cursor per term of the shorter operand; chunks split the longer one.
  const LaurentPoly& longer = a.size() >= b.size() ? a : b;
  const LaurentPoly& shorter = a.size() >= b.size() ? b : a;
  const auto lt = longer.terms();
  const auto st = shorter.terms();
  const Scaled ls = scale(lt, field);
  const Scaled ss = scale(st, field);

  std::size_t chunks = 1;
  if (lt.size() * st.size() >= kParallelThreshold) {
    chunks = std::min<std::size_t>(static_cast<std::size_t>(omp_get_max_threads()), lt.size());
  }
  if (chunks <= 1) {
    return LaurentPoly::from_sorted_terms(field, n,
                                          product_block(st, ss, lt, ls, field, 0, lt.size()));
  }

  std::vector<std::vector<Term>> partial(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  const auto nchunks = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::size_t begin = lt.size() * static_cast<std::size_t>(c) / chunks;
    const std::size_t end = lt.size() * static_cast<std::size_t>(c + 1) / chunks;
    try {
      partial[c] = product_block(st, ss, lt, ls, field, begin, end);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  // Fixed merge order keeps the result independent of scheduling.
  LaurentPoly result = LaurentPoly::from_sorted_terms(field, n, std::move(partial[0]));
  for (std::size_t c = 1; c < chunks; ++c) {
    result += LaurentPoly::from_sorted_terms(field, n, std::move(partial[c]));
  }
  return result;
}

LaurentPoly pow(const LaurentPoly& base, std::uint64_t exponent) {
  LaurentPoly result = LaurentPoly::constant(base.field(), base.nvars(), 1L);
  if (base.is_monomial()) {
    const Term& t = base.leading_term();
    Coefficient c = Coefficient::one(base.field());
    Coefficient sq = t.coeff;
    for (std::uint64_t e = exponent; e != 0; e >>= 1U) {
      if (e & 1U) c *= sq;
      sq *= sq;
    }
    return LaurentPoly::monomial(base.field(),
                                 scale_exponents(t.exponents, static_cast<std::int64_t>(exponent)),
                                 c);
  }
  LaurentPoly square = base;
  for (std::uint64_t e = exponent; e != 0; e >>= 1U) {
    if (e & 1U) result = mul(result, square);
    if (e > 1) square = mul(square, square);
  }
  return result;
}

namespace serial {

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
  check_operands(a, b);
  std::map<Exponents, Coefficient, std::greater<>> acc;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      Exponents key = add_exponents(x.exponents, y.exponents);
      Coefficient c = x.coeff * y.coeff;
      auto [it, inserted] = acc.try_emplace(std::move(key), c);
      if (!inserted) it->second += c;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc) {
    if (!c.is_zero()) out.push_back(Term{e, c});
  }
  return LaurentPoly::from_sorted_terms(a.field(), a.nvars(), std::move(out));
}

LaurentPoly pow(const LaurentPoly& base, std::uint64_t exponent) {
  LaurentPoly result = LaurentPoly::constant(base.field(), base.nvars(), 1L);
  for (std::uint64_t i = 0; i < exponent; ++i) result = serial::mul(result, base);
  return result;
}

}  // namespace serial

}  // namespace cf
