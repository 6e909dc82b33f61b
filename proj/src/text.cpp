#include "cf/text.hpp"

#include <cctype>
#include <limits>

#include "cf/error.hpp"

namespace cf {

std::vector<std::string> default_variable_names(std::size_t nvars, std::string_view stem) {
  std::vector<std::string> names;
  names.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) names.push_back(std::string(stem) + std::to_string(i + 1));
  return names;
}

std::string render(const LaurentPoly& f, std::span<const std::string> names) {
  std::vector<std::string> defaults;
  if (names.empty()) {
    defaults = default_variable_names(f.nvars());
    names = defaults;
  }
  if (names.size() != f.nvars()) throw std::invalid_argument("wrong number of variable names");
  if (f.is_zero()) return "0";

  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    const bool negative = t.coeff.sign() < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string factors;
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      const std::int32_t e = t.exponents[i];
      if (e == 0) continue;
      if (!factors.empty()) factors += '*';
      factors += names[i];
      if (e != 1) factors += '^' + std::to_string(e);
    }
    const std::string magnitude = t.coeff.magnitude_string();
    if (factors.empty()) {
      out += magnitude;
    } else if (magnitude == "1") {
      out += factors;
    } else {
      out += magnitude + '*' + factors;
    }
  }
  return out;
}

std::string render(const RationalExpr& r, std::span<const std::string> names) {
  if (r.denominator().is_one()) return render(r.numerator(), names);
  return "(" + render(r.numerator(), names) + ")/(" + render(r.denominator(), names) + ")";
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, Field field, std::size_t nvars, std::span<const std::string> names)
      : text_(text), field_(field), nvars_(nvars), names_(names) {}

  LaurentPoly parse() {
    std::vector<Term> terms;
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      Term t = parse_term();
      if (negative) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip_space();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      negative = peek() == '-';
      ++pos_;
    }
    return LaurentPoly::from_terms(field_, nvars_, std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos_ + 1); }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string digits() {
    skip_space();
    std::string d;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) d += text_[pos_++];
    if (d.empty()) fail("expected digits");
    return d;
  }

  std::int32_t parse_exponent() {
    skip_space();
    bool neg = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      neg = peek() == '-';
      ++pos_;
    }
    const std::string d = digits();
    if (d.size() > 10) fail("exponent too large");
    const long long v = std::stoll(d) * (neg ? -1 : 1);
    if (v < std::numeric_limits<std::int32_t>::min() ||
        v > std::numeric_limits<std::int32_t>::max()) {
      fail("exponent too large");
    }
    return static_cast<std::int32_t>(v);
  }

  std::size_t parse_variable() {
    skip_space();
    std::size_t best = names_.size();
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& nm = names_[i];
      if (text_.substr(pos_, nm.size()) == nm && nm.size() > best_len) {
        // Reject partial matches such as "x1" inside "x12".
        const std::size_t endpos = pos_ + nm.size();
        if (endpos < text_.size() &&
            std::isalnum(static_cast<unsigned char>(text_[endpos])) != 0) {
          continue;
        }
        best = i;
        best_len = nm.size();
      }
    }
    if (best == names_.size()) fail("unknown variable");
    pos_ += best_len;
    return best;
  }

  Term parse_term() {
    skip_space();
    Coefficient coeff = Coefficient::one(field_);
    Exponents exps(nvars_, 0);
    bool need_factor = true;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      mpz_class num(digits());
      mpz_class den(1);
      skip_space();
      if (!at_end() && peek() == '/') {
        ++pos_;
        den = mpz_class(digits());
        if (den == 0) fail("zero denominator");
      }
      coeff = Coefficient(field_, mpq_class(num, den));
      skip_space();
      if (at_end() || peek() != '*') return Term{std::move(exps), std::move(coeff)};
      ++pos_;
    }
    while (need_factor) {
      const std::size_t var = parse_variable();
      std::int32_t e = 1;
      skip_space();
      if (!at_end() && peek() == '^') {
        ++pos_;
        e = parse_exponent();
      }
      const std::int64_t sum = std::int64_t{exps[var]} + e;
      if (sum < std::numeric_limits<std::int32_t>::min() ||
          sum > std::numeric_limits<std::int32_t>::max()) {
        fail("exponent overflow");
      }
      exps[var] = static_cast<std::int32_t>(sum);
      skip_space();
      need_factor = !at_end() && peek() == '*';
      if (need_factor) ++pos_;
    }
    return Term{std::move(exps), std::move(coeff)};
  }

  std::string_view text_;
  Field field_;
  std::size_t nvars_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, Field field, std::size_t nvars,
                          std::span<const std::string> names) {
  std::vector<std::string> defaults;
  if (names.empty()) {
    defaults = default_variable_names(nvars);
    names = defaults;
  }
  if (names.size() != nvars) throw std::invalid_argument("wrong number of variable names");
  return Parser(text, field, nvars, names).parse();
}

}  // namespace cf
