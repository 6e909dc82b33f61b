#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cf/laurent.hpp"

namespace cf {

// x1, ..., xn
std::vector<std::string> default_variable_names(std::size_t nvars, std::string_view stem = "x");

// Canonical rendering: terms in descending lexicographic exponent order,
// "c*x1^a1*...*xn^an" with zero exponents dropped, unit exponents and unit
// coefficients omitted, terms joined by " + " / " - ". Zero renders as "0".
// Empty `names` means x1..xn.
std::string render(const LaurentPoly& f, std::span<const std::string> names = {});
std::string render(const RationalExpr& r, std::span<const std::string> names = {});

// Inverse of render (it also accepts any spacing and reordered factors).
// Throws ParseError with a 1-based column.
LaurentPoly parse_laurent(std::string_view text, Field field, std::size_t nvars,
                          std::span<const std::string> names = {});

}  // namespace cf
