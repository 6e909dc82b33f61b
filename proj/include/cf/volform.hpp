#pragma once

#include <span>
#include <string>

#include "cf/laurent.hpp"
#include "cf/seed.hpp"

namespace cf {

// c * dx_1 ^ ... ^ dx_n / (x_1 ... x_n) in the initial coordinates, for the
// log volume form of `chart`'s cluster.
struct LogVolumeForm {
  Seed chart;
  RationalExpr coefficient;
  int sign = 1;  // +1 or -1 when the coefficient is a unit constant, else 0
};

// Log volume form of the seed's cluster, from the Jacobian of its variables
// with respect to the initial cluster: c = det(d vars / d x) * prod x / prod vars.
LogVolumeForm log_volume_form(const Seed& s, const Limits& limits = {});

// Determinant by expansion over column subsets (n <= 16).
LaurentPoly determinant(std::span<const LaurentPoly> row_major, std::size_t n);

struct VolumeSignReport {
  std::size_t vertex = 0;
  int sign = 0;
  std::string mutated_variable;  // x_k' in the seed's own chart
  std::string identity;          // x_k * d x_k'/d x_k + x_k', rendered
  bool identity_holds = false;
};

// Ratio of the log volume forms of mu_k(s) and s, via the identity
// x_k d x_k'/d x_k + x_k' = 0 in the seed's own chart. Throws
// VerificationFailed if the identity fails, MutationAtFrozen at frozen k.
VolumeSignReport volume_form_mutation_sign(const Seed& s, std::size_t k,
                                           const Limits& limits = {});

// Product of the per-step signs along a mutation path.
int path_sign(const Seed& s, std::span<const std::size_t> path, const Limits& limits = {});

}  // namespace cf
