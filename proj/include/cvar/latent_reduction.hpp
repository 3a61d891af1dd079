#pragma once

#include "cvar/boolfunc.hpp"
#include "cvar/causal_model.hpp"
#include "cvar/fit.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cvar {

/// Function of n latent bits with values in 0..arity-1.
struct MultiValuedFunc {
  unsigned n = 0;
  unsigned arity = 2;
  std::vector<unsigned> table;  // one value per assignment

  unsigned operator()(std::uint32_t assignment) const { return table[assignment]; }
  /// Indicator of value c as a boolean function.
  BoolFunc indicator(unsigned c) const;
};

/// `(u*v*d ^ d) +3 2*(d ^ 1)`: sum over values c > 0 of c times the
/// indicator of c, added mod arity. Binary functions print as plain ANF.
std::string format_multi(const MultiValuedFunc& f);

/// Observed bits C, D as functions of one latent tau in 0..m-1.
struct MultiValuedModel {
  unsigned m = 0;
  std::vector<unsigned> C;
  std::vector<unsigned> D;
};

/// Text form:
///   tau in 0..2
///   C = tau mod 2
///   D = table 0 1 1
/// Expressions use integers, tau, `*`, `+`, `-`, parentheses, `+k`
/// (addition mod k, written without a space) and a trailing `mod k`.
MultiValuedModel parse_multi_valued_model(std::string_view text);
std::string format_multi_valued_model(const MultiValuedModel& m);

/// Binary latent model for substitute variables (gamma, eta) whose image
/// covers the simplex spanned by `vertices`; vertex t stands for tau = t.
struct SimplexModel {
  unsigned m = 0;
  unsigned n = 0;
  MultiValuedFunc gamma;
  BoolFunc eta;
  std::vector<std::pair<unsigned, unsigned>> vertices;

  /// tau at each latent assignment.
  std::vector<unsigned> tau_table() const;
  OutcomeModel outcome_model() const;
  std::string to_string() const;
};

/// m = 2: one bit. m = 3: gamma = u*v, eta = v over vertices 00, 01, 11.
/// m = 4: gamma = u*v ^ 1, eta = u*v*w ^ v (a face model switched with the
/// vertex 10 by v). m >= 5: switch composition of the (m-1) model (new last
/// latent = 1) with the first unused (gamma, eta) vertex (latent = 0).
SimplexModel reduce_m_valued(unsigned m);

/// Two-bit model for a trit; throws std::invalid_argument unless m = 3.
CausalModel reduce_trit(const MultiValuedModel& model);

/// Binary latent model for any m >= 2.
CausalModel reduce(const MultiValuedModel& model);

}  // namespace cvar
