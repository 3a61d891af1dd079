#pragma once

#include "cvar/boolfunc.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace cvar {

/// Purely common-cause model: A = f_A(latents), B = f_B(latents).
struct CausalModel {
  unsigned n = 0;
  BoolFunc A;
  BoolFunc B;

  CausalModel() = default;
  CausalModel(BoolFunc a, BoolFunc b);

  /// Outcome index 2a+b at a latent assignment (p00, p01, p10, p11 order).
  unsigned outcome(std::uint32_t assignment) const {
    return (A(assignment) << 1) | unsigned(B(assignment));
  }

  friend bool operator==(const CausalModel&, const CausalModel&) = default;
};

/// Model with a directed edge B -> A: B = f_B(latents), A = g(latents, B).
/// g has n+1 inputs; its last input is B.
struct DirectedModel {
  unsigned n = 0;
  BoolFunc fB;
  BoolFunc g;
};

CausalModel purify(const DirectedModel& m);

/// Switch composition over a new last latent delta: delta=0 gives m0,
/// delta=1 gives m1.
CausalModel compose_switch(const CausalModel& m0, const CausalModel& m1);

/// Restriction of the last latent to a fixed value.
CausalModel restrict_last(const CausalModel& m, bool value);

CausalModel permute_latents(const CausalModel& m, std::span<const unsigned> perm);

/// Minimum of (table A, table B) over latent permutations.
CausalModel canonical_form(const CausalModel& m);

/// Drops latents neither function depends on, keeping relative order.
CausalModel drop_unused_latents(const CausalModel& m);

// Text format: `n=2; A = u*v ^ v; B = v`. Latent names by index are
// u, v, w, d, r, s. Directed models may mention B inside A.
const std::array<std::string_view, 6>& latent_names();
std::string format_boolfunc(const BoolFunc& f);
std::string format_model(const CausalModel& m);
CausalModel parse_model(std::string_view text);
/// Parses a model whose A may depend on B; returns it purified when it does.
DirectedModel parse_directed_model(std::string_view text);

inline constexpr std::string_view kFormatHeader = "causal-varieties/v1";

/// File form: header line then the model text.
std::string write_model_file(const CausalModel& m);
/// Accepts the header (required) followed by the model text; `#` comments.
CausalModel read_model_file(std::string_view contents);

}  // namespace cvar
