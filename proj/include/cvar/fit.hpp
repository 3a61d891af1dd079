#pragma once

#include "cvar/causal_model.hpp"
#include "cvar/execution.hpp"
#include "cvar/joint_dist.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cvar {

struct FitOptions {
  double tol = 1e-6;          // max-norm residual accepted as a fit
  unsigned starts = 64;       // random starts in the open cube
  unsigned grid_per_axis = 0; // 0 picks 21 for n <= 4, fewer beyond
  unsigned grid_seeds = 8;    // best grid points refined by LM
  unsigned max_iterations = 300;
  std::uint64_t seed = 0;
};

struct FitResult {
  bool success = false;
  std::vector<double> q;
  double residual = 0;  // max |p_ab(q) - target_ab|
};

inline constexpr unsigned kMaxOutcomes = 16;

/// Latent bits mapped to one of k outcomes: outcome[j] for assignment j.
struct OutcomeModel {
  unsigned n = 0;
  unsigned k = 0;
  std::vector<unsigned> outcome;
};

OutcomeModel outcome_model(const CausalModel& m);

/// Multi-start box-constrained Levenberg-Marquardt with a grid fallback.
/// Failure is evidence, not proof, that the target is outside the model's set.
FitResult fit_distribution(const CausalModel& m, const JointDistD& target,
                           const FitOptions& options = {});

/// Same search for an arbitrary outcome model; target has k entries.
FitResult fit_outcomes(const OutcomeModel& m, std::span<const double> target,
                       const FitOptions& options = {});

std::vector<FitResult> fit_batch(const CausalModel& m, const std::vector<JointDistD>& targets,
                                 const FitOptions& options = {},
                                 Execution exec = Execution::parallel);

}  // namespace cvar
