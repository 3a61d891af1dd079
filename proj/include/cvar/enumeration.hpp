#pragma once

#include "cvar/catalogue.hpp"
#include "cvar/causal_model.hpp"
#include "cvar/execution.hpp"
#include "cvar/fit.hpp"
#include "cvar/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cvar {

/// Largest n enumerated exhaustively.
inline constexpr unsigned kExhaustiveCap = 3;

/// All models with exactly n latents, one per latent-permutation class
/// (canonical forms, sorted). Models ignoring a latent are included.
/// Throws std::invalid_argument above kExhaustiveCap.
std::vector<CausalModel> enumerate_models(unsigned n);

/// Level n rebuilt from level n-1 canonical forms by switch composition
/// (second model under every latent permutation); canonical, sorted.
std::vector<CausalModel> enumerate_by_composition(const std::vector<CausalModel>& previous);

/// Number of models before deduplication: (2^(2^n))^2.
std::uint64_t raw_model_count(unsigned n);

struct EquivFingerprint {
  unsigned support = 0;
  std::vector<Polynomial> elim_basis;  // reduced, q-free, in p_ring()
  std::uint64_t cloud_hash = 0;        // cloud of the canonical form

  friend bool operator==(const EquivFingerprint&, const EquivFingerprint&) = default;
};

EquivFingerprint fingerprint(const CausalModel& m, std::size_t cloud_points = 16);

enum class VerdictTag { exact, numerical };
std::string_view tag_name(VerdictTag t);

struct EquivalenceOptions {
  std::size_t cross_fit_points = 512;  // per direction
  FitOptions fit;
  std::uint64_t seed = 0;
  bool use_groebner = true;
  std::size_t groebner_pairs = 5000;  // budget per elimination ideal
};

struct EquivalenceVerdict {
  bool equivalent = false;
  VerdictTag tag = VerdictTag::exact;
  std::string reason;
};

/// Exact when the models are latent permutations of each other or when
/// supports or elimination ideals differ; otherwise two-sided cross-fitting
/// of sampled clouds.
EquivalenceVerdict model_equivalent(const CausalModel& a, const CausalModel& b,
                                    const EquivalenceOptions& options = {});

struct ModelMatch {
  ClassId id;
  EquivalenceVerdict verdict;
};

/// First expanded class with the model's support whose test passes an exact
/// model cloud and whose model is equivalent to m.
std::optional<ModelMatch> classify_model(const Catalogue& catalogue, const CausalModel& m,
                                         const EquivalenceOptions& options = {},
                                         std::size_t filter_points = 16, std::uint64_t seed = 0);

struct BuildOptions {
  unsigned n_max = 2;
  /// Random n = n_max models drawn when n_max > kExhaustiveCap.
  std::size_t sampled_models = 20000;
  EquivalenceOptions equivalence;
  std::size_t filter_points = 16;  // exact cloud points checked against class tests
  std::uint64_t seed = 0;
  Execution exec = Execution::parallel;
};

struct BuiltClass {
  std::string label;  // ClassId text, or FRESH-k
  bool fresh = false;
  CausalModel representative;  // smallest n, then smallest canonical tables
  std::size_t members = 0;     // latent-permutation classes of models
  VerdictTag tag = VerdictTag::exact;
};

struct CatalogueBuild {
  unsigned n_max = 0;
  std::size_t models = 0;       // distinct canonical models examined
  std::size_t orbits = 0;       // of those under the symmetry group
  bool sampled = false;
  std::vector<BuiltClass> classes;
  std::vector<std::string> missing;  // catalogue classes with n <= n_max and no members
  std::size_t fresh = 0;
  EquivalenceOptions equivalence;

  std::string report() const;
};

/// Groups all models with at most n_max latents into observational
/// equivalence classes and matches them to the catalogue's expanded classes.
CatalogueBuild build_catalogue(const Catalogue& catalogue, const BuildOptions& options);

}  // namespace cvar
