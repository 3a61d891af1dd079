#pragma once

#include "cvar/causal_model.hpp"
#include "cvar/execution.hpp"
#include "cvar/feasibility.hpp"
#include "cvar/fit.hpp"
#include "cvar/groebner.hpp"
#include "cvar/joint_dist.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cvar {

/// q_{latent} = numerator / denominator, both in p_ring().
struct Identification {
  unsigned latent = 0;
  Polynomial numerator = Polynomial(p_ring());
  Polynomial denominator = Polynomial(p_ring());
  std::string to_string() const;
};

struct ImplicitizationResult {
  RingPtr ring;  // model_ring(n)
  GroebnerBasis groebner;
  std::vector<Polynomial> equalities;  // q-free elements, moved into p_ring()
  std::vector<Identification> identifications;
};

/// Lex Groebner basis of <p_ab - g_ab(q)> with q1 > ... > qn > p00 > p10 > p01 > p11.
ImplicitizationResult equality_constraints(const CausalModel& m,
                                           const GroebnerOptions& options = {});

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluates the identification formulas at p. Latents whose denominator
/// vanishes at p are left out. Throws InfeasibleError when p violates an
/// equality constraint of the model.
std::map<unsigned, Rational> solve_latent_params(const ImplicitizationResult& r,
                                                 const JointDist& p);
std::map<unsigned, Rational> solve_latent_params(const CausalModel& m, const JointDist& p);

struct CertifyOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned grid_denominator = 20;  // grid step 1/20; 0 skips sufficiency
  FitOptions fit;
  Execution exec = Execution::parallel;
};

struct CertificationReport {
  bool necessity = true;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::optional<std::vector<Rational>> counterexample_q;
  std::optional<JointDist> counterexample_p;

  std::size_t grid_passing = 0;
  std::size_t grid_fitted = 0;
  std::vector<JointDist> unfitted;
  double sufficiency() const {
    return grid_passing ? double(grid_fitted) / double(grid_passing) : 1.0;
  }
};

/// Necessity: every sampled image satisfies t exactly. Sufficiency: grid
/// points of the closed tetrahedron with denominator `grid_denominator` that
/// pass t (the open-interval convention removes the excluded boundary) are
/// fitted by the model.
CertificationReport certify_test(const CausalModel& m, const FeasibilityTest& t,
                                 const CertifyOptions& options = {});

/// Lex order p11 > p10 > p01 > p00 normal form modulo `equalities`; used to
/// present conditions with the normalization eliminated.
Polynomial normalize_p(const Polynomial& f, const std::vector<Polynomial>& equalities);

/// Real-root condition for a Groebner element quadratic in one q: returns
/// the discriminant b^2 - 4ac (to be >= 0) in p_ring(), normalized. Identified
/// q's listed in `substitutions` are replaced first and denominators cleared.
/// Throws std::invalid_argument when the element is not of that shape.
Polynomial extension_real_roots(const Polynomial& element, const Ring& model_ring,
                                const std::vector<Polynomial>& equalities,
                                const std::vector<Identification>& substitutions = {});

/// True when a = c * b modulo the equalities for a positive rational c.
bool equal_up_to_positive_constant(const Polynomial& a, const Polynomial& b,
                                   const std::vector<Polynomial>& equalities);

}  // namespace cvar
