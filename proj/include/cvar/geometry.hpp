#pragma once

#include "cvar/causal_model.hpp"
#include "cvar/execution.hpp"
#include "cvar/joint_dist.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cvar {

/// p_ab(q) as polynomials over model_ring(m.n); q_i is P(latent i = 0).
std::array<Polynomial, 4> parametrize(const CausalModel& m);

/// Exact image of q. Every q_i must lie strictly inside (0,1).
JointDist joint_distribution(const CausalModel& m, std::span<const Rational> q);
JointDistD joint_distribution(const CausalModel& m, std::span<const double> q);

/// Deterministic q sample for (seed, index): q_i = k/2^16 with k in 1..65535.
std::vector<Rational> sample_q(unsigned n, std::uint64_t seed, std::uint64_t index);

std::vector<JointDist> sample_cloud(const CausalModel& m, std::size_t count, std::uint64_t seed,
                                    Execution exec = Execution::parallel);

/// Bit o set when outcome o = 2a+b is attained by some latent assignment.
unsigned support_pattern(const CausalModel& m);
std::string format_support(unsigned mask);

/// CSV with header p00,p01,p10,p11; exact decimals, or a/b when `rational`.
std::string cloud_csv(const std::vector<JointDist>& points, bool rational);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cvar
