#pragma once

#include "cvar/polynomial.hpp"
#include "cvar/rational.hpp"
#include "cvar/symmetry.hpp"

#include <array>
#include <string>
#include <string_view>

namespace cvar {

/// Observed joint distribution indexed by 2a+b: p00, p01, p10, p11.
using JointDist = std::array<Rational, 4>;
using JointDistD = std::array<double, 4>;

/// Variable name for outcome index o (`p00`, `p01`, `p10`, `p11`).
std::string_view p_name(unsigned o);

/// Ring q1..qn, p00, p10, p01, p11 (lex order as listed).
RingPtr model_ring(unsigned n);
/// Ring p00, p10, p01, p11.
RingPtr p_ring();
/// Ring index of outcome o's variable in a ring built by model_ring/p_ring.
std::size_t p_index(const Ring& ring, unsigned o);

bool is_valid(const JointDist& p);
JointDistD to_double(const JointDist& p);

/// Parses `a,b,c,d` (rationals or decimals, p00,p01,p10,p11); checks validity.
JointDist parse_distribution(std::string_view text);
std::string format_distribution(const JointDist& p);

JointDist apply_symmetry_dist(const SymmetryElem& g, const JointDist& p);

/// Values for the p variables of `ring`, zero for everything else.
std::vector<Rational> ring_point(const Ring& ring, const JointDist& p);
std::vector<double> ring_point(const Ring& ring, const JointDistD& p);

}  // namespace cvar
