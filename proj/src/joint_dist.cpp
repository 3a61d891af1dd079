#include "cvar/joint_dist.hpp"

#include <sstream>
#include <stdexcept>

namespace cvar {

std::string_view p_name(unsigned o) {
  static constexpr std::string_view names[4] = {"p00", "p01", "p10", "p11"};
  return names[o];
}

RingPtr model_ring(unsigned n) {
  std::vector<std::string> v;
  for (unsigned i = 1; i <= n; ++i) v.push_back("q" + std::to_string(i));
  for (auto s : {"p00", "p10", "p01", "p11"}) v.emplace_back(s);
  return make_ring(std::move(v));
}

RingPtr p_ring() {
  static const RingPtr r = model_ring(0);
  return r;
}

std::size_t p_index(const Ring& ring, unsigned o) {
  auto i = ring.index_of(p_name(o));
  if (!i) throw std::invalid_argument("ring has no " + std::string(p_name(o)));
  return *i;
}

bool is_valid(const JointDist& p) {
  Rational s = 0;
  for (const auto& x : p) {
    if (x < 0) return false;
    s += x;
  }
  return s == 1;
}

JointDistD to_double(const JointDist& p) {
  return {p[0].get_d(), p[1].get_d(), p[2].get_d(), p[3].get_d()};
}

JointDist parse_distribution(std::string_view text) {
  JointDist p;
  std::stringstream ss{std::string(text)};
  std::string item;
  unsigned k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= 4) throw std::invalid_argument("distribution needs exactly four entries");
    p[k++] = parse_rational(item);
  }
  if (k != 4) throw std::invalid_argument("distribution needs exactly four entries");
  if (!is_valid(p))
    throw std::invalid_argument("distribution entries must be nonnegative and sum to 1");
  return p;
}

std::string format_distribution(const JointDist& p) {
  return to_string(p[0]) + "," + to_string(p[1]) + "," + to_string(p[2]) + "," + to_string(p[3]);
}

JointDist apply_symmetry_dist(const SymmetryElem& g, const JointDist& p) {
  return apply_outcome_perm(g, p);
}

std::vector<Rational> ring_point(const Ring& ring, const JointDist& p) {
  std::vector<Rational> v(ring.size(), Rational(0));
  for (unsigned o = 0; o < 4; ++o)
    if (auto i = ring.index_of(p_name(o))) v[*i] = p[o];
  return v;
}

std::vector<double> ring_point(const Ring& ring, const JointDistD& p) {
  std::vector<double> v(ring.size(), 0.0);
  for (unsigned o = 0; o < 4; ++o)
    if (auto i = ring.index_of(p_name(o))) v[*i] = p[o];
  return v;
}

}  // namespace cvar
