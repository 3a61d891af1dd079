#include "cvar/geometry.hpp"

#include <stdexcept>

namespace cvar {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::array<Polynomial, 4> parametrize(const CausalModel& m) {
  RingPtr ring = model_ring(m.n);
  std::array<Polynomial, 4> p = {Polynomial(ring), Polynomial(ring), Polynomial(ring),
                                 Polynomial(ring)};
  Polynomial one = Polynomial::constant(ring, 1);
  for (std::uint32_t j = 0; j < (1u << m.n); ++j) {
    Polynomial w = one;
    for (unsigned i = 0; i < m.n; ++i) {
      Polynomial q = Polynomial::variable(ring, i);
      w *= ((j >> i) & 1) ? one - q : q;
    }
    p[m.outcome(j)] += w;
  }
  return p;
}

namespace {

template <class T>
std::array<T, 4> image(const CausalModel& m, std::span<const T> q) {
  if (q.size() != m.n) throw std::invalid_argument("latent dimension mismatch");
  std::array<T, 4> p{T(0), T(0), T(0), T(0)};
  for (std::uint32_t j = 0; j < (1u << m.n); ++j) {
    T w = 1;
    for (unsigned i = 0; i < m.n; ++i) w *= ((j >> i) & 1) ? T(1 - q[i]) : q[i];
    p[m.outcome(j)] += w;
  }
  return p;
}

constexpr unsigned kSampleBits = 16;

// Image of q_i = k_i / 2^16 computed in integers, then one division.
JointDist image_dyadic(const CausalModel& m, const std::vector<std::uint32_t>& k) {
  std::array<mpz_class, 4> acc;
  const std::uint32_t full = 1u << kSampleBits;
  for (std::uint32_t j = 0; j < (1u << m.n); ++j) {
    mpz_class w = 1;
    for (unsigned i = 0; i < m.n; ++i) w *= ((j >> i) & 1) ? full - k[i] : k[i];
    acc[m.outcome(j)] += w;
  }
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, kSampleBits * m.n);
  JointDist p;
  for (unsigned o = 0; o < 4; ++o) {
    p[o] = Rational(acc[o], denom);
    p[o].canonicalize();
  }
  return p;
}

std::vector<std::uint32_t> sample_k(unsigned n, std::uint64_t seed, std::uint64_t index) {
  std::vector<std::uint32_t> k(n);
  std::uint64_t s = splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ull));
  for (unsigned i = 0; i < n; ++i) {
    s = splitmix64(s);
    k[i] = 1 + static_cast<std::uint32_t>(s % ((1u << kSampleBits) - 1));
  }
  return k;
}

}  // namespace

JointDist joint_distribution(const CausalModel& m, std::span<const Rational> q) {
  for (const auto& x : q)
    if (x <= 0 || x >= 1) throw std::invalid_argument("q must lie strictly inside (0,1)");
  return image<Rational>(m, q);
}

JointDistD joint_distribution(const CausalModel& m, std::span<const double> q) {
  return image<double>(m, q);
}

std::vector<Rational> sample_q(unsigned n, std::uint64_t seed, std::uint64_t index) {
  auto k = sample_k(n, seed, index);
  std::vector<Rational> q(n);
  for (unsigned i = 0; i < n; ++i) {
    q[i] = Rational(k[i], 1u << kSampleBits);
    q[i].canonicalize();
  }
  return q;
}

std::vector<JointDist> sample_cloud(const CausalModel& m, std::size_t count, std::uint64_t seed,
                                    Execution exec) {
  if (count == 0) throw std::invalid_argument("sample count must be positive");
  std::vector<JointDist> out(count);
  const auto n = static_cast<std::int64_t>(count);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[i] = image_dyadic(m, sample_k(m.n, seed, i));
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = image_dyadic(m, sample_k(m.n, seed, i));
  }
  return out;
}

unsigned support_pattern(const CausalModel& m) {
  unsigned mask = 0;
  for (std::uint32_t j = 0; j < (1u << m.n); ++j) mask |= 1u << m.outcome(j);
  return mask;
}

std::string format_support(unsigned mask) {
  std::string s = "{";
  for (unsigned o = 0; o < 4; ++o)
    if ((mask >> o) & 1) {
      if (s.size() > 1) s += ",";
      s += std::string(p_name(o).substr(1));
    }
  return s + "}";
}

std::string cloud_csv(const std::vector<JointDist>& points, bool rational) {
  std::string s = "# " + std::string(kFormatHeader) + "\np00,p01,p10,p11\n";
  for (const auto& p : points) {
    for (unsigned o = 0; o < 4; ++o) {
      if (o) s += ",";
      s += rational ? to_string(p[o]) : to_decimal_string(p[o]);
    }
    s += "\n";
  }
  return s;
}

}  // namespace cvar
