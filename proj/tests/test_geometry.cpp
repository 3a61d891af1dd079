#include "cvar/fit.hpp"
#include "cvar/geometry.hpp"
#include "cvar/joint_dist.hpp"
#include "cvar/symmetry.hpp"

#include <doctest.h>

#include <random>

using namespace cvar;

namespace {

CausalModel random_model(unsigned n, std::mt19937_64& rng) {
  std::uint64_t mask = (1ull << (1u << n)) - 1;
  return {BoolFunc::from_table(n, rng() & mask), BoolFunc::from_table(n, rng() & mask)};
}

// Direct sum over latent assignments, q_i = P(latent i = 0).
JointDist brute_dist(const CausalModel& m, const std::vector<Rational>& q) {
  JointDist p{0, 0, 0, 0};
  for (std::uint32_t x = 0; x < (1u << m.n); ++x) {
    Rational w = 1;
    for (unsigned i = 0; i < m.n; ++i) w *= ((x >> i) & 1u) ? Rational(1) - q[i] : q[i];
    p[m.outcome(x)] += w;
  }
  return p;
}

}  // namespace

TEST_CASE("parametrization matches the direct latent sum") {
  std::mt19937_64 rng(1);
  for (unsigned n = 1; n <= 4; ++n)
    for (int k = 0; k < 10; ++k) {
      auto m = random_model(n, rng);
      auto par = parametrize(m);
      auto q = sample_q(n, 9, k);
      auto ring = model_ring(n);
      std::vector<Rational> pt(ring->size(), 0);
      for (unsigned i = 0; i < n; ++i) pt[i] = q[i];
      auto expect = brute_dist(m, q);
      CHECK(joint_distribution(m, q) == expect);
      for (unsigned o = 0; o < 4; ++o) CHECK(par[o].evaluate(pt) == expect[o]);
    }
}

TEST_CASE("fan parametrization") {
  auto par = parametrize(parse_model("n=2; A = u ^ v; B = u"));
  auto r = model_ring(2);
  CHECK(par[0] == parse_polynomial("q1*q2", r));
  CHECK(par[2] == parse_polynomial("q1*(1-q2)", r));
  CHECK(par[1] == parse_polynomial("(1-q1)*(1-q2)", r));
  CHECK(par[3] == parse_polynomial("(1-q1)*q2", r));
}

TEST_CASE("sample_q stays in the open cube and is deterministic") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto q = sample_q(4, 3, i);
    CHECK(q == sample_q(4, 3, i));
    for (const auto& x : q) {
      CHECK(x > 0);
      CHECK(x < 1);
    }
  }
  CHECK(sample_q(3, 3, 0) != sample_q(3, 4, 0));
}

TEST_CASE("serial and parallel clouds are identical") {
  auto m = parse_model("n=3; A = u*v; B = u*w");
  auto a = sample_cloud(m, 300, 5, Execution::serial);
  auto b = sample_cloud(m, 300, 5, Execution::parallel);
  CHECK(a == b);
  for (const auto& p : a) CHECK(is_valid(p));
}

TEST_CASE("support pattern") {
  CHECK(support_pattern(parse_model("n=2; A = u*v; B = u ^ v ^ u*v")) == 0b1011);
  CHECK(format_support(0b1011) == "{00,01,11}");
  CHECK(support_pattern(parse_model("n=0; A = 1; B = 0")) == 0b0100);
}

TEST_CASE("cloud CSV") {
  std::vector<JointDist> pts = {JointDist{Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)}};
  auto rational = cloud_csv(pts, true);
  CHECK(rational.find("1/2,1/4,1/8,1/8") != std::string::npos);
  auto decimal = cloud_csv(pts, false);
  CHECK(decimal.find("0.5,0.25,0.125,0.125") != std::string::npos);
}

TEST_CASE("distribution parsing and validation") {
  auto p = parse_distribution("0.5, 1/4, 0, 1/4");
  CHECK(p[1] == Rational(1, 4));
  CHECK_THROWS(parse_distribution("0.5,0.5,0.5,0"));
  CHECK_THROWS(parse_distribution("1,0,0"));
  CHECK_THROWS(parse_distribution("1.5,-0.5,0,0"));
}

TEST_CASE("symmetries commute with the parametrization") {
  std::mt19937_64 rng(2);
  auto group = symmetry_group();
  for (int k = 0; k < 100; ++k) {
    auto m = random_model(1 + unsigned(k % 3), rng);
    const auto& g = group[rng() % group.size()];
    auto q = sample_q(m.n, 1, k);
    CHECK(joint_distribution(apply_symmetry(g, m), q) ==
          apply_symmetry_dist(g, joint_distribution(m, q)));
  }
}

TEST_CASE("fitting recovers model points") {
  std::mt19937_64 rng(3);
  for (unsigned n = 1; n <= 3; ++n)
    for (int k = 0; k < 8; ++k) {
      auto m = random_model(n, rng);
      auto target = to_double(joint_distribution(m, sample_q(n, 2, k)));
      auto r = fit_distribution(m, target);
      CHECK(r.success);
      CHECK(r.residual <= 1e-6);
      CHECK(r.q.size() == n);
    }
}

TEST_CASE("fitting rejects points off the model") {
  // Fan surface p00 p01 = p10 p11; this point is well off it.
  auto r = fit_distribution(parse_model("n=2; A = u ^ v; B = u"), {0.4, 0.4, 0.1, 0.1});
  CHECK_FALSE(r.success);
  CHECK(r.residual > 1e-3);
}

TEST_CASE("serial and parallel batch fits agree") {
  auto m = parse_model("n=3; A = u*v; B = u*w");
  std::vector<JointDistD> targets;
  for (const auto& p : sample_cloud(m, 12, 8)) targets.push_back(to_double(p));
  targets.push_back({0.1, 0.4, 0.4, 0.1});
  auto a = fit_batch(m, targets, {}, Execution::serial);
  auto b = fit_batch(m, targets, {}, Execution::parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].success == b[i].success);
    CHECK(a[i].residual == b[i].residual);
  }
}

TEST_CASE("outcome model fitting with three outcomes") {
  OutcomeModel m{2, 3, {0, 1, 1, 2}};
  std::vector<double> target = {0.25, 0.5, 0.25};
  auto r = fit_outcomes(m, target);
  CHECK(r.success);
  // q1 + q2 = 0.3 with q1 q2 = 0.1 has no real solution.
  std::vector<double> no_real = {0.1, 0.1, 0.8};
  CHECK_FALSE(fit_outcomes(m, no_real).success);
  std::vector<double> off = {0.5, 0.0, 0.5};
  CHECK_FALSE(fit_outcomes(m, off).success);
}
