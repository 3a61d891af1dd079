#include "cvar/feasibility.hpp"
#include "cvar/geometry.hpp"
#include "cvar/implicitization.hpp"
#include "cvar/symmetry.hpp"

#include <doctest.h>

using namespace cvar;

namespace {

Polynomial PP(const char* text) { return parse_polynomial(text, p_ring()); }

FeasibilityTest make_test(std::initializer_list<const char*> conds) {
  FeasibilityTest t;
  for (const char* c : conds) t.conditions.push_back(parse_condition(c));
  return t;
}

}  // namespace

TEST_CASE("fan equalities") {
  auto r = equality_constraints(parse_model("n=2; A = u ^ v; B = u"));
  CHECK(is_reduced_groebner(r.groebner));
  REQUIRE(r.equalities.size() == 2);
  CHECK(ideal_equal(r.equalities, {PP("p00+p10+p01+p11-1"), PP("p00*p01-p10*p11")}));
  CHECK(r.identifications.size() == 2);
}

TEST_CASE("identification formulas evaluate to the sampled q") {
  for (const char* text : {"n=3; A = u*v; B = u*w", "n=2; A = u ^ v; B = u", "n=2; A = u; B = v"}) {
    auto m = parse_model(text);
    auto r = equality_constraints(m);
    for (std::uint64_t k = 0; k < 20; ++k) {
      auto q = sample_q(m.n, 4, k);
      auto sol = solve_latent_params(r, joint_distribution(m, q));
      for (const auto& [latent, value] : sol) CHECK(value == q[latent]);
    }
  }
}

TEST_CASE("solve_latent_params rejects points off the variety") {
  auto m = parse_model("n=2; A = u ^ v; B = u");
  JointDist p{Rational(3, 10), Rational(1, 5), Rational(1, 10), Rational(2, 5)};
  CHECK_THROWS_AS(solve_latent_params(m, p), InfeasibleError);
}

TEST_CASE("feasibility conditions") {
  auto c = parse_condition("frac(p00-p01, p10+p11) <= 1/4");
  CHECK(c.denom.has_value());
  JointDist p{Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)};
  CHECK_FALSE(c.holds(p));  // (1/4)/(1/4) = 1
  auto d = parse_condition("p00 > p01 or p10 > p11");
  CHECK(d.holds(p));
  CHECK(parse_condition("p10 = 0").rel == Relation::eq);
  CHECK_THROWS(parse_condition("p00 >> 1"));
}

TEST_CASE("open-interval convention") {
  auto t = make_test({"p10 = 0"});
  CHECK(t.pinned() == 0b0100);
  CHECK(evaluate_test(t, JointDist{Rational(1, 2), Rational(1, 4), 0, Rational(1, 4)}));
  auto why = explain_failure(t, JointDist{Rational(3, 4), 0, 0, Rational(1, 4)});
  REQUIRE(why.has_value());
  CHECK(why->find("p01") != std::string::npos);
}

TEST_CASE("transform_test holds exactly on transformed points") {
  auto t = make_test({"p00*p11 > p01*p10", "p00 < 1/2"});
  auto m = parse_model("n=3; A = u*v; B = u*w");
  for (const auto& g : symmetry_group()) {
    auto tg = transform_test(g, t);
    for (const auto& p : sample_cloud(m, 20, 3))
      CHECK(evaluate_test(t, p) == evaluate_test(tg, apply_symmetry_dist(g, p)));
  }
}

TEST_CASE("certification of the filled fan") {
  auto m = parse_model("n=3; A = u*v; B = u*w");
  CertifyOptions o;
  o.samples = 2000;
  o.grid_denominator = 10;
  auto rep = certify_test(m, make_test({"p11*p00 > p10*p01"}), o);
  CHECK(rep.necessity);
  CHECK(rep.violations == 0);
  CHECK(rep.grid_passing > 0);
  CHECK(rep.grid_fitted == rep.grid_passing);
}

TEST_CASE("certification catches a wrong test") {
  auto m = parse_model("n=3; A = u*v; B = u*w");
  CertifyOptions o;
  o.samples = 500;
  o.grid_denominator = 0;
  auto rep = certify_test(m, make_test({"p11*p00 < p10*p01"}), o);
  CHECK_FALSE(rep.necessity);
  CHECK(rep.counterexample_q.has_value());
  CHECK(rep.counterexample_p.has_value());
}

TEST_CASE("StarFleet discriminant") {
  auto m = parse_model("n=2; A = u*v; B = u ^ v ^ u*v");
  auto r = equality_constraints(m);
  std::optional<Polynomial> disc;
  for (const auto& g : r.groebner.elements) {
    try {
      disc = extension_real_roots(g, *r.ring, r.equalities, r.identifications);
    } catch (const std::invalid_argument&) {
    }
  }
  REQUIRE(disc.has_value());
  CHECK(equal_up_to_positive_constant(*disc, PP("(p01+2*p00)^2-4*p00"), r.equalities));
  CHECK_FALSE(equal_up_to_positive_constant(*disc, PP("4*p00-(p01+2*p00)^2"), r.equalities));
}

TEST_CASE("normalize_p eliminates the normalization") {
  auto f = normalize_p(PP("p11"), {PP("p00+p10+p01+p11-1")});
  CHECK_FALSE(f.involves(p_index(*p_ring(), 3)));
}
