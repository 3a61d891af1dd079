#include "cvar/groebner.hpp"
#include "cvar/polynomial.hpp"
#include "cvar/rational.hpp"

#include <doctest.h>

#include <random>

using namespace cvar;

namespace {

RingPtr xyz() { return make_ring({"x", "y", "z"}); }

Polynomial P(const char* text, const RingPtr& r) { return parse_polynomial(text, r); }

Polynomial random_poly(const RingPtr& r, std::mt19937_64& rng, unsigned terms, unsigned max_exp) {
  std::vector<Term> ts;
  std::uniform_int_distribution<int> c(-5, 5), e(0, int(max_exp));
  for (unsigned i = 0; i < terms; ++i) {
    Term t;
    for (std::size_t v = 0; v < r->size(); ++v) t.mono.exp[v] = std::uint8_t(e(rng));
    t.coef = Rational(c(rng), 1 + std::abs(c(rng)));
    t.coef.canonicalize();
    ts.push_back(t);
  }
  return Polynomial::from_terms(r, ts);
}

std::vector<Rational> random_point(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-20, 20);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(d(rng), 7);
  for (auto& x : v) x.canonicalize();
  return v;
}

}  // namespace

TEST_CASE("rational parsing is exact") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK(to_decimal_string(Rational(3, 8)) == "0.375");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("arithmetic agrees with evaluation") {
  auto r = xyz();
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    auto a = random_poly(r, rng, 5, 3), b = random_poly(r, rng, 4, 2);
    auto pt = random_point(3, rng);
    Rational ea = a.evaluate(pt), eb = b.evaluate(pt);
    CHECK((a + b).evaluate(pt) == ea + eb);
    CHECK((a - b).evaluate(pt) == ea - eb);
    CHECK((a * b).evaluate(pt) == ea * eb);
    CHECK(a.pow(3).evaluate(pt) == ea * ea * ea);
  }
}

TEST_CASE("parse and print round trip") {
  auto r = xyz();
  auto f = P("(x+y)^2 - 2*x*y - y^2 + z/3", r);
  CHECK(f == P("x^2+1/3*z", r));
  CHECK(f.to_string() == "x^2+1/3*z");
  CHECK(P(f.to_string().c_str(), r) == f);
  CHECK_THROWS(P("x + q", r));
  CHECK_THROWS(P("x^", r));
}

TEST_CASE("lex leading terms and substitution") {
  auto r = xyz();
  auto f = P("y^5 + x*z + z^9", r);
  CHECK(f.leading_term().mono.exp[0] == 1);
  CHECK(f.leading_term(MonomialOrder(OrderKind::grlex)).mono.exp[2] == 9);
  CHECK(f.degree_in(1) == 5);
  CHECK(f.coefficient_in(0, 1) == P("z", r));
  CHECK(f.substitute(0, P("y", r)) == P("y^5+y*z+z^9", r));
}

TEST_CASE("division satisfies f = sum q_i g_i + r") {
  auto r = xyz();
  std::mt19937_64 rng(11);
  for (int k = 0; k < 30; ++k) {
    auto f = random_poly(r, rng, 6, 3);
    std::vector<Polynomial> g = {random_poly(r, rng, 3, 2), random_poly(r, rng, 2, 2)};
    for (auto& gi : g)
      if (gi.is_zero()) gi = P("x+1", r);
    auto d = divide(f, g);
    Polynomial sum = d.remainder;
    for (std::size_t i = 0; i < g.size(); ++i) sum += d.quotients[i] * g[i];
    CHECK(sum == f);
    for (const auto& t : d.remainder.terms())
      for (const auto& gi : g) CHECK_FALSE(gi.leading_term().mono.divides(t.mono));
  }
}

TEST_CASE("textbook Groebner basis") {
  // x^3 - 2xy, x^2y - 2y^2 + x under grlex: {x^2, xy, y^2 - x/2}.
  auto r = make_ring({"x", "y"});
  GroebnerOptions o;
  o.order = MonomialOrder(OrderKind::grlex);
  auto gb = buchberger({P("x^3-2*x*y", r), P("x^2*y-2*y^2+x", r)}, o);
  REQUIRE(gb.elements.size() == 3);
  CHECK(ideal_equal(gb.elements, {P("x^2", r), P("x*y", r), P("y^2-1/2*x", r)}, o.order));
  CHECK(is_reduced_groebner(gb));
}

TEST_CASE("lex elimination of a twisted cubic") {
  // (t, t^2, t^3): eliminating t leaves y - x^2, z - x^3.
  auto r = make_ring({"t", "x", "y", "z"});
  auto gb = buchberger({P("x-t", r), P("y-t^2", r), P("z-t^3", r)});
  CHECK(is_reduced_groebner(gb));
  auto elim = eliminate(gb, 1);
  CHECK(ideal_equal(elim, {P("y-x^2", r), P("z-x^3", r)}));
  CHECK(ideal_contains(gb, P("x*z-y^2", r)));
  CHECK_FALSE(ideal_contains(gb, P("x*z-y", r)));
}

TEST_CASE("Buchberger with and without pair criteria agree") {
  auto r = xyz();
  std::mt19937_64 rng(3);
  for (int k = 0; k < 8; ++k) {
    std::vector<Polynomial> gens = {random_poly(r, rng, 3, 2), random_poly(r, rng, 3, 2),
                                    random_poly(r, rng, 2, 2)};
    GroebnerOptions plain;
    plain.use_criteria = false;
    auto a = buchberger(gens), b = buchberger(gens, plain);
    CHECK(a.elements == b.elements);
    for (const auto& g : gens) CHECK(ideal_contains(a, g));
  }
}

TEST_CASE("pair budget is enforced") {
  auto r = xyz();
  GroebnerOptions o;
  o.max_pairs = 1;
  CHECK_THROWS_AS(buchberger({P("x^3-y*z", r), P("y^3-x*z", r), P("z^3-x*y", r)}, o),
                  GroebnerBudgetExceeded);
}
