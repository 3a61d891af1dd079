#include "cvar/implicitization.hpp"

#include "cvar/geometry.hpp"

#include <algorithm>

namespace cvar {

std::string Identification::to_string() const {
  std::string s = "q" + std::to_string(latent + 1) + " = ";
  if (denominator == Polynomial::constant(denominator.ring(), 1))
    return s + numerator.to_string();
  return s + "(" + numerator.to_string() + ")/(" + denominator.to_string() + ")";
}

ImplicitizationResult equality_constraints(const CausalModel& m, const GroebnerOptions& options) {
  ImplicitizationResult r;
  r.ring = model_ring(m.n);
  auto param = parametrize(m);
  std::vector<Polynomial> gens;
  for (unsigned o = 0; o < 4; ++o)
    gens.push_back(Polynomial::variable(r.ring, p_index(*r.ring, o)) - param[o]);
  r.groebner = buchberger(gens, options);
  for (const auto& g : eliminate(r.groebner, m.n)) r.equalities.push_back(g.in_ring(p_ring()));

  for (const auto& g : r.groebner.elements) {
    std::vector<unsigned> qs;
    for (unsigned i = 0; i < m.n; ++i)
      if (g.involves(i)) qs.push_back(i);
    if (qs.size() != 1 || g.degree_in(qs[0]) != 1) continue;
    unsigned i = qs[0];
    bool have = std::any_of(r.identifications.begin(), r.identifications.end(),
                            [&](const Identification& x) { return x.latent == i; });
    if (have) continue;
    Identification id;
    id.latent = i;
    id.numerator = (-g.coefficient_in(i, 0)).in_ring(p_ring());
    id.denominator = g.coefficient_in(i, 1).in_ring(p_ring());
    r.identifications.push_back(std::move(id));
  }
  std::sort(r.identifications.begin(), r.identifications.end(),
            [](const Identification& a, const Identification& b) { return a.latent < b.latent; });
  return r;
}

std::map<unsigned, Rational> solve_latent_params(const ImplicitizationResult& r,
                                                 const JointDist& p) {
  if (!is_valid(p)) throw std::invalid_argument("not a probability distribution");
  auto x = ring_point(*p_ring(), p);
  for (const auto& e : r.equalities)
    if (e.evaluate(x) != 0)
      throw InfeasibleError("distribution violates equality constraint " + e.to_string() + " = 0");
  std::map<unsigned, Rational> out;
  for (const auto& id : r.identifications) {
    Rational d = id.denominator.evaluate(x);
    if (d == 0) continue;
    out[id.latent] = id.numerator.evaluate(x) / d;
  }
  return out;
}

std::map<unsigned, Rational> solve_latent_params(const CausalModel& m, const JointDist& p) {
  return solve_latent_params(equality_constraints(m), p);
}

CertificationReport certify_test(const CausalModel& m, const FeasibilityTest& t,
                                 const CertifyOptions& opt) {
  CertificationReport rep;
  rep.samples = opt.samples;
  if (opt.samples > 0) {
    auto cloud = sample_cloud(m, opt.samples, opt.seed, opt.exec);
    std::vector<char> bad(cloud.size(), 0);
    const auto n = static_cast<std::int64_t>(cloud.size());
    if (opt.exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
      for (std::int64_t i = 0; i < n; ++i) bad[i] = !evaluate_test(t, cloud[i]);
    } else {
      for (std::int64_t i = 0; i < n; ++i) bad[i] = !evaluate_test(t, cloud[i]);
    }
    for (std::int64_t i = 0; i < n; ++i) {
      if (!bad[i]) continue;
      if (rep.violations++ == 0) {
        rep.counterexample_q = sample_q(m.n, opt.seed, i);
        rep.counterexample_p = cloud[i];
      }
    }
    rep.necessity = rep.violations == 0;
  }

  if (opt.grid_denominator > 0) {
    const unsigned D = opt.grid_denominator;
    std::vector<JointDist> passing;
    for (unsigned a = 0; a <= D; ++a)
      for (unsigned b = 0; a + b <= D; ++b)
        for (unsigned c = 0; a + b + c <= D; ++c) {
          JointDist p = {Rational(a, D), Rational(b, D), Rational(c, D), Rational(D - a - b - c, D)};
          for (auto& x : p) x.canonicalize();
          if (evaluate_test(t, p)) passing.push_back(p);
        }
    std::vector<JointDistD> targets;
    for (const auto& p : passing) targets.push_back(to_double(p));
    auto fits = fit_batch(m, targets, opt.fit, opt.exec);
    rep.grid_passing = passing.size();
    for (std::size_t i = 0; i < fits.size(); ++i) {
      if (fits[i].success)
        ++rep.grid_fitted;
      else
        rep.unfitted.push_back(passing[i]);
    }
  }
  return rep;
}

Polynomial normalize_p(const Polynomial& f, const std::vector<Polynomial>& equalities) {
  if (equalities.empty()) return f.in_ring(p_ring());
  RingPtr N = make_ring({"p11", "p10", "p01", "p00"});
  std::vector<Polynomial> eq;
  for (const auto& e : equalities) eq.push_back(e.in_ring(N));
  auto gb = buchberger(eq);
  return normal_form(f.in_ring(N), gb.elements).in_ring(p_ring());
}

Polynomial extension_real_roots(const Polynomial& element, const Ring& ring,
                                const std::vector<Polynomial>& equalities,
                                const std::vector<Identification>& substitutions) {
  RingPtr R = element.ring();
  if (!(*R == ring)) throw std::invalid_argument("ring mismatch");
  auto is_q = [&](std::size_t i) { return R->name(i).starts_with("q"); };
  Polynomial f = element;
  for (const auto& s : substitutions) {
    std::size_t j = s.latent;
    if (j >= R->size() || !is_q(j) || !f.involves(j)) continue;
    unsigned k = f.degree_in(j);
    Polynomial num = s.numerator.in_ring(R), den = s.denominator.in_ring(R);
    Polynomial acc(R);
    for (unsigned t = 0; t <= k; ++t) acc += f.coefficient_in(j, t) * num.pow(t) * den.pow(k - t);
    f = acc;
  }
  std::vector<std::size_t> qs;
  for (std::size_t i = 0; i < R->size(); ++i)
    if (is_q(i) && f.involves(i)) qs.push_back(i);
  if (qs.size() != 1) throw std::invalid_argument("element must involve exactly one q");
  std::size_t v = qs[0];
  if (f.degree_in(v) != 2) throw std::invalid_argument("element is not quadratic in " + R->name(v));
  Polynomial a = f.coefficient_in(v, 2), b = f.coefficient_in(v, 1), c = f.coefficient_in(v, 0);
  Polynomial disc = b * b - Polynomial::constant(R, 4) * a * c;
  return normalize_p(disc.in_ring(p_ring()), equalities);
}

bool equal_up_to_positive_constant(const Polynomial& a, const Polynomial& b,
                                   const std::vector<Polynomial>& equalities) {
  Polynomial na = normalize_p(a, equalities), nb = normalize_p(b, equalities);
  if (na.is_zero() || nb.is_zero()) return na.is_zero() && nb.is_zero();
  Rational ratio = na.leading_term().coef / nb.leading_term().coef;
  return ratio > 0 && na == nb * ratio;
}

}  // namespace cvar
