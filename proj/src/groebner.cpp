#include "cvar/groebner.hpp"

#include <algorithm>

namespace cvar {

namespace {

// Terms in increasing order so the leading term sits at back().
using TermList = std::vector<Term>;

TermList to_list(const Polynomial& p, MonomialOrder order) {
  TermList t(p.terms().rbegin(), p.terms().rend());
  if (order.kind() != OrderKind::lex)
    std::sort(t.begin(), t.end(),
              [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) < 0; });
  return t;
}

Polynomial from_list(const RingPtr& ring, TermList t) {
  return Polynomial::from_terms(ring, std::move(t));
}

// p - c * m * g, both increasing; result increasing with zeros removed.
TermList sub_mul(const TermList& p, const Rational& c, const Monomial& m, const TermList& g,
                 MonomialOrder order) {
  TermList out;
  out.reserve(p.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial gm = g[j].mono * m;
    if (i == p.size()) {
      out.push_back({gm, -c * g[j].coef});
      ++j;
      continue;
    }
    int cmp = order.compare(p[i].mono, gm);
    if (cmp < 0) {
      out.push_back(p[i++]);
    } else if (cmp > 0) {
      out.push_back({gm, -c * g[j].coef});
      ++j;
    } else {
      Rational v = p[i].coef - c * g[j].coef;
      if (v != 0) out.push_back({gm, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

void make_monic(TermList& t) {
  if (t.empty() || t.back().coef == 1) return;
  Rational inv = 1 / t.back().coef;
  for (auto& x : t) x.coef *= inv;
}

struct Reducer {
  const std::vector<TermList>* basis;
  const std::vector<bool>* active;
  MonomialOrder order;

  int find_divisor(const Monomial& m) const {
    for (std::size_t k = 0; k < basis->size(); ++k) {
      if (active && !(*active)[k]) continue;
      const auto& g = (*basis)[k];
      if (!g.empty() && g.back().mono.divides(m)) return static_cast<int>(k);
    }
    return -1;
  }

  // Full reduction; remainder in increasing order. Quotients recorded if asked.
  TermList reduce(TermList p, std::vector<TermList>* quotients = nullptr) const {
    TermList rem;  // collected in decreasing order, reversed at the end
    while (!p.empty()) {
      const Term& lt = p.back();
      int k = find_divisor(lt.mono);
      if (k < 0) {
        rem.push_back(lt);
        p.pop_back();
        continue;
      }
      const auto& g = (*basis)[k];
      Rational c = lt.coef / g.back().coef;
      Monomial m = quotient(lt.mono, g.back().mono);
      if (quotients) (*quotients)[k].push_back({m, c});
      p = sub_mul(p, c, m, g, order);
    }
    std::reverse(rem.begin(), rem.end());
    return rem;
  }
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  unsigned sugar;
};

}  // namespace

DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& basis,
                      MonomialOrder order) {
  std::vector<TermList> b;
  for (const auto& g : basis) {
    if (!(*g.ring() == *f.ring())) throw std::invalid_argument("ring mismatch");
    b.push_back(to_list(g, order));
  }
  std::vector<TermList> q(basis.size());
  Reducer red{&b, nullptr, order};
  TermList r = red.reduce(to_list(f, order), &q);
  DivisionResult out{{}, from_list(f.ring(), std::move(r))};
  for (auto& qi : q) out.quotients.push_back(from_list(f.ring(), std::move(qi)));
  return out;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       MonomialOrder order) {
  std::vector<TermList> b;
  for (const auto& g : basis) {
    if (!(*g.ring() == *f.ring())) throw std::invalid_argument("ring mismatch");
    if (!g.is_zero()) b.push_back(to_list(g, order));
  }
  Reducer red{&b, nullptr, order};
  return from_list(f.ring(), red.reduce(to_list(f, order)));
}

GroebnerBasis buchberger(const std::vector<Polynomial>& generators, const GroebnerOptions& opt) {
  if (generators.empty()) throw std::invalid_argument("empty ideal");
  const RingPtr ring = generators.front().ring();
  const MonomialOrder order = opt.order;

  std::vector<TermList> G;
  std::vector<unsigned> sugar;
  std::vector<bool> active;
  std::vector<Pair> B;

  auto lt = [&](std::size_t k) -> const Monomial& { return G[k].back().mono; };

  auto update = [&](std::size_t h) {
    const Monomial& lh = lt(h);
    std::vector<Pair> C;
    for (std::size_t g = 0; g < h; ++g) {
      if (!active[g]) continue;
      Monomial L = lcm(lt(g), lh);
      unsigned d = L.total_degree();
      unsigned s = std::max(sugar[g] + d - lt(g).total_degree(), sugar[h] + d - lh.total_degree());
      C.push_back({g, h, L, s});
    }
    if (!opt.use_criteria) {
      B.insert(B.end(), C.begin(), C.end());
      return;
    }
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = coprime(lt(p.i), lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (C[b].lcm.divides(p.lcm)) keep = false;
        for (const auto& d : D)
          if (keep && d.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> NB;
    for (const auto& p : B) {
      if (lh.divides(p.lcm) && lcm(lt(p.i), lh) != p.lcm && lcm(lt(p.j), lh) != p.lcm) continue;
      NB.push_back(p);
    }
    for (const auto& p : D)
      if (!coprime(lt(p.i), lh)) NB.push_back(p);
    B = std::move(NB);
    for (std::size_t g = 0; g < h; ++g)
      if (active[g] && lh.divides(lt(g))) active[g] = false;
  };

  auto add = [&](TermList t, unsigned s) {
    make_monic(t);
    G.push_back(std::move(t));
    sugar.push_back(s);
    active.push_back(true);
    update(G.size() - 1);
  };

  for (const auto& f : generators) {
    if (!(*f.ring() == *ring)) throw std::invalid_argument("ring mismatch");
    if (f.is_zero()) continue;
    // Reduce inputs against what we have so far to keep the set small.
    Reducer red{&G, &active, order};
    TermList r = red.reduce(to_list(f, order));
    if (!r.empty()) add(std::move(r), f.total_degree());
  }

  std::size_t steps = 0;
  while (!B.empty()) {
    if (++steps > opt.max_pairs)
      throw GroebnerBudgetExceeded("Groebner basis pair budget exceeded");
    auto best = std::min_element(B.begin(), B.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return order.compare(a.lcm, b.lcm) < 0;
    });
    Pair p = *best;
    B.erase(best);
    const TermList& gi = G[p.i];
    const TermList& gj = G[p.j];
    TermList s = sub_mul(TermList{}, Rational(-1), quotient(p.lcm, lt(p.i)), gi, order);
    s = sub_mul(s, Rational(1), quotient(p.lcm, lt(p.j)), gj, order);
    Reducer red{&G, &active, order};
    TermList r = red.reduce(std::move(s));
    if (!r.empty()) add(std::move(r), p.sugar);
  }

  // Minimal basis, then interreduce.
  std::vector<TermList> M;
  for (std::size_t k = 0; k < G.size(); ++k) {
    if (!active[k]) continue;
    bool redundant = false;
    for (std::size_t l = 0; l < G.size() && !redundant; ++l)
      if (l != k && active[l] && lt(l).divides(lt(k)) && (lt(l) != lt(k) || l < k))
        redundant = true;
    if (!redundant) M.push_back(G[k]);
  }
  std::vector<TermList> R;
  for (std::size_t k = 0; k < M.size(); ++k) {
    std::vector<TermList> others;
    for (std::size_t l = 0; l < M.size(); ++l)
      if (l != k) others.push_back(M[l]);
    Reducer red{&others, nullptr, order};
    TermList tail(M[k].begin(), M[k].end() - 1);
    TermList r = red.reduce(std::move(tail));
    r.push_back(M[k].back());
    make_monic(r);
    R.push_back(std::move(r));
  }
  std::sort(R.begin(), R.end(), [&](const TermList& a, const TermList& b) {
    return order.compare(a.back().mono, b.back().mono) > 0;
  });
  GroebnerBasis gb{{}, order};
  for (auto& r : R) gb.elements.push_back(from_list(ring, std::move(r)));
  return gb;
}

std::vector<Polynomial> eliminate(const GroebnerBasis& gb, std::size_t l) {
  if (gb.elements.empty()) return {};
  if (l > gb.elements.front().ring()->size())
    throw std::invalid_argument("elimination count exceeds variable count");
  std::vector<Polynomial> out;
  for (const auto& g : gb.elements) {
    bool free = true;
    for (std::size_t v = 0; v < l && free; ++v)
      if (g.involves(v)) free = false;
    if (free) out.push_back(g);
  }
  return out;
}

bool ideal_contains(const GroebnerBasis& gb, const Polynomial& f) {
  return normal_form(f, gb.elements, gb.order).is_zero();
}

bool ideal_equal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                 MonomialOrder order) {
  GroebnerOptions opt;
  opt.order = order;
  auto ga = buchberger(a, opt);
  auto gbb = buchberger(b, opt);
  for (const auto& f : b)
    if (!ideal_contains(ga, f)) return false;
  for (const auto& f : a)
    if (!ideal_contains(gbb, f)) return false;
  return true;
}

bool is_reduced_groebner(const GroebnerBasis& gb) {
  const auto& E = gb.elements;
  const auto order = gb.order;
  for (std::size_t k = 0; k < E.size(); ++k) {
    if (E[k].is_zero() || E[k].leading_term(order).coef != 1) return false;
    for (std::size_t l = 0; l < E.size(); ++l) {
      if (l == k) continue;
      const Monomial& ll = E[l].leading_term(order).mono;
      for (const auto& t : E[k].terms())
        if (ll.divides(t.mono)) return false;
    }
  }
  for (std::size_t k = 0; k < E.size(); ++k)
    for (std::size_t l = k + 1; l < E.size(); ++l) {
      const Term& a = E[k].leading_term(order);
      const Term& b = E[l].leading_term(order);
      Monomial L = lcm(a.mono, b.mono);
      Polynomial s = E[k].times_term(quotient(L, a.mono), 1) - E[l].times_term(quotient(L, b.mono), 1);
      if (!normal_form(s, E, order).is_zero()) return false;
    }
  return true;
}

}  // namespace cvar
