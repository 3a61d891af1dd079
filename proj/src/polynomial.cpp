#include "cvar/polynomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cvar {

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVariables)
    throw std::invalid_argument("ring has too many variables");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable " + names_[i]);
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned s = unsigned(a.exp[i]) + b.exp[i];
    if (s > 255) throw std::overflow_error("monomial exponent overflow");
    r.exp[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp[i] = a.exp[i] - b.exp[i];
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp[i] = std::max(a.exp[i], b.exp[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (a.exp[i] && b.exp[i]) return false;
  return true;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind_ != OrderKind::lex) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
  }
  if (kind_ == OrderKind::grevlex) {
    for (std::size_t i = kMaxVariables; i-- > 0;)
      if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    return 0;
  }
  auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

namespace {

void normalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.mono > y.mono; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coef += t.coef;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const Term& t) { return t.coef == 0; });
  terms = std::move(out);
}

}  // namespace

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("null ring");
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->size()) throw std::out_of_range("variable index");
  Polynomial p(std::move(ring));
  Monomial m;
  m.exp[index] = 1;
  p.terms_.push_back({m, Rational(1)});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  auto idx = ring->index_of(name);
  if (!idx) throw std::invalid_argument("unknown variable " + std::string(name));
  return variable(std::move(ring), *idx);
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  for (const auto& t : terms)
    for (std::size_t i = p.ring_->size(); i < kMaxVariables; ++i)
      if (t.mono.exp[i]) throw std::invalid_argument("monomial outside ring");
  normalize_terms(terms);
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

const Term& Polynomial::leading_term(MonomialOrder order) const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  if (order.kind() == OrderKind::lex) return terms_.front();
  const Term* best = &terms_.front();
  for (const auto& t : terms_)
    if (order.greater(t.mono, best->mono)) best = &t;
  return *best;
}

Polynomial Polynomial::monic(MonomialOrder order) const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading_term(order).coef;
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef *= inv;
  return r;
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (ring_ != other.ring_ && !(*ring_ == *other.ring_))
    throw std::invalid_argument("ring mismatch");
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(other);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = other.terms_.begin(), be = other.terms_.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->mono > b->mono)) {
      out.push_back(std::move(*a++));
    } else if (a == ae || b->mono > a->mono) {
      out.push_back(*b++);
    } else {
      Rational c = a->coef + b->coef;
      if (c != 0) out.push_back({a->mono, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  require_same_ring(other);
  std::map<Monomial, Rational, std::greater<>> acc;
  for (const auto& x : terms_)
    for (const auto& y : other.terms_) acc[x.mono * y.mono] += x.coef * y.coef;
  terms_.clear();
  for (auto& [m, c] : acc)
    if (c != 0) terms_.push_back({m, c});
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(ring_, 1), base = *this;
  while (k) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!(*a.ring_ == *b.ring_)) return false;
  return a.terms_ == b.terms_;
}

Rational Polynomial::evaluate(std::span<const Rational> values) const {
  if (values.size() != ring_->size()) throw std::invalid_argument("evaluation dimension mismatch");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coef;
    for (std::size_t i = 0; i < values.size(); ++i)
      for (unsigned e = 0; e < t.mono.exp[i]; ++e) v *= values[i];
    sum += v;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> values) const {
  if (values.size() != ring_->size()) throw std::invalid_argument("evaluation dimension mismatch");
  double sum = 0;
  for (const auto& t : terms_) {
    double v = t.coef.get_d();
    for (std::size_t i = 0; i < values.size(); ++i)
      for (unsigned e = 0; e < t.mono.exp[i]; ++e) v *= values[i];
    sum += v;
  }
  return sum;
}

bool Polynomial::involves(std::size_t var) const { return degree_in(var) > 0; }

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[var]);
  return d;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

Polynomial Polynomial::coefficient_in(std::size_t var, unsigned k) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.mono.exp[var] == k) {
      Term u = t;
      u.mono.exp[var] = 0;
      out.push_back(std::move(u));
    }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  require_same_ring(value);
  unsigned d = degree_in(var);
  Polynomial r(ring_);
  Polynomial power = constant(ring_, 1);
  for (unsigned k = 0; k <= d; ++k) {
    Polynomial c = coefficient_in(var, k);
    if (!c.is_zero()) r += c * power;
    if (k < d) power *= value;
  }
  return r;
}

Polynomial Polynomial::in_ring(RingPtr target) const {
  std::vector<std::size_t> map(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    auto j = target->index_of(ring_->name(i));
    if (!j) {
      if (degree_in(i) == 0) {
        map[i] = kMaxVariables;
        continue;
      }
      throw std::invalid_argument("variable " + ring_->name(i) + " missing from target ring");
    }
    map[i] = *j;
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term u{Monomial{}, t.coef};
    for (std::size_t i = 0; i < ring_->size(); ++i)
      if (t.mono.exp[i]) u.mono.exp[map[i]] = t.mono.exp[i];
    out.push_back(std::move(u));
  }
  return from_terms(std::move(target), std::move(out));
}

std::string Polynomial::to_string(MonomialOrder order) const {
  if (terms_.empty()) return "0";
  std::vector<const Term*> ts;
  for (const auto& t : terms_) ts.push_back(&t);
  if (order.kind() != OrderKind::lex)
    std::stable_sort(ts.begin(), ts.end(),
                     [&](const Term* a, const Term* b) { return order.greater(a->mono, b->mono); });
  std::string s;
  bool first = true;
  for (const Term* t : ts) {
    Rational c = t->coef;
    bool neg = c < 0;
    if (neg) c = -c;
    if (neg)
      s += "-";
    else if (!first)
      s += "+";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      unsigned e = t->mono.exp[i];
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      s += cvar::to_string(c);
    else if (c == 1)
      s += mono;
    else
      s += cvar::to_string(c) + "*" + mono;
  }
  return s;
}

}  // namespace cvar
