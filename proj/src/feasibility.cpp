#include "cvar/feasibility.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace cvar {

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::eq: return "=";
    case Relation::gt: return ">";
    case Relation::ge: return ">=";
    case Relation::lt: return "<";
    case Relation::le: return "<=";
  }
  return "?";
}

namespace {

template <class T>
bool compare(const T& a, Relation r, const T& b) {
  switch (r) {
    case Relation::eq: return a == b;
    case Relation::gt: return a > b;
    case Relation::ge: return a >= b;
    case Relation::lt: return a < b;
    case Relation::le: return a <= b;
  }
  return false;
}

bool compare_slack(double a, Relation r, double b, double slack) {
  switch (r) {
    case Relation::eq: return std::abs(a - b) <= slack;
    case Relation::gt: return a > b - slack;
    case Relation::ge: return a >= b - slack;
    case Relation::lt: return a < b + slack;
    case Relation::le: return a <= b + slack;
  }
  return false;
}

}  // namespace

bool SignCondition::holds(const JointDist& p) const {
  auto x = ring_point(*lhs.ring(), p);
  Rational num = lhs.evaluate(x);
  bool ok;
  if (!denom) {
    ok = compare(num, rel, rhs);
  } else {
    Rational d = denom->evaluate(x);
    ok = d == 0 ? num == 0 : compare(Rational(num / d), rel, rhs);
  }
  for (std::size_t i = 0; !ok && i < alternatives.size(); ++i) ok = alternatives[i].holds(p);
  return ok;
}

bool SignCondition::holds(const JointDistD& p, double slack) const {
  auto x = ring_point(*lhs.ring(), p);
  double num = lhs.evaluate(std::span<const double>(x));
  double r = rhs.get_d();
  bool ok;
  if (!denom) {
    ok = compare_slack(num, rel, r, slack);
  } else {
    double d = denom->evaluate(std::span<const double>(x));
    ok = std::abs(d) <= slack ? std::abs(num) <= slack : compare_slack(num / d, rel, r, slack);
  }
  for (std::size_t i = 0; !ok && i < alternatives.size(); ++i) ok = alternatives[i].holds(p, slack);
  return ok;
}

std::string SignCondition::to_string() const {
  std::string s = denom ? "frac(" + lhs.to_string() + ", " + denom->to_string() + ")"
                        : lhs.to_string();
  s += " " + std::string(relation_symbol(rel)) + " " + cvar::to_string(rhs);
  for (const auto& a : alternatives) s += " or " + a.to_string();
  return s;
}

unsigned FeasibilityTest::pinned() const {
  unsigned mask = 0;
  for (const auto& c : conditions) {
    if (c.denom || c.rel != Relation::eq || !c.alternatives.empty()) continue;
    const Ring& ring = *c.lhs.ring();
    int var = -1;
    bool linear = true;
    for (const auto& t : c.lhs.terms()) {
      unsigned d = t.mono.total_degree();
      if (d == 0) continue;
      if (d > 1) linear = false;
      for (std::size_t i = 0; i < ring.size(); ++i)
        if (t.mono.exp[i]) {
          if (var >= 0 && var != int(i)) linear = false;
          var = int(i);
        }
    }
    if (!linear || var < 0) continue;
    for (unsigned o = 0; o < 4; ++o)
      if (ring.index_of(p_name(o)) == std::size_t(var)) mask |= 1u << o;
  }
  return mask;
}

std::string FeasibilityTest::to_string() const {
  if (conditions.empty()) return "(open tetrahedron)";
  std::string s;
  for (const auto& c : conditions) {
    if (!s.empty()) s += "; ";
    s += c.to_string();
  }
  return s;
}

std::optional<std::string> explain_failure(const FeasibilityTest& t, const JointDist& p) {
  if (!is_valid(p)) return "not a probability distribution";
  unsigned pin = t.pinned();
  for (unsigned o = 0; o < 4; ++o)
    if (!((pin >> o) & 1) && (p[o] <= 0 || p[o] >= 1))
      return "open-interval constraint violated: " + std::string(p_name(o)) + " not in (0,1)";
  for (const auto& c : t.conditions)
    if (!c.holds(p)) {
      const char* kind = c.rel == Relation::eq ? "equality" : c.strict() ? "strict inequality"
                                                                         : "inequality";
      return std::string(kind) + " violated: " + c.to_string();
    }
  return std::nullopt;
}

bool evaluate_test(const FeasibilityTest& t, const JointDist& p) {
  return !explain_failure(t, p).has_value();
}

bool evaluate_test(const FeasibilityTest& t, const JointDistD& p, double slack) {
  unsigned pin = t.pinned();
  for (unsigned o = 0; o < 4; ++o)
    if (!((pin >> o) & 1) && (p[o] <= 0 || p[o] >= 1)) return false;
  for (const auto& c : t.conditions)
    if (!c.holds(p, slack)) return false;
  return true;
}

Polynomial permute_p(const Polynomial& f, const std::array<unsigned, 4>& perm) {
  const Ring& ring = *f.ring();
  std::array<std::size_t, kMaxVariables> map{};
  for (std::size_t i = 0; i < ring.size(); ++i) map[i] = i;
  for (unsigned o = 0; o < 4; ++o)
    if (auto i = ring.index_of(p_name(o))) map[*i] = p_index(ring, perm[o]);
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Term u{Monomial{}, t.coef};
    for (std::size_t i = 0; i < ring.size(); ++i) u.mono.exp[map[i]] += t.mono.exp[i];
    out.push_back(std::move(u));
  }
  return Polynomial::from_terms(f.ring(), std::move(out));
}

namespace {

SignCondition transform_condition(const SymmetryElem& g, const SignCondition& c) {
  SignCondition d = c;
  d.lhs = permute_p(c.lhs, g.perm());
  if (c.denom) d.denom = permute_p(*c.denom, g.perm());
  for (auto& a : d.alternatives) a = transform_condition(g, a);
  return d;
}

}  // namespace

FeasibilityTest transform_test(const SymmetryElem& g, const FeasibilityTest& t) {
  FeasibilityTest out;
  for (const auto& c : t.conditions) out.conditions.push_back(transform_condition(g, c));
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

namespace {

SignCondition parse_single(std::string_view text);

}  // namespace

SignCondition parse_condition(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth == 0 && text.substr(i, 4) == " or ") {
      parts.push_back(text.substr(start, i - start));
      start = i + 4;
      i += 3;
    }
  }
  parts.push_back(text.substr(start));
  SignCondition c = parse_single(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) c.alternatives.push_back(parse_single(parts[i]));
  return c;
}

namespace {

SignCondition parse_single(std::string_view text) {
  // Find the relation operator outside parentheses.
  int depth = 0;
  std::size_t at = std::string_view::npos, len = 0;
  Relation rel = Relation::eq;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth || (c != '<' && c != '>' && c != '=')) continue;
    at = i;
    bool eq_next = i + 1 < text.size() && text[i + 1] == '=';
    len = eq_next ? 2 : 1;
    rel = c == '=' ? Relation::eq
          : c == '<' ? (eq_next ? Relation::le : Relation::lt)
                     : (eq_next ? Relation::ge : Relation::gt);
    if (c == '=' && eq_next) len = 2;
    break;
  }
  if (at == std::string_view::npos)
    throw std::invalid_argument("condition needs a relation: '" + std::string(text) + "'");
  auto left = trim(text.substr(0, at));
  auto right = trim(text.substr(at + len));
  SignCondition c;
  c.rel = rel;
  RingPtr ring = p_ring();
  if (left.starts_with("frac(") && left.ends_with(")")) {
    auto inner = left.substr(5, left.size() - 6);
    int d = 0;
    std::size_t comma = std::string_view::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++d;
      if (inner[i] == ')') --d;
      if (inner[i] == ',' && d == 0) comma = i;
    }
    if (comma == std::string_view::npos) throw std::invalid_argument("frac needs two arguments");
    c.lhs = parse_polynomial(inner.substr(0, comma), ring);
    c.denom = parse_polynomial(inner.substr(comma + 1), ring);
    Polynomial r = parse_polynomial(right, ring);
    if (!r.is_constant()) throw std::invalid_argument("ratio bound must be a constant");
    c.rhs = r.is_zero() ? Rational(0) : r.terms().front().coef;
  } else {
    c.lhs = parse_polynomial(left, ring) - parse_polynomial(right, ring);
  }
  if (c.lhs.is_zero() && !c.denom) throw std::invalid_argument("condition is trivially zero");
  return c;
}

}  // namespace

}  // namespace cvar
