#pragma once

#include "cvar/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cvar {

inline constexpr std::size_t kMaxVariables = 16;

/// An ordered list of variable names. The position of a name is its rank in
/// lexicographic order: index 0 is the largest variable.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);

/// Exponent vector. Entries past the ring's variable count stay zero, so the
/// defaulted comparison is exactly lexicographic order.
struct Monomial {
  std::array<std::uint8_t, kMaxVariables> exp{};

  unsigned total_degree() const;
  bool is_one() const { return total_degree() == 0; }
  bool divides(const Monomial& other) const;

  auto operator<=>(const Monomial&) const = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);
/// a / b; requires b.divides(a).
Monomial quotient(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

enum class OrderKind { lex, grlex, grevlex };

/// Term order on monomials. Lex is what the elimination machinery relies on;
/// the graded orders are available for experimentation.
class MonomialOrder {
 public:
  constexpr MonomialOrder() = default;
  constexpr explicit MonomialOrder(OrderKind kind) : kind_(kind) {}

  static constexpr MonomialOrder lex() { return MonomialOrder(OrderKind::lex); }

  OrderKind kind() const { return kind_; }
  /// Negative, zero or positive as a is smaller, equal or larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(MonomialOrder a, MonomialOrder b) { return a.kind_ == b.kind_; }

 private:
  OrderKind kind_ = OrderKind::lex;
};

struct Term {
  Monomial mono;
  Rational coef;

  friend bool operator==(const Term& a, const Term& b) {
    return a.mono == b.mono && a.coef == b.coef;
  }
};

/// Sparse polynomial with exact rational coefficients. Terms are kept sorted
/// in decreasing lex order with no zero coefficients, which makes equality a
/// plain comparison of term lists.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial variable(RingPtr ring, std::string_view name);
  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }

  /// Leading term under `order` (lex by default). Requires a nonzero polynomial.
  const Term& leading_term(MonomialOrder order = MonomialOrder::lex()) const;
  Polynomial monic(MonomialOrder order = MonomialOrder::lex()) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial pow(unsigned k) const;
  Polynomial times_term(const Monomial& m, const Rational& c) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Rational evaluate(std::span<const Rational> values) const;
  double evaluate(std::span<const double> values) const;

  bool involves(std::size_t var) const;
  unsigned degree_in(std::size_t var) const;
  unsigned total_degree() const;
  /// Coefficient of var^k as a polynomial in the remaining variables.
  Polynomial coefficient_in(std::size_t var, unsigned k) const;
  /// Replaces `var` by `value` (which must share the ring).
  Polynomial substitute(std::size_t var, const Polynomial& value) const;
  /// Re-expresses the polynomial over `target`, matching variables by name.
  Polynomial in_ring(RingPtr target) const;

  /// Compact text such as `p01^2+p01*p10-p01`, terms in decreasing `order`.
  std::string to_string(MonomialOrder order = MonomialOrder::lex()) const;

 private:
  void require_same_ring(const Polynomial& other) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Parses integer/rational coefficients, `*`, `^`, `+`, `-`, parentheses and
/// division by a numeric constant. Unknown identifiers are an error.
Polynomial parse_polynomial(std::string_view text, RingPtr ring);

}  // namespace cvar
