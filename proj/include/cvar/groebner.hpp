#pragma once

#include "cvar/polynomial.hpp"

#include <stdexcept>
#include <vector>

namespace cvar {

/// Thrown when Buchberger exceeds its pair budget. Never a wrong answer.
class GroebnerBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroebnerBasis {
  std::vector<Polynomial> elements;  // reduced, monic, sorted by decreasing leading term
  MonomialOrder order;
};

struct GroebnerOptions {
  MonomialOrder order = MonomialOrder::lex();
  std::size_t max_pairs = 200000;
  bool use_criteria = true;  // Gebauer-Moeller pair elimination
};

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Full multivariate division: f = sum(q_i * basis_i) + remainder, where no
/// term of the remainder is divisible by a leading term of the basis.
DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& basis,
                      MonomialOrder order = MonomialOrder::lex());

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       MonomialOrder order = MonomialOrder::lex());

GroebnerBasis buchberger(const std::vector<Polynomial>& generators,
                         const GroebnerOptions& options = {});

/// Elements free of the first `l` ring variables.
std::vector<Polynomial> eliminate(const GroebnerBasis& gb, std::size_t l);

bool ideal_contains(const GroebnerBasis& gb, const Polynomial& f);

/// Mutual membership: every element of `a` lies in <b> and vice versa.
bool ideal_equal(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                 MonomialOrder order = MonomialOrder::lex());

/// Checks that `gb` is a reduced Groebner basis under its order.
bool is_reduced_groebner(const GroebnerBasis& gb);

}  // namespace cvar
