#pragma once

#include "cvar/causal_model.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace cvar {

enum class Generator { fA, fB, S, X };

/// A word over the generators; the empty word is Id. Words act right to
/// left: "fAS" applies S first, then fA.
class SymmetryElem {
 public:
  SymmetryElem() = default;
  explicit SymmetryElem(std::vector<Generator> word);

  /// Parses words such as `Id`, `fAB`, `fABSX`, `SfBXS`. An `f` without a
  /// subscript is rejected as ambiguous.
  static SymmetryElem parse(std::string_view text);

  const std::vector<Generator>& word() const { return word_; }
  /// perm()[o] is the image of outcome index o = 2a+b.
  const std::array<unsigned, 4>& perm() const { return perm_; }
  std::string to_string() const;
  bool same_action(const SymmetryElem& o) const { return perm_ == o.perm_; }

  /// this * o (apply o first).
  SymmetryElem compose(const SymmetryElem& o) const;
  SymmetryElem inverse() const;

 private:
  std::vector<Generator> word_;
  std::array<unsigned, 4> perm_{0, 1, 2, 3};
};

CausalModel apply_symmetry(const SymmetryElem& g, const CausalModel& m);

/// new[perm(o)] = old[o] for any 4-vector indexed p00, p01, p10, p11.
template <class T>
std::array<T, 4> apply_outcome_perm(const SymmetryElem& g, const std::array<T, 4>& p) {
  std::array<T, 4> out;
  for (unsigned o = 0; o < 4; ++o) out[g.perm()[o]] = p[o];
  return out;
}

/// All 24 group elements, each with a shortest word (BFS over fA, fB, S, X).
std::vector<SymmetryElem> symmetry_group();

}  // namespace cvar
