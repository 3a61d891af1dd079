#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cvar {

inline constexpr unsigned kMaxLatents = 6;

/// Moebius (Zhegalkin) transform of a 2^n-bit vector packed in a word. It is
/// its own inverse, mapping truth tables to ANF coefficients and back.
std::uint64_t moebius(std::uint64_t bits, unsigned n);

/// Boolean function of n latent bits. Bit j of the table is the value at the
/// assignment whose latent i equals (j >> i) & 1. Bit a of the ANF word is
/// the coefficient of the monomial prod_{i in a} lambda_i.
class BoolFunc {
 public:
  BoolFunc() = default;

  static BoolFunc from_table(unsigned n, std::uint64_t table);
  static BoolFunc from_anf(unsigned n, std::uint64_t anf);
  static BoolFunc constant(unsigned n, bool value);
  static BoolFunc latent(unsigned n, unsigned index);

  unsigned n() const { return n_; }
  std::uint64_t table() const { return table_; }
  std::uint64_t anf() const { return anf_; }
  bool operator()(std::uint32_t assignment) const { return (table_ >> assignment) & 1u; }
  bool is_constant() const;
  bool depends_on(unsigned latent) const;

  BoolFunc operator^(const BoolFunc& o) const;
  BoolFunc operator&(const BoolFunc& o) const;
  BoolFunc operator~() const;

  /// Result latent perm[i] plays the role of input latent i.
  BoolFunc permute_latents(std::span<const unsigned> perm) const;
  /// Same function viewed over n+k latents.
  BoolFunc extend(unsigned new_n) const;

  /// ANF monomials as latent bitmasks, ordered for display.
  std::vector<std::uint32_t> anf_monomials() const;

  friend bool operator==(const BoolFunc&, const BoolFunc&) = default;

 private:
  static std::uint64_t mask(unsigned n);
  unsigned n_ = 0;
  std::uint64_t table_ = 0;
  std::uint64_t anf_ = 0;
};

/// Builds a BoolFunc from an explicit 0/1 vector of length 2^n.
BoolFunc anf_from_truth_table(std::span<const int> table);

}  // namespace cvar
