#include "cvar/boolfunc.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cvar {

std::uint64_t moebius(std::uint64_t bits, unsigned n) {
  // Butterfly: for each latent i, a[x | e_i] ^= a[x].
  static constexpr std::uint64_t lo[6] = {0x5555555555555555ull, 0x3333333333333333ull,
                                          0x0F0F0F0F0F0F0F0Full, 0x00FF00FF00FF00FFull,
                                          0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
  for (unsigned i = 0; i < n; ++i) bits ^= (bits & lo[i]) << (1u << i);
  return bits;
}

std::uint64_t BoolFunc::mask(unsigned n) {
  return n >= 6 ? ~0ull : ((1ull << (1u << n)) - 1);
}

BoolFunc BoolFunc::from_table(unsigned n, std::uint64_t table) {
  if (n > kMaxLatents) throw std::invalid_argument("too many latents");
  BoolFunc f;
  f.n_ = n;
  f.table_ = table & mask(n);
  f.anf_ = moebius(f.table_, n);
  return f;
}

BoolFunc BoolFunc::from_anf(unsigned n, std::uint64_t anf) {
  if (n > kMaxLatents) throw std::invalid_argument("too many latents");
  return from_table(n, moebius(anf & mask(n), n));
}

BoolFunc BoolFunc::constant(unsigned n, bool value) {
  return from_table(n, value ? ~0ull : 0ull);
}

BoolFunc BoolFunc::latent(unsigned n, unsigned index) {
  if (index >= n) throw std::out_of_range("latent index");
  return from_anf(n, 1ull << (1u << index));
}

bool BoolFunc::is_constant() const { return table_ == 0 || table_ == mask(n_); }

bool BoolFunc::depends_on(unsigned latent) const {
  for (std::uint64_t a = anf_; a; a &= a - 1)
    if ((std::countr_zero(a) >> latent) & 1) return true;
  return false;
}

BoolFunc BoolFunc::operator^(const BoolFunc& o) const {
  if (n_ != o.n_) throw std::invalid_argument("latent count mismatch");
  return from_table(n_, table_ ^ o.table_);
}

BoolFunc BoolFunc::operator&(const BoolFunc& o) const {
  if (n_ != o.n_) throw std::invalid_argument("latent count mismatch");
  return from_table(n_, table_ & o.table_);
}

BoolFunc BoolFunc::operator~() const { return from_table(n_, ~table_); }

BoolFunc BoolFunc::permute_latents(std::span<const unsigned> perm) const {
  if (perm.size() != n_) throw std::invalid_argument("permutation size");
  std::uint64_t t = 0;
  for (std::uint32_t j = 0; j < (1u << n_); ++j) {
    if (!((table_ >> j) & 1)) continue;
    std::uint32_t k = 0;
    for (unsigned i = 0; i < n_; ++i)
      if ((j >> i) & 1) k |= 1u << perm[i];
    t |= 1ull << k;
  }
  return from_table(n_, t);
}

BoolFunc BoolFunc::extend(unsigned new_n) const {
  if (new_n < n_) throw std::invalid_argument("cannot shrink");
  std::uint64_t t = table_;
  for (unsigned k = n_; k < new_n; ++k) t |= t << (1u << k);
  return from_table(new_n, t);
}

std::vector<std::uint32_t> BoolFunc::anf_monomials() const {
  std::vector<std::uint32_t> out;
  for (std::uint64_t a = anf_; a; a &= a - 1) out.push_back(std::countr_zero(a));
  // Higher degree first, then by latent index; constant last.
  std::sort(out.begin(), out.end(), [](std::uint32_t x, std::uint32_t y) {
    int dx = std::popcount(x), dy = std::popcount(y);
    if (dx != dy) return dx > dy;
    std::uint32_t d = x ^ y;
    return d != 0 && ((x >> std::countr_zero(d)) & 1);
  });
  return out;
}

BoolFunc anf_from_truth_table(std::span<const int> table) {
  std::size_t len = table.size();
  if (len == 0 || (len & (len - 1)) != 0) throw std::invalid_argument("table length is not a power of two");
  unsigned n = std::countr_zero(len);
  if (n > kMaxLatents) throw std::invalid_argument("too many latents");
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < len; ++j) {
    if (table[j] != 0 && table[j] != 1) throw std::invalid_argument("table entries must be 0 or 1");
    if (table[j]) bits |= 1ull << j;
  }
  return BoolFunc::from_table(n, bits);
}

}  // namespace cvar
