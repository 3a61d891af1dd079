#include "cvar/causal_model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cvar {

CausalModel::CausalModel(BoolFunc a, BoolFunc b) : n(a.n()), A(a), B(b) {
  if (a.n() != b.n()) throw std::invalid_argument("latent count mismatch");
}

CausalModel purify(const DirectedModel& m) {
  if (m.fB.n() != m.n || m.g.n() != m.n + 1) throw std::invalid_argument("directed model shape");
  std::uint64_t t = 0;
  for (std::uint32_t j = 0; j < (1u << m.n); ++j) {
    std::uint32_t k = j | (std::uint32_t(m.fB(j)) << m.n);
    if (m.g(k)) t |= 1ull << j;
  }
  return CausalModel(BoolFunc::from_table(m.n, t), m.fB);
}

CausalModel compose_switch(const CausalModel& m0, const CausalModel& m1) {
  if (m0.n != m1.n) throw std::invalid_argument("latent count mismatch");
  if (m0.n + 1 > kMaxLatents) throw std::invalid_argument("too many latents");
  unsigned half = 1u << m0.n;
  auto join = [&](const BoolFunc& f0, const BoolFunc& f1) {
    return BoolFunc::from_table(m0.n + 1, f0.table() | (f1.table() << half));
  };
  return CausalModel(join(m0.A, m1.A), join(m0.B, m1.B));
}

CausalModel restrict_last(const CausalModel& m, bool value) {
  if (m.n == 0) throw std::invalid_argument("no latent to restrict");
  unsigned half = 1u << (m.n - 1);
  auto part = [&](const BoolFunc& f) {
    return BoolFunc::from_table(m.n - 1, value ? f.table() >> half : f.table());
  };
  return CausalModel(part(m.A), part(m.B));
}

CausalModel permute_latents(const CausalModel& m, std::span<const unsigned> perm) {
  return CausalModel(m.A.permute_latents(perm), m.B.permute_latents(perm));
}

CausalModel canonical_form(const CausalModel& m) {
  std::vector<unsigned> perm(m.n);
  std::iota(perm.begin(), perm.end(), 0u);
  CausalModel best = m;
  do {
    CausalModel c = permute_latents(m, perm);
    if (std::pair(c.A.table(), c.B.table()) < std::pair(best.A.table(), best.B.table())) best = c;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

CausalModel drop_unused_latents(const CausalModel& m) {
  std::vector<unsigned> keep;
  for (unsigned i = 0; i < m.n; ++i)
    if (m.A.depends_on(i) || m.B.depends_on(i)) keep.push_back(i);
  unsigned k = static_cast<unsigned>(keep.size());
  auto shrink = [&](const BoolFunc& f) {
    std::uint64_t anf = 0;
    for (std::uint32_t mono : f.anf_monomials()) {
      std::uint32_t r = 0;
      for (unsigned i = 0; i < k; ++i)
        if ((mono >> keep[i]) & 1) r |= 1u << i;
      anf |= 1ull << r;
    }
    return BoolFunc::from_anf(k, anf);
  };
  return CausalModel(shrink(m.A), shrink(m.B));
}

}  // namespace cvar
