#include "cvar/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace cvar {

namespace {

unsigned apply_gen(Generator g, unsigned o) {
  unsigned a = o >> 1, b = o & 1;
  switch (g) {
    case Generator::fA: a ^= 1; break;
    case Generator::fB: b ^= 1; break;
    case Generator::S: std::swap(a, b); break;
    case Generator::X: a ^= b; break;
  }
  return (a << 1) | b;
}

}  // namespace

SymmetryElem::SymmetryElem(std::vector<Generator> word) : word_(std::move(word)) {
  for (unsigned o = 0; o < 4; ++o) {
    unsigned x = o;
    for (auto it = word_.rbegin(); it != word_.rend(); ++it) x = apply_gen(*it, x);
    perm_[o] = x;
  }
}

SymmetryElem SymmetryElem::parse(std::string_view text) {
  std::vector<Generator> w;
  if (text == "Id" || text.empty()) return SymmetryElem{};
  std::size_t i = 0;
  auto bad = [&](const std::string& why) {
    throw std::invalid_argument("bad symmetry word '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '_') {
      ++i;
      continue;
    }
    if (c == 'f') {
      ++i;
      std::size_t start = i;
      while (i < text.size() && (text[i] == 'A' || text[i] == 'B')) {
        w.push_back(text[i] == 'A' ? Generator::fA : Generator::fB);
        ++i;
      }
      if (i == start) bad("'f' without subscript A or B");
    } else if (c == 'S') {
      w.push_back(Generator::S);
      ++i;
    } else if (c == 'X') {
      w.push_back(Generator::X);
      ++i;
    } else if (text.substr(i, 2) == "Id") {
      i += 2;
    } else {
      bad(std::string("unexpected '") + c + "'");
    }
  }
  return SymmetryElem(std::move(w));
}

std::string SymmetryElem::to_string() const {
  if (word_.empty()) return "Id";
  std::string s;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    switch (word_[i]) {
      case Generator::fA:
      case Generator::fB: {
        // Merge runs of flips into one subscript: fA fB -> fAB.
        bool prev_flip = i > 0 && (word_[i - 1] == Generator::fA || word_[i - 1] == Generator::fB);
        if (!prev_flip) s += 'f';
        s += word_[i] == Generator::fA ? 'A' : 'B';
        break;
      }
      case Generator::S: s += 'S'; break;
      case Generator::X: s += 'X'; break;
    }
  }
  return s;
}

SymmetryElem SymmetryElem::compose(const SymmetryElem& o) const {
  std::vector<Generator> w = word_;
  w.insert(w.end(), o.word_.begin(), o.word_.end());
  return SymmetryElem(std::move(w));
}

SymmetryElem SymmetryElem::inverse() const {
  // Each generator is an involution.
  return SymmetryElem(std::vector<Generator>(word_.rbegin(), word_.rend()));
}

CausalModel apply_symmetry(const SymmetryElem& g, const CausalModel& m) {
  std::uint64_t ta = 0, tb = 0;
  for (std::uint32_t j = 0; j < (1u << m.n); ++j) {
    unsigned o = g.perm()[m.outcome(j)];
    if (o & 2) ta |= 1ull << j;
    if (o & 1) tb |= 1ull << j;
  }
  return CausalModel(BoolFunc::from_table(m.n, ta), BoolFunc::from_table(m.n, tb));
}

std::vector<SymmetryElem> symmetry_group() {
  static const std::vector<SymmetryElem> group = [] {
    std::vector<SymmetryElem> out;
    std::map<std::array<unsigned, 4>, bool> seen;
    std::deque<SymmetryElem> queue{SymmetryElem{}};
    seen[SymmetryElem{}.perm()] = true;
    while (!queue.empty()) {
      SymmetryElem e = queue.front();
      queue.pop_front();
      out.push_back(e);
      for (Generator g : {Generator::fA, Generator::fB, Generator::S, Generator::X}) {
        std::vector<Generator> w = e.word();
        w.push_back(g);
        SymmetryElem n(std::move(w));
        if (!seen[n.perm()]) {
          seen[n.perm()] = true;
          queue.push_back(n);
        }
      }
    }
    return out;
  }();
  return group;
}

}  // namespace cvar
