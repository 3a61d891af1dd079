#include "cvar/enumeration.hpp"
#include "cvar/symmetry.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace cvar;

namespace {

// Table of f after relabeling latents: new latent perm[i] is old latent i.
std::uint64_t permute_table(std::uint64_t t, unsigned n, const std::vector<unsigned>& perm) {
  std::uint64_t out = 0;
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    std::uint32_t y = 0;
    for (unsigned i = 0; i < n; ++i) y |= ((x >> i) & 1u) << perm[i];
    out |= ((t >> x) & 1u) << y;
  }
  return out;
}

// Distinct models up to latent relabeling, counted by brute force.
std::size_t brute_class_count(unsigned n) {
  std::uint64_t tables = 1ull << (1u << n);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (std::uint64_t a = 0; a < tables; ++a)
    for (std::uint64_t b = 0; b < tables; ++b) {
      std::vector<unsigned> perm(n);
      std::iota(perm.begin(), perm.end(), 0u);
      auto best = std::make_pair(a, b);
      do {
        best = std::min(best, std::make_pair(permute_table(a, n, perm), permute_table(b, n, perm)));
      } while (std::next_permutation(perm.begin(), perm.end()));
      seen.insert(best);
    }
  return seen.size();
}

}  // namespace

TEST_CASE("raw model counts") {
  CHECK(raw_model_count(0) == 4);
  CHECK(raw_model_count(1) == 16);
  CHECK(raw_model_count(2) == 256);
  CHECK(raw_model_count(3) == 65536);
}

TEST_CASE("enumeration counts match brute force") {
  for (unsigned n = 0; n <= 3; ++n) {
    CAPTURE(n);
    auto ms = enumerate_models(n);
    CHECK(ms.size() == brute_class_count(n));
    CHECK(std::is_sorted(ms.begin(), ms.end(), [](const CausalModel& a, const CausalModel& b) {
      return std::pair(a.A.table(), a.B.table()) < std::pair(b.A.table(), b.B.table());
    }));
    for (const auto& m : ms) CHECK(canonical_form(m) == m);
  }
  CHECK_THROWS_AS(enumerate_models(kExhaustiveCap + 1), std::invalid_argument);
}

TEST_CASE("switch composition reaches every model of the next level") {
  for (unsigned n = 1; n <= 3; ++n) {
    CAPTURE(n);
    CHECK(enumerate_by_composition(enumerate_models(n - 1)) == enumerate_models(n));
  }
}

TEST_CASE("exact verdicts") {
  auto filledfan = parse_model("n=3; A = u*v; B = u*w");
  unsigned perm[] = {2, 0, 1};
  auto v = model_equivalent(filledfan, permute_latents(filledfan, perm));
  CHECK(v.equivalent);
  CHECK(v.tag == VerdictTag::exact);

  v = model_equivalent(filledfan, parse_model("n=2; A = u*v; B = u ^ v ^ u*v"));
  CHECK_FALSE(v.equivalent);
  CHECK(v.tag == VerdictTag::exact);

  // Same support, different equalities: fan against the full tetrahedron.
  v = model_equivalent(parse_model("n=2; A = u ^ v; B = u"), filledfan);
  CHECK_FALSE(v.equivalent);
  CHECK(v.tag == VerdictTag::exact);
}

TEST_CASE("numerical verdicts") {
  EquivalenceOptions o;
  o.cross_fit_points = 64;
  auto m = parse_model("n=3; A = u*v; B = u*v ^ u*w");
  const auto& e = Catalogue::builtin().lookup_class(ClassId::parse("(3,2,a)_SfA"));
  auto v = model_equivalent(m, e.model, o);
  CHECK(v.equivalent);
  CHECK(v.tag == VerdictTag::numerical);

  v = model_equivalent(m, parse_model("n=3; A = u*v; B = u*w"), o);
  CHECK_FALSE(v.equivalent);
  CHECK(v.tag == VerdictTag::numerical);
}

TEST_CASE("fingerprints ignore latent order") {
  auto a = parse_model("n=3; A = u*v; B = u*w");
  unsigned perm[] = {1, 2, 0};
  CHECK(fingerprint(a) == fingerprint(permute_latents(a, perm)));
  CHECK(fingerprint(a).support == 0b1111);
}

TEST_CASE("classify models against the catalogue") {
  const auto& c = Catalogue::builtin();
  auto match = classify_model(c, parse_model("n=2; A = u*v; B = u ^ v ^ u*v"));
  REQUIRE(match.has_value());
  CHECK(match->id.to_string() == "(2,2)_Id");
  // Every symmetric image lands in the class of the same image.
  auto g = SymmetryElem::parse("fAS");
  auto img = classify_model(c, apply_symmetry(g, parse_model("n=2; A = u*v; B = u ^ v ^ u*v")));
  REQUIRE(img.has_value());
  CHECK(img->id.label == ClassLabel::parse("(2,2)"));
  CHECK(c.lookup_class(ClassId{ClassLabel::parse("(2,2)"), g}).id.to_string() == img->id.to_string());
}

TEST_CASE("catalogue rebuild for one latent bit") {
  BuildOptions o;
  o.n_max = 1;
  o.equivalence.cross_fit_points = 64;
  auto b = build_catalogue(Catalogue::builtin(), o);
  CHECK(b.classes.size() == 10);
  CHECK(b.fresh == 0);
  CHECK(b.missing.empty());
  BuildOptions s = o;
  s.exec = Execution::serial;
  auto bs = build_catalogue(Catalogue::builtin(), s);
  CHECK(bs.report() == b.report());
}
