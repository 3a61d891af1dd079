// Acceptance run: one PASS/FAIL line per criterion.
//
//   cvar_acceptance [--criterion N ...] [--stretch] [--known "a,b"]
//
// Without --known the exit status is 0 iff every selected criterion passes.
// With --known it is 0 iff the failing items are exactly the listed ones.

#include "cvar/catalogue.hpp"
#include "cvar/enumeration.hpp"
#include "cvar/geometry.hpp"
#include "cvar/implicitization.hpp"
#include "cvar/latent_reduction.hpp"
#include "cvar/symmetry.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace cvar;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  std::set<std::string> failing;  // rows or named sub-checks

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failing.insert(what);
    }
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Polynomial> parse_all(const std::vector<std::string>& texts, const RingPtr& r) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(parse_polynomial(t, r));
  return out;
}

std::vector<Polynomial> monic_sorted(std::vector<Polynomial> v) {
  for (auto& p : v) p = p.monic();
  std::sort(v.begin(), v.end(),
            [](const Polynomial& a, const Polynomial& b) { return a.to_string() < b.to_string(); });
  return v;
}

std::vector<Polynomial> discriminants(const ImplicitizationResult& r) {
  std::vector<Polynomial> out;
  for (const auto& g : r.groebner.elements) {
    try {
      out.push_back(extension_real_roots(g, *r.ring, r.equalities, r.identifications));
    } catch (const std::invalid_argument&) {
    }
  }
  return out;
}

FeasibilityTest make_test(std::initializer_list<const char*> conds) {
  FeasibilityTest t;
  for (const char* c : conds) t.conditions.push_back(parse_condition(c));
  return t;
}

// Fan: g1..g4 and the elimination ideal.
Outcome criterion1() {
  Outcome o;
  auto t0 = Clock::now();
  auto r = model_ring(2);
  auto gens = parse_all({"p00-q1*q2", "p10-q1*(1-q2)", "p01-(1-q1)*(1-q2)", "p11-(1-q1)*q2"}, r);
  auto gb = buchberger(gens);
  auto printed = parse_all({"q1+p01+p11-1", "q2+p01+p10-1", "p00+p01+p10+p11-1",
                            "p01^2+p01*p10+p11*p01-p01+p10*p11"},
                           r);
  o.require(ideal_equal(gb.elements, printed), "fan basis");
  auto elim = eliminate(gb, 2);
  o.require(monic_sorted(elim) == monic_sorted({printed[2], printed[3]}), "fan elimination ideal");
  // g4 = p10 p11 - p00 p01 modulo normalization.
  auto g4 = printed[3] - parse_polynomial("p10*p11-p00*p01", r);
  o.require(normal_form(g4, {printed[2]}).is_zero(), "p00 p01 = p10 p11");
  double s = seconds_since(t0);
  o.require(s < 1.0, "runtime");
  o.note("basis of " + std::to_string(gb.elements.size()) + " elements, elimination ideal " +
         std::to_string(elim.size()));
  return o;
}

// Filled fan A = mu nu, B = mu lambda.
Outcome criterion2(std::size_t samples) {
  Outcome o;
  auto t0 = Clock::now();
  auto m = parse_model("n=3; A = u*v; B = u*w");
  auto r = equality_constraints(m);
  const std::vector<std::string> printed_texts = {
      "q2*q1-q1-q2-p10-p11+1", "q3*q1-q1-q3-p01-p11+1", "q3*p10+q3*p11-p10",
      "q2*p01+q2*p11-p01",  // printed with q3*p11, which is not in the ideal
      "p00+p01+p10+p11-1", "p11^2+p01*p10+p11*p10-p11+p01*p11+p11*q1"};
  auto printed = parse_all(printed_texts, r.ring);
  o.require(ideal_equal(r.groebner.elements, printed), "basis");
  o.require(!ideal_contains(r.groebner, parse_polynomial("q2*p01+q3*p11-p01", r.ring)),
            "verbatim g4 not a member");

  auto pr = p_ring();
  bool found = false;
  for (const auto& id : r.identifications)
    if (id.latent == 0) {
      auto lhs = id.numerator * parse_polynomial("p11", pr) -
                 id.denominator * parse_polynomial("p11*p00-p10*p01", pr);
      found = normal_form(lhs, r.equalities).is_zero();
    }
  o.require(found, "q1 identification");
  for (std::uint64_t k = 0; k < 200; ++k) {
    auto q = sample_q(3, 17, k);
    auto p = joint_distribution(m, q);
    auto sol = solve_latent_params(r, p);
    Rational formula = (p[3] * p[0] - p[2] * p[1]) / p[3];
    if (!sol.contains(0) || sol.at(0) != q[0] || formula != q[0]) {
      o.require(false, "q1 at samples");
      break;
    }
  }
  o.require(r.equalities.size() == 1 &&
                r.equalities[0].monic() == parse_polynomial("p00+p10+p01+p11-1", pr),
            "normalization only");
  CertifyOptions co;
  co.samples = samples;
  co.grid_denominator = 0;
  auto rep = certify_test(m, make_test({"p11*p00 > p10*p01"}), co);
  o.require(rep.necessity && rep.violations == 0, "necessity");
  double s = seconds_since(t0);
  o.require(s < 10.0, "runtime");
  o.note(std::to_string(rep.samples) + " samples, " + std::to_string(rep.violations) + " violations");
  return o;
}

// StarFleet and the (3,2,c) thick fan.
Outcome criterion3() {
  Outcome o;
  auto t0 = Clock::now();
  auto pr = p_ring();

  auto sf = parse_model("n=2; A = u*v; B = u ^ v ^ u*v");
  auto r = equality_constraints(sf);
  // The printed ideal lives in a ring without p10; p10 = 0 is implicit there.
  auto printed = parse_all({"q1+q2+p01+2*p11-2",  // printed as q1+q2+p00+2*p01-2
                            "p00+p01+p11-1", "q2^2+2*p11*q2+p01*q2-2*q2-p11-p01+1", "p10"},
                           r.ring);
  o.require(ideal_equal(r.groebner.elements, printed), "StarFleet basis");
  o.require(!ideal_contains(r.groebner, parse_polynomial("q1+q2+p00+2*p01-2", r.ring)),
            "StarFleet verbatim g1 not a member");
  auto ds = discriminants(r);
  o.require(ds.size() == 1, "StarFleet single discriminant");
  if (!ds.empty()) {
    o.require(equal_up_to_positive_constant(ds[0], parse_polynomial("(p01+2*p00)^2-4*p00", pr),
                                            r.equalities),
              "StarFleet (p01+2p00)^2 >= 4p00");
    o.require(equal_up_to_positive_constant(
                  ds[0], parse_polynomial("(p01+2*p11-2)^2-4*p00", pr), r.equalities),
              "StarFleet tabulated form");
  }

  auto tf = parse_model("n=3; A = u*v; B = u ^ v ^ w");
  auto rt = equality_constraints(tf);
  auto printed_tf = parse_all(
      {"q3*p10+q3*p11-p10", "p00+p01+p10+p11-1", "q2*q1-q1-q2-p10-p11+1",
       // printed with an extra -3*q2*q3 term, which leaves the ideal
       "2*q3*q1-q1-q2+2*q2*q3-3*q3+p01+2*p10-p11+1",
       "2*q3*q2^2-q2^2-3*q3*q2+p01*q2+2*p10*q2-p11*q2+q2+q3-p01-p10",
       "2*p10^2+q1*p10+q2*p10+p10*p01+p11*p10-2*p10-p11^2-q1*p11-q2*p11+p01*p11+p11",
       "p10*q2^2-p11*q2^2+2*p10^2*q2-p11^2*q2+p01*p10*q2-2*p10*q2+p01*p11*q2+p10*p11*q2+p11*q2"
       "-p10^2-p01*p10+p10-p01*p11-p10*p11"},
      rt.ring);
  o.require(ideal_equal(rt.groebner.elements, printed_tf), "(3,2,c) basis");

  std::string R = "(p11*(2*p01+2*p10+p00)-p10*(2*p00+2*p11+p01))";
  std::string X = "4*(p10-p11)*(p00*p10-p01*p11)";
  auto upper = parse_polynomial(R + "^2-" + X, pr);  // 4X <= R^2
  auto lower = parse_polynomial(R + "^2+" + X, pr);  // -R^2 <= 4X
  auto dt = discriminants(rt);
  int n_upper = 0, n_lower = 0;
  for (const auto& d : dt) {
    n_upper += equal_up_to_positive_constant(d, upper, rt.equalities);
    n_lower += equal_up_to_positive_constant(d, lower, rt.equalities);
  }
  o.require(dt.size() == 2, "(3,2,c) two discriminants");
  o.require(n_upper >= 1, "(3,2,c) upper half");
  o.require(n_lower >= 1, "(3,2,c) lower half");
  o.note("(3,2,c) discriminants: " + std::to_string(dt.size()) + ", matching 4X <= R^2: " +
         std::to_string(n_upper) + ", matching -R^2 <= 4X: " + std::to_string(n_lower));

  double s = seconds_since(t0);
  o.require(s < 30.0, "runtime");
  return o;
}

// Necessity of every class test on its class model.
Outcome criterion4(std::size_t samples) {
  Outcome o;
  auto t0 = Clock::now();
  const auto& cat = Catalogue::builtin();
  std::size_t bad = 0;
  for (const auto& e : cat.expanded()) {
    CertifyOptions co;
    co.samples = samples;
    co.grid_denominator = 0;
    auto rep = certify_test(e.model, e.test, co);
    if (!rep.necessity) {
      ++bad;
      o.require(false, e.id.label.to_string());
    }
  }
  double s = seconds_since(t0);
  o.require(s < 300.0, "runtime");
  std::ostringstream os;
  os << cat.expanded().size() << " classes x " << samples << " samples, " << bad
     << " classes with violations";
  o.note(os.str());
  return o;
}

// Sufficiency on the 1/20 grid.
Outcome criterion5(const std::string& unfitted_path) {
  Outcome o;
  auto t0 = Clock::now();
  const auto& cat = Catalogue::builtin();
  std::ofstream unfitted;
  if (!unfitted_path.empty()) unfitted.open(unfitted_path);
  std::size_t passing = 0, fitted = 0, below = 0;
  for (const auto& e : cat.expanded()) {
    CertifyOptions co;
    co.samples = 0;
    co.grid_denominator = 20;
    co.fit.starts = 64;
    co.fit.tol = 1e-6;
    auto rep = certify_test(e.model, e.test, co);
    passing += rep.grid_passing;
    fitted += rep.grid_fitted;
    if (rep.sufficiency() < 0.99) {
      ++below;
      o.require(false, e.id.label.to_string());
    }
    if (unfitted)
      for (const auto& p : rep.unfitted)
        unfitted << e.id.to_string() << " " << format_distribution(p) << "\n";
  }
  double s = seconds_since(t0);
  o.require(s < 600.0, "runtime");
  std::ostringstream os;
  os << fitted << " of " << passing << " passing grid points fitted, " << below
     << " classes below 99%";
  if (!unfitted_path.empty()) os << ", unfitted points in " << unfitted_path;
  o.note(os.str());
  return o;
}

bool check_build(Outcome& o, const Catalogue& cat, unsigned n_max, std::size_t expect,
                 std::size_t cross) {
  BuildOptions bo;
  bo.n_max = n_max;
  bo.equivalence.cross_fit_points = cross;
  auto b = build_catalogue(cat, bo);
  std::string tag = "n<=" + std::to_string(n_max);
  std::multiset<std::string> built;
  for (const auto& c : b.classes)
    if (!c.fresh) built.insert(c.label);
  std::multiset<std::string> want;
  for (const auto& e : cat.expanded())
    if (e.id.label.n <= n_max) want.insert(e.id.to_string());
  bool ok = true;
  auto req = [&](bool c, const std::string& what) {
    o.require(c, what);
    ok &= c;
  };
  if (expect) req(b.classes.size() == expect, tag + " class count");
  req(b.fresh == 0, tag + " FRESH classes");
  req(b.missing.empty(), tag + " missing classes");
  req(built == want, tag + " one-to-one");
  o.note(tag + ": " + std::to_string(b.classes.size()) + " classes, " + std::to_string(b.fresh) +
         " fresh, " + std::to_string(b.missing.size()) + " missing");
  if (n_max == 2) {
    std::map<std::string, std::size_t> per_row;
    for (const auto& c : b.classes)
      if (!c.fresh) ++per_row[ClassId::parse(c.label).label.to_string()];
    const std::vector<std::pair<std::string, std::size_t>> sizes = {
        {"(0,0)", 4}, {"(1,0)", 4}, {"(1,1)", 2}, {"(2,0)", 1}, {"(2,1,a)", 2}, {"(2,1,b)", 4}, {"(2,2)", 12}};
    for (const auto& [row, k] : sizes) req(per_row[row] == k, row + " orbit size");
  }
  return ok;
}

Outcome criterion6(bool stretch, std::size_t cross) {
  Outcome o;
  auto t0 = Clock::now();
  const auto& cat = Catalogue::builtin();
  check_build(o, cat, 0, 4, cross);
  check_build(o, cat, 1, 10, cross);
  check_build(o, cat, 2, 29, cross);
  double s = seconds_since(t0);
  o.require(s < 120.0, "runtime");
  if (stretch) {
    Outcome st;
    check_build(st, cat, 3, 0, cross);
    for (auto& n : st.notes) o.note("stretch " + n);
    for (const auto& f : st.failing) o.note("stretch failing: " + f);
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(2024);
  auto group = symmetry_group();
  std::size_t bad = 0;
  for (int k = 0; k < 1000; ++k) {
    unsigned n = 1 + unsigned(rng() % 4);
    std::uint64_t mask = (1ull << (1u << n)) - 1;
    CausalModel m{BoolFunc::from_table(n, rng() & mask), BoolFunc::from_table(n, rng() & mask)};
    const auto& g = group[rng() % group.size()];
    auto q = sample_q(n, rng(), 0);
    if (joint_distribution(apply_symmetry(g, m), q) != apply_symmetry_dist(g, joint_distribution(m, q)))
      ++bad;
  }
  o.require(bad == 0, "commutation");
  o.note("1000 triples, " + std::to_string(bad) + " mismatches");
  return o;
}

Outcome criterion8() {
  Outcome o;
  // A = lambda ^ B, B = nu   versus   A = lambda ^ mu, B = mu.
  auto purified = parse_model("n=2; B = v; A = u ^ B");
  auto common = parse_model("n=2; A = u ^ v; B = v");
  o.require(parametrize(purified) == parametrize(common), "purify");

  auto trit = parse_multi_valued_model("tau in 0..2; C = tau mod 2; D = table 0 1 1");
  auto red = reduce_trit(trit);
  // C = nu mu + nu, D = nu with mu = u, nu = v.
  o.require(red == parse_model("n=2; A = v*u ^ v; B = v"), "trit ANF");
  bool face = true;
  for (const auto& p : sample_cloud(red, 1000, 3)) face &= p[2] == 0;
  o.require(face, "trit p10 = 0");

  std::mt19937_64 rng(99);
  std::exponential_distribution<double> ex(1.0);
  std::ostringstream os;
  for (unsigned m = 2; m <= 5; ++m) {
    auto om = reduce_m_valued(m).outcome_model();
    std::size_t ok = 0;
    for (int k = 0; k < 100; ++k) {
      std::vector<double> t(m);
      double s = 0;
      for (auto& v : t) s += (v = ex(rng));
      for (auto& v : t) v /= s;
      auto r = fit_outcomes(om, t);
      ok += r.success && r.residual < 1e-6;
    }
    o.require(ok == 100, "m=" + std::to_string(m) + " coverage");
    os << (m > 2 ? ", " : "") << "m=" << m << ": " << ok << "/100";
  }
  o.note(os.str());
  return o;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  for (auto& x : out) {
    x.erase(0, x.find_first_not_of(' '));
    x.erase(x.find_last_not_of(' ') + 1);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> criteria;
  bool stretch = false;
  std::string known, unfitted_out;
  std::size_t samples = 10000, cross = 512;
  app.add_option("--criterion", criteria, "criteria to run (default all)")->check(CLI::Range(1, 8));
  app.add_flag("--stretch", stretch, "also rebuild the catalogue for n <= 3");
  app.add_option("--known", known, "comma-separated failing items expected");
  app.add_option("--unfitted-out", unfitted_out, "file for unfitted grid points");
  app.add_option("--samples", samples, "necessity samples per class");
  app.add_option("--cross-fit-points", cross, "cloud points per direction in enumeration");
  CLI11_PARSE(app, argc, argv);
  if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8};

  std::set<std::string> failing;
  bool all_pass = true;
  for (int c : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      switch (c) {
        case 1: o = criterion1(); break;
        case 2: o = criterion2(samples); break;
        case 3: o = criterion3(); break;
        case 4: o = criterion4(samples); break;
        case 5: o = criterion5(unfitted_out); break;
        case 6: o = criterion6(stretch, cross); break;
        case 7: o = criterion7(); break;
        case 8: o = criterion8(); break;
      }
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << c << " (" << std::fixed
         << std::setprecision(1) << seconds_since(t0) << " s)";
    std::string sep = ": ";
    for (const auto& n : o.notes) {
      line << sep << n;
      sep = "; ";
    }
    if (!o.failing.empty()) {
      line << "; failing:";
      for (const auto& f : o.failing) line << " " << f;
    }
    std::cout << line.str() << std::endl;
    all_pass &= o.pass;
    failing.insert(o.failing.begin(), o.failing.end());
  }

  if (!known.empty()) {
    auto k = split_list(known);
    std::set<std::string> expected(k.begin(), k.end());
    if (failing != expected) {
      std::cout << "failing items differ from the documented deviations\n";
      return 1;
    }
    return 0;
  }
  return all_pass ? 0 : 1;
}
