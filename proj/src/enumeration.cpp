#include "cvar/enumeration.hpp"

#include "cvar/geometry.hpp"
#include "cvar/groebner.hpp"
#include "cvar/implicitization.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cvar {

namespace {

using Key = std::tuple<unsigned, std::uint64_t, std::uint64_t>;

Key key_of(const CausalModel& m) { return {m.n, m.A.table(), m.B.table()}; }

CausalModel from_key(const Key& k) {
  auto [n, a, b] = k;
  return CausalModel(BoolFunc::from_table(n, a), BoolFunc::from_table(n, b));
}

CausalModel normalized(const CausalModel& m) { return canonical_form(drop_unused_latents(m)); }

std::vector<std::vector<unsigned>> permutations(unsigned n) {
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<std::vector<unsigned>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<CausalModel> sorted_models(const std::set<Key>& keys) {
  std::vector<CausalModel> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back(from_key(k));
  return out;
}

// Smallest normalized form over the symmetry group, with the element
// reaching it.
std::pair<Key, std::size_t> orbit_key(const CausalModel& m) {
  const auto& group = symmetry_group();
  Key best = key_of(normalized(m));
  std::size_t arg = 0;
  for (std::size_t g = 1; g < group.size(); ++g) {
    Key k = key_of(normalized(apply_symmetry(group[g], m)));
    if (k < best) {
      best = k;
      arg = g;
    }
  }
  return {best, arg};
}

std::vector<JointDistD> double_cloud(const CausalModel& m, std::size_t count, std::uint64_t seed) {
  std::vector<JointDistD> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto q = sample_q(m.n, seed, i);
    std::vector<double> qd(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) qd[j] = to_double(q[j]);
    out.push_back(joint_distribution(m, std::span<const double>(qd)));
  }
  return out;
}

// Index of the first cloud point of `from` that `to` fails to fit, or -1.
long first_unfitted(const CausalModel& from, const CausalModel& to, const EquivalenceOptions& o) {
  auto cloud = double_cloud(from, o.cross_fit_points, o.seed);
  const std::size_t chunk = 32;
  for (std::size_t start = 0; start < cloud.size(); start += chunk) {
    std::vector<JointDistD> part(cloud.begin() + long(start),
                                 cloud.begin() + long(std::min(cloud.size(), start + chunk)));
    auto res = fit_batch(to, part, o.fit, Execution::parallel);
    for (std::size_t i = 0; i < res.size(); ++i)
      if (!res[i].success) return long(start + i);
  }
  return -1;
}

// q-free equalities depend only on the normalized model; nullopt when the
// basis exceeds the pair budget.
std::optional<std::vector<Polynomial>> cached_equalities(const CausalModel& m, std::size_t budget) {
  static std::mutex mu;
  static std::map<std::pair<Key, std::size_t>, std::optional<std::vector<Polynomial>>> cache;
  auto key = std::make_pair(key_of(normalized(m)), budget);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::optional<std::vector<Polynomial>> eq;
  GroebnerOptions go;
  go.max_pairs = budget;
  try {
    eq = equality_constraints(from_key(key.first), go).equalities;
  } catch (const GroebnerBudgetExceeded&) {
  }
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(eq)).first->second;
}

}  // namespace

std::uint64_t raw_model_count(unsigned n) {
  if (n > 4) throw std::invalid_argument("raw model count overflows for n > 4");
  std::uint64_t f = std::uint64_t(1) << (1u << n);
  return f * f;
}

std::vector<CausalModel> enumerate_models(unsigned n) {
  if (n > kExhaustiveCap)
    throw std::invalid_argument("exhaustive enumeration is capped at n = " +
                                std::to_string(kExhaustiveCap));
  const std::uint64_t tables = std::uint64_t(1) << (1u << n);
  std::vector<char> keep(tables * tables, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < std::int64_t(tables * tables); ++i) {
    CausalModel m(BoolFunc::from_table(n, std::uint64_t(i) / tables),
                  BoolFunc::from_table(n, std::uint64_t(i) % tables));
    keep[std::size_t(i)] = canonical_form(m) == m;
  }
  std::vector<CausalModel> out;
  for (std::uint64_t i = 0; i < tables * tables; ++i)
    if (keep[i])
      out.emplace_back(BoolFunc::from_table(n, i / tables), BoolFunc::from_table(n, i % tables));
  return out;
}

std::vector<CausalModel> enumerate_by_composition(const std::vector<CausalModel>& previous) {
  if (previous.empty()) return {};
  unsigned n = previous.front().n;
  auto perms = permutations(n);
  std::set<Key> keys;
  for (const auto& m0 : previous)
    for (const auto& m1 : previous)
      for (const auto& p : perms)
        keys.insert(key_of(canonical_form(compose_switch(m0, permute_latents(m1, p)))));
  return sorted_models(keys);
}

EquivFingerprint fingerprint(const CausalModel& m, std::size_t cloud_points) {
  EquivFingerprint f;
  f.support = support_pattern(m);
  f.elim_basis = equality_constraints(m).equalities;
  auto c = canonical_form(m);
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& p : sample_cloud(c, cloud_points, 0, Execution::serial))
    for (const auto& x : p) h = splitmix64(h ^ std::hash<std::string>{}(to_string(x)));
  f.cloud_hash = h;
  return f;
}

std::string_view tag_name(VerdictTag t) { return t == VerdictTag::exact ? "EXACT" : "NUMERICAL"; }

EquivalenceVerdict model_equivalent(const CausalModel& a, const CausalModel& b,
                                    const EquivalenceOptions& options) {
  if (normalized(a) == normalized(b)) return {true, VerdictTag::exact, "latent permutation"};
  if (support_pattern(a) != support_pattern(b))
    return {false, VerdictTag::exact,
            "supports differ: " + format_support(support_pattern(a)) + " vs " +
                format_support(support_pattern(b))};
  if (options.use_groebner) {
    auto ea = cached_equalities(a, options.groebner_pairs);
    auto eb = ea ? cached_equalities(b, options.groebner_pairs) : std::nullopt;
    // Past the budget the numerical comparison decides.
    if (ea && eb && !ideal_equal(*ea, *eb))
      return {false, VerdictTag::exact, "elimination ideals differ"};
  }
  if (long i = first_unfitted(a, b, options); i >= 0)
    return {false, VerdictTag::numerical,
            "cloud point " + std::to_string(i) + " of the first model not fitted by the second"};
  if (long i = first_unfitted(b, a, options); i >= 0)
    return {false, VerdictTag::numerical,
            "cloud point " + std::to_string(i) + " of the second model not fitted by the first"};
  return {true, VerdictTag::numerical,
          "clouds cross-fitted (" + std::to_string(options.cross_fit_points) + " points each way)"};
}

std::optional<ModelMatch> classify_model(const Catalogue& catalogue, const CausalModel& m,
                                         const EquivalenceOptions& options,
                                         std::size_t filter_points, std::uint64_t seed) {
  unsigned sup = support_pattern(m);
  auto cloud = sample_cloud(m, filter_points, seed, Execution::serial);
  for (const auto& e : catalogue.expanded()) {
    if (support_pattern(e.model) != sup) continue;
    bool pass = true;
    for (const auto& p : cloud) pass = pass && evaluate_test(e.test, p);
    if (!pass) continue;
    auto v = model_equivalent(m, e.model, options);
    if (v.equivalent) return ModelMatch{e.id, v};
  }
  return std::nullopt;
}

CatalogueBuild build_catalogue(const Catalogue& catalogue, const BuildOptions& options) {
  CatalogueBuild out;
  out.n_max = options.n_max;
  out.equivalence = options.equivalence;
  const auto& group = symmetry_group();

  std::set<Key> keys;
  for (unsigned n = 0; n <= std::min(options.n_max, kExhaustiveCap); ++n)
    for (const auto& m : enumerate_models(n)) keys.insert(key_of(normalized(m)));
  if (options.n_max > kExhaustiveCap) {
    if (options.n_max > kMaxLatents) throw std::invalid_argument("n_max exceeds latent limit");
    out.sampled = true;
    const unsigned n = options.n_max;
    const std::uint64_t mask = n == 6 ? ~std::uint64_t(0) : (std::uint64_t(1) << (1u << n)) - 1;
    std::uint64_t s = splitmix64(options.seed ^ 0x4b1d);
    for (std::size_t i = 0; i < options.sampled_models; ++i) {
      std::uint64_t a = (s = splitmix64(s)) & mask;
      std::uint64_t b = (s = splitmix64(s)) & mask;
      keys.insert(key_of(normalized(CausalModel(BoolFunc::from_table(n, a), BoolFunc::from_table(n, b)))));
    }
  }
  std::vector<CausalModel> models = sorted_models(keys);
  out.models = models.size();

  std::vector<std::pair<Key, std::size_t>> orbit(models.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t i = 0; i < models.size(); ++i) orbit[i] = orbit_key(models[i]);

  std::map<Key, std::size_t> rep_index;
  std::vector<Key> reps;
  for (const auto& [k, g] : orbit)
    if (rep_index.emplace(k, reps.size()).second) reps.push_back(k);
  out.orbits = reps.size();

  // Match each orbit representative with an expanded class.
  struct Match {
    long expanded = -1;
    VerdictTag tag = VerdictTag::exact;
  };
  std::vector<Match> match(reps.size());
  const auto& classes = catalogue.expanded();
  auto classify = [&](std::size_t r) {
    auto found = classify_model(catalogue, from_key(reps[r]), options.equivalence,
                                options.filter_points, options.seed);
    if (found)
      match[r] = {long(&catalogue.lookup_class(found->id) - classes.data()), found->verdict.tag};
  };
  if (options.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t r = 0; r < reps.size(); ++r) classify(r);
  } else {
    for (std::size_t r = 0; r < reps.size(); ++r) classify(r);
  }

  // Unmatched orbits: merge those equivalent under some symmetry. Residuals on
  // a group-closed probe set reject most pairs before the full comparison.
  std::vector<std::size_t> unmatched;
  for (std::size_t r = 0; r < reps.size(); ++r)
    if (match[r].expanded < 0) unmatched.push_back(r);
  std::vector<JointDist> probes;
  std::map<JointDist, std::size_t> probe_index;
  {
    std::uint64_t s = splitmix64(options.seed ^ 0x9b0e);
    for (int b = 0; b < 8; ++b) {
      JointDist base;
      Rational total = 0;
      for (auto& x : base) total += (x = Rational(long((s = splitmix64(s)) % 20 + 1)));
      for (auto& x : base) x /= total;
      for (const auto& g : group)
        if (auto p = apply_symmetry_dist(g, base); probe_index.emplace(p, probes.size()).second)
          probes.push_back(p);
    }
  }
  std::vector<JointDistD> probes_d;
  for (const auto& p : probes) probes_d.push_back(to_double(p));
  std::map<std::size_t, std::vector<double>> residual;
  for (std::size_t r : unmatched) {
    auto res = fit_batch(from_key(reps[r]), probes_d, options.equivalence.fit, options.exec);
    auto& v = residual[r];
    for (const auto& f : res) v.push_back(f.success ? 0.0 : f.residual);
  }
  const double outside = 1e-3;
  auto probes_disagree = [&](std::size_t r, const SymmetryElem& g, std::size_t other) {
    // p lies in g(S_r) iff g^-1 p lies in S_r.
    auto ginv = g.inverse();
    const auto &a = residual[r], &b = residual[other];
    for (std::size_t j = 0; j < probes.size(); ++j) {
      double ra = a[probe_index.at(apply_symmetry_dist(ginv, probes[j]))];
      if ((ra == 0.0 && b[j] > outside) || (b[j] == 0.0 && ra > outside)) return true;
    }
    return false;
  };

  std::vector<long> fresh_of(reps.size(), -1);
  std::vector<std::size_t> fresh_reps;
  for (std::size_t r : unmatched) {
    CausalModel k = from_key(reps[r]);
    for (std::size_t f = 0; f < fresh_reps.size() && fresh_of[r] < 0; ++f) {
      CausalModel other = from_key(reps[fresh_reps[f]]);
      for (const auto& g : group) {
        auto img = apply_symmetry(g, k);
        if (support_pattern(img) != support_pattern(other)) continue;
        if (probes_disagree(r, g, fresh_reps[f])) continue;
        if (model_equivalent(img, other, options.equivalence).equivalent) {
          fresh_of[r] = long(f);
          break;
        }
      }
    }
    if (fresh_of[r] < 0) {
      fresh_of[r] = long(fresh_reps.size());
      fresh_reps.push_back(r);
    }
  }
  out.fresh = fresh_reps.size();

  // Members: a model m with normalized(h m) = K has set h^-1 g(S_row) when
  // K matched the class (row)_g.
  std::map<std::string, BuiltClass> built;
  std::map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& [k, h] = orbit[i];
    std::size_t r = rep_index.at(k);
    BuiltClass* bc;
    std::string label;
    if (match[r].expanded >= 0) {
      const auto& e = classes[std::size_t(match[r].expanded)];
      ClassId id{e.id.label, group[h].inverse().compose(e.id.g)};
      const auto& target = catalogue.lookup_class(id);
      label = target.id.to_string();
      order.emplace(label, std::size_t(&target - classes.data()));
    } else {
      label = "FRESH-" + std::to_string(fresh_of[r] + 1);
      order.emplace(label, classes.size() + std::size_t(fresh_of[r]));
    }
    auto [it, inserted] = built.try_emplace(label);
    bc = &it->second;
    if (inserted) {
      bc->label = label;
      bc->fresh = match[r].expanded < 0;
      bc->representative = models[i];
      bc->tag = match[r].tag;
    }
    if (match[r].tag == VerdictTag::numerical) bc->tag = VerdictTag::numerical;
    ++bc->members;
  }
  std::vector<std::pair<std::size_t, std::string>> sorted;
  for (const auto& [label, pos] : order) sorted.emplace_back(pos, label);
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [pos, label] : sorted) out.classes.push_back(built.at(label));

  for (const auto& e : classes)
    if (e.id.label.n <= options.n_max && !built.count(e.id.to_string()))
      out.missing.push_back(e.id.to_string());
  return out;
}

std::string CatalogueBuild::report() const {
  std::ostringstream os;
  os << "# " << kFormatHeader << "\n";
  os << "# build_catalogue n_max=" << n_max << " models=" << models << " orbits=" << orbits
     << " cross_fit_points=" << equivalence.cross_fit_points << " tol=" << equivalence.fit.tol
     << (sampled ? " mode=sampled" : " mode=exhaustive") << "\n";
  os << "class              members  verdict    representative\n";
  for (const auto& c : classes) {
    std::string label = c.label;
    label.resize(std::max<std::size_t>(label.size(), 18), ' ');
    std::string members = std::to_string(c.members);
    members.resize(std::max<std::size_t>(members.size(), 8), ' ');
    std::string tag(tag_name(c.tag));
    tag.resize(10, ' ');
    os << label << " " << members << " " << tag << " " << format_model(c.representative) << "\n";
  }
  for (const auto& m : missing) os << "missing " << m << "\n";
  os << "classes: " << classes.size() << "  fresh: " << fresh << "  missing: " << missing.size() << "\n";
  return os.str();
}

}  // namespace cvar
