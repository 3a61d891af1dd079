// causal-varieties: command-line front end.
//
// Exit status: 0 success, 2 infeasible / unmatched, 1 input error.

#include "cvar/catalogue.hpp"
#include "cvar/enumeration.hpp"
#include "cvar/geometry.hpp"
#include "cvar/implicitization.hpp"
#include "cvar/latent_reduction.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace cvar;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

struct ModelSource {
  std::string path;
  std::string text;

  void add(CLI::App* cmd) {
    cmd->add_option("--model", path, "model file (header " + std::string(kFormatHeader) + ")");
    cmd->add_option("--model-text", text, "inline model, e.g. \"n=2; A = u*v; B = u\"");
  }
  CausalModel load() const {
    if (!path.empty() && !text.empty()) throw InputError("give --model or --model-text, not both");
    if (!path.empty()) return read_model_file(read_file(path));
    if (!text.empty()) return parse_model(text);
    throw InputError("a model is required (--model or --model-text)");
  }
};

const Catalogue& catalogue_from(const std::string& path) {
  static std::optional<Catalogue> custom;
  if (path.empty()) return Catalogue::builtin();
  if (!custom) custom.emplace(Catalogue::load(path));
  return *custom;
}

std::string join_q(const std::vector<Rational>& q) {
  std::string s;
  for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + to_string(q[i]);
  return s;
}

int cmd_derive(const CausalModel& m) {
  std::ostringstream os;
  os << kFormatHeader << "\n";
  os << "model: " << format_model(m) << "\n";
  os << "support: " << format_support(support_pattern(m)) << "\n";
  auto par = parametrize(m);
  os << "parametrization:\n";
  for (unsigned o = 0; o < 4; ++o) os << "  " << p_name(o) << " = " << par[o].to_string() << "\n";
  auto r = equality_constraints(m);
  os << "groebner basis (lex, q1 > ... > p00 > p10 > p01 > p11):\n";
  for (const auto& g : r.groebner.elements) os << "  " << g.to_string() << "\n";
  os << "equalities:\n";
  for (const auto& e : r.equalities) os << "  " << e.to_string() << " = 0\n";
  os << "identifications:\n";
  for (const auto& id : r.identifications) os << "  " << id.to_string() << "\n";
  if (r.identifications.empty()) os << "  (none)\n";
  os << "real-root conditions:\n";
  bool any = false;
  for (const auto& g : r.groebner.elements) {
    try {
      auto disc = extension_real_roots(g, *r.ring, r.equalities, r.identifications);
      os << "  " << disc.to_string() << " >= 0   from " << g.to_string() << "\n";
      any = true;
    } catch (const std::invalid_argument&) {
    }
  }
  if (!any) os << "  (none)\n";
  std::cout << os.str();
  return 0;
}

int cmd_test_dist(const std::string& p_text, const std::string& class_text,
                  const std::string& cat_path) {
  JointDist p = parse_distribution(p_text);
  const auto& cat = catalogue_from(cat_path);
  if (!class_text.empty()) {
    ClassId id = ClassId::parse(class_text);
    const auto& e = cat.lookup_class(id);
    std::cout << "class " << e.id.to_string() << ": " << e.test.to_string() << "\n";
    if (auto why = explain_failure(e.test, p)) {
      std::cout << "infeasible: " << *why << "\n";
      return 2;
    }
    std::cout << "feasible\n";
    return 0;
  }
  auto ids = cat.classify_distribution(p);
  for (const auto& id : ids) std::cout << id.to_string() << "\n";
  if (ids.empty()) {
    std::cout << "no catalogue class contains this distribution\n";
    return 2;
  }
  return 0;
}

int cmd_classify_model(const CausalModel& m, const std::string& cat_path,
                       const EquivalenceOptions& eo) {
  auto match = classify_model(catalogue_from(cat_path), m, eo);
  std::cout << "model: " << format_model(m) << "\n";
  if (!match) {
    std::cout << "unmatched: no catalogue class has the same set of distributions\n";
    return 2;
  }
  std::cout << "class " << match->id.to_string() << " [" << tag_name(match->verdict.tag) << ": "
            << match->verdict.reason << "]\n";
  return 0;
}

int cmd_identify(const CausalModel& m, const std::string& p_text) {
  JointDist p = parse_distribution(p_text);
  std::map<unsigned, Rational> q;
  try {
    q = solve_latent_params(m, p);
  } catch (const InfeasibleError& e) {
    std::cout << "infeasible: " << e.what() << "\n";
    return 2;
  }
  for (unsigned i = 0; i < m.n; ++i) {
    auto it = q.find(i);
    std::cout << "q" << i + 1 << " = " << (it == q.end() ? "unidentified" : to_string(it->second)) << "\n";
  }
  return 0;
}

int cmd_reduce(unsigned m, const std::string& mv_path, const std::string& out) {
  if (!mv_path.empty()) {
    auto mv = parse_multi_valued_model(read_file(mv_path));
    write_output(out, write_model_file(reduce(mv)));
    return 0;
  }
  if (m < 2) throw InputError("give --m (>= 2) or --model");
  auto s = reduce_m_valued(m);
  write_output(out, std::string(kFormatHeader) + "\n" + s.to_string() + "\n");
  return 0;
}

int cmd_certify(const CausalModel& m, const FeasibilityTest& t, const CertifyOptions& co) {
  auto rep = certify_test(m, t, co);
  std::ostringstream os;
  os << kFormatHeader << "\n";
  os << "model: " << format_model(m) << "\n";
  os << "test: " << t.to_string() << "\n";
  os << "necessity: " << (rep.necessity ? "pass" : "FAIL") << " (" << rep.violations << " of "
     << rep.samples << " samples violate)\n";
  if (rep.counterexample_q)
    os << "  counterexample q = " << join_q(*rep.counterexample_q)
       << "  p = " << format_distribution(*rep.counterexample_p) << "\n";
  if (co.grid_denominator) {
    os << "sufficiency: " << rep.grid_fitted << " of " << rep.grid_passing
       << " passing grid points fitted\n";
    for (const auto& p : rep.unfitted) os << "  unfitted " << format_distribution(p) << "\n";
  }
  char frac[32];
  std::snprintf(frac, sizeof frac, "%.6f", rep.sufficiency());
  os << "# summary necessity=" << (rep.necessity ? "pass" : "fail") << " samples=" << rep.samples
     << " violations=" << rep.violations << " grid_passing=" << rep.grid_passing
     << " grid_fitted=" << rep.grid_fitted << " sufficiency=" << frac << "\n";
  std::cout << os.str();
  return rep.necessity && rep.grid_fitted == rep.grid_passing ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-algebraic sets of causal models with binary observed variables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kFormatHeader));

  std::string cat_path;
  app.add_option("--catalogue", cat_path, "catalogue file (default: shipped data)");

  ModelSource derive_src, classify_src, identify_src, sample_src, certify_src;
  std::string p_text, class_text, output, format = "csv", mv_path, test_text;
  std::size_t count = 1000, samples = 10000, cross = 512, sampled_models = 20000;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  unsigned n_max = 2, m_values = 0, grid = 20;

  auto* derive = app.add_subcommand("derive", "parametrization, Groebner basis, equalities, identifications");
  derive_src.add(derive);

  auto* test_dist = app.add_subcommand("test-dist", "test a distribution against one class or all");
  test_dist->add_option("--p", p_text, "p00,p01,p10,p11 as rationals or decimals")->required();
  test_dist->add_option("--class", class_text, "class id such as (2,2)_fAS");

  auto* classify = app.add_subcommand("classify-model", "match a model to a catalogue class");
  classify_src.add(classify);
  classify->add_option("--cross-fit-points", cross, "cloud points fitted in each direction");
  classify->add_option("--tol", tol, "fit tolerance (max-norm)");

  auto* identify = app.add_subcommand("identify", "solve latent parameters at a distribution");
  identify_src.add(identify);
  identify->add_option("--p", p_text, "p00,p01,p10,p11")->required();

  auto* sample = app.add_subcommand("sample", "emit a point cloud as CSV");
  sample_src.add(sample);
  sample->add_option("--count", count, "number of points");
  sample->add_option("--seed", seed, "sampling seed");
  sample->add_option("--format", format, "csv or rational-csv")
      ->check(CLI::IsMember({"csv", "rational-csv"}));
  sample->add_option("--output", output, "output path (default stdout)");

  auto* enumerate = app.add_subcommand("enumerate", "rebuild the catalogue from enumerated models");
  enumerate->add_option("--n-max", n_max, "largest latent count")->check(CLI::Range(0u, 6u));
  enumerate->add_option("--cross-fit-points", cross, "cloud points fitted in each direction");
  enumerate->add_option("--tol", tol, "fit tolerance (max-norm)");
  enumerate->add_option("--sampled-models", sampled_models, "random models drawn above n = 3");
  enumerate->add_option("--seed", seed, "seed");
  enumerate->add_option("--output", output, "output path (default stdout)");

  auto* reduce_cmd = app.add_subcommand("reduce", "replace a many-valued latent by latent bits");
  reduce_cmd->add_option("--m", m_values, "print the simplex model for an m-valued latent");
  reduce_cmd->add_option("--model", mv_path, "multi-valued model file (tau in 0..k; C = ...; D = ...)");
  reduce_cmd->add_option("--output", output, "output path (default stdout)");

  auto* certify = app.add_subcommand("certify", "check a test against a model numerically");
  certify_src.add(certify);
  certify->add_option("--class", class_text, "use this class's model and test");
  certify->add_option("--test", test_text, "conditions separated by ';'");
  certify->add_option("--samples", samples, "necessity samples");
  certify->add_option("--grid", grid, "grid denominator for sufficiency (0 skips)");
  certify->add_option("--seed", seed, "seed");
  certify->add_option("--tol", tol, "fit tolerance (max-norm)");

  auto* cat_cmd = app.add_subcommand("catalogue", "print catalogue rows and orbit checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*derive) return cmd_derive(derive_src.load());
    if (*test_dist) return cmd_test_dist(p_text, class_text, cat_path);
    if (*classify) {
      EquivalenceOptions eo;
      eo.cross_fit_points = cross;
      eo.fit.tol = tol;
      return cmd_classify_model(classify_src.load(), cat_path, eo);
    }
    if (*identify) return cmd_identify(identify_src.load(), p_text);
    if (*sample) {
      auto cloud = sample_cloud(sample_src.load(), count, seed);
      write_output(output, cloud_csv(cloud, format == "rational-csv"));
      return 0;
    }
    if (*enumerate) {
      BuildOptions bo;
      bo.n_max = n_max;
      bo.seed = seed;
      bo.sampled_models = sampled_models;
      bo.equivalence.cross_fit_points = cross;
      bo.equivalence.fit.tol = tol;
      auto b = build_catalogue(catalogue_from(cat_path), bo);
      write_output(output, b.report());
      return b.fresh == 0 ? 0 : 2;
    }
    if (*reduce_cmd) return cmd_reduce(m_values, mv_path, output);
    if (*certify) {
      CertifyOptions co;
      co.samples = samples;
      co.seed = seed;
      co.grid_denominator = grid;
      co.fit.tol = tol;
      if (!class_text.empty()) {
        const auto& e = catalogue_from(cat_path).lookup_class(ClassId::parse(class_text));
        return cmd_certify(e.model, e.test, co);
      }
      FeasibilityTest t;
      std::stringstream ss(test_text);
      std::string cond;
      while (std::getline(ss, cond, ';'))
        if (cond.find_first_not_of(' ') != std::string::npos) t.conditions.push_back(parse_condition(cond));
      return cmd_certify(certify_src.load(), t, co);
    }
    if (*cat_cmd) {
      std::cout << catalogue_report(catalogue_from(cat_path));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
