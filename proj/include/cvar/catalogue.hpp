#pragma once

#include "cvar/causal_model.hpp"
#include "cvar/feasibility.hpp"
#include "cvar/symmetry.hpp"

#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cvar {

/// Row label (n,m,x); x is 0 for rows without a letter.
struct ClassLabel {
  unsigned n = 0;
  unsigned m = 0;
  char x = 0;

  std::string to_string() const;
  static ClassLabel parse(std::string_view text);
  friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;
};

/// (n,m,x)_g
struct ClassId {
  ClassLabel label;
  SymmetryElem g;

  std::string to_string() const;
  /// Accepts `(2,2)_fAS`, `(3,1,a)_Id`, `(3,1,a)` and braces around g.
  static ClassId parse(std::string_view text);
};

struct CatalogueRow {
  ClassLabel label;
  CausalModel model;
  FeasibilityTest test;
  std::vector<std::string> printed_orbit;
  std::optional<std::string> printed_model;
  std::vector<std::string> printed_test;
  std::vector<std::string> notes;

  // Filled when the catalogue is built. Rows whose sets are images of one
  // another form a family; family_map sends the family's first row onto
  // this one. orbit lists the words of the classes this row owns.
  std::size_t family = 0;
  SymmetryElem family_map;
  std::vector<SymmetryElem> stabilizer;
  std::vector<SymmetryElem> orbit;

  bool corrected() const { return printed_model.has_value() || !printed_test.empty(); }
};

/// How the printed coset words compare with the regenerated orbit.
struct OrbitReport {
  ClassLabel label;
  std::size_t printed = 0;
  std::size_t orbit_size = 0;
  std::vector<std::string> unparseable;
  std::vector<std::pair<std::string, std::string>> duplicates;  // (word, class already owning it)
  std::vector<std::string> filled;                              // shortest words added
  std::size_t family_size = 0;                                  // classes in the whole family
  bool consistent() const {
    return unparseable.empty() && duplicates.empty() && filled.empty();
  }
};

struct ExpandedClass {
  ClassId id;
  CausalModel model;
  FeasibilityTest test;
};

class Catalogue {
 public:
  static Catalogue parse(std::string_view text);
  static Catalogue load(const std::string& path);
  /// The catalogue shipped in the data directory (CVAR_DATA_DIR or
  /// $CVAR_DATA_DIR at run time).
  static const Catalogue& builtin();

  const std::vector<CatalogueRow>& rows() const { return rows_; }
  const std::vector<ExpandedClass>& expanded() const { return expanded_; }
  const std::vector<OrbitReport>& orbit_reports() const { return reports_; }
  const CatalogueRow& row(const ClassLabel& label) const;

  /// Expanded class whose set is id.g applied to the row's set. The result
  /// may belong to another row of the same family. Throws std::out_of_range
  /// for an unknown row.
  const ExpandedClass& lookup_class(const ClassId& id) const;
  /// Exact check of a small model cloud against the class test, cached.
  bool cloud_consistent(const ClassId& id) const;

  /// Every expanded class whose test passes at p, in catalogue order.
  std::vector<ClassId> classify_distribution(const JointDist& p) const;

  Catalogue(const Catalogue& o);
  Catalogue& operator=(const Catalogue&) = delete;

 private:
  Catalogue() = default;
  void build();
  // Canonical key of the set g(S_row) within the row's family.
  std::array<unsigned, 4> set_key(const CatalogueRow& row, const SymmetryElem& g) const;

  std::vector<CatalogueRow> rows_;
  std::vector<ExpandedClass> expanded_;
  std::vector<OrbitReport> reports_;
  std::vector<std::size_t> family_root_;  // family -> row index
  std::vector<std::pair<std::size_t, std::array<unsigned, 4>>> expanded_keys_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, bool> cloud_cache_;
};

/// True when both tests agree on a fixed probe set (tetrahedron grid,
/// interior random points) and on `extra` points such as model clouds.
bool tests_agree(const FeasibilityTest& a, const FeasibilityTest& b,
                 const std::vector<JointDist>& extra);

/// Group elements g with transform_test(g, t) agreeing with t.
std::vector<SymmetryElem> test_stabilizer(const FeasibilityTest& t,
                                          const std::vector<JointDist>& extra);

std::string catalogue_report(const Catalogue& c);

}  // namespace cvar
