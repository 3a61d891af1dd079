#include "cvar/catalogue.hpp"

#include "cvar/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cvar {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

unsigned parse_count(const std::string& s, std::string_view ctx) {
  if (s.empty() || s.size() > 2 || !std::all_of(s.begin(), s.end(), ::isdigit))
    throw std::invalid_argument("bad class label '" + std::string(ctx) + "'");
  return unsigned(std::stoul(s));
}

// Probe points for comparing a test with its images: grid of the closed
// tetrahedron with denominator 10 plus interior points with denominator 997.
const std::vector<JointDist>& probe_points() {
  static const std::vector<JointDist> pts = [] {
    std::vector<JointDist> v;
    const int D = 10;
    for (int a = 0; a <= D; ++a)
      for (int b = 0; a + b <= D; ++b)
        for (int c = 0; a + b + c <= D; ++c)
          v.push_back({Rational(a, D), Rational(b, D), Rational(c, D), Rational(D - a - b - c, D)});
    std::uint64_t s = 0x5eed;
    for (int i = 0; i < 120; ++i) {
      std::array<long, 3> k;
      long left = 997;
      for (int j = 0; j < 3; ++j) {
        s = splitmix64(s);
        k[j] = 1 + long(s % std::uint64_t(left - (3 - j)));
        left -= k[j];
      }
      JointDist p{Rational(k[0], 997), Rational(k[1], 997), Rational(k[2], 997),
                  Rational(left, 997)};
      for (auto& x : p) x.canonicalize();
      v.push_back(p);
    }
    for (auto& p : v)
      for (auto& x : p) x.canonicalize();
    return v;
  }();
  return pts;
}

}  // namespace

std::string ClassLabel::to_string() const {
  std::string s = "(" + std::to_string(n) + "," + std::to_string(m);
  if (x) s += std::string(",") + x;
  return s + ")";
}

ClassLabel ClassLabel::parse(std::string_view text) {
  std::string t = trim(text);
  if (t.size() < 5 || t.front() != '(' || t.back() != ')')
    throw std::invalid_argument("bad class label '" + t + "'");
  std::vector<std::string> parts;
  std::stringstream ss(t.substr(1, t.size() - 2));
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(trim(part));
  if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("bad class label '" + t + "'");
  ClassLabel l;
  l.n = parse_count(parts[0], t);
  l.m = parse_count(parts[1], t);
  if (parts.size() == 3) {
    if (parts[2].size() != 1 || !std::islower(static_cast<unsigned char>(parts[2][0])))
      throw std::invalid_argument("bad class label '" + t + "'");
    l.x = parts[2][0];
  }
  return l;
}

std::string ClassId::to_string() const { return label.to_string() + "_" + g.to_string(); }

ClassId ClassId::parse(std::string_view text) {
  std::string t = trim(text);
  auto close = t.find(')');
  if (close == std::string::npos) throw std::invalid_argument("bad class id '" + t + "'");
  ClassId id;
  id.label = ClassLabel::parse(t.substr(0, close + 1));
  std::string rest = t.substr(close + 1);
  if (!rest.empty()) {
    if (rest[0] != '_') throw std::invalid_argument("bad class id '" + t + "'");
    rest = rest.substr(1);
    std::erase_if(rest, [](char c) { return c == '{' || c == '}' || c == ' '; });
    id.g = SymmetryElem::parse(rest);
  }
  return id;
}

namespace {

// values[g][i] = t(g^-1 z_i): the transformed test evaluated on the points.
std::vector<std::vector<bool>> image_values(const FeasibilityTest& t,
                                            const std::vector<JointDist>& pts) {
  const auto& group = symmetry_group();
  std::vector<std::vector<bool>> v(group.size(), std::vector<bool>(pts.size()));
  for (std::size_t g = 0; g < group.size(); ++g) {
    auto inv = group[g].inverse();
    for (std::size_t i = 0; i < pts.size(); ++i)
      v[g][i] = evaluate_test(t, apply_symmetry_dist(inv, pts[i]));
  }
  return v;
}

std::vector<JointDist> with_probes(const std::vector<JointDist>& extra) {
  std::vector<JointDist> pts = probe_points();
  pts.insert(pts.end(), extra.begin(), extra.end());
  return pts;
}

}  // namespace

bool tests_agree(const FeasibilityTest& a, const FeasibilityTest& b,
                 const std::vector<JointDist>& extra) {
  for (const auto& p : with_probes(extra))
    if (evaluate_test(a, p) != evaluate_test(b, p)) return false;
  return true;
}

std::vector<SymmetryElem> test_stabilizer(const FeasibilityTest& t,
                                          const std::vector<JointDist>& extra) {
  auto v = image_values(t, with_probes(extra));
  const auto& group = symmetry_group();
  std::vector<SymmetryElem> out;
  for (std::size_t g = 0; g < group.size(); ++g)
    if (v[g] == v[0]) out.push_back(group[g]);
  return out;
}

Catalogue::Catalogue(const Catalogue& o)
    : rows_(o.rows_),
      expanded_(o.expanded_),
      reports_(o.reports_),
      family_root_(o.family_root_),
      expanded_keys_(o.expanded_keys_) {}

Catalogue Catalogue::parse(std::string_view text) {
  Catalogue c;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  std::optional<CatalogueRow> cur;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("catalogue line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string l = trim(line);
    if (l.empty() || l[0] == '#') continue;
    if (!header) {
      if (l != kFormatHeader) fail("expected header " + std::string(kFormatHeader));
      header = true;
      continue;
    }
    auto sp = l.find(' ');
    std::string key = l.substr(0, sp);
    std::string val = sp == std::string::npos ? "" : trim(l.substr(sp + 1));
    try {
      if (key == "row") {
        if (cur) fail("missing 'end'");
        cur.emplace();
        cur->label = ClassLabel::parse(val);
        continue;
      }
      if (!cur) fail("'" + key + "' outside a row");
      if (key == "model") {
        cur->model = parse_model(val);
      } else if (key == "test") {
        cur->test.conditions.push_back(parse_condition(val));
      } else if (key == "printed-model") {
        cur->printed_model = val;
      } else if (key == "printed-test") {
        cur->printed_test.push_back(val);
      } else if (key == "note") {
        cur->notes.push_back(val);
      } else if (key == "orbit") {
        std::istringstream ws(val);
        std::string w;
        while (ws >> w) cur->printed_orbit.push_back(w);
      } else if (key == "end") {
        c.rows_.push_back(std::move(*cur));
        cur.reset();
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).starts_with("catalogue line")) throw;
      fail(e.what());
    }
  }
  if (!header) throw std::invalid_argument("catalogue: missing header");
  if (cur) throw std::invalid_argument("catalogue: last row has no 'end'");
  c.build();
  return c;
}

Catalogue Catalogue::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open catalogue " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

const Catalogue& Catalogue::builtin() {
  static const Catalogue c = [] {
    const char* env = std::getenv("CVAR_DATA_DIR");
    std::string dir = env && *env ? env : CVAR_DATA_DIR;
    return load(dir + "/catalogue.cv");
  }();
  return c;
}

std::array<unsigned, 4> Catalogue::set_key(const CatalogueRow& row, const SymmetryElem& g) const {
  const auto& root = rows_[family_root_[row.family]];
  SymmetryElem h = g.compose(row.family_map);
  std::array<unsigned, 4> best = h.perm();
  for (const auto& s : root.stabilizer) best = std::min(best, h.compose(s).perm());
  return best;
}

void Catalogue::build() {
  const auto& group = symmetry_group();
  std::vector<JointDist> pts = probe_points();
  for (const auto& row : rows_) {
    auto cloud = sample_cloud(row.model, 12, 7, Execution::serial);
    pts.insert(pts.end(), cloud.begin(), cloud.end());
  }
  std::vector<std::vector<std::vector<bool>>> values(rows_.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < rows_.size(); ++r) values[r] = image_values(rows_[r].test, pts);

  for (std::size_t r = 0; r < rows_.size(); ++r) {
    auto& row = rows_[r];
    row.stabilizer.clear();
    for (std::size_t g = 0; g < group.size(); ++g)
      if (values[r][g] == values[r][0]) row.stabilizer.push_back(group[g]);
    bool placed = false;
    for (std::size_t f = 0; f < family_root_.size() && !placed; ++f) {
      for (std::size_t g = 0; g < group.size() && !placed; ++g) {
        if (values[family_root_[f]][g] == values[r][0]) {
          row.family = f;
          row.family_map = group[g];
          placed = true;
        }
      }
    }
    if (!placed) {
      row.family = family_root_.size();
      row.family_map = SymmetryElem{};
      family_root_.push_back(r);
    }
  }

  // Printed words claim classes in row order; classes nobody claims go to
  // the family's first row under their shortest word.
  std::map<std::pair<std::size_t, std::array<unsigned, 4>>, std::string> owner;
  reports_.assign(rows_.size(), {});
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    auto& row = rows_[r];
    auto& rep = reports_[r];
    rep.label = row.label;
    rep.printed = row.printed_orbit.size();
    row.orbit.clear();
    for (const auto& w : row.printed_orbit) {
      SymmetryElem g;
      try {
        g = SymmetryElem::parse(w);
      } catch (const std::invalid_argument&) {
        rep.unparseable.push_back(w);
        continue;
      }
      auto key = std::make_pair(row.family, set_key(row, g));
      auto it = owner.find(key);
      if (it != owner.end()) {
        rep.duplicates.emplace_back(w, it->second);
        continue;
      }
      owner[key] = ClassId{row.label, g}.to_string();
      row.orbit.push_back(g);
    }
  }
  for (std::size_t f = 0; f < family_root_.size(); ++f) {
    auto& root = rows_[family_root_[f]];
    for (const auto& g : group) {
      auto key = std::make_pair(f, set_key(root, g));
      if (owner.count(key)) continue;
      owner[key] = ClassId{root.label, g}.to_string();
      root.orbit.push_back(g);
      reports_[family_root_[f]].filled.push_back(g.to_string());
    }
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    auto& row = rows_[r];
    reports_[r].orbit_size = row.orbit.size();
    reports_[r].family_size = group.size() / rows_[family_root_[row.family]].stabilizer.size();
    for (const auto& g : row.orbit) {
      expanded_.push_back({{row.label, g}, apply_symmetry(g, row.model), transform_test(g, row.test)});
      expanded_keys_.emplace_back(row.family, set_key(row, g));
    }
  }
}

const CatalogueRow& Catalogue::row(const ClassLabel& label) const {
  for (const auto& r : rows_)
    if (r.label == label) return r;
  throw std::out_of_range("unknown class " + label.to_string());
}

const ExpandedClass& Catalogue::lookup_class(const ClassId& id) const {
  const auto& r = row(id.label);
  auto key = std::make_pair(r.family, set_key(r, id.g));
  for (std::size_t i = 0; i < expanded_.size(); ++i)
    if (expanded_keys_[i] == key) return expanded_[i];
  throw std::out_of_range("unknown class " + id.to_string());
}

bool Catalogue::cloud_consistent(const ClassId& id) const {
  const auto& e = lookup_class(id);
  std::string key = e.id.to_string();
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cloud_cache_.find(key);
    if (it != cloud_cache_.end()) return it->second;
  }
  bool ok = true;
  for (const auto& p : sample_cloud(e.model, 64, 1, Execution::serial)) ok = ok && evaluate_test(e.test, p);
  std::lock_guard lock(cache_mutex_);
  cloud_cache_[key] = ok;
  return ok;
}

std::vector<ClassId> Catalogue::classify_distribution(const JointDist& p) const {
  std::vector<ClassId> out;
  for (const auto& e : expanded_)
    if (evaluate_test(e.test, p)) out.push_back(e.id);
  return out;
}

std::string catalogue_report(const Catalogue& c) {
  std::ostringstream os;
  os << "# " << kFormatHeader << "\n";
  os << "class     owned family printed status     issues\n";
  for (std::size_t i = 0; i < c.rows().size(); ++i) {
    const auto& row = c.rows()[i];
    const auto& rep = c.orbit_reports()[i];
    std::string label = row.label.to_string();
    label.resize(std::max<std::size_t>(label.size(), 9), ' ');
    os << label << " " << rep.orbit_size;
    os << std::string(rep.orbit_size >= 10 ? 5 : 6, ' ') << rep.family_size;
    os << std::string(rep.family_size >= 10 ? 5 : 6, ' ') << rep.printed;
    os << std::string(rep.printed >= 10 ? 6 : 7, ' ') << (row.corrected() ? "corrected " : "as-printed") << " ";
    std::vector<std::string> issues;
    for (const auto& w : rep.unparseable) issues.push_back("unparseable " + w);
    for (const auto& [w, e] : rep.duplicates) issues.push_back(w + " repeats " + e);
    if (!rep.filled.empty()) {
      std::string f = "added";
      for (const auto& w : rep.filled) f += " " + w;
      issues.push_back(f);
    }
    for (std::size_t k = 0; k < issues.size(); ++k) os << (k ? "; " : "") << issues[k];
    if (issues.empty()) os << "-";
    os << "\n";
  }
  return os.str();
}

}  // namespace cvar
