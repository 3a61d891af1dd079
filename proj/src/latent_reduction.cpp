#include "cvar/latent_reduction.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace cvar {

BoolFunc MultiValuedFunc::indicator(unsigned c) const {
  std::uint64_t t = 0;
  for (std::size_t j = 0; j < table.size(); ++j)
    if (table[j] == c) t |= std::uint64_t(1) << j;
  return BoolFunc::from_table(n, t);
}

std::string format_multi(const MultiValuedFunc& f) {
  if (f.arity <= 2) return format_boolfunc(f.indicator(1));
  std::string out;
  for (unsigned c = 1; c < f.arity; ++c) {
    BoolFunc ind = f.indicator(c);
    if (ind.table() == 0) continue;
    if (!out.empty()) out += " +" + std::to_string(f.arity) + " ";
    if (c > 1) out += std::to_string(c) + "*";
    out += "(" + format_boolfunc(ind) + ")";
  }
  return out.empty() ? "0" : out;
}

namespace {

// Integer expression in tau.
class ExprParser {
 public:
  ExprParser(std::string_view s, long tau) : s_(s), tau_(tau) {}

  long parse() {
    long v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad expression '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool word(std::string_view w) {
    skip();
    if (s_.substr(i_, w.size()) != w) return false;
    std::size_t e = i_ + w.size();
    if (e < s_.size() && std::isalnum(static_cast<unsigned char>(s_[e]))) return false;
    i_ = e;
    return true;
  }
  long number() {
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected a number");
    return std::stol(std::string(s_.substr(st, i_ - st)));
  }
  static long mod(long a, long k) { return ((a % k) + k) % k; }

  long expr() {
    long v = sum();
    while (word("mod")) {
      long k = number();
      if (k <= 0) fail("modulus must be positive");
      v = mod(v, k);
    }
    return v;
  }
  long sum() {
    long v = product();
    for (;;) {
      skip();
      if (i_ >= s_.size()) return v;
      char c = s_[i_];
      if (c == '+' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
        ++i_;
        long k = number();
        if (k <= 0) fail("modulus must be positive");
        v = mod(v + product(), k);
      } else if (c == '+') {
        ++i_;
        v += product();
      } else if (c == '-') {
        ++i_;
        v -= product();
      } else {
        return v;
      }
    }
  }
  long product() {
    long v = atom();
    for (;;) {
      skip();
      if (i_ < s_.size() && s_[i_] == '*') {
        ++i_;
        v *= atom();
      } else {
        return v;
      }
    }
  }
  long atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    if (s_[i_] == '(') {
      ++i_;
      long v = expr();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') fail("missing ')'");
      ++i_;
      return v;
    }
    if (word("tau")) return tau_;
    if (std::isdigit(static_cast<unsigned char>(s_[i_]))) return number();
    fail("unexpected '" + std::string(1, s_[i_]) + "'");
  }

  std::string_view s_;
  long tau_;
  std::size_t i_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<unsigned> eval_observed(const std::string& name, const std::string& rhs, unsigned m) {
  std::vector<unsigned> out(m);
  if (rhs.starts_with("table")) {
    std::istringstream in(rhs.substr(5));
    long v;
    std::vector<long> vals;
    while (in >> v) vals.push_back(v);
    if (!in.eof()) throw std::invalid_argument(name + ": bad table");
    if (vals.size() != m)
      throw std::invalid_argument(name + ": table needs " + std::to_string(m) + " entries");
    for (unsigned t = 0; t < m; ++t) {
      if (vals[t] != 0 && vals[t] != 1) throw std::invalid_argument(name + ": values must be 0 or 1");
      out[t] = unsigned(vals[t]);
    }
    return out;
  }
  for (unsigned t = 0; t < m; ++t) {
    long v = ExprParser(rhs, long(t)).parse();
    if (v != 0 && v != 1)
      throw std::invalid_argument(name + " = " + std::to_string(v) + " at tau = " + std::to_string(t) +
                                  "; observed values must be 0 or 1");
    out[t] = unsigned(v);
  }
  return out;
}

}  // namespace

MultiValuedModel parse_multi_valued_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<unsigned> m;
  std::optional<std::string> c_rhs, d_rhs;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    for (std::string stmt; !line.empty();) {
      auto semi = line.find(';');
      stmt = trim(line.substr(0, semi));
      line = semi == std::string::npos ? "" : line.substr(semi + 1);
      if (stmt.empty()) continue;
      if (!header_seen && stmt == kFormatHeader) {
        header_seen = true;
        continue;
      }
      if (stmt.starts_with("tau")) {
        std::string rest = trim(stmt.substr(3));
        if (!rest.starts_with("in")) throw std::invalid_argument("expected 'tau in 0..k'");
        rest = trim(rest.substr(2));
        if (!rest.starts_with("0..")) throw std::invalid_argument("tau range must start at 0");
        long hi = std::stol(rest.substr(3));
        if (hi < 1 || hi > 63) throw std::invalid_argument("tau range must be 0..k with 1 <= k <= 63");
        m = unsigned(hi + 1);
        continue;
      }
      auto eq = stmt.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected 'C = ...' or 'D = ...'");
      std::string lhs = trim(stmt.substr(0, eq));
      std::string rhs = trim(stmt.substr(eq + 1));
      if (lhs == "C") c_rhs = rhs;
      else if (lhs == "D") d_rhs = rhs;
      else throw std::invalid_argument("unknown variable '" + lhs + "'");
    }
  }
  if (!m) throw std::invalid_argument("missing 'tau in 0..k'");
  if (!c_rhs || !d_rhs) throw std::invalid_argument("both C and D must be given");
  MultiValuedModel out;
  out.m = *m;
  out.C = eval_observed("C", *c_rhs, *m);
  out.D = eval_observed("D", *d_rhs, *m);
  return out;
}

std::string format_multi_valued_model(const MultiValuedModel& m) {
  std::ostringstream os;
  os << "tau in 0.." << m.m - 1 << "\nC = table";
  for (unsigned v : m.C) os << " " << v;
  os << "\nD = table";
  for (unsigned v : m.D) os << " " << v;
  os << "\n";
  return os.str();
}

std::vector<unsigned> SimplexModel::tau_table() const {
  std::vector<unsigned> out(std::size_t(1) << n);
  for (std::uint32_t j = 0; j < out.size(); ++j) {
    std::pair<unsigned, unsigned> v{gamma(j), eta(j)};
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) throw std::logic_error("simplex model leaves its vertex set");
    out[j] = unsigned(it - vertices.begin());
  }
  return out;
}

OutcomeModel SimplexModel::outcome_model() const { return {n, m, tau_table()}; }

std::string SimplexModel::to_string() const {
  std::ostringstream os;
  os << "m=" << m << "; n=" << n << "; gamma = " << format_multi(gamma)
     << "; eta = " << format_boolfunc(eta) << "; vertices";
  for (std::size_t t = 0; t < vertices.size(); ++t)
    os << (t ? ", " : " ") << "tau=" << t << ":[" << vertices[t].first << vertices[t].second << "]";
  return os.str();
}

SimplexModel reduce_m_valued(unsigned m) {
  if (m < 2) throw std::invalid_argument("reduce_m_valued needs m >= 2");
  if (m - 1 > kMaxLatents) throw std::invalid_argument("m too large for the latent limit");
  SimplexModel s;
  s.m = m;
  auto from_bool = [](const BoolFunc& f) {
    MultiValuedFunc g{f.n(), 2, std::vector<unsigned>(std::size_t(1) << f.n())};
    for (std::uint32_t j = 0; j < g.table.size(); ++j) g.table[j] = f(j);
    return g;
  };
  if (m == 2) {
    s.n = 1;
    s.gamma = from_bool(BoolFunc::latent(1, 0));
    s.eta = BoolFunc::constant(1, false);
    s.vertices = {{0, 0}, {1, 0}};
    return s;
  }
  if (m == 3) {
    s.n = 2;
    auto u = BoolFunc::latent(2, 0), v = BoolFunc::latent(2, 1);
    s.gamma = from_bool(u & v);
    s.eta = v;
    s.vertices = {{0, 0}, {0, 1}, {1, 1}};
    return s;
  }
  if (m == 4) {
    s.n = 3;
    auto u = BoolFunc::latent(3, 0), v = BoolFunc::latent(3, 1), w = BoolFunc::latent(3, 2);
    s.gamma = from_bool(~(u & v));
    s.eta = (u & v & w) ^ v;
    s.vertices = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    return s;
  }
  SimplexModel prev = reduce_m_valued(m - 1);
  std::pair<unsigned, unsigned> fresh{0, 0};
  for (unsigned g = 0;; ++g) {
    bool found = false;
    for (unsigned e = 0; e < 2 && !found; ++e) {
      if (std::find(prev.vertices.begin(), prev.vertices.end(), std::pair{g, e}) == prev.vertices.end()) {
        fresh = {g, e};
        found = true;
      }
    }
    if (found) break;
  }
  s.n = prev.n + 1;
  s.gamma.n = s.n;
  s.gamma.table.assign(std::size_t(1) << s.n, 0);
  std::uint64_t eta = 0;
  const std::uint32_t low = (1u << prev.n) - 1;
  for (std::uint32_t j = 0; j < s.gamma.table.size(); ++j) {
    bool rho = (j >> prev.n) & 1;
    unsigned g = rho ? prev.gamma(j & low) : fresh.first;
    bool e = rho ? prev.eta(j & low) : fresh.second;
    s.gamma.table[j] = g;
    if (e) eta |= std::uint64_t(1) << j;
  }
  s.gamma.arity = std::max(prev.gamma.arity, fresh.first + 1);
  s.eta = BoolFunc::from_table(s.n, eta);
  s.vertices = prev.vertices;
  s.vertices.push_back(fresh);
  return s;
}

CausalModel reduce(const MultiValuedModel& model) {
  if (model.C.size() != model.m || model.D.size() != model.m)
    throw std::invalid_argument("observed tables must have one entry per tau value");
  SimplexModel s = reduce_m_valued(model.m);
  auto tau = s.tau_table();
  std::uint64_t a = 0, b = 0;
  for (std::uint32_t j = 0; j < tau.size(); ++j) {
    if (model.C[tau[j]]) a |= std::uint64_t(1) << j;
    if (model.D[tau[j]]) b |= std::uint64_t(1) << j;
  }
  return CausalModel(BoolFunc::from_table(s.n, a), BoolFunc::from_table(s.n, b));
}

CausalModel reduce_trit(const MultiValuedModel& model) {
  if (model.m != 3) throw std::invalid_argument("reduce_trit needs a three-valued latent");
  return reduce(model);
}

}  // namespace cvar
