#include "cvar/causal_model.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace cvar {

const std::array<std::string_view, 6>& latent_names() {
  static const std::array<std::string_view, 6> names = {"u", "v", "w", "d", "r", "s"};
  return names;
}

std::string format_boolfunc(const BoolFunc& f) {
  auto monos = f.anf_monomials();
  if (monos.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    if (k) s += " ^ ";
    if (monos[k] == 0) {
      s += "1";
      continue;
    }
    bool first = true;
    for (unsigned i = 0; i < f.n(); ++i)
      if ((monos[k] >> i) & 1) {
        if (!first) s += "*";
        s += latent_names()[i];
        first = false;
      }
  }
  return s;
}

std::string format_model(const CausalModel& m) {
  return "n=" + std::to_string(m.n) + "; A = " + format_boolfunc(m.A) +
         "; B = " + format_boolfunc(m.B);
}

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("model parse error: " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// GF(2) expression over n latents plus optionally B as input n.
class ExprParser {
 public:
  ExprParser(std::string_view s, unsigned n, bool allow_b) : s_(s), n_(n), allow_b_(allow_b) {}

  BoolFunc parse() {
    BoolFunc f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected text '" + std::string(s_.substr(pos_)) + "'");
    return f;
  }

  bool used_b() const { return used_b_; }

 private:
  unsigned width() const { return n_ + 1; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  BoolFunc expr() {
    BoolFunc f = term();
    while (eat('^')) f = f ^ term();
    return f;
  }
  BoolFunc term() {
    BoolFunc f = factor();
    while (eat('*')) f = f & factor();
    return f;
  }
  BoolFunc factor() {
    skip();
    if (eat('(')) {
      BoolFunc f = expr();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      return BoolFunc::constant(width(), c == '1');
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    auto name = s_.substr(start, pos_ - start);
    if (name.empty()) fail(std::string("unexpected '") + c + "'");
    if (name == "B") {
      if (!allow_b_) fail("B may only appear in the function for A");
      used_b_ = true;
      return BoolFunc::latent(width(), n_);
    }
    for (unsigned i = 0; i < n_; ++i)
      if (latent_names()[i] == name) return BoolFunc::latent(width(), i);
    fail("unknown latent '" + std::string(name) + "' for n=" + std::to_string(n_));
  }

  std::string_view s_;
  unsigned n_;
  bool allow_b_;
  bool used_b_ = false;
  std::size_t pos_ = 0;
};

// Restrict a function over n+1 inputs (last input unused) to n inputs.
BoolFunc drop_last(const BoolFunc& f) {
  unsigned n = f.n() - 1;
  return BoolFunc::from_table(n, f.table());
}

std::optional<unsigned> infer_n(std::string_view text) {
  std::optional<unsigned> best;
  for (std::size_t i = 0; i < text.size(); ++i) {
    bool left = i == 0 || !std::isalnum(static_cast<unsigned char>(text[i - 1]));
    bool right = i + 1 >= text.size() || !std::isalnum(static_cast<unsigned char>(text[i + 1]));
    if (!left || !right) continue;
    for (unsigned k = 0; k < latent_names().size(); ++k)
      if (text[i] == latent_names()[k][0]) best = std::max(best.value_or(0), k + 1);
  }
  return best;
}

}  // namespace

DirectedModel parse_directed_model(std::string_view text) {
  std::optional<unsigned> n;
  std::optional<std::string> a_text, b_text;
  std::string buf(text);
  for (char& c : buf)
    if (c == '\n') c = ';';
  std::stringstream ss(buf);
  std::string stmt;
  while (std::getline(ss, stmt, ';')) {
    auto hash = stmt.find('#');
    if (hash != std::string::npos) stmt.erase(hash);
    auto st = trim(stmt);
    if (st.empty()) continue;
    auto eq = st.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value' in '" + std::string(st) + "'");
    auto key = trim(st.substr(0, eq));
    auto val = trim(st.substr(eq + 1));
    if (key == "n") {
      try {
        std::size_t used = 0;
        unsigned long v = std::stoul(std::string(val), &used);
        if (used != val.size() || v > kMaxLatents) throw std::invalid_argument("");
        n = static_cast<unsigned>(v);
      } catch (const std::exception&) {
        fail("bad latent count '" + std::string(val) + "'");
      }
    } else if (key == "A") {
      a_text = std::string(val);
    } else if (key == "B") {
      b_text = std::string(val);
    } else {
      fail("unknown key '" + std::string(key) + "'");
    }
  }
  if (!a_text || !b_text) fail("both A and B must be given");
  if (!n) n = std::max(infer_n(*a_text).value_or(0), infer_n(*b_text).value_or(0));
  DirectedModel d;
  d.n = *n;
  ExprParser pb(*b_text, *n, false);
  d.fB = drop_last(pb.parse());
  ExprParser pa(*a_text, *n, true);
  d.g = pa.parse();
  return d;
}

CausalModel parse_model(std::string_view text) { return purify(parse_directed_model(text)); }

std::string write_model_file(const CausalModel& m) {
  return std::string(kFormatHeader) + "\n" + format_model(m) + "\n";
}

CausalModel read_model_file(std::string_view contents) {
  auto nl = contents.find('\n');
  auto first = trim(contents.substr(0, nl));
  if (first != kFormatHeader)
    fail("missing header line '" + std::string(kFormatHeader) + "'");
  return parse_model(nl == std::string_view::npos ? std::string_view{} : contents.substr(nl + 1));
}

}  // namespace cvar
