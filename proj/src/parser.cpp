#include "fourfold/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace fourfold {

ParseError::ParseError(std::size_t position, std::string message, std::set<std::string> expected)
    : Error("parse error at offset " + std::to_string(position) + ": " + message),
      position_(position),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

constexpr std::int64_t kMaxLiteral = 1'000'000'000;

enum class TokKind { Ident, Int, Punct, End };

struct Token {
  TokKind kind;
  std::size_t begin;
  std::string_view text;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokKind::End:
      return "end of input";
    case TokKind::Int:
    case TokKind::Ident:
    case TokKind::Punct:
      break;
  }
  return "'" + std::string(t.text) + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ManifoldExpr run() {
    ManifoldExpr e = expr();
    const Token t = peek();
    if (t.kind != TokKind::End) fail(t, "unexpected " + describe(t), {"#", "end of input"});
    return normalize(e);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Token peek() {
    skip_ws();
    if (pos_ >= text_.size()) return {TokKind::End, text_.size(), {}};
    const char c = text_[pos_];
    std::size_t end = pos_ + 1;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      return {TokKind::Ident, pos_, text_.substr(pos_, end - pos_)};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      return {TokKind::Int, pos_, text_.substr(pos_, end - pos_)};
    }
    return {TokKind::Punct, pos_, text_.substr(pos_, 1)};
  }

  void advance(const Token& t) { pos_ = t.begin + t.text.size(); }

  bool accept_punct(char c) {
    const Token t = peek();
    if (t.kind == TokKind::Punct && t.text[0] == c) {
      advance(t);
      return true;
    }
    return false;
  }

  void expect_punct(char c) {
    const Token t = peek();
    if (t.kind != TokKind::Punct || t.text[0] != c) {
      fail(t, "expected '" + std::string(1, c) + "' but found " + describe(t), {std::string(1, c)});
    }
    advance(t);
  }

  [[noreturn]] static void fail(const Token& t, std::string message, std::set<std::string> expected) {
    throw ParseError(t.begin, std::move(message), std::move(expected));
  }

  std::int64_t integer() {
    Token t = peek();
    bool negative = false;
    if (t.kind == TokKind::Punct && t.text[0] == '-') {
      advance(t);
      negative = true;
      t = peek();
    }
    if (t.kind != TokKind::Int) fail(t, "expected integer but found " + describe(t), {"integer"});
    advance(t);
    if (t.text.size() > 10) throw DomainError("integer literal too large: " + std::string(t.text));
    std::int64_t v = std::stoll(std::string(t.text));
    if (v > kMaxLiteral) throw DomainError("integer literal too large: " + std::string(t.text));
    return negative ? -v : v;
  }

  ManifoldExpr expr() {
    std::vector<ManifoldExpr::Summand> terms;
    terms.push_back(term());
    while (accept_punct('#')) terms.push_back(term());
    if (terms.size() == 1 && terms.front().count == 1) return terms.front().expr;
    return ManifoldExpr::sum(std::move(terms));
  }

  ManifoldExpr::Summand term() {
    const Token t = peek();
    std::int64_t count = 1;
    if (t.kind == TokKind::Int) {
      count = integer();
      expect_punct('*');
    }
    return {primary(), count};
  }

  ManifoldExpr primary() {
    const Token t = peek();
    if (t.kind == TokKind::Punct && t.text[0] == '(') {
      advance(t);
      ManifoldExpr inner = expr();
      expect_punct(')');
      return inner;
    }
    if (t.kind == TokKind::Ident && t.text == "reverse") {
      advance(t);
      expect_punct('(');
      ManifoldExpr inner = expr();
      expect_punct(')');
      return ManifoldExpr::reverse(inner);
    }
    if (t.kind == TokKind::Ident) {
      Atom a = atom(t);
      if (accept_punct('~')) a = a.reverse();
      return ManifoldExpr::atom(a);
    }
    fail(t, "expected a term but found " + describe(t), {"atom", "(", "reverse", "count"});
  }

  Atom atom(const Token& t) {
    const std::string_view name = t.text;
    if (name == "S4" || name == "CP2" || name == "S2xS2" || name == "T4" || name == "K3") {
      advance(t);
      if (name == "S4") return Atom::s4();
      if (name == "CP2") return Atom::cp2();
      if (name == "S2xS2") return Atom::s2xs2();
      if (name == "T4") return Atom::t4();
      return Atom::k3();
    }
    if (name == "Hyp") {
      advance(t);
      expect_punct('(');
      const std::int64_t d = integer();
      expect_punct(')');
      return Atom::hypersurface(d);
    }
    if (name == "Cover") {
      advance(t);
      expect_punct('(');
      const std::int64_t p = integer();
      expect_punct(',');
      const std::int64_t d = integer();
      expect_punct(')');
      return Atom::cyclic_cover(p, d);
    }
    if (name == "Surface") {
      advance(t);
      return surface();
    }
    fail(t, "unknown atom '" + std::string(name) + "'",
         {"S4", "CP2", "S2xS2", "T4", "K3", "Hyp", "Cover", "Surface", "reverse"});
  }

  bool boolean_value() {
    const Token t = peek();
    if (t.kind == TokKind::Ident) {
      if (t.text == "yes" || t.text == "true") {
        advance(t);
        return true;
      }
      if (t.text == "no" || t.text == "false") {
        advance(t);
        return false;
      }
    }
    fail(t, "expected yes or no but found " + describe(t), {"yes", "no"});
  }

  Tri tri_value() {
    const Token t = peek();
    if (t.kind == TokKind::Ident && t.text == "unknown") {
      advance(t);
      return Tri::Unknown;
    }
    if (t.kind == TokKind::Ident && (t.text == "yes" || t.text == "true" || t.text == "no" || t.text == "false")) {
      return tri_from_bool(boolean_value());
    }
    fail(t, "expected yes, no or unknown but found " + describe(t), {"yes", "no", "unknown"});
  }

  Atom surface() {
    expect_punct('(');
    SurfaceSpec spec;
    std::set<std::string> seen;
    const std::set<std::string> keys = {"c1sq", "chi_h", "minimal", "ample_K", "spin", "sc"};
    do {
      const Token k = peek();
      if (k.kind != TokKind::Ident || !keys.contains(std::string(k.text))) {
        fail(k, "expected a Surface key but found " + describe(k), keys);
      }
      const std::string key(k.text);
      if (!seen.insert(key).second) fail(k, "duplicate Surface key '" + key + "'", {});
      advance(k);
      expect_punct('=');
      if (key == "c1sq") {
        spec.c1sq = integer();
      } else if (key == "chi_h") {
        spec.chi_h = integer();
      } else if (key == "minimal") {
        spec.minimal = boolean_value();
      } else if (key == "ample_K") {
        spec.ample_K = boolean_value();
      } else if (key == "spin") {
        spec.spin = tri_value();
      } else {
        spec.simply_connected = boolean_value();
      }
    } while (accept_punct(','));
    const Token close = peek();
    if (close.kind != TokKind::Punct || close.text[0] != ')') {
      fail(close, "expected ',' or ')' but found " + describe(close), {",", ")"});
    }
    if (!seen.contains("c1sq") || !seen.contains("chi_h")) {
      fail(close, "Surface requires both c1sq and chi_h", {"c1sq", "chi_h"});
    }
    advance(close);
    return Atom::surface(spec);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string yes_no(bool b) {
  return b ? "yes" : "no";
}

}  // namespace

ManifoldExpr parse(std::string_view text) {
  return Parser(text).run();
}

std::string format_atom(const Atom& a) {
  std::string base;
  switch (a.tag()) {
    case AtomTag::S4:
      return "S4";
    case AtomTag::CP2:
      return "CP2";
    case AtomTag::CP2Rev:
      return "CP2~";
    case AtomTag::S2xS2:
      return "S2xS2";
    case AtomTag::T4:
      base = "T4";
      break;
    case AtomTag::Hypersurface:
      base = a.is_k3() ? "K3" : "Hyp(" + std::to_string(a.degree()) + ")";
      break;
    case AtomTag::CyclicCover:
      base = "Cover(" + std::to_string(a.cover_order()) + "," + std::to_string(a.degree()) + ")";
      break;
    case AtomTag::Surface: {
      const SurfaceSpec& s = a.surface_spec();
      base = "Surface(c1sq=" + std::to_string(s.c1sq) + ",chi_h=" + std::to_string(s.chi_h) +
             ",minimal=" + yes_no(s.minimal) + ",ample_K=" + yes_no(s.ample_K) + ",spin=" +
             std::string(to_string(s.spin)) + ",sc=" + yes_no(s.simply_connected) + ")";
      break;
    }
  }
  return a.reversed() ? "reverse(" + base + ")" : base;
}

std::string format(const ManifoldExpr& e) {
  const AtomCounts counts = atoms(e);
  if (counts.empty()) return "S4";
  std::string out;
  for (const auto& [a, n] : counts) {
    if (!out.empty()) out += " # ";
    if (n != 1) out += std::to_string(n) + "*";
    out += format_atom(a);
  }
  return out;
}

}  // namespace fourfold
