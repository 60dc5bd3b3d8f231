#pragma once

// Text syntax for manifold expressions (grammar version 1):
//
//   expr    := term { "#" term }
//   term    := [ count "*" ] primary
//   primary := atom [ "~" ] | "(" expr ")" | "reverse" "(" expr ")"
//   atom    := "S4" | "CP2" | "CP2~" | "S2xS2" | "T4" | "K3"
//            | "Hyp(" int ")" | "Cover(" int "," int ")"
//            | "Surface(" key "=" value { "," key "=" value } ")"
//
// Surface keys: c1sq, chi_h (required); minimal (default yes), ample_K
// (default no), spin (yes|no|unknown, default unknown), sc (default yes).
// Whitespace between tokens is ignored. A count of 0 contributes nothing.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include "fourfold/manifold.hpp"

namespace fourfold {

inline constexpr int kGrammarVersion = 1;

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string message, std::set<std::string> expected);

  std::string_view kind() const override { return "ParseError"; }

  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string message_;
  std::set<std::string> expected_;
};

/// Parses and normalizes. Throws ParseError on syntax errors and DomainError
/// on invalid atom parameters.
ManifoldExpr parse(std::string_view text);

/// Pretty-prints a canonical expression; parse(format(e)) == e.
std::string format(const ManifoldExpr& e);

std::string format_atom(const Atom& a);

}  // namespace fourfold
