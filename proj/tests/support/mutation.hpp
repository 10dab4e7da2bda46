#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "hhes/cdl.hpp"

namespace hhes::testing {

/// Source with one token replaced by a token that cannot appear there, and
/// the position the replacement starts at.
struct Mutation {
  std::string source;
  int line = 0;
  int col = 0;
  std::string original;
};

inline std::size_t offset_of(const std::string& src, int line, int col) {
  std::size_t off = 0;
  for (int l = 1; l < line; ++l) off = src.find('\n', off) + 1;
  return off + static_cast<std::size_t>(col - 1);
}

/// Numbers and `$param` values become "=", every other token "7". Spaces are
/// added where the replacement would otherwise fuse with a neighbour.
inline Mutation mutate(const std::string& src, const cdl::Token& tok) {
  const bool value = tok.kind == cdl::TokenKind::Number ||
                     (tok.kind == cdl::TokenKind::Identifier && tok.text.front() == '$');
  const std::string repl = value ? "=" : "7";
  const std::size_t begin = offset_of(src, tok.line, tok.col);
  const std::size_t end = begin + tok.text.size();
  auto blank = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  const bool pad_left = begin > 0 && !blank(src[begin - 1]);
  const bool pad_right = end < src.size() && !blank(src[end]);
  Mutation m;
  m.source = src.substr(0, begin) + (pad_left ? " " : "") + repl + (pad_right ? " " : "") +
             src.substr(end);
  m.line = tok.line;
  m.col = tok.col + (pad_left ? 1 : 0);
  m.original = tok.text;
  return m;
}

/// Position of the error the mutated source raises, or {0, 0} if it parses.
inline std::pair<int, int> error_position(const std::string& src) {
  try {
    (void)cdl::parse_source(src);
  } catch (const cdl::ParseError& e) {
    return {e.line(), e.col()};
  }
  return {0, 0};
}

inline const std::vector<std::string>& bundled_sources() {
  static const std::vector<std::string> names{"li_fermion", "li_boson", "li_distinguishable",
                                              "swap",       "cascade2", "cascade3"};
  return names;
}

inline std::string bundled_path(const std::string& name) {
  return std::string(HHES_EXAMPLES_DIR) + "/" + name + ".cdl";
}

}  // namespace hhes::testing
