#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "hhes/cdl.hpp"

namespace hhes::cdl {

namespace {

constexpr std::array<std::string_view, 11> kKeywords{
    "internal", "external", "statistics", "particle", "hbs",    "bs",
    "phase",    "sorter",   "exchange",   "measure",  "bin"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back(Token{TokenKind::End, "", 0.0, line_, col_});
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Lex, msg, line_, col_);
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = peek();
      if (c == '#') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_pi() const { return peek() == 'p' && peek(1) == 'i' && !ident_char(peek(2)); }

  bool number_start() const {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || at_pi()) return true;
    return c == '-' && peek(1) != '>';
  }

  double atom() {
    if (at_pi()) {
      advance(2);
      return std::numbers::pi;
    }
    double v = 0.0;
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ptr == first || ec == std::errc::invalid_argument) fail("malformed number");
    if (ec == std::errc::result_out_of_range) fail("number out of range");
    advance(static_cast<std::size_t>(ptr - first));
    return v;
  }

  Token next() {
    Token t{TokenKind::Punctuation, "", 0.0, line_, col_};
    const std::size_t start = pos_;
    const char c = peek();

    if (number_start()) {
      const bool negate = c == '-';
      if (negate) {
        advance();
        if (!(std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' || at_pi())) {
          fail("expected a number after '-'");
        }
      }
      double v = atom();
      while (peek() == '*' || peek() == '/') {
        const char op = peek();
        advance();
        const double rhs = atom();
        v = op == '*' ? v * rhs : v / rhs;
      }
      if (ident_char(peek()) || peek() == '.' || peek() == '$') fail("malformed number");
      if (!std::isfinite(v)) {
        throw ParseError(ParseError::Kind::Lex, "number is not finite", t.line, t.col);
      }
      t.kind = TokenKind::Number;
      t.value = negate ? -v : v;
    } else if (ident_start(c) || c == '$') {
      advance();
      if (c == '$' && !ident_start(peek())) fail("expected a parameter name after '$'");
      while (ident_char(peek())) advance();
      t.kind = TokenKind::Identifier;
      const auto word = src_.substr(start, pos_ - start);
      for (auto k : kKeywords) {
        if (word == k) t.kind = TokenKind::Keyword;
      }
    } else if (c == '-' && peek(1) == '>') {
      advance(2);
    } else if (c == ':' || c == '=') {
      advance();
    } else {
      fail(std::string("illegal character '") + c + "'");
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::End: return "end";
  }
  return "unknown";
}

std::string_view to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Lex: return "lex error";
    case ParseError::Kind::Parse: return "parse error";
    case ParseError::Kind::Semantic: return "semantic error";
  }
  return "error";
}

ParseError::ParseError(Kind kind, std::string message, int line, int col,
                       std::vector<TokenKind> expected)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " +
                         std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      message_(std::move(message)),
      line_(line),
      col_(col),
      expected_(std::move(expected)) {}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace hhes::cdl
