#include <algorithm>
#include <optional>

#include "hhes/cdl.hpp"

namespace hhes::cdl {

namespace {

using Kind = ParseError::Kind;

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {
    if (toks_.empty() || toks_.back().kind != TokenKind::End) {
      throw ParseError(Kind::Parse, "token stream does not end with the end token", 1, 1,
                       {TokenKind::End});
    }
  }

  CircuitSpecTree run() {
    while (peek().kind != TokenKind::End) statement();
    const Token& end = peek();
    if (!statistics_) semantic(end, "missing statistics declaration");
    if (!internal_declared_) semantic(end, "missing internal declaration");
    if (!external_declared_) semantic(end, "missing external declaration");
    if (tree_.particles.empty()) semantic(end, "missing particle declaration");
    tree_.statistics = *statistics_;
    return std::move(tree_);
  }

 private:
  const Token& peek() const { return toks_[std::min(pos_, toks_.size() - 1)]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool on_line() const { return peek().kind != TokenKind::End && peek().line == line_; }

  [[noreturn]] void syntax(const Token& t, const std::string& what,
                           std::vector<TokenKind> expected) const {
    const std::string got = t.kind == TokenKind::End ? "end of input"
                            : t.line != line_         ? "end of line"
                                                      : "'" + t.text + "'";
    if (t.kind != TokenKind::End && t.line != line_ && pos_ > 0) {
      // Point just past the last token of the unfinished statement.
      const Token& last = toks_[pos_ - 1];
      throw ParseError(Kind::Parse, "expected " + what + ", got " + got, last.line,
                       last.col + static_cast<int>(last.text.size()), std::move(expected));
    }
    throw ParseError(Kind::Parse, "expected " + what + ", got " + got, t.line, t.col,
                     std::move(expected));
  }

  [[noreturn]] void semantic(const Token& t, const std::string& msg) const {
    throw ParseError(Kind::Semantic, msg, t.line, t.col);
  }

  const Token& expect_word(const std::string& what) {
    const Token& t = peek();
    if (!on_line() || t.kind != TokenKind::Identifier || t.text.front() == '$') {
      syntax(t, what, {TokenKind::Identifier});
    }
    return take();
  }

  const Token& expect_punct(std::string_view p) {
    const Token& t = peek();
    if (!on_line() || t.kind != TokenKind::Punctuation || t.text != p) {
      syntax(t, "'" + std::string(p) + "'", {TokenKind::Punctuation});
    }
    return take();
  }

  bool next_is_keyword(std::string_view k) const {
    return on_line() && peek().kind == TokenKind::Keyword && peek().text == k;
  }

  void end_statement() {
    if (on_line()) syntax(peek(), "end of statement", {TokenKind::End});
  }

  const Token& internal_label(const std::string& what = "internal label") {
    const Token& t = expect_word(what);
    if (std::find(tree_.internal.begin(), tree_.internal.end(), t.text) == tree_.internal.end()) {
      semantic(t, "undeclared internal label '" + t.text + "'");
    }
    return t;
  }

  const Token& external_label(const std::string& what = "external label") {
    const Token& t = expect_word(what);
    if (std::find(tree_.external.begin(), tree_.external.end(), t.text) == tree_.external.end()) {
      semantic(t, "undeclared external label '" + t.text + "'");
    }
    return t;
  }

  void statement() {
    const Token& kw = peek();
    line_ = kw.line;
    if (kw.kind != TokenKind::Keyword || kw.text == "bin") {
      syntax(kw, "statement keyword", {TokenKind::Keyword});
    }
    take();
    if (kw.text == "internal") {
      declaration(kw, tree_.internal, internal_declared_, "internal label");
    } else if (kw.text == "external") {
      declaration(kw, tree_.external, external_declared_, "external label");
    } else if (kw.text == "statistics") {
      statistics_statement(kw);
    } else if (kw.text == "particle") {
      particle(kw);
    } else if (kw.text == "hbs" || kw.text == "bs") {
      splitter(kw);
    } else if (kw.text == "phase") {
      phase();
    } else if (kw.text == "sorter") {
      sorter(kw);
    } else if (kw.text == "exchange") {
      exchange();
    } else {
      measure();
    }
    end_statement();
  }

  void declaration(const Token& kw, std::vector<std::string>& labels, bool& declared,
                   const std::string& what) {
    if (declared) semantic(kw, "duplicate " + kw.text + " declaration");
    declared = true;
    do {
      const Token& t = expect_word(what);
      if (std::find(labels.begin(), labels.end(), t.text) != labels.end()) {
        semantic(t, "duplicate " + what + " '" + t.text + "'");
      }
      labels.push_back(t.text);
    } while (on_line());
  }

  void statistics_statement(const Token& kw) {
    if (statistics_) semantic(kw, "duplicate statistics declaration");
    const Token& t = expect_word("boson, fermion or distinguishable");
    const auto s = parse_statistics(t.text);
    if (!s) syntax(t, "boson, fermion or distinguishable", {TokenKind::Identifier});
    statistics_ = *s;
  }

  void particle(const Token& kw) {
    if (!statistics_) semantic(kw, "missing statistics declaration before particle");
    const Token& in = internal_label();
    const Token& ex = external_label();
    ModeRef m{in.text, ex.text};
    if (*statistics_ == Statistics::Fermion &&
        std::find(tree_.particles.begin(), tree_.particles.end(), m) != tree_.particles.end()) {
      semantic(kw, "duplicate fermionic input mode (" + m.internal + "," + m.external +
                       ") violates Pauli exclusion");
    }
    tree_.particles.push_back(std::move(m));
  }

  void splitter(const Token& kw) {
    const bool hybrid = kw.text == "hbs";
    const Token& a = external_label("input port");
    const Token& b = external_label("input port");
    if (b.text == a.text) semantic(b, "duplicate port '" + b.text + "'");
    const Token& t = external_label("output port");
    const Token& r = external_label("output port");
    if (r.text == t.text) semantic(r, "duplicate port '" + r.text + "'");
    const auto in = [&](const std::string& p) { return p == a.text || p == b.text; };
    if (in(t.text) != in(r.text)) {
      semantic(in(t.text) ? r : t, "output ports must equal the input ports or avoid them");
    }
    if (hybrid && tree_.internal.size() != 2) {
      semantic(kw, "hbs needs exactly two internal labels");
    }
    tree_.elements.emplace_back(SplitterStmt{hybrid, a.text, b.text, t.text, r.text});
  }

  PhaseValue phase_value() {
    const Token& t = peek();
    if (on_line() && t.kind == TokenKind::Number) {
      take();
      return PhaseValue{t.value, ""};
    }
    if (on_line() && t.kind == TokenKind::Identifier && t.text.front() == '$') {
      take();
      return PhaseValue{0.0, t.text.substr(1)};
    }
    syntax(t, "phase value", {TokenKind::Number, TokenKind::Identifier});
  }

  void phase() {
    PhaseStmt stmt;
    do {
      const Token& port = external_label();
      for (const auto& [p, v] : stmt.shifts) {
        if (p == port.text) semantic(port, "duplicate port '" + port.text + "'");
      }
      stmt.shifts.emplace_back(port.text, phase_value());
    } while (on_line());
    tree_.elements.emplace_back(std::move(stmt));
  }

  void sorter(const Token& kw) {
    SorterStmt stmt;
    if (next_is_keyword("internal")) {
      take();
      stmt.selector = Dof::Internal;
      stmt.input = external_label("input port").text;
    } else if (next_is_keyword("external")) {
      take();
      stmt.selector = Dof::External;
    } else {
      syntax(peek(), "'internal' or 'external'", {TokenKind::Keyword});
    }
    std::vector<std::string> outputs;
    do {
      const Token& from =
          stmt.selector == Dof::Internal ? internal_label() : external_label();
      for (const auto& [f, o] : stmt.routes) {
        if (f == from.text) semantic(from, "label '" + from.text + "' routed twice");
      }
      expect_punct("->");
      const Token& to = external_label("output port");
      if (std::find(outputs.begin(), outputs.end(), to.text) != outputs.end()) {
        semantic(to, "two routes end at '" + to.text + "'");
      }
      outputs.push_back(to.text);
      stmt.routes.emplace_back(from.text, to.text);
    } while (on_line());
    if (stmt.selector == Dof::Internal && stmt.routes.size() != tree_.internal.size()) {
      semantic(kw, "internal sorter must route every internal label");
    }
    tree_.elements.emplace_back(std::move(stmt));
  }

  void exchange() {
    ExchangeStmt stmt;
    do {
      const Token& from = external_label();
      expect_punct("->");
      const Token& to = external_label();
      for (const auto& [f, t] : stmt.routes) {
        if (f == from.text) semantic(from, "port '" + from.text + "' rewired twice");
        if (t == to.text) semantic(to, "two wires end at '" + to.text + "'");
      }
      stmt.routes.emplace_back(from.text, to.text);
    } while (on_line());
    tree_.elements.emplace_back(std::move(stmt));
  }

  void measure() {
    MeasureStmt stmt;
    const Token& party = expect_word("party A or B");
    if (party.text != "A" && party.text != "B") {
      syntax(party, "party A or B", {TokenKind::Identifier});
    }
    stmt.party = party.text == "A" ? Party::A : Party::B;
    for (const auto& m : tree_.measurements) {
      if (m.party == stmt.party) semantic(party, "party " + party.text + " measured twice");
    }
    if (next_is_keyword("internal")) {
      stmt.kind = Dof::Internal;
    } else if (!next_is_keyword("external")) {
      syntax(peek(), "'internal' or 'external'", {TokenKind::Keyword});
    }
    take();
    do {
      if (!next_is_keyword("bin")) syntax(peek(), "'bin'", {TokenKind::Keyword});
      take();
      BinSpec bin;
      const Token& label = expect_word("bin label");
      for (const auto& b : stmt.bins) {
        if (b.label == label.text) semantic(label, "duplicate bin '" + label.text + "'");
      }
      bin.label = label.text;
      expect_punct("=");
      do {
        const Token& in = internal_label();
        expect_punct(":");
        const Token& ex = external_label();
        ModeRef m{in.text, ex.text};
        if (std::find(measured_.begin(), measured_.end(), m) != measured_.end()) {
          semantic(in, "overlapping measurement bins at (" + m.internal + "," + m.external + ")");
        }
        measured_.push_back(m);
        bin.modes.push_back(std::move(m));
      } while (on_line() && !next_is_keyword("bin"));
      stmt.bins.push_back(std::move(bin));
    } while (on_line());
    tree_.measurements.push_back(std::move(stmt));
  }

  std::span<const Token> toks_;
  std::size_t pos_ = 0;
  int line_ = 0;
  CircuitSpecTree tree_;
  std::optional<Statistics> statistics_;
  bool internal_declared_ = false;
  bool external_declared_ = false;
  std::vector<ModeRef> measured_;
};

}  // namespace

CircuitSpecTree parse(std::span<const Token> tokens) { return Parser(tokens).run(); }

CircuitSpecTree parse_source(std::string_view source) {
  const auto tokens = tokenize(source);
  return parse(tokens);
}

std::set<std::string> parameters(const CircuitSpecTree& tree) {
  std::set<std::string> out;
  for (const auto& e : tree.elements) {
    if (const auto* p = std::get_if<PhaseStmt>(&e)) {
      for (const auto& [port, v] : p->shifts) {
        if (!v.parameter.empty()) out.insert(v.parameter);
      }
    }
  }
  return out;
}

}  // namespace hhes::cdl
