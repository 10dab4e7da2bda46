#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hhes/analysis.hpp"
#include "hhes/circuits.hpp"
#include "hhes/fock.hpp"
#include "hhes/optics.hpp"

// Circuit description language. One statement per line, `#` starts a comment:
//
//   internal <label>+
//   external <label>+
//   statistics boson|fermion|distinguishable
//   particle <internal> <external>
//   hbs|bs <in_a> <in_b> <out_t> <out_r>
//   phase (<external> <value>)+            value: number or $param
//   sorter internal <port> (<internal> -> <external>)+
//   sorter external (<external> -> <external>)+
//   exchange (<external> -> <external>)+
//   measure A|B internal|external (bin <label> = (<internal>:<external>)+)+
//
// Numbers are decimal literals or constant products/quotients with `pi`,
// optionally negated: 0.5, pi/4, -3*pi/4.
namespace hhes::cdl {

enum class TokenKind { Keyword, Identifier, Number, Punctuation, End };

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::End;
  /// Raw lexeme; empty for End.
  std::string text;
  /// Folded value of a Number token.
  double value = 0.0;
  /// 1-based; columns count bytes.
  int line = 1;
  int col = 1;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Lex, Parse, Semantic };

  ParseError(Kind kind, std::string message, int line, int col,
             std::vector<TokenKind> expected = {});

  Kind kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }
  const std::vector<TokenKind>& expected() const noexcept { return expected_; }

 private:
  Kind kind_;
  std::string message_;
  int line_;
  int col_;
  std::vector<TokenKind> expected_;
};

std::string_view to_string(ParseError::Kind kind);

/// Drops whitespace and comments and appends the End token.
/// Throws ParseError(Lex) on an illegal character or malformed number.
std::vector<Token> tokenize(std::string_view source);

struct ModeRef {
  std::string internal;
  std::string external;
  friend bool operator==(const ModeRef&, const ModeRef&) = default;
};

/// A constant or a `$name` parameter bound at compile time.
struct PhaseValue {
  double constant = 0.0;
  /// Parameter name without the `$`; empty for constants.
  std::string parameter;
  friend bool operator==(const PhaseValue&, const PhaseValue&) = default;
};

struct SplitterStmt {
  bool hybrid = true;
  std::string in_a, in_b, out_t, out_r;
  friend bool operator==(const SplitterStmt&, const SplitterStmt&) = default;
};

struct PhaseStmt {
  std::vector<std::pair<std::string, PhaseValue>> shifts;
  friend bool operator==(const PhaseStmt&, const PhaseStmt&) = default;
};

struct SorterStmt {
  Dof selector = Dof::External;
  /// Input port of an internal sorter; empty for external sorters.
  std::string input;
  std::vector<std::pair<std::string, std::string>> routes;
  friend bool operator==(const SorterStmt&, const SorterStmt&) = default;
};

struct ExchangeStmt {
  std::vector<std::pair<std::string, std::string>> routes;
  friend bool operator==(const ExchangeStmt&, const ExchangeStmt&) = default;
};

using Element = std::variant<SplitterStmt, PhaseStmt, SorterStmt, ExchangeStmt>;

struct BinSpec {
  std::string label;
  std::vector<ModeRef> modes;
  friend bool operator==(const BinSpec&, const BinSpec&) = default;
};

struct MeasureStmt {
  Party party = Party::A;
  Dof kind = Dof::External;
  std::vector<BinSpec> bins;
  friend bool operator==(const MeasureStmt&, const MeasureStmt&) = default;
};

/// Validated circuit. Holds no source positions, so structural equality
/// ignores layout and comments.
struct CircuitSpecTree {
  std::vector<std::string> internal;
  std::vector<std::string> external;
  Statistics statistics = Statistics::Boson;
  /// Creation operators left to right.
  std::vector<ModeRef> particles;
  std::vector<Element> elements;
  std::vector<MeasureStmt> measurements;
  friend bool operator==(const CircuitSpecTree&, const CircuitSpecTree&) = default;
};

/// Parses and runs every semantic check. Throws ParseError.
CircuitSpecTree parse(std::span<const Token> tokens);
CircuitSpecTree parse_source(std::string_view source);

/// Canonical text; numbers use 17 significant digits. Comments are lost.
std::string pretty_print(const CircuitSpecTree& tree);

/// Every `$name` referenced by phase statements, without the `$`.
std::set<std::string> parameters(const CircuitSpecTree& tree);

using ParameterMap = std::map<std::string, double, std::less<>>;

struct CompiledCircuit {
  ModeSpace space;
  Statistics statistics = Statistics::Boson;
  StateVector initial{Statistics::Boson};
  std::vector<ModeTransform> stages;
  /// One per measure statement, in source order.
  std::vector<MeasurementPartition> partitions;

  StateVector run() const { return propagate(initial, stages); }
};

/// Throws Error(InvalidArgument) for an unbound parameter; other core
/// errors propagate.
CompiledCircuit compile(const CircuitSpecTree& tree, const ParameterMap& parameters = {});

/// Circuit factory binding phiL, phiD, phiR, phiU from the phase settings,
/// on top of `base`.
CircuitFactory make_factory(CircuitSpecTree tree, std::string name, ParameterMap base = {});

/// Reads a file as text. Throws std::runtime_error when it cannot be read.
std::string read_file(const std::filesystem::path& path);

}  // namespace hhes::cdl
