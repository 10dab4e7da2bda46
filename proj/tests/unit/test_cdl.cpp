#include <gtest/gtest.h>

#include <cstring>
#include <numbers>

#include "hhes/cdl.hpp"
#include "hhes/error.hpp"
#include "mutation.hpp"
#include "oracle.hpp"

using namespace hhes;
using namespace hhes::cdl;
namespace ht = hhes::testing;

namespace {

constexpr const char* kMinimal =
    "internal dn up\n"
    "external L R\n"
    "statistics fermion\n"
    "particle dn L\n";

ParseError parse_error(const std::string& src) {
  try {
    (void)parse_source(src);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "source parsed:\n" << src;
  return ParseError(ParseError::Kind::Parse, "", 0, 0);
}

CircuitSpecTree bundled(const std::string& name) {
  return parse_source(read_file(ht::bundled_path(name)));
}

}  // namespace

TEST(Tokenize, PhaseStatement) {
  const auto t = tokenize("phase D 0.5");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].kind, TokenKind::Keyword);
  EXPECT_EQ(t[1].kind, TokenKind::Identifier);
  EXPECT_EQ(t[2].kind, TokenKind::Number);
  EXPECT_EQ(t[2].value, 0.5);
  EXPECT_EQ(t[3].kind, TokenKind::End);
  EXPECT_EQ(t[2].col, 9);
}

TEST(Tokenize, CommentOnlyGivesEnd) {
  const auto t = tokenize("# comment\n");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].kind, TokenKind::End);
}

TEST(Tokenize, PiExpressions) {
  EXPECT_EQ(tokenize("pi/4")[0].value, std::numbers::pi / 4);
  EXPECT_EQ(tokenize("-3*pi/4")[0].value, -(3 * std::numbers::pi / 4));
  EXPECT_EQ(tokenize("2*pi")[0].value, 2 * std::numbers::pi);
  EXPECT_EQ(tokenize("1e-3")[0].value, 1e-3);
}

TEST(Tokenize, PunctuationAndParameters) {
  const auto t = tokenize("R -> D $phiD dn:L =");
  EXPECT_EQ(t[1].text, "->");
  EXPECT_EQ(t[3].text, "$phiD");
  EXPECT_EQ(t[3].kind, TokenKind::Identifier);
  EXPECT_EQ(t[5].text, ":");
  EXPECT_EQ(t[7].text, "=");
}

TEST(Tokenize, LexErrorsCarryPosition) {
  try {
    (void)tokenize("phase D 0.5\nhbs L @ R D");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::Lex);
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.col(), 7);
  }
  EXPECT_THROW(tokenize("1/0"), ParseError);
  EXPECT_THROW(tokenize("2pi"), ParseError);
  EXPECT_THROW(tokenize("$ x"), ParseError);
}

TEST(Parse, BundledLiFermionCounts) {
  const auto t = bundled("li_fermion");
  EXPECT_EQ(t.particles.size(), 2u);
  EXPECT_EQ(t.elements.size(), 6u);
  EXPECT_EQ(t.measurements.size(), 2u);
  EXPECT_EQ(t.statistics, Statistics::Fermion);
  EXPECT_EQ(parameters(t), (std::set<std::string>{"phiD", "phiL", "phiR", "phiU"}));
}

TEST(Parse, MissingStatistics) {
  const auto e = parse_error("internal dn\nexternal L\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);
  EXPECT_NE(e.message().find("missing statistics declaration"), std::string::npos);
  EXPECT_EQ(parse_error("").message(), "missing statistics declaration");
}

TEST(Parse, MissingParticle) {
  EXPECT_EQ(parse_error("internal dn\nexternal L\nstatistics boson\n").message(),
            "missing particle declaration");
}

TEST(Parse, PauliExclusion) {
  const auto e = parse_error(std::string(kMinimal) + "particle dn L\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);
  EXPECT_NE(e.message().find("Pauli exclusion"), std::string::npos);
  EXPECT_EQ(e.line(), 5);
  EXPECT_EQ(e.col(), 1);
  // Bosons may share a mode.
  EXPECT_NO_THROW(parse_source("internal dn\nexternal L\nstatistics boson\nparticle dn L\nparticle dn L\n"));
}

TEST(Parse, UndeclaredLabel) {
  const auto e = parse_error(std::string(kMinimal) + "phase Q 0.1\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);
  EXPECT_EQ(e.line(), 5);
  EXPECT_EQ(e.col(), 7);
}

TEST(Parse, OverlappingBins) {
  const auto e = parse_error(std::string(kMinimal) +
                             "measure A external bin L = dn:L up:L\n"
                             "measure B external bin R = dn:R up:L\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);
  EXPECT_EQ(e.line(), 6);
  EXPECT_EQ(e.col(), 33);
}

TEST(Parse, ElementArityAndPorts) {
  EXPECT_EQ(parse_error(std::string(kMinimal) + "bs L R L\n").kind(), ParseError::Kind::Parse);
  EXPECT_EQ(parse_error(std::string(kMinimal) + "bs L R L R R\n").kind(), ParseError::Kind::Parse);
  EXPECT_EQ(parse_error(std::string(kMinimal) + "bs L L L R\n").kind(), ParseError::Kind::Semantic);
  EXPECT_EQ(parse_error(std::string(kMinimal) + "sorter internal L dn -> R\n").kind(),
            ParseError::Kind::Semantic);
  EXPECT_EQ(parse_error(std::string(kMinimal) + "exchange L -> R L -> R\n").kind(),
            ParseError::Kind::Semantic);
}

TEST(Parse, HbsNeedsTwoInternalLabels) {
  const auto e = parse_error("internal a b c\nexternal L R\nstatistics boson\nparticle a L\nhbs L R L R\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);
  EXPECT_EQ(e.line(), 5);
}

TEST(Parse, StatementsEndAtLineEnd) {
  const auto e = parse_error(std::string(kMinimal) + "bs L R\nL R\n");
  EXPECT_EQ(e.line(), 5);
  EXPECT_EQ(e.col(), 7);
  EXPECT_EQ(e.kind(), ParseError::Kind::Parse);
}

TEST(Parse, ErrorReportsExpectedKinds) {
  const auto e = parse_error(std::string(kMinimal) + "phase L R\n");
  EXPECT_EQ(e.expected(), (std::vector<TokenKind>{TokenKind::Number, TokenKind::Identifier}));
}

TEST(PrettyPrint, RoundTripsBundledSources) {
  for (const auto& name : ht::bundled_sources()) {
    const auto t = bundled(name);
    EXPECT_EQ(parse_source(pretty_print(t)), t) << name;
  }
}

TEST(PrettyPrint, NumbersReparseBitIdentical) {
  hhes::testing::Gen gen(31);
  for (int i = 0; i < 200; ++i) {
    const double v = gen.uniform(-100, 100) * std::pow(10.0, gen.uniform(-8, 8));
    auto t = parse_source(std::string(kMinimal) + "phase L 1\n");
    std::get<PhaseStmt>(t.elements[0]).shifts[0].second.constant = v;
    const auto back = parse_source(pretty_print(t));
    const double w = std::get<PhaseStmt>(back.elements[0]).shifts[0].second.constant;
    EXPECT_EQ(std::memcmp(&v, &w, sizeof v), 0);
  }
}

TEST(PrettyPrint, CommentsAreDropped) {
  const std::string plain = std::string(kMinimal) + "phase L pi\n";
  const std::string commented = "# header\n" + std::string(kMinimal) + "phase L pi # half turn\n";
  EXPECT_EQ(pretty_print(parse_source(plain)), pretty_print(parse_source(commented)));
}

TEST(Compile, LiFermionMatchesHardCodedCircuit) {
  const auto factory = make_factory(bundled("li_fermion"), "li");
  hhes::testing::Gen gen(32);
  for (int i = 0; i < 20; ++i) {
    const auto s = gen.settings();
    EXPECT_LT(ht::state_distance(factory(s).final_state, li_circuit(Statistics::Fermion, s).final_state), 1e-12);
  }
}

TEST(Compile, OtherLiSourcesMatch) {
  const auto s = PhaseSettings{0.4, -1.2, 0.9, 2.2};
  for (auto [name, st] : {std::pair{"li_boson", Statistics::Boson},
                          std::pair{"li_distinguishable", Statistics::Distinguishable}}) {
    const auto run = make_factory(bundled(name), name)(s);
    EXPECT_LT(ht::state_distance(run.final_state, li_circuit(st, s).final_state), 1e-12) << name;
  }
}

TEST(Compile, SwapMatchesHardCodedCircuit) {
  const auto factory = make_factory(bundled("swap"), "swap");
  hhes::testing::Gen gen(33);
  for (int i = 0; i < 20; ++i) {
    const auto s = gen.settings();
    EXPECT_LT(ht::state_distance(factory(s).final_state, swap_circuit(s).final_state), 1e-12);
  }
}

TEST(Compile, PartitionsMatchNamedTables) {
  const auto c = compile(bundled("swap"), {{"phiL", 0}, {"phiD", 0}, {"phiR", 0}, {"phiU", 0}});
  ASSERT_EQ(c.partitions.size(), 2u);
  const auto space = swap_space();
  EXPECT_EQ(c.partitions[0], party_partition(space, Party::A, Dof::Internal));
  EXPECT_EQ(c.partitions[1], party_partition(space, Party::B, Dof::External));
}

TEST(Compile, LiFermionFixedSettingsReachTsirelson) {
  const auto tree = bundled("li_fermion");
  const auto c = compile(tree, {{"phiL", 0}, {"phiD", 0}, {"phiR", 0}, {"phiU", 0}});
  const auto runner = make_runner(make_factory(tree, "li"), c.partitions[0], c.partitions[1]);
  const double pi = std::numbers::pi;
  EXPECT_NEAR(chsh_value(runner, {0, pi, pi / 4, -pi / 4}), 2 * std::sqrt(2.0), 1e-9);
}

TEST(Compile, SwapTableFollowsAggregatePhase) {
  const auto tree = bundled("swap");
  const auto c = compile(tree, {{"phiL", 0}, {"phiD", 0}, {"phiR", 0}, {"phiU", 0}});
  const auto factory = make_factory(tree, "swap");
  hhes::testing::Gen gen(34);
  for (int i = 0; i < 20; ++i) {
    const auto s = gen.settings();
    const auto t = coincidence_table(factory(s), c.partitions[0], c.partitions[1]);
    const auto ref = swap_reference_table(s);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(t.flat()[k], ref.flat()[k], 1e-9);
  }
}

TEST(Compile, UnboundParameterThrows) {
  EXPECT_THROW(compile(bundled("li_fermion")), Error);
}

TEST(Compile, EmptyElementListLeavesStateUnchanged) {
  const auto c = compile(parse_source(kMinimal));
  EXPECT_TRUE(c.stages.empty());
  EXPECT_EQ(ht::state_distance(c.run(), c.initial), 0.0);
}

TEST(Compile, CascadeRoutesBitsToDetectors) {
  for (auto [name, n] : {std::pair{"cascade2", 2}, std::pair{"cascade3", 3}}) {
    auto tree = bundled(name);
    // Input ports are the first 2^(n-1) externals; their names spell the path bits.
    for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
      const std::size_t port = code >> 1;
      tree.particles = {ModeRef{code & 1 ? "up" : "dn", tree.external[port]}};
      const auto c = compile(tree);
      const auto out = c.run();
      ASSERT_EQ(out.size(), 1u);
      const auto& mode = out.terms().begin()->first.entries().front().mode;
      EXPECT_EQ(mode.external.name, "D" + std::to_string(code + 1)) << name << " code " << code;
    }
  }
}

TEST(Mutation, ErrorsLandOnTheMutatedToken) {
  for (const auto& name : ht::bundled_sources()) {
    const auto src = read_file(ht::bundled_path(name));
    const auto toks = tokenize(src);
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
      const auto m = ht::mutate(src, toks[i]);
      EXPECT_EQ(ht::error_position(m.source), (std::pair{m.line, m.col}))
          << name << ": token '" << m.original << "' at " << m.line << ":" << m.col;
    }
  }
}

TEST(ReadFile, MissingFileThrows) {
  EXPECT_THROW(read_file("/nonexistent/x.cdl"), std::runtime_error);
}
