#include <gtest/gtest.h>

#include "mutation.hpp"
#include "properties.hpp"

namespace p = hhes::testing::props;

namespace {
constexpr int kCases = 1000;
}

TEST(Property, CanonicalizationIsIdempotent) { EXPECT_EQ(p::canonicalization_idempotent(101, kCases), 0); }
TEST(Property, FermionicAntisymmetry) { EXPECT_EQ(p::fermionic_antisymmetry(102, kCases), 0); }
TEST(Property, PauliExclusion) { EXPECT_EQ(p::pauli_exclusion(103, kCases), 0); }
TEST(Property, BosonicPermutationSymmetry) { EXPECT_EQ(p::bosonic_permutation_symmetry(104, kCases), 0); }
TEST(Property, SubstitutionIsLinear) { EXPECT_EQ(p::substitution_linear(105, kCases), 0); }
TEST(Property, UnitaryCircuitsPreserveNorm) { EXPECT_EQ(p::unitary_norm_preservation(106, kCases), 0); }
TEST(Property, OutcomeProbabilitiesAreComplete) { EXPECT_EQ(p::outcome_completeness(107, kCases), 0); }
TEST(Property, PrettyPrintRoundTrips) { EXPECT_EQ(p::pretty_print_round_trip(109, kCases), 0); }

TEST(Property, LiTablesStayInRange) {
  hhes::testing::Gen g(108);
  for (int i = 0; i < kCases; ++i) {
    const auto st = p::any_statistics(g);
    const auto t = hhes::coincidence_table(hhes::li_circuit(st, g.settings()),
                                           hhes::kAllTableKinds[g.below(4)]);
    EXPECT_NEAR(t.total(), 0.5, 1e-9);
    for (double v : t.flat()) {
      EXPECT_GE(v, -1e-12);
      EXPECT_LE(v, 0.25 + 1e-12);
    }
  }
}

TEST(Property, MutatedTokensReportTheirPosition) {
  // Covered exhaustively over bundled sources in the DSL tests; here on
  // generated sources.
  hhes::testing::Gen g(110);
  int checked = 0;
  while (checked < kCases) {
    const auto src = hhes::cdl::pretty_print(p::random_tree(g));
    const auto toks = hhes::cdl::tokenize(src);
    const auto& tok = toks[g.below(toks.size() - 1)];
    const auto m = hhes::testing::mutate(src, tok);
    EXPECT_EQ(hhes::testing::error_position(m.source), (std::pair{m.line, m.col})) << m.source;
    ++checked;
  }
}
