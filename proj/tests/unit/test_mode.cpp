#include <gtest/gtest.h>

#include "hhes/error.hpp"
#include "hhes/mode.hpp"

using namespace hhes;

TEST(LabelSet, IndexFollowsDeclarationOrder) {
  ExternalSet ext({"L", "D", "R", "U"});
  EXPECT_EQ(ext.at("R").index, 2u);
  EXPECT_EQ(ext[3].name, "U");
  EXPECT_FALSE(ext.find("Q").has_value());
}

TEST(LabelSet, RejectsDuplicatesAndUnknown) {
  try {
    InternalSet({"dn", "dn"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateLabel);
  }
  InternalSet in({"dn", "up"});
  try {
    (void)in.at("left");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownLabel);
  }
}

TEST(Mode, OrderIsSpeciesThenExternalThenInternal) {
  ModeSpace space{InternalSet({"dn", "up"}), ExternalSet({"L", "D", "R", "U"}), {SpeciesTag{}}};
  const Mode up_l = space.mode("up", "L");
  const Mode dn_d = space.mode("dn", "D");
  const Mode dn_l = space.mode("dn", "L");
  EXPECT_LT(dn_l, up_l);
  EXPECT_LT(up_l, dn_d);
  EXPECT_LT(space.mode("up", "U"), space.mode("dn", "L", SpeciesTag{1}));
}

TEST(Mode, ToStringShowsTagOnlyForDistinguishable) {
  ModeSpace space{InternalSet({"dn", "up"}), ExternalSet({"L", "R"}), {SpeciesTag{}}};
  EXPECT_EQ(to_string(space.mode("dn", "R")), "(dn,R)");
  EXPECT_EQ(to_string(space.mode("dn", "R", SpeciesTag{2})), "(dn,R)#2");
  EXPECT_EQ(species_blind(space.mode("dn", "R", SpeciesTag{2})), space.mode("dn", "R"));
}

TEST(ModeSpace, EnumeratesModes) {
  ModeSpace space{InternalSet({"H", "V"}), ExternalSet({"L", "D"}), {SpeciesTag{1}, SpeciesTag{2}}};
  EXPECT_EQ(space.all_modes().size(), 8u);
  EXPECT_EQ(space.modes_at(space.external.at("D")).size(), 4u);
}

TEST(Statistics, ParsesNames) {
  EXPECT_EQ(parse_statistics("fermion"), Statistics::Fermion);
  EXPECT_EQ(parse_statistics("distinguishable"), Statistics::Distinguishable);
  EXPECT_FALSE(parse_statistics("anyon"));
  EXPECT_EQ(to_string(Statistics::Boson), "boson");
}
