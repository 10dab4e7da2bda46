#include <gtest/gtest.h>

#include <map>
#include <numbers>

#include "hhes/analysis.hpp"
#include "hhes/circuits.hpp"
#include "oracle.hpp"

using namespace hhes;
using hhes::testing::Gen;

TEST(LiCircuit, FermionStateMatchesHandExpansion) {
  Gen gen(11);
  for (int i = 0; i < 50; ++i) EXPECT_LT(hhes::testing::li_fermion_oracle_deviation(gen.settings()), 1e-12);
}

TEST(LiCircuit, HasSixElements) {
  const auto space = li_space(Statistics::Fermion);
  EXPECT_EQ(li_stages(space, {}).size(), 6u);
}

TEST(LiCircuit, DistinguishableUsesTwoSpecies) {
  const auto space = li_space(Statistics::Distinguishable);
  ASSERT_EQ(space.species.size(), 2u);
  const auto run = li_circuit(Statistics::Distinguishable, {});
  for (const auto& [m, c] : run.final_state.terms()) {
    (void)c;
    EXPECT_EQ(m.particle_count(), 2);
  }
}

TEST(LiCircuit, StagesAreUnitary) {
  Gen gen(5);
  const auto space = li_space(Statistics::Boson);
  for (const auto& t : li_stages(space, gen.settings())) EXPECT_TRUE(verify_unitary(t, 1e-12));
}

TEST(SwapCircuit, StateMatchesHandExpansion) {
  Gen gen(12);
  for (int i = 0; i < 50; ++i) EXPECT_LT(hhes::testing::swap_oracle_deviation(gen.settings()), 1e-12);
}

TEST(SwapCircuit, FinalStateIsNormalized) {
  Gen gen(13);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(norm_squared(swap_circuit(gen.settings()).final_state), 1.0, 1e-12);
}

namespace {

using Occ = std::map<Mode, int>;

/// Normalized Fock amplitudes of a bosonic state.
std::map<Occ, Complex> fock_amplitudes(const StateVector& st) {
  std::map<Occ, Complex> out;
  const double n = std::sqrt(norm_squared(st));
  for (const auto& [m, c] : st.terms()) {
    Occ occ;
    for (const auto& e : m.entries()) occ[e.mode] = e.count;
    out[occ] += amplitude(st, m) / n;
  }
  return out;
}

/// <a^dagger_n a_m> for a bosonic state.
Complex one_body(const StateVector& st, const Mode& n, const Mode& m) {
  auto lower = [](const std::map<Occ, Complex>& amps, const Mode& mode) {
    std::map<Occ, Complex> out;
    for (const auto& [key, a] : amps) {
      Occ occ = key;
      const auto it = occ.find(mode);
      if (it == occ.end()) continue;
      const double factor = std::sqrt(static_cast<double>(it->second));
      if (--it->second == 0) occ.erase(it);
      out[occ] += factor * a;
    }
    return out;
  };
  const auto amps = fock_amplitudes(st);
  const auto am = lower(amps, m);
  const auto an = lower(amps, n);
  Complex sum{};
  for (const auto& [occ, a] : am) {
    const auto it = an.find(occ);
    if (it != an.end()) sum += std::conj(it->second) * a;
  }
  return sum;
}

}  // namespace

// Alice's received particle sits in (H,L) or (V,D) with no coherence between
// them, so it carries no hybrid entanglement of its own.
TEST(SwapCircuit, AliceReducedStateHasNoHybridCoherence) {
  Gen gen(14);
  const auto space = swap_space();
  for (int i = 0; i < 20; ++i) {
    const auto run = swap_circuit(gen.settings());
    const auto hl = space.mode("H", "L");
    const auto vd = space.mode("V", "D");
    EXPECT_LT(std::abs(one_body(run.final_state, hl, vd)), 1e-12);
    EXPECT_NEAR(std::abs(one_body(run.final_state, space.mode("V", "L"), space.mode("V", "L"))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(one_body(run.final_state, space.mode("H", "D"), space.mode("H", "D"))), 0.0, 1e-12);
  }
}

TEST(PhaseSettings, DerivedAngles) {
  const PhaseSettings s{0.1, 0.7, 0.2, 0.5};
  EXPECT_DOUBLE_EQ(s.aggregate(), (0.7 - 0.1 - 0.2 + 0.5) / 2);
  EXPECT_DOUBLE_EQ(s.alice(), 0.6);
  EXPECT_DOUBLE_EQ(s.bob(), 0.3);
}
