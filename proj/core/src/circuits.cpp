#include "hhes/circuits.hpp"

#include <array>
#include <utility>

#include "hhes/optics.hpp"

namespace hhes {

namespace {

std::vector<ModeTransform> two_stage_interferometer(const ModeSpace& space,
                                                    const PhaseSettings& settings,
                                                    bool bob_hybrid) {
  const auto L = space.external.at("L");
  const auto D = space.external.at("D");
  const auto R = space.external.at("R");
  const auto U = space.external.at("U");

  auto bob_splitter = [&](const ExternalLabel& a, const ExternalLabel& b) {
    return bob_hybrid ? hybrid_beam_splitter(space, a, b, a, b) : beam_splitter(space, a, b, a, b);
  };

  const std::array<std::pair<ExternalLabel, double>, 2> alice{
      std::pair{D, settings.phi_D}, std::pair{L, settings.phi_L}};
  const std::array<std::pair<ExternalLabel, double>, 2> bob{
      std::pair{R, settings.phi_R}, std::pair{U, settings.phi_U}};

  std::vector<ModeTransform> stages;
  stages.push_back(hybrid_beam_splitter(space, R, D, R, D));
  stages.push_back(bob_splitter(L, U));
  stages.push_back(phase_shifters(space, alice));
  stages.push_back(phase_shifters(space, bob));
  stages.push_back(hybrid_beam_splitter(space, D, L, D, L));
  stages.push_back(bob_splitter(R, U));
  return stages;
}

}  // namespace

ModeSpace li_space(Statistics statistics) {
  ModeSpace space{InternalSet({"dn", "up"}), ExternalSet({"L", "D", "R", "U"}), {SpeciesTag{}}};
  if (statistics == Statistics::Distinguishable) space.species = {SpeciesTag{1}, SpeciesTag{2}};
  return space;
}

ModeSpace swap_space() {
  return ModeSpace{InternalSet({"H", "V"}), ExternalSet({"L", "D", "R", "U"}), {SpeciesTag{}}};
}

StateVector li_initial_state(const ModeSpace& space, Statistics statistics) {
  const bool tagged = statistics == Statistics::Distinguishable;
  const auto first = space.internal[0].name;
  const std::array<Mode, 2> ops{
      space.mode(first, "R", tagged ? SpeciesTag{1} : SpeciesTag{}),
      space.mode(first, "L", tagged ? SpeciesTag{2} : SpeciesTag{})};
  return make_state(statistics, ops);
}

std::vector<ModeTransform> li_stages(const ModeSpace& space, const PhaseSettings& settings) {
  return two_stage_interferometer(space, settings, true);
}

std::vector<ModeTransform> swap_stages(const ModeSpace& space, const PhaseSettings& settings) {
  return two_stage_interferometer(space, settings, false);
}

CircuitRun li_circuit(Statistics statistics, const PhaseSettings& settings) {
  auto space = li_space(statistics);
  auto state = propagate(li_initial_state(space, statistics), li_stages(space, settings));
  return CircuitRun{"li", std::move(space), std::move(state), settings, statistics};
}

CircuitRun swap_circuit(const PhaseSettings& settings) {
  auto space = swap_space();
  auto state =
      propagate(li_initial_state(space, Statistics::Boson), swap_stages(space, settings));
  return CircuitRun{"swap", std::move(space), std::move(state), settings, Statistics::Boson};
}

}  // namespace hhes
