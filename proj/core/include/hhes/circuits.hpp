#pragma once

#include <string>
#include <vector>

#include "hhes/fock.hpp"
#include "hhes/mode.hpp"
#include "hhes/transform.hpp"

namespace hhes {

/// Path-dependent phases. Alice owns L and D, Bob owns R and U.
struct PhaseSettings {
  double phi_L = 0.0;
  double phi_D = 0.0;
  double phi_R = 0.0;
  double phi_U = 0.0;

  /// (phi_D - phi_L - phi_R + phi_U) / 2, the argument of the coincidence tables.
  double aggregate() const noexcept { return (phi_D - phi_L - phi_R + phi_U) / 2.0; }
  double alice() const noexcept { return phi_D - phi_L; }
  double bob() const noexcept { return phi_U - phi_R; }

  friend bool operator==(const PhaseSettings&, const PhaseSettings&) = default;
};

struct CircuitRun {
  std::string name;
  ModeSpace space;
  StateVector final_state;
  PhaseSettings settings;
  Statistics statistics;
};

/// {dn, up} x {L, D, R, U}; species {0} for identical particles, {1, 2}
/// for distinguishable ones.
ModeSpace li_space(Statistics statistics);
/// {H, V} x {L, D, R, U}, identical bosons.
ModeSpace swap_space();

/// a(dn,R) a(dn,L) |0>, with species 1 at R and 2 at L when distinguishable.
StateVector li_initial_state(const ModeSpace& space, Statistics statistics);

/// Element sequence of the hyper-hybrid circuit: one HBS per source
/// (R->{R,D}, L->{L,U}), whose reflected arm already carries the exchanged
/// particle to the other party; Alice's then Bob's phase shifts; and the
/// mixing HBSs D/L on Alice's side and R/U on Bob's side.
std::vector<ModeTransform> li_stages(const ModeSpace& space, const PhaseSettings& settings);

/// As li_stages, with Bob's two HBSs replaced by plain beam splitters.
std::vector<ModeTransform> swap_stages(const ModeSpace& space, const PhaseSettings& settings);

CircuitRun li_circuit(Statistics statistics, const PhaseSettings& settings);

/// b(H,R) b(H,L) |0> through swap_stages.
CircuitRun swap_circuit(const PhaseSettings& settings);

}  // namespace hhes
