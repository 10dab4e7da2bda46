#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hhes/analysis.hpp"
#include "hhes/fock.hpp"

namespace hhes {

/// amp0|0> + amp1|1>, with |0> = down = T and |1> = up = R.
struct QubitState {
  Complex amp0{1.0, 0.0};
  Complex amp1{0.0, 0.0};

  static QubitState zero();
  static QubitState one();
  static QubitState plus();
  static QubitState minus();

  /// Z-measurement probability of `bit`, normalized by the state norm.
  double probability(int bit) const;
  double norm_squared() const { return std::norm(amp0) + std::norm(amp1); }
};

/// n_dofs identical copies of one qubit state, one per DOF of a particle.
struct CloneEnsemble {
  int n_dofs = 1;
  QubitState per_dof_state;
};

enum class Basis { Z, X };

std::string_view to_string(Basis b);

/// Detector d in 1..2^n fires when the DOF outcomes read, DOF 1 as the most
/// significant bit, the binary number d - 1.
DetectorDistribution sorter_cascade(const CloneEnsemble& clones);

/// Same distribution as a dense vector indexed by d - 1.
std::vector<double> cascade_probabilities(const CloneEnsemble& clones);

/// Bob's n-bit Z-readout after Alice measured her half of the singlet in
/// `basis`: each of her two outcomes (probability 1/2) leaves Bob a state
/// that is cloned into every DOF and read out by the sorter cascade.
/// Keys are bit strings, DOF 1 first.
std::map<std::string, double> clone_distribution(Basis basis, int n);

enum class SignalVariant { Dofs, Copies };

struct SignalProtocol {
  SignalVariant variant = SignalVariant::Dofs;
  /// N (DOFs per clone) or M (copies of the two-DOF protocol).
  int count = 2;
};

/// Probability that Bob's decoded bit equals Alice's, Alice's bit uniform.
/// Bob answers "Z" when every readout is all-zeros or all-ones (every copy
/// lands in {D1, D4} for the copies variant), "X" otherwise. Computed by
/// summing over the outcome distributions.
double signaling_decode_exact(const SignalProtocol& protocol);

inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate of the same probability. Deterministic for a fixed
/// seed on every platform: uniforms come straight from the engine's output.
McEstimate signaling_decode_mc(const SignalProtocol& protocol, std::uint64_t trials,
                               std::uint64_t seed);

}  // namespace hhes
