#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hhes/circuits.hpp"
#include "hhes/fock.hpp"

namespace hhes::testing {

/// Deterministic generator for property tests. Values come from the raw
/// engine output, so every platform sees the same cases.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double phase() { return uniform(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool coin() { return (engine_() >> 63) != 0; }
  std::complex<double> complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
  PhaseSettings settings() { return {phase(), phase(), phase(), phase()}; }

 private:
  std::mt19937_64 engine_;
};

/// Hand expansion of the two-factor final state
///   1/4 [e^{i pR}(m1 + i m2) + i e^{i pD}(m3 + i m4)]
///       [e^{i pL}(m4 + i m3) + i e^{i pU}(m2 + i m1)] |0>
/// with modes given as (internal, external) names. Fermion signs come from
/// the mode order (external position in L D R U, then internal position).
/// Keys are the ordered mode pair; values are raw operator coefficients.
struct OracleMode {
  std::string internal;
  std::string external;
};

inline std::map<std::pair<int, int>, std::complex<double>> two_factor_expansion(
    const std::vector<std::string>& internal_order, const OracleMode& m1, const OracleMode& m2,
    const OracleMode& m3, const OracleMode& m4, bool fermion, const PhaseSettings& s) {
  const std::vector<std::string> ext{"L", "D", "R", "U"};
  auto key = [&](const OracleMode& m) {
    int e = 0, i = 0;
    while (ext[static_cast<std::size_t>(e)] != m.external) ++e;
    while (internal_order[static_cast<std::size_t>(i)] != m.internal) ++i;
    return 2 * e + i;
  };
  using C = std::complex<double>;
  const C I{0.0, 1.0};
  auto ph = [](double p) { return std::polar(1.0, p); };
  const std::vector<std::pair<int, C>> f1{{key(m1), ph(s.phi_R)},
                                          {key(m2), I * ph(s.phi_R)},
                                          {key(m3), I * ph(s.phi_D)},
                                          {key(m4), I * I * ph(s.phi_D)}};
  const std::vector<std::pair<int, C>> f2{{key(m4), ph(s.phi_L)},
                                          {key(m3), I * ph(s.phi_L)},
                                          {key(m2), I * ph(s.phi_U)},
                                          {key(m1), I * I * ph(s.phi_U)}};
  std::map<std::pair<int, int>, C> out;
  for (const auto& [a, ca] : f1) {
    for (const auto& [b, cb] : f2) {
      C c = 0.25 * ca * cb;
      if (fermion) {
        if (a == b) continue;
        if (a > b) c = -c;
      }
      out[{std::min(a, b), std::max(a, b)}] += c;
    }
  }
  return out;
}

/// Converts an oracle key back to a mode of `space` (identical particles).
inline Mode oracle_mode(const ModeSpace& space, int key) {
  const std::vector<std::string> ext{"L", "D", "R", "U"};
  return space.mode(space.internal[static_cast<std::size_t>(key % 2)].name,
                    ext[static_cast<std::size_t>(key / 2)]);
}

/// max |simulated - oracle| over the union of their terms.
inline double oracle_deviation(const StateVector& sim, const ModeSpace& space,
                               const std::map<std::pair<int, int>, std::complex<double>>& oracle) {
  double worst = 0.0;
  std::map<Monomial, std::complex<double>> expected;
  for (const auto& [k, c] : oracle) {
    const Mode a = oracle_mode(space, k.first);
    const Mode b = oracle_mode(space, k.second);
    const Monomial m = k.first == k.second ? Monomial({Occupation{a, 2}})
                                           : Monomial({Occupation{a, 1}, Occupation{b, 1}});
    expected[m] += c;
  }
  for (const auto& [m, c] : expected) worst = std::max(worst, std::abs(sim.coefficient(m) - c));
  for (const auto& [m, c] : sim.terms()) {
    if (!expected.contains(m)) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

inline double li_fermion_oracle_deviation(const PhaseSettings& s) {
  const auto run = li_circuit(Statistics::Fermion, s);
  const auto oracle = two_factor_expansion({"dn", "up"}, {"dn", "R"}, {"up", "U"}, {"up", "D"},
                                           {"dn", "L"}, true, s);
  return oracle_deviation(run.final_state, run.space, oracle);
}

inline double swap_oracle_deviation(const PhaseSettings& s) {
  const auto run = swap_circuit(s);
  const auto oracle = two_factor_expansion({"H", "V"}, {"H", "R"}, {"H", "U"}, {"V", "D"},
                                           {"H", "L"}, false, s);
  return oracle_deviation(run.final_state, run.space, oracle);
}

/// max |a - b| over the union of stored terms.
inline double state_distance(const StateVector& a, const StateVector& b) {
  double worst = 0.0;
  for (const auto& [m, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coefficient(m)));
  for (const auto& [m, c] : b.terms()) worst = std::max(worst, std::abs(c - a.coefficient(m)));
  return worst;
}

}  // namespace hhes::testing
