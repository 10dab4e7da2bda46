#include "hhes/signaling.hpp"

#include <array>
#include <cmath>
#include <random>

#include "hhes/error.hpp"

namespace hhes {

namespace {

constexpr int kMaxCascadeDofs = 24;

std::array<QubitState, 2> bob_states(Basis basis) {
  if (basis == Basis::Z) return {QubitState::zero(), QubitState::one()};
  return {QubitState::plus(), QubitState::minus()};
}

std::vector<double> clone_distribution_dense(Basis basis, int n) {
  std::vector<double> out(std::size_t{1} << n, 0.0);
  for (const auto& state : bob_states(basis)) {
    const auto p = cascade_probabilities(CloneEnsemble{n, state});
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += 0.5 * p[i];
  }
  return out;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double power(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

void check_count(const SignalProtocol& protocol) {
  const int limit = protocol.variant == SignalVariant::Dofs ? kMaxCascadeDofs : 62;
  if (protocol.count < 1 || protocol.count > limit) {
    throw Error(ErrorCode::InvalidArgument,
                "count must be in 1.." + std::to_string(limit) + ", got " +
                    std::to_string(protocol.count));
  }
}

class BitSource {
 public:
  explicit BitSource(std::uint64_t seed) : engine_(seed) {}

  int bit() { return static_cast<int>(engine_() >> 63); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  int bernoulli(double p) { return uniform() < p ? 1 : 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

QubitState QubitState::zero() { return {Complex{1.0, 0.0}, Complex{0.0, 0.0}}; }
QubitState QubitState::one() { return {Complex{0.0, 0.0}, Complex{1.0, 0.0}}; }
QubitState QubitState::plus() {
  const double h = 1.0 / std::sqrt(2.0);
  return {Complex{h, 0.0}, Complex{h, 0.0}};
}
QubitState QubitState::minus() {
  const double h = 1.0 / std::sqrt(2.0);
  return {Complex{h, 0.0}, Complex{-h, 0.0}};
}

double QubitState::probability(int bit) const {
  const double n = norm_squared();
  if (!(n > 0.0)) throw Error(ErrorCode::ZeroNorm, "qubit state has zero norm");
  return std::norm(bit == 0 ? amp0 : amp1) / n;
}

std::string_view to_string(Basis b) { return b == Basis::Z ? "Z" : "X"; }

std::vector<double> cascade_probabilities(const CloneEnsemble& clones) {
  if (clones.n_dofs < 1 || clones.n_dofs > kMaxCascadeDofs) {
    throw Error(ErrorCode::InvalidArgument,
                "n_dofs must be in 1.." + std::to_string(kMaxCascadeDofs));
  }
  const std::array<double, 2> p{clones.per_dof_state.probability(0),
                                clones.per_dof_state.probability(1)};
  std::vector<double> probs{1.0};
  // Each sorter stage splits every detector path in two; earlier DOFs end
  // up in the more significant bits.
  for (int k = 0; k < clones.n_dofs; ++k) {
    std::vector<double> next(probs.size() * 2);
    for (std::size_t i = 0; i < probs.size(); ++i) {
      next[2 * i] = probs[i] * p[0];
      next[2 * i + 1] = probs[i] * p[1];
    }
    probs = std::move(next);
  }
  return probs;
}

DetectorDistribution sorter_cascade(const CloneEnsemble& clones) {
  DetectorDistribution d;
  const auto probs = cascade_probabilities(clones);
  for (std::size_t i = 0; i < probs.size(); ++i) d.probs[static_cast<int>(i) + 1] = probs[i];
  return d;
}

std::map<std::string, double> clone_distribution(Basis basis, int n) {
  const auto dense = clone_distribution_dense(basis, n);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] == 0.0) continue;
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k) {
      if ((i >> (n - 1 - k)) & 1U) bits[static_cast<std::size_t>(k)] = '1';
    }
    out.emplace(std::move(bits), dense[i]);
  }
  return out;
}

double signaling_decode_exact(const SignalProtocol& protocol) {
  check_count(protocol);
  double success = 0.0;
  if (protocol.variant == SignalVariant::Dofs) {
    const int n = protocol.count;
    const std::size_t all_ones = (std::size_t{1} << n) - 1;
    for (int sent = 0; sent < 2; ++sent) {
      const auto dist = clone_distribution_dense(sent == 0 ? Basis::Z : Basis::X, n);
      for (std::size_t s = 0; s < dist.size(); ++s) {
        const int decoded = (s == 0 || s == all_ones) ? 0 : 1;
        if (decoded == sent) success += 0.5 * dist[s];
      }
    }
    return success;
  }

  // Copies: every copy is read by the two-DOF cascade; Bob says Z only if
  // all M copies land in {D1, D4}.
  const int m = protocol.count;
  for (int sent = 0; sent < 2; ++sent) {
    const auto dist = clone_distribution_dense(sent == 0 ? Basis::Z : Basis::X, 2);
    const double q = dist[0] + dist[3];
    for (int k = 0; k <= m; ++k) {
      const double p = binomial(m, k) * power(q, k) * power(1.0 - q, m - k);
      const int decoded = k == m ? 0 : 1;
      if (decoded == sent) success += 0.5 * p;
    }
  }
  return success;
}

McEstimate signaling_decode_mc(const SignalProtocol& protocol, std::uint64_t trials,
                               std::uint64_t seed) {
  check_count(protocol);
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");

  BitSource rng(seed);
  // P(readout bit = 1) for Bob's state, indexed [sent basis][Alice's outcome].
  std::array<std::array<double, 2>, 2> p1{};
  for (int b = 0; b < 2; ++b) {
    const auto states = bob_states(b == 0 ? Basis::Z : Basis::X);
    for (int o = 0; o < 2; ++o) p1[b][o] = states[o].probability(1);
  }

  auto readout_all_equal = [&](int sent, int bits) {
    const double p = p1[sent][rng.bit()];
    const int first = rng.bernoulli(p);
    bool equal = true;
    for (int k = 1; k < bits; ++k) equal &= rng.bernoulli(p) == first;
    return equal;
  };

  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int sent = rng.bit();
    bool says_z = true;
    if (protocol.variant == SignalVariant::Dofs) {
      says_z = readout_all_equal(sent, protocol.count);
    } else {
      for (int c = 0; c < protocol.count; ++c) says_z &= readout_all_equal(sent, 2);
    }
    if ((says_z ? 0 : 1) == sent) ++successes;
  }
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return McEstimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials, seed};
}

}  // namespace hhes
