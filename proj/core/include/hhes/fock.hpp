#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hhes/mode.hpp"
#include "hhes/transform.hpp"

namespace hhes {

using Complex = std::complex<double>;

inline constexpr double kDefaultPruneTolerance = 1e-12;

struct Occupation {
  Mode mode;
  int count = 1;

  friend bool operator==(const Occupation&, const Occupation&) = default;
  friend auto operator<=>(const Occupation& a, const Occupation& b) {
    if (auto c = a.mode <=> b.mode; c != 0) return c;
    return a.count <=> b.count;
  }
};

/// Canonically ordered product of creation operators, modes strictly
/// increasing. The empty monomial is the vacuum.
class Monomial {
 public:
  Monomial() = default;
  /// Validates strict ordering and positive occupations.
  explicit Monomial(std::vector<Occupation> entries);

  const std::vector<Occupation>& entries() const noexcept { return entries_; }
  bool is_vacuum() const noexcept { return entries_.empty(); }
  int particle_count() const noexcept;
  int occupation(const Mode& m) const noexcept;
  /// prod_k n_k!
  double factorial_weight() const noexcept;
  /// Operator list in canonical order, each mode repeated by its occupation.
  std::vector<Mode> operators() const;

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(),
                                                  b.entries_.begin(), b.entries_.end());
  }

 private:
  std::vector<Occupation> entries_;
};

/// Canonical form of an operator product: coefficient * monomial, or Zero
/// (monomial empty-optional) when fermionic exclusion kills the product.
struct CanonicalForm {
  Complex coefficient{1.0, 0.0};
  std::optional<Monomial> monomial;

  bool is_zero() const noexcept { return !monomial.has_value(); }
};

/// Sorts `ops` into canonical order. Fermion: coefficient is the permutation
/// parity and a repeated mode gives Zero. Boson and Distinguishable: +1 with
/// occupations accumulated.
CanonicalForm canonicalize(std::span<const Mode> ops, Statistics statistics);

/// Few-particle state: complex combination of monomials applied to |0>.
/// Coefficients multiply the raw operator products, not normalized kets.
class StateVector {
 public:
  using Terms = std::map<Monomial, Complex>;

  explicit StateVector(Statistics statistics, double prune_tolerance = kDefaultPruneTolerance);

  static StateVector vacuum(Statistics statistics,
                            double prune_tolerance = kDefaultPruneTolerance);

  Statistics statistics() const noexcept { return statistics_; }
  double prune_tolerance() const noexcept { return prune_tolerance_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Stored coefficient of `m` (0 if absent).
  Complex coefficient(const Monomial& m) const;

  /// Accumulates without pruning; call prune() when done.
  void add(const Monomial& m, Complex c);
  StateVector& prune();

  /// Modes appearing in any term, sorted.
  std::vector<Mode> modes() const;
  /// Particle count shared by all terms, nullopt for the zero state or a
  /// mixed-count state.
  std::optional<int> particle_count() const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator*=(Complex s);
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator*(Complex s, StateVector a) { return a *= s; }

 private:
  Statistics statistics_;
  double prune_tolerance_;
  Terms terms_;
};

/// a^dagger(mode) applied on the left of every term.
StateVector apply_creation(const StateVector& state, const Mode& mode);

/// Builds op_1 op_2 ... op_k |0>, ops listed left to right.
StateVector make_state(Statistics statistics, std::span<const Mode> ops);

/// Replaces each a^dagger_m by sum_n T(n,m) a^dagger_n and re-canonicalizes.
/// Throws Error(UnknownMode) if a state mode is missing from the basis.
StateVector substitute(const StateVector& state, const ModeTransform& transform);

/// <outcome|state> against the normalized Fock bra: c * sqrt(prod n_k!).
Complex amplitude(const StateVector& state, const Monomial& outcome);

/// Sum of |amplitude|^2 over all stored monomials.
double norm_squared(const StateVector& state);

/// |amplitude|^2 / norm_squared. A species-blind outcome (all species ids 0)
/// evaluated on a state with tagged species sums over every species
/// assignment of the same detector pattern.
/// Throws Error(ZeroNorm) for the zero state.
double outcome_probability(const StateVector& state, const Monomial& outcome);

/// Species-blind view of a monomial: tags dropped, occupations merged.
Monomial species_blind(const Monomial& m);

}  // namespace hhes
