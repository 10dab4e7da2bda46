#include "hhes/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hhes/error.hpp"

namespace hhes {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

Monomial::Monomial(std::vector<Occupation> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].count < 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "occupation of " + hhes::to_string(entries_[i].mode) + " must be positive");
    }
    if (i > 0 && !(entries_[i - 1].mode < entries_[i].mode)) {
      throw Error(ErrorCode::InvalidArgument, "monomial modes must be strictly increasing");
    }
  }
}

int Monomial::particle_count() const noexcept {
  int n = 0;
  for (const auto& e : entries_) n += e.count;
  return n;
}

int Monomial::occupation(const Mode& m) const noexcept {
  for (const auto& e : entries_) {
    if (e.mode == m) return e.count;
  }
  return 0;
}

double Monomial::factorial_weight() const noexcept {
  double w = 1.0;
  for (const auto& e : entries_) w *= factorial(e.count);
  return w;
}

std::vector<Mode> Monomial::operators() const {
  std::vector<Mode> ops;
  for (const auto& e : entries_) ops.insert(ops.end(), static_cast<std::size_t>(e.count), e.mode);
  return ops;
}

std::string Monomial::to_string() const {
  if (entries_.empty()) return "|0>";
  std::string s;
  for (const auto& e : entries_) {
    s += "a+" + hhes::to_string(e.mode);
    if (e.count > 1) s += "^" + std::to_string(e.count);
    s += " ";
  }
  return s + "|0>";
}

CanonicalForm canonicalize(std::span<const Mode> ops, Statistics statistics) {
  std::vector<Mode> sorted(ops.begin(), ops.end());
  double sign = 1.0;
  // Insertion sort: each adjacent transposition of distinct fermionic
  // operators flips the sign.
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    for (std::size_t j = i; j > 0 && sorted[j] < sorted[j - 1]; --j) {
      std::swap(sorted[j], sorted[j - 1]);
      if (statistics == Statistics::Fermion) sign = -sign;
    }
  }

  std::vector<Occupation> entries;
  for (const auto& m : sorted) {
    if (!entries.empty() && entries.back().mode == m) {
      if (statistics == Statistics::Fermion) return CanonicalForm{Complex{0.0, 0.0}, std::nullopt};
      ++entries.back().count;
    } else {
      entries.push_back(Occupation{m, 1});
    }
  }
  return CanonicalForm{Complex{sign, 0.0}, Monomial(std::move(entries))};
}

StateVector::StateVector(Statistics statistics, double prune_tolerance)
    : statistics_(statistics), prune_tolerance_(prune_tolerance) {
  if (!(prune_tolerance >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "prune tolerance must be non-negative");
  }
}

StateVector StateVector::vacuum(Statistics statistics, double prune_tolerance) {
  StateVector s(statistics, prune_tolerance);
  s.add(Monomial{}, Complex{1.0, 0.0});
  return s;
}

Complex StateVector::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex{} : it->second;
}

void StateVector::add(const Monomial& m, Complex c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw Error(ErrorCode::InvalidArgument, "non-finite amplitude for " + m.to_string());
  }
  terms_[m] += c;
}

StateVector& StateVector::prune() {
  std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) < prune_tolerance_; });
  return *this;
}

std::vector<Mode> StateVector::modes() const {
  std::set<Mode> seen;
  for (const auto& [m, c] : terms_) {
    for (const auto& e : m.entries()) seen.insert(e.mode);
  }
  return {seen.begin(), seen.end()};
}

std::optional<int> StateVector::particle_count() const {
  std::optional<int> n;
  for (const auto& [m, c] : terms_) {
    int k = m.particle_count();
    if (n && *n != k) return std::nullopt;
    n = k;
  }
  return n;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (other.statistics_ != statistics_) {
    throw Error(ErrorCode::InvalidArgument, "cannot add states with different statistics");
  }
  for (const auto& [m, c] : other.terms_) terms_[m] += c;
  return prune();
}

StateVector& StateVector::operator*=(Complex s) {
  for (auto& [m, c] : terms_) c *= s;
  return prune();
}

StateVector apply_creation(const StateVector& state, const Mode& mode) {
  StateVector out(state.statistics(), state.prune_tolerance());
  std::vector<Mode> ops;
  for (const auto& [m, c] : state.terms()) {
    ops.clear();
    ops.push_back(mode);
    for (const auto& op : m.operators()) ops.push_back(op);
    auto cf = canonicalize(ops, state.statistics());
    if (!cf.is_zero()) out.add(*cf.monomial, c * cf.coefficient);
  }
  return out.prune();
}

StateVector make_state(Statistics statistics, std::span<const Mode> ops) {
  auto s = StateVector::vacuum(statistics);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) s = apply_creation(s, *it);
  return s;
}

StateVector substitute(const StateVector& state, const ModeTransform& transform) {
  struct Image {
    std::vector<std::pair<Mode, Complex>> terms;
  };
  const auto& basis = transform.basis();
  const auto& matrix = transform.matrix();

  StateVector out(state.statistics(), state.prune_tolerance());
  std::vector<Mode> ops;
  for (const auto& [monomial, coeff] : state.terms()) {
    const auto inputs = monomial.operators();
    std::vector<Image> images;
    images.reserve(inputs.size());
    for (const auto& m : inputs) {
      auto col = transform.index_of(m);
      if (!col) {
        throw Error(ErrorCode::UnknownMode,
                    hhes::to_string(m) + " is not in the transform basis");
      }
      Image img;
      for (Eigen::Index n = 0; n < matrix.rows(); ++n) {
        Complex t = matrix(n, static_cast<Eigen::Index>(*col));
        if (t != Complex{}) img.terms.emplace_back(basis[static_cast<std::size_t>(n)], t);
      }
      images.push_back(std::move(img));
    }

    // Distributive expansion, odometer over one image term per operator.
    std::vector<std::size_t> pick(images.size(), 0);
    bool any_empty = std::any_of(images.begin(), images.end(),
                                 [](const Image& i) { return i.terms.empty(); });
    if (any_empty) continue;
    while (true) {
      ops.clear();
      Complex c = coeff;
      for (std::size_t k = 0; k < images.size(); ++k) {
        const auto& [mode, t] = images[k].terms[pick[k]];
        ops.push_back(mode);
        c *= t;
      }
      auto cf = canonicalize(ops, state.statistics());
      if (!cf.is_zero()) out.add(*cf.monomial, c * cf.coefficient);

      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == images[k].terms.size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  return out.prune();
}

Complex amplitude(const StateVector& state, const Monomial& outcome) {
  return state.coefficient(outcome) * std::sqrt(outcome.factorial_weight());
}

double norm_squared(const StateVector& state) {
  double n = 0.0;
  for (const auto& [m, c] : state.terms()) n += std::norm(c) * m.factorial_weight();
  return n;
}

Monomial species_blind(const Monomial& m) {
  std::map<Mode, int> merged;
  for (const auto& e : m.entries()) merged[species_blind(e.mode)] += e.count;
  std::vector<Occupation> entries;
  entries.reserve(merged.size());
  for (const auto& [mode, n] : merged) entries.push_back(Occupation{mode, n});
  return Monomial(std::move(entries));
}

double outcome_probability(const StateVector& state, const Monomial& outcome) {
  const double norm = norm_squared(state);
  if (!(norm > 0.0)) throw Error(ErrorCode::ZeroNorm, "outcome probability of the zero state");

  const bool blind_outcome =
      std::all_of(outcome.entries().begin(), outcome.entries().end(), [](const Occupation& e) {
        return e.mode.species.id == SpeciesTag::kIndistinct;
      });
  if (!blind_outcome || state.statistics() != Statistics::Distinguishable) {
    return std::norm(amplitude(state, outcome)) / norm;
  }
  double p = 0.0;
  for (const auto& [m, c] : state.terms()) {
    if (species_blind(m) == outcome) p += std::norm(c) * m.factorial_weight();
  }
  return p / norm;
}

}  // namespace hhes
