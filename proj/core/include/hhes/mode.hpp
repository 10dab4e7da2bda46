#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hhes {

/// A named element of a declared, ordered label set.
template <class Tag>
struct Label {
  std::string name;
  std::size_t index = 0;

  friend bool operator==(const Label&, const Label&) = default;
};

struct InternalTag {};
struct ExternalTag {};

/// Internal degree of freedom, e.g. spin {down, up} or polarization {H, V}.
using InternalLabel = Label<InternalTag>;
/// External (path) label, e.g. {L, D, R, U}.
using ExternalLabel = Label<ExternalTag>;

/// Finite ordered set of label names; index = declaration position.
template <class Tag>
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  Label<Tag> operator[](std::size_t index) const;
  std::optional<Label<Tag>> find(std::string_view name) const;
  /// Throws Error(UnknownLabel) if absent.
  Label<Tag> at(std::string_view name) const;

  std::vector<Label<Tag>> labels() const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<std::string> names_;
};

using InternalSet = LabelSet<InternalTag>;
using ExternalSet = LabelSet<ExternalTag>;

/// Particle species. Id 0 is shared by identical particles; distinguishable
/// particles carry distinct ids >= 1.
struct SpeciesTag {
  static constexpr std::uint32_t kIndistinct = 0;

  std::uint32_t id = kIndistinct;

  friend bool operator==(SpeciesTag, SpeciesTag) = default;
  friend auto operator<=>(SpeciesTag, SpeciesTag) = default;
};

/// One creation-operator slot. Ordered lexicographically by
/// (species, external index, internal index).
struct Mode {
  SpeciesTag species;
  InternalLabel internal;
  ExternalLabel external;

  friend bool operator==(const Mode&, const Mode&) = default;
  friend std::strong_ordering operator<=>(const Mode& a, const Mode& b) {
    if (auto c = a.species <=> b.species; c != 0) return c;
    if (auto c = a.external.index <=> b.external.index; c != 0) return c;
    return a.internal.index <=> b.internal.index;
  }
};

/// Same mode with the species tag reset to Indistinct.
Mode species_blind(const Mode& m);

/// "(dn,R)" or "(dn,R)#2" for species ids >= 1.
std::string to_string(const Mode& m);

enum class Statistics { Boson, Fermion, Distinguishable };

std::string_view to_string(Statistics s);
std::optional<Statistics> parse_statistics(std::string_view text);

/// Label sets plus the species present in a circuit. Element constructors
/// act on every (species, internal) combination at their ports.
struct ModeSpace {
  InternalSet internal;
  ExternalSet external;
  std::vector<SpeciesTag> species{SpeciesTag{}};

  Mode mode(std::string_view internal_name, std::string_view external_name,
            SpeciesTag tag = {}) const;
  /// Every mode at the given port, sorted.
  std::vector<Mode> modes_at(const ExternalLabel& port) const;
  /// Every mode of the space, sorted.
  std::vector<Mode> all_modes() const;
};

}  // namespace hhes
