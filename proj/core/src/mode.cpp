#include "hhes/mode.hpp"

#include <algorithm>
#include <unordered_set>

#include "hhes/error.hpp"

namespace hhes {

template <class Tag>
LabelSet<Tag>::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "label set must not be empty");
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::DuplicateLabel, "label '" + n + "' declared twice");
    }
  }
}

template <class Tag>
Label<Tag> LabelSet<Tag>::operator[](std::size_t index) const {
  return Label<Tag>{names_.at(index), index};
}

template <class Tag>
std::optional<Label<Tag>> LabelSet<Tag>::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return Label<Tag>{*it, static_cast<std::size_t>(it - names_.begin())};
}

template <class Tag>
Label<Tag> LabelSet<Tag>::at(std::string_view name) const {
  if (auto l = find(name)) return *l;
  throw Error(ErrorCode::UnknownLabel, "label '" + std::string(name) + "' is not declared");
}

template <class Tag>
std::vector<Label<Tag>> LabelSet<Tag>::labels() const {
  std::vector<Label<Tag>> out;
  out.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) out.push_back({names_[i], i});
  return out;
}

template class LabelSet<InternalTag>;
template class LabelSet<ExternalTag>;

Mode species_blind(const Mode& m) {
  Mode out = m;
  out.species = SpeciesTag{};
  return out;
}

std::string to_string(const Mode& m) {
  std::string s = "(" + m.internal.name + "," + m.external.name + ")";
  if (m.species.id != SpeciesTag::kIndistinct) s += "#" + std::to_string(m.species.id);
  return s;
}

std::string_view to_string(Statistics s) {
  switch (s) {
    case Statistics::Boson: return "boson";
    case Statistics::Fermion: return "fermion";
    case Statistics::Distinguishable: return "distinguishable";
  }
  return "unknown";
}

std::optional<Statistics> parse_statistics(std::string_view text) {
  if (text == "boson") return Statistics::Boson;
  if (text == "fermion") return Statistics::Fermion;
  if (text == "distinguishable") return Statistics::Distinguishable;
  return std::nullopt;
}

Mode ModeSpace::mode(std::string_view internal_name, std::string_view external_name,
                     SpeciesTag tag) const {
  return Mode{tag, internal.at(internal_name), external.at(external_name)};
}

std::vector<Mode> ModeSpace::modes_at(const ExternalLabel& port) const {
  std::vector<Mode> out;
  for (auto sp : species) {
    for (const auto& s : internal.labels()) out.push_back(Mode{sp, s, port});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mode> ModeSpace::all_modes() const {
  std::vector<Mode> out;
  for (auto sp : species) {
    for (const auto& x : external.labels()) {
      for (const auto& s : internal.labels()) out.push_back(Mode{sp, s, x});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hhes
