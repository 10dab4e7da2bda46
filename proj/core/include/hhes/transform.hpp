#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hhes/mode.hpp"

namespace hhes {

enum class ElementKind { BS, HBS, PhaseShifter, Sorter, Exchange, Identity, Composed };

std::string_view to_string(ElementKind kind);

/// Linear map on creation operators over an ordered mode basis.
/// Column m holds the image of a^dagger(basis[m]):
///   a^dagger_m -> sum_n matrix(n, m) a^dagger_n.
class ModeTransform {
 public:
  ModeTransform() = default;
  /// Basis entries must be distinct; matrix must be basis.size() square.
  ModeTransform(std::vector<Mode> basis, Eigen::MatrixXcd matrix,
                ElementKind kind = ElementKind::Composed, std::string description = {});

  static ModeTransform identity(std::vector<Mode> basis);

  const std::vector<Mode>& basis() const noexcept { return basis_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  ElementKind kind() const noexcept { return kind_; }
  const std::string& description() const noexcept { return description_; }
  std::size_t dimension() const noexcept { return basis_.size(); }

  std::optional<std::size_t> index_of(const Mode& m) const;
  bool covers(const Mode& m) const { return index_of(m).has_value(); }

  /// Same action on a larger basis, identity on the added modes.
  /// Throws Error(BasisMismatch) if `basis` lacks one of ours or repeats a
  /// mode, or two modes share an order position with different names.
  ModeTransform embedded(const std::vector<Mode>& basis) const;

 private:
  std::vector<Mode> basis_;
  Eigen::MatrixXcd matrix_;
  ElementKind kind_ = ElementKind::Composed;
  std::string description_;
};

}  // namespace hhes
