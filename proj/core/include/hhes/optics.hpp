#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hhes/fock.hpp"
#include "hhes/mode.hpp"
#include "hhes/transform.hpp"

namespace hhes {

/// Balanced splitter, internal label preserved, factor i on reflection:
///   a(s,in_a) -> (a(s,out_t) + i a(s,out_r)) / sqrt(2)
///   a(s,in_b) -> (a(s,out_r) + i a(s,out_t)) / sqrt(2)
/// {in_a,in_b} must equal {out_t,out_r} or be disjoint from it; in the
/// disjoint case the output ports map back onto the inputs through the
/// adjoint block so the matrix stays unitary on the union basis.
ModeTransform beam_splitter(const ModeSpace& space, const ExternalLabel& in_a,
                            const ExternalLabel& in_b, const ExternalLabel& out_t,
                            const ExternalLabel& out_r);

/// Hybrid splitter: transmission keeps the internal label, reflection flips
/// it and picks up i. Requires a two-element internal set.
///   a(s,in_a) -> (a(s,out_t) + i a(flip s,out_r)) / sqrt(2)
///   a(s,in_b) -> (a(s,out_r) + i a(flip s,out_t)) / sqrt(2)
ModeTransform hybrid_beam_splitter(const ModeSpace& space, const ExternalLabel& in_a,
                                   const ExternalLabel& in_b, const ExternalLabel& out_t,
                                   const ExternalLabel& out_r);

/// a(s,port) -> e^{i phase} a(s,port) for every internal label and species.
ModeTransform phase_shifter(const ModeSpace& space, const ExternalLabel& port, double phase);

/// Several path-dependent shifts as one element.
ModeTransform phase_shifters(const ModeSpace& space,
                             std::span<const std::pair<ExternalLabel, double>> shifts);

enum class Dof { Internal, External };

std::string_view to_string(Dof dof);

/// Permutation routing each eigenstate of the selected DOF to its own port.
///
/// Internal selector: `routing` maps every internal label name to an output
/// port and acts on particles arriving at `input`:
///   a(s,input) -> a(s,routing[s]).
/// External selector: `routing` maps input port names to output ports for
/// all internal labels; `input` is ignored.
///
/// Throws IncompleteRouting when an internal routing misses a label or an
/// external routing is empty, DuplicatePort when two routes share an output.
ModeTransform dof_sorter(const ModeSpace& space, Dof selector,
                         std::span<const std::pair<std::string, ExternalLabel>> routing,
                         const std::optional<ExternalLabel>& input = std::nullopt);

/// Renames external labels, internal labels untouched. Throws NotBijective
/// if a source or a target repeats.
ModeTransform exchange_wiring(const ModeSpace& space,
                              std::span<const std::pair<ExternalLabel, ExternalLabel>> relabel);

/// Matrix product in application order (stages.front() acts first), each
/// stage embedded into the union basis. compose({}) is the 0-dimensional
/// identity, which embeds as the identity anywhere.
ModeTransform compose(std::span<const ModeTransform> stages);

/// max |T^dagger T - I| < tol. Throws InvalidArgument unless tol > 0.
bool verify_unitary(const ModeTransform& t, double tol);

/// Union of the bases, sorted. Throws BasisMismatch for inconsistent labels.
std::vector<Mode> union_basis(std::span<const ModeTransform> stages,
                              std::span<const Mode> extra = {});

/// Pushes a state through the stages in order. Modes outside a stage's
/// basis pass through unchanged.
StateVector propagate(const StateVector& state, std::span<const ModeTransform> stages);

/// Permutation transform on the union of sources and targets. Targets that
/// are not sources are routed back along the chain so the map is a bijection.
ModeTransform routing_permutation(std::span<const std::pair<Mode, Mode>> routes,
                                  ElementKind kind, std::string description);

}  // namespace hhes
