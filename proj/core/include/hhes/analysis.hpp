#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hhes/circuits.hpp"
#include "hhes/fock.hpp"
#include "hhes/optics.hpp"

namespace hhes {

enum class Party { A, B };

std::string_view to_string(Party p);

struct Bin {
  std::string label;
  std::vector<Mode> modes;

  friend bool operator==(const Bin&, const Bin&) = default;
};

/// One party's detector bins. Modes are matched species-blind, so the same
/// partition serves identical and distinguishable particles.
struct MeasurementPartition {
  Party party = Party::A;
  Dof kind = Dof::External;
  std::vector<Bin> bins;

  friend bool operator==(const MeasurementPartition&, const MeasurementPartition&) = default;
};

/// Alice reads ports {D, L}, Bob {R, U}. External bins are the ports in that
/// order; internal bins are the internal labels in declaration order.
MeasurementPartition party_partition(const ModeSpace& space, Party party, Dof kind);

/// Alice's DOF first: path-path is Eq.-style external x external.
enum class TableKind { PathPath, SpinSpin, SpinPath, PathSpin };

std::string_view to_string(TableKind k);
std::optional<TableKind> parse_table_kind(std::string_view text);
std::pair<Dof, Dof> table_dofs(TableKind k);
inline constexpr std::array<TableKind, 4> kAllTableKinds{TableKind::PathPath, TableKind::SpinSpin,
                                                         TableKind::SpinPath, TableKind::PathSpin};

struct CoincidenceTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<double>> probs;

  double at(std::size_t row, std::size_t col) const { return probs.at(row).at(col); }
  double total() const;
  /// Row-major entries.
  std::vector<double> flat() const;
};

/// Entry (i, j): probability that A sees exactly one particle, in bin i, and
/// B exactly one, in bin j. Other events are left out of the table.
/// Throws OverlappingPartitions if a mode is listed twice.
CoincidenceTable coincidence_table(const StateVector& state, const MeasurementPartition& a,
                                   const MeasurementPartition& b);
CoincidenceTable coincidence_table(const CircuitRun& run, const MeasurementPartition& a,
                                   const MeasurementPartition& b);
CoincidenceTable coincidence_table(const CircuitRun& run, TableKind kind);

/// Sum of outcome probabilities over every distinct detector pattern.
double completeness(const StateVector& state);

/// Dichotomic value per bin label.
using SignMap = std::map<std::string, int, std::less<>>;

/// -1 for {D, R, dn, H}, +1 for {L, U, up, V}.
const SignMap& default_signs();

/// (sum_ij s_i s_j P_ij) / (sum_ij P_ij). Throws ZeroCoincidenceMass when
/// the table is empty, InvalidArgument if a label has no sign.
double correlation(const CoincidenceTable& table, const SignMap& signs);

struct ChshSettings {
  double a0 = 0.0;
  double a1 = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;
  SignMap signs = default_signs();
};

/// Table produced by a circuit when Alice uses setting a and Bob setting b.
using TableRunner = std::function<CoincidenceTable(double a, double b)>;

struct ChshResult {
  /// E(a0,b0), E(a1,b0), E(a0,b1), E(a1,b1).
  std::array<double, 4> correlations{};
  double value = 0.0;
};

ChshResult chsh(const TableRunner& runner, const ChshSettings& s);

/// |E(a0,b0) + E(a1,b0) + E(a0,b1) - E(a1,b1)|.
double chsh_value(const TableRunner& runner, const ChshSettings& s);

/// "violated" above 2 + tol, otherwise "witness-inconclusive".
std::string_view chsh_verdict(double value, double tol = 1e-9);

/// Setting pair realised as phi_D = a, phi_U = b, phi_L = phi_R = 0.
PhaseSettings chsh_phases(double a, double b);

using CircuitFactory = std::function<CircuitRun(const PhaseSettings&)>;

/// "li" (any statistics) or "swap" (bosons only). Throws InvalidArgument.
CircuitFactory named_circuit(std::string_view name, Statistics statistics);

TableRunner make_runner(CircuitFactory factory, MeasurementPartition a, MeasurementPartition b);
TableRunner make_runner(CircuitFactory factory, TableKind kind);

/// Closed-form tables written directly from the generalized boson/fermion
/// formulation: phi1 = phi_D - phi_L, phi2 = -(phi_R - phi_U), plus pi/2 for
/// fermions, cells 1/4 cos^2(phi1 - phi2) or 1/4 sin^2(phi1 - phi2).
/// Independent of the simulator.
CoincidenceTable closed_form_table(TableKind kind, Statistics statistics,
                                   const PhaseSettings& settings);

/// Fermionic tables in terms of phi = (phi_D - phi_L - phi_R + phi_U)/2.
CoincidenceTable fermion_reference_table(TableKind kind, const PhaseSettings& settings);

/// Swap-circuit table, Alice polarization x Bob path:
/// rows H, V; columns R, U; 1/4 cos^2 phi on the diagonal.
CoincidenceTable swap_reference_table(const PhaseSettings& settings);

/// Alice's or Bob's (internal x external) distribution over coincidence
/// events, normalized to 1. Rows: internal labels, columns: party ports.
CoincidenceTable party_marginal(const CircuitRun& run, Party party);

/// max |P(i,j) - P(i,.) P(.,j)| after normalizing the table.
double factorization_residual(const CoincidenceTable& table);

struct DetectorDistribution {
  /// Detector id (1-based) -> probability.
  std::map<int, double> probs;

  double probability(int detector) const;
  double probability_of(std::span<const int> detectors) const;
  double total() const;
};

std::vector<double> linspace(double start, double stop, std::size_t count);

/// Cartesian product of `values` over (phi_L, phi_D, phi_R, phi_U), phi_U
/// varying fastest.
std::vector<PhaseSettings> phase_grid(std::span<const double> values);

struct SweepRecord {
  PhaseSettings settings;
  TableKind kind = TableKind::PathPath;
  CoincidenceTable table;
  double correlation = 0.0;
  /// The same grid point read as (a0, a1, b0, b1) = (phi_L, phi_D, phi_R, phi_U).
  double chsh = 0.0;
};

/// One record per grid point, in grid order.
std::vector<SweepRecord> sweep(const CircuitFactory& factory, const MeasurementPartition& a,
                               const MeasurementPartition& b, TableKind kind_tag,
                               std::span<const PhaseSettings> grid,
                               const SignMap& signs = default_signs());
std::vector<SweepRecord> sweep(std::string_view circuit, Statistics statistics, TableKind kind,
                               std::span<const PhaseSettings> grid);

}  // namespace hhes
