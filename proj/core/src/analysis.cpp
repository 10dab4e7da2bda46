#include "hhes/analysis.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "hhes/error.hpp"

namespace hhes {

namespace {

constexpr std::array<std::string_view, 2> kAlicePorts{"D", "L"};
constexpr std::array<std::string_view, 2> kBobPorts{"R", "U"};

std::span<const std::string_view> ports_of(Party p) {
  return p == Party::A ? std::span<const std::string_view>(kAlicePorts)
                       : std::span<const std::string_view>(kBobPorts);
}

struct BinLookup {
  // species-blind mode -> (party slot 0/1, bin index)
  std::map<Mode, std::pair<int, std::size_t>> where;
};

BinLookup index_bins(const MeasurementPartition& a, const MeasurementPartition& b) {
  BinLookup lookup;
  int slot = 0;
  for (const auto* part : {&a, &b}) {
    for (std::size_t i = 0; i < part->bins.size(); ++i) {
      for (const auto& m : part->bins[i].modes) {
        if (!lookup.where.emplace(species_blind(m), std::pair{slot, i}).second) {
          throw Error(ErrorCode::OverlappingPartitions,
                      to_string(m) + " appears in more than one bin");
        }
      }
    }
    ++slot;
  }
  return lookup;
}

std::vector<std::string> bin_labels(const MeasurementPartition& p) {
  std::vector<std::string> out;
  for (const auto& b : p.bins) out.push_back(b.label);
  return out;
}

CoincidenceTable square_table(std::vector<std::string> rows, std::vector<std::string> cols,
                              double diagonal, double off_diagonal) {
  return CoincidenceTable{std::move(rows), std::move(cols),
                          {{diagonal, off_diagonal}, {off_diagonal, diagonal}}};
}

// Shared cell placement of the four reference tables: path-path and path-spin
// carry the cos^2 term on the diagonal, spin-spin and spin-path off it.
CoincidenceTable place(TableKind kind, double cos_term, double sin_term) {
  const std::vector<std::string> path_a{"D", "L"};
  const std::vector<std::string> path_b{"R", "U"};
  const std::vector<std::string> spin{"dn", "up"};
  switch (kind) {
    case TableKind::PathPath: return square_table(path_a, path_b, cos_term, sin_term);
    case TableKind::SpinSpin: return square_table(spin, spin, sin_term, cos_term);
    case TableKind::SpinPath: return square_table(spin, path_b, sin_term, cos_term);
    case TableKind::PathSpin: return square_table(path_a, spin, cos_term, sin_term);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown table kind");
}

}  // namespace

std::string_view to_string(Party p) { return p == Party::A ? "A" : "B"; }

MeasurementPartition party_partition(const ModeSpace& space, Party party, Dof kind) {
  MeasurementPartition part{party, kind, {}};
  const auto ports = ports_of(party);
  if (kind == Dof::External) {
    for (auto port : ports) {
      Bin bin{std::string(port), {}};
      for (const auto& s : space.internal.labels()) bin.modes.push_back(space.mode(s.name, port));
      part.bins.push_back(std::move(bin));
    }
  } else {
    for (const auto& s : space.internal.labels()) {
      Bin bin{s.name, {}};
      for (auto port : ports) bin.modes.push_back(space.mode(s.name, port));
      part.bins.push_back(std::move(bin));
    }
  }
  return part;
}

std::string_view to_string(TableKind k) {
  switch (k) {
    case TableKind::PathPath: return "path-path";
    case TableKind::SpinSpin: return "spin-spin";
    case TableKind::SpinPath: return "spin-path";
    case TableKind::PathSpin: return "path-spin";
  }
  return "unknown";
}

std::optional<TableKind> parse_table_kind(std::string_view text) {
  for (auto k : kAllTableKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::pair<Dof, Dof> table_dofs(TableKind k) {
  switch (k) {
    case TableKind::PathPath: return {Dof::External, Dof::External};
    case TableKind::SpinSpin: return {Dof::Internal, Dof::Internal};
    case TableKind::SpinPath: return {Dof::Internal, Dof::External};
    case TableKind::PathSpin: return {Dof::External, Dof::Internal};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown table kind");
}

double CoincidenceTable::total() const {
  double t = 0.0;
  for (const auto& row : probs) {
    for (double p : row) t += p;
  }
  return t;
}

std::vector<double> CoincidenceTable::flat() const {
  std::vector<double> out;
  for (const auto& row : probs) out.insert(out.end(), row.begin(), row.end());
  return out;
}

CoincidenceTable coincidence_table(const StateVector& state, const MeasurementPartition& a,
                                   const MeasurementPartition& b) {
  const auto lookup = index_bins(a, b);
  const double norm = norm_squared(state);
  if (!(norm > 0.0)) throw Error(ErrorCode::ZeroNorm, "coincidence table of the zero state");

  CoincidenceTable table{bin_labels(a), bin_labels(b),
                         std::vector<std::vector<double>>(
                             a.bins.size(), std::vector<double>(b.bins.size(), 0.0))};
  for (const auto& [monomial, c] : state.terms()) {
    std::array<int, 2> count{0, 0};
    std::array<std::size_t, 2> bin{0, 0};
    for (const auto& e : monomial.entries()) {
      auto it = lookup.where.find(species_blind(e.mode));
      if (it == lookup.where.end()) continue;
      const auto [slot, index] = it->second;
      count[static_cast<std::size_t>(slot)] += e.count;
      bin[static_cast<std::size_t>(slot)] = index;
    }
    if (count[0] == 1 && count[1] == 1) {
      table.probs[bin[0]][bin[1]] += std::norm(c) * monomial.factorial_weight() / norm;
    }
  }
  return table;
}

CoincidenceTable coincidence_table(const CircuitRun& run, const MeasurementPartition& a,
                                   const MeasurementPartition& b) {
  return coincidence_table(run.final_state, a, b);
}

CoincidenceTable coincidence_table(const CircuitRun& run, TableKind kind) {
  const auto [dof_a, dof_b] = table_dofs(kind);
  return coincidence_table(run.final_state, party_partition(run.space, Party::A, dof_a),
                           party_partition(run.space, Party::B, dof_b));
}

double completeness(const StateVector& state) {
  std::set<Monomial> patterns;
  for (const auto& [m, c] : state.terms()) {
    patterns.insert(state.statistics() == Statistics::Distinguishable ? species_blind(m) : m);
  }
  double total = 0.0;
  for (const auto& p : patterns) total += outcome_probability(state, p);
  return total;
}

const SignMap& default_signs() {
  static const SignMap signs{{"D", -1}, {"R", -1}, {"dn", -1}, {"H", -1},
                             {"L", +1}, {"U", +1}, {"up", +1}, {"V", +1}};
  return signs;
}

double correlation(const CoincidenceTable& table, const SignMap& signs) {
  auto sign_of = [&](const std::string& label) {
    auto it = signs.find(label);
    if (it == signs.end()) {
      throw Error(ErrorCode::InvalidArgument, "no dichotomic value for bin '" + label + "'");
    }
    return it->second;
  };
  double weighted = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < table.row_labels.size(); ++i) {
    for (std::size_t j = 0; j < table.col_labels.size(); ++j) {
      const double p = table.at(i, j);
      weighted += sign_of(table.row_labels[i]) * sign_of(table.col_labels[j]) * p;
      mass += p;
    }
  }
  if (!(mass > 0.0)) throw Error(ErrorCode::ZeroCoincidenceMass, "coincidence table is empty");
  return weighted / mass;
}

ChshResult chsh(const TableRunner& runner, const ChshSettings& s) {
  ChshResult r;
  r.correlations = {correlation(runner(s.a0, s.b0), s.signs),
                    correlation(runner(s.a1, s.b0), s.signs),
                    correlation(runner(s.a0, s.b1), s.signs),
                    correlation(runner(s.a1, s.b1), s.signs)};
  const auto& e = r.correlations;
  r.value = std::abs(e[0] + e[1] + e[2] - e[3]);
  return r;
}

double chsh_value(const TableRunner& runner, const ChshSettings& s) { return chsh(runner, s).value; }

std::string_view chsh_verdict(double value, double tol) {
  return value > 2.0 + tol ? "violated" : "witness-inconclusive";
}

PhaseSettings chsh_phases(double a, double b) {
  return PhaseSettings{.phi_L = 0.0, .phi_D = a, .phi_R = 0.0, .phi_U = b};
}

CircuitFactory named_circuit(std::string_view name, Statistics statistics) {
  if (name == "li") {
    return [statistics](const PhaseSettings& ps) { return li_circuit(statistics, ps); };
  }
  if (name == "swap") {
    if (statistics != Statistics::Boson) {
      throw Error(ErrorCode::InvalidArgument, "the swap circuit runs on bosons only");
    }
    return [](const PhaseSettings& ps) { return swap_circuit(ps); };
  }
  throw Error(ErrorCode::InvalidArgument, "unknown circuit '" + std::string(name) + "'");
}

TableRunner make_runner(CircuitFactory factory, MeasurementPartition a, MeasurementPartition b) {
  return [factory = std::move(factory), a = std::move(a), b = std::move(b)](double x, double y) {
    return coincidence_table(factory(chsh_phases(x, y)), a, b);
  };
}

TableRunner make_runner(CircuitFactory factory, TableKind kind) {
  return [factory = std::move(factory), kind](double x, double y) {
    return coincidence_table(factory(chsh_phases(x, y)), kind);
  };
}

CoincidenceTable closed_form_table(TableKind kind, Statistics statistics,
                                   const PhaseSettings& settings) {
  if (statistics == Statistics::Distinguishable) {
    throw Error(ErrorCode::InvalidArgument, "closed form covers bosons and fermions only");
  }
  const double phi1 = settings.phi_D - settings.phi_L;
  double phi2 = -(settings.phi_R - settings.phi_U);
  if (statistics == Statistics::Fermion) phi2 += std::numbers::pi / 2.0;
  const double c = std::cos(phi1 - phi2);
  const double s = std::sin(phi1 - phi2);
  return place(kind, 0.25 * c * c, 0.25 * s * s);
}

CoincidenceTable fermion_reference_table(TableKind kind, const PhaseSettings& settings) {
  const double phi =
      (settings.phi_D - settings.phi_L - settings.phi_R + settings.phi_U) / 2.0;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return place(kind, 0.25 * c * c, 0.25 * s * s);
}

CoincidenceTable swap_reference_table(const PhaseSettings& settings) {
  const double phi =
      (settings.phi_D - settings.phi_L - settings.phi_R + settings.phi_U) / 2.0;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return square_table({"H", "V"}, {"R", "U"}, 0.25 * c * c, 0.25 * s * s);
}

CoincidenceTable party_marginal(const CircuitRun& run, Party party) {
  const auto a = party_partition(run.space, Party::A, Dof::External);
  const auto b = party_partition(run.space, Party::B, Dof::External);
  const auto lookup = index_bins(a, b);
  const auto& mine = party == Party::A ? a : b;
  const std::size_t my_slot = party == Party::A ? 0 : 1;

  CoincidenceTable table;
  table.row_labels = run.space.internal.names();
  table.col_labels = bin_labels(mine);
  table.probs.assign(table.row_labels.size(), std::vector<double>(table.col_labels.size(), 0.0));

  const double norm = norm_squared(run.final_state);
  double mass = 0.0;
  for (const auto& [monomial, c] : run.final_state.terms()) {
    std::array<int, 2> count{0, 0};
    std::optional<Mode> seen;
    for (const auto& e : monomial.entries()) {
      auto it = lookup.where.find(species_blind(e.mode));
      if (it == lookup.where.end()) continue;
      const auto slot = static_cast<std::size_t>(it->second.first);
      count[slot] += e.count;
      if (slot == my_slot) seen = e.mode;
    }
    if (count[0] != 1 || count[1] != 1) continue;
    const double p = std::norm(c) * monomial.factorial_weight() / norm;
    const auto col = lookup.where.at(species_blind(*seen)).second;
    table.probs[seen->internal.index][col] += p;
    mass += p;
  }
  if (!(mass > 0.0)) throw Error(ErrorCode::ZeroCoincidenceMass, "no coincidence events");
  for (auto& row : table.probs) {
    for (auto& p : row) p /= mass;
  }
  return table;
}

double factorization_residual(const CoincidenceTable& table) {
  const double total = table.total();
  if (!(total > 0.0)) throw Error(ErrorCode::ZeroCoincidenceMass, "empty table");
  const std::size_t rows = table.row_labels.size();
  const std::size_t cols = table.col_labels.size();
  std::vector<double> row_sum(rows, 0.0);
  std::vector<double> col_sum(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      row_sum[i] += table.at(i, j) / total;
      col_sum[j] += table.at(i, j) / total;
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      worst = std::max(worst, std::abs(table.at(i, j) / total - row_sum[i] * col_sum[j]));
    }
  }
  return worst;
}

double DetectorDistribution::probability(int detector) const {
  auto it = probs.find(detector);
  return it == probs.end() ? 0.0 : it->second;
}

double DetectorDistribution::probability_of(std::span<const int> detectors) const {
  double p = 0.0;
  for (int d : std::set<int>(detectors.begin(), detectors.end())) p += probability(d);
  return p;
}

double DetectorDistribution::total() const {
  double t = 0.0;
  for (const auto& [d, p] : probs) t += p;
  return t;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {start};
  out.reserve(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
  out.back() = stop;
  return out;
}

std::vector<PhaseSettings> phase_grid(std::span<const double> values) {
  std::vector<PhaseSettings> grid;
  grid.reserve(values.size() * values.size() * values.size() * values.size());
  for (double l : values) {
    for (double d : values) {
      for (double r : values) {
        for (double u : values) grid.push_back(PhaseSettings{l, d, r, u});
      }
    }
  }
  return grid;
}

std::vector<SweepRecord> sweep(const CircuitFactory& factory, const MeasurementPartition& a,
                               const MeasurementPartition& b, TableKind kind_tag,
                               std::span<const PhaseSettings> grid, const SignMap& signs) {
  std::map<std::pair<double, double>, double> cache;
  auto correlation_at = [&](double x, double y) {
    auto [it, fresh] = cache.try_emplace({x, y}, 0.0);
    if (fresh) it->second = correlation(coincidence_table(factory(chsh_phases(x, y)), a, b), signs);
    return it->second;
  };

  std::vector<SweepRecord> records;
  records.reserve(grid.size());
  for (const auto& ps : grid) {
    SweepRecord r;
    r.settings = ps;
    r.kind = kind_tag;
    r.table = coincidence_table(factory(ps), a, b);
    r.correlation = correlation(r.table, signs);
    r.chsh = std::abs(correlation_at(ps.phi_L, ps.phi_R) + correlation_at(ps.phi_D, ps.phi_R) +
                      correlation_at(ps.phi_L, ps.phi_U) - correlation_at(ps.phi_D, ps.phi_U));
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<SweepRecord> sweep(std::string_view circuit, Statistics statistics, TableKind kind,
                               std::span<const PhaseSettings> grid) {
  auto factory = named_circuit(circuit, statistics);
  const auto space = circuit == "swap" ? swap_space() : li_space(statistics);
  const auto [dof_a, dof_b] = table_dofs(kind);
  return sweep(factory, party_partition(space, Party::A, dof_a),
               party_partition(space, Party::B, dof_b), kind, grid);
}

}  // namespace hhes
