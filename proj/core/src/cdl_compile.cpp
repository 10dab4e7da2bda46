#include <fstream>
#include <sstream>

#include "hhes/cdl.hpp"
#include "hhes/error.hpp"

namespace hhes::cdl {

namespace {

double resolve(const PhaseValue& v, const ParameterMap& params) {
  if (v.parameter.empty()) return v.constant;
  const auto it = params.find(v.parameter);
  if (it == params.end()) {
    throw Error(ErrorCode::InvalidArgument, "unbound parameter $" + v.parameter);
  }
  return it->second;
}

struct StageBuilder {
  const ModeSpace& space;
  const ParameterMap& params;

  ExternalLabel port(const std::string& name) const { return space.external.at(name); }

  ModeTransform operator()(const SplitterStmt& s) const {
    const auto a = port(s.in_a), b = port(s.in_b), t = port(s.out_t), r = port(s.out_r);
    return s.hybrid ? hybrid_beam_splitter(space, a, b, t, r) : beam_splitter(space, a, b, t, r);
  }

  ModeTransform operator()(const PhaseStmt& s) const {
    std::vector<std::pair<ExternalLabel, double>> shifts;
    for (const auto& [p, v] : s.shifts) shifts.emplace_back(port(p), resolve(v, params));
    return phase_shifters(space, shifts);
  }

  ModeTransform operator()(const SorterStmt& s) const {
    std::vector<std::pair<std::string, ExternalLabel>> routing;
    for (const auto& [from, to] : s.routes) routing.emplace_back(from, port(to));
    if (s.selector == Dof::Internal) return dof_sorter(space, s.selector, routing, port(s.input));
    return dof_sorter(space, s.selector, routing);
  }

  ModeTransform operator()(const ExchangeStmt& s) const {
    std::vector<std::pair<ExternalLabel, ExternalLabel>> relabel;
    for (const auto& [from, to] : s.routes) relabel.emplace_back(port(from), port(to));
    return exchange_wiring(space, relabel);
  }
};

}  // namespace

CompiledCircuit compile(const CircuitSpecTree& tree, const ParameterMap& parameters) {
  CompiledCircuit out;
  out.statistics = tree.statistics;
  out.space.internal = InternalSet(tree.internal);
  out.space.external = ExternalSet(tree.external);
  const bool tagged = tree.statistics == Statistics::Distinguishable;
  if (tagged) {
    out.space.species.clear();
    for (std::size_t i = 0; i < tree.particles.size(); ++i) {
      out.space.species.push_back(SpeciesTag{static_cast<std::uint32_t>(i + 1)});
    }
  }

  std::vector<Mode> ops;
  for (std::size_t i = 0; i < tree.particles.size(); ++i) {
    const auto& p = tree.particles[i];
    const SpeciesTag tag = tagged ? SpeciesTag{static_cast<std::uint32_t>(i + 1)} : SpeciesTag{};
    ops.push_back(out.space.mode(p.internal, p.external, tag));
  }
  out.initial = make_state(tree.statistics, ops);

  const StageBuilder build{out.space, parameters};
  for (const auto& e : tree.elements) out.stages.push_back(std::visit(build, e));

  for (const auto& m : tree.measurements) {
    MeasurementPartition part{m.party, m.kind, {}};
    for (const auto& b : m.bins) {
      Bin bin{b.label, {}};
      for (const auto& r : b.modes) bin.modes.push_back(out.space.mode(r.internal, r.external));
      part.bins.push_back(std::move(bin));
    }
    out.partitions.push_back(std::move(part));
  }
  return out;
}

CircuitFactory make_factory(CircuitSpecTree tree, std::string name, ParameterMap base) {
  return [tree = std::move(tree), name = std::move(name),
          base = std::move(base)](const PhaseSettings& s) {
    ParameterMap params = base;
    params["phiL"] = s.phi_L;
    params["phiD"] = s.phi_D;
    params["phiR"] = s.phi_R;
    params["phiU"] = s.phi_U;
    auto c = compile(tree, params);
    auto state = c.run();
    return CircuitRun{name, std::move(c.space), std::move(state), s, c.statistics};
  };
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path.string());
  return ss.str();
}

}  // namespace hhes::cdl
