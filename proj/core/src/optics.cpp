#include "hhes/optics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hhes/error.hpp"

namespace hhes {

namespace {

const Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::size_t position(const std::vector<Mode>& basis, const Mode& m) {
  auto it = std::lower_bound(basis.begin(), basis.end(), m);
  return static_cast<std::size_t>(it - basis.begin());
}

std::vector<Mode> sorted_unique(std::vector<Mode> modes) {
  std::sort(modes.begin(), modes.end());
  for (std::size_t i = 1; i < modes.size(); ++i) {
    if (!(modes[i - 1] < modes[i]) && !(modes[i - 1] == modes[i])) {
      throw Error(ErrorCode::BasisMismatch, to_string(modes[i - 1]) + " and " +
                                                to_string(modes[i]) +
                                                " share an order position");
    }
  }
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
  return modes;
}

InternalLabel flipped(const ModeSpace& space, const InternalLabel& s) {
  return space.internal[1 - s.index];
}

std::string port_list(const ExternalLabel& a, const ExternalLabel& b, const ExternalLabel& c,
                      const ExternalLabel& d) {
  return a.name + " " + b.name + " -> " + c.name + " " + d.name;
}

ModeTransform splitter(const ModeSpace& space, const ExternalLabel& in_a, const ExternalLabel& in_b,
                       const ExternalLabel& out_t, const ExternalLabel& out_r, bool flip) {
  if (in_a == in_b || out_t == out_r) {
    throw Error(ErrorCode::DuplicatePort, "splitter ports " + port_list(in_a, in_b, out_t, out_r));
  }
  const bool same_ports = (in_a == out_t && in_b == out_r) || (in_a == out_r && in_b == out_t);
  const bool disjoint = in_a != out_t && in_a != out_r && in_b != out_t && in_b != out_r;
  if (!same_ports && !disjoint) {
    throw Error(ErrorCode::DuplicatePort,
                "splitter input and output ports partially overlap: " +
                    port_list(in_a, in_b, out_t, out_r));
  }
  if (flip && space.internal.size() != 2) {
    throw Error(ErrorCode::InternalSetNotBinary, "hybrid beam splitter needs two internal labels");
  }

  std::vector<Mode> basis;
  for (const auto& port : {in_a, in_b, out_t, out_r}) {
    auto at = space.modes_at(port);
    basis.insert(basis.end(), at.begin(), at.end());
  }
  basis = sorted_unique(std::move(basis));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis.size()),
                                              static_cast<Eigen::Index>(basis.size()));
  auto idx = [&](const Mode& mode) { return static_cast<Eigen::Index>(position(basis, mode)); };

  for (auto sp : space.species) {
    for (const auto& s : space.internal.labels()) {
      const InternalLabel r = flip ? flipped(space, s) : s;
      const Mode a{sp, s, in_a};
      const Mode b{sp, s, in_b};
      m(idx(Mode{sp, s, out_t}), idx(a)) += kInvSqrt2;
      m(idx(Mode{sp, r, out_r}), idx(a)) += kI * kInvSqrt2;
      m(idx(Mode{sp, s, out_r}), idx(b)) += kInvSqrt2;
      m(idx(Mode{sp, r, out_t}), idx(b)) += kI * kInvSqrt2;
    }
  }
  if (disjoint) {
    // Close the map on the union basis: output columns go back through B^dagger.
    for (auto sp : space.species) {
      for (const auto& out_port : {out_t, out_r}) {
        for (const auto& s : space.internal.labels()) {
          const auto col = idx(Mode{sp, s, out_port});
          for (const auto& in_port : {in_a, in_b}) {
            for (const auto& s2 : space.internal.labels()) {
              const auto row = idx(Mode{sp, s2, in_port});
              m(row, col) = std::conj(m(col, row));
            }
          }
        }
      }
    }
  }
  return ModeTransform(std::move(basis), std::move(m), flip ? ElementKind::HBS : ElementKind::BS,
                       std::string(flip ? "hbs " : "bs ") + port_list(in_a, in_b, out_t, out_r));
}

}  // namespace

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::BS: return "bs";
    case ElementKind::HBS: return "hbs";
    case ElementKind::PhaseShifter: return "phase";
    case ElementKind::Sorter: return "sorter";
    case ElementKind::Exchange: return "exchange";
    case ElementKind::Identity: return "identity";
    case ElementKind::Composed: return "composed";
  }
  return "unknown";
}

std::string_view to_string(Dof dof) { return dof == Dof::Internal ? "internal" : "external"; }

ModeTransform::ModeTransform(std::vector<Mode> basis, Eigen::MatrixXcd matrix, ElementKind kind,
                             std::string description)
    : basis_(std::move(basis)),
      matrix_(std::move(matrix)),
      kind_(kind),
      description_(std::move(description)) {
  const auto n = static_cast<Eigen::Index>(basis_.size());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw Error(ErrorCode::BasisMismatch, "matrix is " + std::to_string(matrix_.rows()) + "x" +
                                              std::to_string(matrix_.cols()) + " for a basis of " +
                                              std::to_string(basis_.size()) + " modes");
  }
  std::vector<Mode> sorted = basis_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end(), [](const Mode& a, const Mode& b) {
        return !(a < b);
      }) != sorted.end()) {
    throw Error(ErrorCode::BasisMismatch, "transform basis repeats a mode");
  }
}

ModeTransform ModeTransform::identity(std::vector<Mode> basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  return ModeTransform(std::move(basis), Eigen::MatrixXcd::Identity(n, n), ElementKind::Identity,
                       "identity");
}

std::optional<std::size_t> ModeTransform::index_of(const Mode& m) const {
  auto it = std::find(basis_.begin(), basis_.end(), m);
  if (it == basis_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - basis_.begin());
}

ModeTransform ModeTransform::embedded(const std::vector<Mode>& basis) const {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  std::vector<Eigen::Index> where(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    auto it = std::find(basis.begin(), basis.end(), basis_[k]);
    if (it == basis.end()) {
      throw Error(ErrorCode::BasisMismatch,
                  "target basis lacks " + hhes::to_string(basis_[k]));
    }
    where[k] = static_cast<Eigen::Index>(it - basis.begin());
  }
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    for (std::size_t c = 0; c < basis_.size(); ++c) {
      m(where[r], where[c]) =
          matrix_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return ModeTransform(basis, std::move(m), kind_, description_);
}

ModeTransform beam_splitter(const ModeSpace& space, const ExternalLabel& in_a,
                            const ExternalLabel& in_b, const ExternalLabel& out_t,
                            const ExternalLabel& out_r) {
  return splitter(space, in_a, in_b, out_t, out_r, false);
}

ModeTransform hybrid_beam_splitter(const ModeSpace& space, const ExternalLabel& in_a,
                                   const ExternalLabel& in_b, const ExternalLabel& out_t,
                                   const ExternalLabel& out_r) {
  return splitter(space, in_a, in_b, out_t, out_r, true);
}

ModeTransform phase_shifter(const ModeSpace& space, const ExternalLabel& port, double phase) {
  if (!std::isfinite(phase)) {
    throw Error(ErrorCode::InvalidArgument, "phase on " + port.name + " is not finite");
  }
  auto basis = space.modes_at(port);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n) * std::polar(1.0, phase);
  return ModeTransform(std::move(basis), std::move(m), ElementKind::PhaseShifter,
                       "phase " + port.name);
}

ModeTransform phase_shifters(const ModeSpace& space,
                             std::span<const std::pair<ExternalLabel, double>> shifts) {
  std::vector<ModeTransform> parts;
  std::string description = "phase";
  std::set<std::size_t> seen;
  for (const auto& [port, phase] : shifts) {
    if (!seen.insert(port.index).second) {
      throw Error(ErrorCode::DuplicatePort, "phase shift listed twice on " + port.name);
    }
    parts.push_back(phase_shifter(space, port, phase));
    description += " " + port.name;
  }
  auto c = compose(parts);
  return ModeTransform(c.basis(), c.matrix(), ElementKind::PhaseShifter, description);
}

ModeTransform routing_permutation(std::span<const std::pair<Mode, Mode>> routes, ElementKind kind,
                                  std::string description) {
  std::map<Mode, Mode> forward;
  std::map<Mode, Mode> backward;
  for (const auto& [from, to] : routes) {
    if (!forward.emplace(from, to).second) {
      throw Error(ErrorCode::NotBijective, hhes::to_string(from) + " routed twice");
    }
    if (!backward.emplace(to, from).second) {
      throw Error(ErrorCode::NotBijective, "two routes end at " + hhes::to_string(to));
    }
  }
  std::vector<Mode> modes;
  for (const auto& [from, to] : routes) {
    modes.push_back(from);
    modes.push_back(to);
  }
  auto basis = sorted_unique(std::move(modes));

  std::vector<std::pair<Mode, Mode>> full(forward.begin(), forward.end());
  for (const auto& [to, from] : backward) {
    if (forward.contains(to)) continue;
    // `to` ends a chain; send it back to the chain's start.
    Mode start = from;
    while (backward.contains(start)) start = backward.at(start);
    full.emplace_back(to, start);
  }

  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [from, to] : full) {
    m(static_cast<Eigen::Index>(position(basis, to)),
      static_cast<Eigen::Index>(position(basis, from))) = 1.0;
  }
  return ModeTransform(std::move(basis), std::move(m), kind, std::move(description));
}

ModeTransform dof_sorter(const ModeSpace& space, Dof selector,
                         std::span<const std::pair<std::string, ExternalLabel>> routing,
                         const std::optional<ExternalLabel>& input) {
  std::set<std::size_t> outputs;
  for (const auto& [label, out] : routing) {
    if (!outputs.insert(out.index).second) {
      throw Error(ErrorCode::DuplicatePort, "two sorter routes end at " + out.name);
    }
  }

  std::vector<std::pair<Mode, Mode>> routes;
  std::string description = "sorter " + std::string(to_string(selector));
  if (selector == Dof::Internal) {
    if (!input) throw Error(ErrorCode::InvalidArgument, "internal sorter needs an input port");
    description += " " + input->name;
    std::set<std::size_t> covered;
    for (const auto& [name, out] : routing) {
      const auto s = space.internal.at(name);
      if (!covered.insert(s.index).second) {
        throw Error(ErrorCode::NotBijective, "internal label " + name + " routed twice");
      }
      for (auto sp : space.species) routes.emplace_back(Mode{sp, s, *input}, Mode{sp, s, out});
      description += " " + name + "->" + out.name;
    }
    if (covered.size() != space.internal.size()) {
      throw Error(ErrorCode::IncompleteRouting, "internal sorter does not route every label");
    }
  } else {
    if (routing.empty()) {
      throw Error(ErrorCode::IncompleteRouting, "external sorter has no routes");
    }
    for (const auto& [name, out] : routing) {
      const auto from = space.external.at(name);
      for (auto sp : space.species) {
        for (const auto& s : space.internal.labels()) {
          routes.emplace_back(Mode{sp, s, from}, Mode{sp, s, out});
        }
      }
      description += " " + name + "->" + out.name;
    }
  }
  return routing_permutation(routes, ElementKind::Sorter, std::move(description));
}

ModeTransform exchange_wiring(const ModeSpace& space,
                              std::span<const std::pair<ExternalLabel, ExternalLabel>> relabel) {
  std::set<std::size_t> sources;
  std::set<std::size_t> targets;
  std::vector<std::pair<Mode, Mode>> routes;
  std::string description = "exchange";
  for (const auto& [from, to] : relabel) {
    if (!sources.insert(from.index).second || !targets.insert(to.index).second) {
      throw Error(ErrorCode::NotBijective, "exchange wiring repeats " + from.name + "->" + to.name);
    }
    for (auto sp : space.species) {
      for (const auto& s : space.internal.labels()) {
        routes.emplace_back(Mode{sp, s, from}, Mode{sp, s, to});
      }
    }
    description += " " + from.name + "->" + to.name;
  }
  return routing_permutation(routes, ElementKind::Exchange, std::move(description));
}

std::vector<Mode> union_basis(std::span<const ModeTransform> stages, std::span<const Mode> extra) {
  std::vector<Mode> modes(extra.begin(), extra.end());
  for (const auto& t : stages) modes.insert(modes.end(), t.basis().begin(), t.basis().end());
  return sorted_unique(std::move(modes));
}

ModeTransform compose(std::span<const ModeTransform> stages) {
  auto basis = union_basis(stages);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  for (const auto& t : stages) m = t.embedded(basis).matrix() * m;
  if (stages.size() == 1) {
    return ModeTransform(std::move(basis), std::move(m), stages.front().kind(),
                         stages.front().description());
  }
  return ModeTransform(std::move(basis), std::move(m),
                       stages.empty() ? ElementKind::Identity : ElementKind::Composed,
                       stages.empty() ? "identity" : "composed");
}

bool verify_unitary(const ModeTransform& t, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (t.dimension() == 0) return true;
  const auto& m = t.matrix();
  Eigen::MatrixXcd d = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() < tol;
}

StateVector propagate(const StateVector& state, std::span<const ModeTransform> stages) {
  StateVector s = state;
  for (const auto& t : stages) {
    const auto modes = s.modes();
    const bool covered =
        std::all_of(modes.begin(), modes.end(), [&](const Mode& m) { return t.covers(m); });
    if (covered) {
      s = substitute(s, t);
    } else {
      const std::span<const ModeTransform> one(&t, 1);
      s = substitute(s, t.embedded(union_basis(one, modes)));
    }
  }
  return s;
}

}  // namespace hhes
