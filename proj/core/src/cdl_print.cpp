#include <cstdio>

#include "hhes/cdl.hpp"

namespace hhes::cdl {

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ElementPrinter {
  std::string& out;

  void operator()(const SplitterStmt& s) const {
    out += (s.hybrid ? "hbs " : "bs ") + s.in_a + " " + s.in_b + " " + s.out_t + " " + s.out_r;
  }
  void operator()(const PhaseStmt& s) const {
    out += "phase";
    for (const auto& [p, v] : s.shifts) {
      out += " " + p + " " + (v.parameter.empty() ? number(v.constant) : "$" + v.parameter);
    }
  }
  void operator()(const SorterStmt& s) const {
    out += s.selector == Dof::Internal ? "sorter internal " + s.input : "sorter external";
    for (const auto& [from, to] : s.routes) out += " " + from + " -> " + to;
  }
  void operator()(const ExchangeStmt& s) const {
    out += "exchange";
    for (const auto& [from, to] : s.routes) out += " " + from + " -> " + to;
  }
};

}  // namespace

std::string pretty_print(const CircuitSpecTree& tree) {
  std::string out = "internal";
  for (const auto& l : tree.internal) out += " " + l;
  out += "\nexternal";
  for (const auto& l : tree.external) out += " " + l;
  out += "\nstatistics " + std::string(to_string(tree.statistics)) + "\n";
  for (const auto& p : tree.particles) out += "particle " + p.internal + " " + p.external + "\n";
  for (const auto& e : tree.elements) {
    std::visit(ElementPrinter{out}, e);
    out += "\n";
  }
  for (const auto& m : tree.measurements) {
    out += "measure " + std::string(to_string(m.party)) + " " + std::string(to_string(m.kind));
    for (const auto& b : m.bins) {
      out += " bin " + b.label + " =";
      for (const auto& r : b.modes) out += " " + r.internal + ":" + r.external;
    }
    out += "\n";
  }
  return out;
}

}  // namespace hhes::cdl
