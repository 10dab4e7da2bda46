#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "hhes/analysis.hpp"
#include "hhes/cdl.hpp"
#include "hhes/cli.hpp"
#include "hhes/error.hpp"
#include "hhes/signaling.hpp"

namespace hhes::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kMaxCascadeDofs = 16;

struct Globals {
  bool json = false;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
};

/// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_real(const std::string& text) {
  std::vector<cdl::Token> toks;
  try {
    toks = cdl::tokenize(text);
  } catch (const cdl::ParseError&) {
    throw UsageError("not a number or pi-expression: '" + text + "'");
  }
  if (toks.size() != 2 || toks[0].kind != cdl::TokenKind::Number) {
    throw UsageError("not a number or pi-expression: '" + text + "'");
  }
  return toks[0].value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::optional<TableKind> kind_from_dofs(Dof a, Dof b) {
  for (auto k : kAllTableKinds) {
    if (table_dofs(k) == std::pair{a, b}) return k;
  }
  return std::nullopt;
}

struct Circuit {
  std::string name;
  Statistics statistics = Statistics::Boson;
  CircuitFactory factory;
  MeasurementPartition a;
  MeasurementPartition b;
  TableKind kind = TableKind::PathPath;
};

Statistics parse_stats(const std::string& text) {
  const auto s = parse_statistics(text);
  if (!s) throw UsageError("unknown statistics '" + text + "'");
  return *s;
}

Circuit resolve(const std::string& ref, const std::string& stats_flag,
                const std::string& kind_flag) {
  Circuit c;
  std::optional<TableKind> kind;
  if (!kind_flag.empty()) {
    kind = parse_table_kind(kind_flag);
    if (!kind) throw UsageError("unknown table kind '" + kind_flag + "'");
  }

  if (ref == "li" || ref == "swap") {
    c.name = ref;
    if (ref == "li") {
      c.statistics = stats_flag.empty() ? Statistics::Fermion : parse_stats(stats_flag);
    } else {
      c.statistics = stats_flag.empty() ? Statistics::Boson : parse_stats(stats_flag);
      if (c.statistics != Statistics::Boson) {
        throw UsageError("the swap circuit is defined for bosons only");
      }
    }
    c.kind = kind.value_or(ref == "li" ? TableKind::PathPath : TableKind::SpinPath);
    c.factory = named_circuit(ref, c.statistics);
    const ModeSpace space = ref == "li" ? li_space(c.statistics) : swap_space();
    const auto [da, db] = table_dofs(c.kind);
    c.a = party_partition(space, Party::A, da);
    c.b = party_partition(space, Party::B, db);
    return c;
  }

  std::string source;
  try {
    source = cdl::read_file(ref);
  } catch (const std::runtime_error& e) {
    throw IoFailure(e.what());
  }
  const auto tree = cdl::parse_source(source);
  if (kind) throw UsageError("--kind does not apply to circuit files; bins come from the file");
  if (!stats_flag.empty() && parse_stats(stats_flag) != tree.statistics) {
    throw UsageError("--stats " + stats_flag + " contradicts the file's statistics");
  }
  for (const auto& p : cdl::parameters(tree)) {
    if (p != "phiL" && p != "phiD" && p != "phiR" && p != "phiU") {
      throw UsageError("parameter $" + p + " cannot be bound from the command line");
    }
  }
  if (tree.measurements.size() != 2) {
    throw UsageError("circuit file needs one measure statement per party");
  }
  const auto compiled = cdl::compile(tree, {{"phiL", 0}, {"phiD", 0}, {"phiR", 0}, {"phiU", 0}});
  c.name = std::filesystem::path(ref).stem().string();
  c.statistics = tree.statistics;
  c.a = compiled.partitions[0];
  c.b = compiled.partitions[1];
  if (c.a.party == Party::B) std::swap(c.a, c.b);
  c.kind = kind_from_dofs(c.a.kind, c.b.kind).value();
  c.factory = cdl::make_factory(tree, c.name);
  return c;
}

json metadata(const Globals& g) {
  return json{{"tool_version", kToolVersion},
              {"seed", g.seed},
              {"sign_convention", "-1: D R dn H; +1: L U up V"},
              {"rng", kRngAlgorithm}};
}

json record(const std::string& experiment, const Globals& g) {
  json j;
  j["schema"] = 1;
  j["experiment"] = experiment;
  j["statistics"] = nullptr;
  j["phases"] = nullptr;
  j["table"] = nullptr;
  j["E"] = nullptr;
  j["chsh"] = nullptr;
  j["metadata"] = metadata(g);
  return j;
}

json phases_json(const PhaseSettings& s) {
  return json{{"phiL", s.phi_L}, {"phiD", s.phi_D}, {"phiR", s.phi_R}, {"phiU", s.phi_U}};
}

std::optional<double> try_correlation(const CoincidenceTable& t) {
  try {
    return correlation(t, default_signs());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) return std::nullopt;
    throw;
  }
}

void print_table(std::ostream& out, const CoincidenceTable& t) {
  out << "table";
  for (const auto& c : t.col_labels) out << '\t' << c;
  out << '\n';
  for (std::size_t i = 0; i < t.row_labels.size(); ++i) {
    out << "  " << t.row_labels[i];
    for (std::size_t j = 0; j < t.col_labels.size(); ++j) out << '\t' << num(t.at(i, j));
    out << '\n';
  }
}

// ---- table -----------------------------------------------------------

struct PhaseFlags {
  std::string l = "0", d = "0", r = "0", u = "0";
  PhaseSettings settings() const {
    return PhaseSettings{parse_real(l), parse_real(d), parse_real(r), parse_real(u)};
  }
};

void add_phase_flags(CLI::App* cmd, PhaseFlags& p) {
  cmd->add_option("--phase-l", p.l, "phi_L (radians or pi-expression)");
  cmd->add_option("--phase-d", p.d, "phi_D");
  cmd->add_option("--phase-r", p.r, "phi_R");
  cmd->add_option("--phase-u", p.u, "phi_U");
}

struct CircuitFlags {
  std::string circuit;
  std::string stats;
  std::string kind;
};

void add_circuit_flags(CLI::App* cmd, CircuitFlags& c) {
  cmd->add_option("circuit", c.circuit, "li, swap, or a .cdl file")->required();
  cmd->add_option("--stats", c.stats, "boson, fermion or distinguishable");
  cmd->add_option("--kind", c.kind, "path-path, spin-spin, spin-path or path-spin");
}

int cmd_table(const Globals& g, const CircuitFlags& cf, const PhaseFlags& pf, std::ostream& out) {
  const auto c = resolve(cf.circuit, cf.stats, cf.kind);
  const auto s = pf.settings();
  const auto run = c.factory(s);
  const auto table = coincidence_table(run, c.a, c.b);
  const double comp = completeness(run.final_state);
  if (std::abs(comp - 1.0) > g.tolerance) {
    throw NumericFailure("outcome probabilities sum to " + num(comp));
  }
  const auto e = try_correlation(table);

  if (g.json) {
    auto j = record("table", g);
    j["experiment"] = c.name;
    j["statistics"] = to_string(c.statistics);
    j["phases"] = phases_json(s);
    j["table"] = json{{"kind", to_string(c.kind)},
                      {"rows", table.row_labels},
                      {"cols", table.col_labels},
                      {"values", table.flat()},
                      {"total", table.total()},
                      {"completeness", comp}};
    if (e) j["E"] = *e;
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "experiment\t" << c.name << '\n'
      << "statistics\t" << to_string(c.statistics) << '\n'
      << "phases\tphiL=" << num(s.phi_L) << " phiD=" << num(s.phi_D) << " phiR=" << num(s.phi_R)
      << " phiU=" << num(s.phi_U) << '\n'
      << "kind\t" << to_string(c.kind) << '\n';
  print_table(out, table);
  out << "total\t" << num(table.total()) << '\n' << "completeness\t" << num(comp) << '\n';
  if (e) out << "E\t" << num(*e) << '\n';
  return kOk;
}

// ---- chsh ------------------------------------------------------------

int cmd_chsh(const Globals& g, const CircuitFlags& cf, const std::string& settings_text,
             std::ostream& out) {
  const auto c = resolve(cf.circuit, cf.stats, cf.kind);
  const auto parts = split(settings_text, ',');
  if (parts.size() != 4) throw UsageError("--settings needs four values a0,a1,b0,b1");
  ChshSettings s{parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]),
                 parse_real(parts[3])};
  const auto res = chsh(make_runner(c.factory, c.a, c.b), s);
  const auto verdict = chsh_verdict(res.value, g.tolerance);
  if (res.value > 2.0 * std::sqrt(2.0) + g.tolerance) {
    throw NumericFailure("CHSH value " + num(res.value) + " exceeds the quantum bound");
  }

  if (g.json) {
    auto j = record("chsh", g);
    j["experiment"] = c.name;
    j["statistics"] = to_string(c.statistics);
    j["phases"] = json{{"a0", s.a0}, {"a1", s.a1}, {"b0", s.b0}, {"b1", s.b1}};
    j["E"] = res.correlations;
    j["chsh"] = res.value;
    j["verdict"] = verdict;
    j["kind"] = to_string(c.kind);
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "experiment\t" << c.name << '\n'
      << "statistics\t" << to_string(c.statistics) << '\n'
      << "kind\t" << to_string(c.kind) << '\n'
      << "settings\ta0=" << num(s.a0) << " a1=" << num(s.a1) << " b0=" << num(s.b0)
      << " b1=" << num(s.b1) << '\n';
  const char* names[] = {"E(a0,b0)", "E(a1,b0)", "E(a0,b1)", "E(a1,b1)"};
  for (std::size_t i = 0; i < 4; ++i) out << names[i] << '\t' << num(res.correlations[i]) << '\n';
  out << "chsh\t" << num(res.value) << '\n' << "verdict\t" << verdict << '\n';
  return kOk;
}

// ---- sweep -----------------------------------------------------------

int cmd_sweep(const Globals& g, const CircuitFlags& cf, const std::string& grid_text,
              const std::string& output, std::ostream& out) {
  const auto c = resolve(cf.circuit, cf.stats, cf.kind);
  const auto parts = split(grid_text, ',');
  if (parts.size() != 3) throw UsageError("--grid needs start,stop,count");
  const double start = parse_real(parts[0]);
  const double stop = parse_real(parts[1]);
  std::size_t count = 0;
  const auto& ct = parts[2];
  const auto [ptr, ec] = std::from_chars(ct.data(), ct.data() + ct.size(), count);
  if (ec != std::errc{} || ptr != ct.data() + ct.size()) {
    throw UsageError("grid count must be a non-negative integer, got '" + ct + "'");
  }
  if (count > 64) throw UsageError("grid count above 64 points per axis");
  if (output.empty() && g.json) throw UsageError("--json needs --output; the sweep body is CSV");

  const auto values = linspace(start, stop, count);
  const auto grid = phase_grid(values);
  const auto records = sweep(c.factory, c.a, c.b, c.kind, grid);

  std::string csv = "phiL,phiD,phiR,phiU,kind,p00,p01,p10,p11,E\n";
  for (const auto& r : records) {
    if (r.table.row_labels.size() != 2 || r.table.col_labels.size() != 2) {
      throw UsageError("sweeps need 2x2 tables");
    }
    for (double p : r.table.flat()) {
      if (p < -g.tolerance || p > 1.0 + g.tolerance) {
        throw NumericFailure("table entry " + num(p) + " outside [0, 1]");
      }
    }
    const auto& s = r.settings;
    csv += num(s.phi_L) + "," + num(s.phi_D) + "," + num(s.phi_R) + "," + num(s.phi_U) + "," +
           std::string(to_string(r.kind));
    for (double p : r.table.flat()) csv += "," + num(p);
    csv += "," + num(r.correlation) + "\n";
  }

  if (output.empty()) {
    out << csv;
    return kOk;
  }
  {
    std::ofstream file(output, std::ios::binary | std::ios::trunc);
    if (!file) throw IoFailure("cannot write " + output);
    file << csv;
    file.flush();
    if (!file) throw IoFailure("write to " + output + " failed");
  }
  if (g.json) {
    auto j = record("sweep", g);
    j["experiment"] = c.name;
    j["statistics"] = to_string(c.statistics);
    j["kind"] = to_string(c.kind);
    j["rows"] = records.size();
    j["output"] = output;
    out << j.dump(2) << '\n';
  } else {
    out << "wrote " << records.size() << " rows to " << output << '\n';
  }
  return kOk;
}

// ---- signal ----------------------------------------------------------

int cmd_signal(const Globals& g, int dofs, int copies, std::uint64_t mc_trials,
               std::ostream& out) {
  if ((dofs > 0) == (copies > 0)) throw UsageError("give exactly one of --dofs N, --copies M");
  const SignalProtocol p{dofs > 0 ? SignalVariant::Dofs : SignalVariant::Copies,
                         dofs > 0 ? dofs : copies};
  double exact = 0.0;
  try {
    exact = signaling_decode_exact(p);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  std::optional<McEstimate> mc;
  if (mc_trials > 0) mc = signaling_decode_mc(p, mc_trials, g.seed);
  const std::string variant = p.variant == SignalVariant::Dofs ? "dofs" : "copies";

  if (g.json) {
    auto j = record("signal", g);
    j["variant"] = variant;
    j["count"] = p.count;
    j["exact"] = exact;
    if (mc) {
      j["mc"] = json{{"estimate", mc->estimate},
                     {"std_error", mc->std_error},
                     {"trials", mc->trials},
                     {"seed", mc->seed}};
    }
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "variant\t" << variant << '\n' << "count\t" << p.count << '\n';
  out << "exact\t" << num(exact) << '\n';
  if (mc) {
    out << "mc\t" << num(mc->estimate) << " +/- " << num(mc->std_error) << " (" << mc->trials
        << " trials, seed " << mc->seed << ")\n";
  }
  return kOk;
}

// ---- cascade ---------------------------------------------------------

int cmd_cascade(const Globals& g, int n, const std::string& basis_text, std::ostream& out) {
  if (n < 1 || n > kMaxCascadeDofs) {
    throw UsageError("--n must be in 1.." + std::to_string(kMaxCascadeDofs));
  }
  if (basis_text != "Z" && basis_text != "X") throw UsageError("--basis must be Z or X");
  const Basis basis = basis_text == "Z" ? Basis::Z : Basis::X;
  const auto dist = clone_distribution(basis, n);
  const std::size_t detectors = std::size_t{1} << n;
  std::vector<double> probs(detectors, 0.0);
  for (const auto& [bits, p] : dist) probs[std::stoull(bits, nullptr, 2)] = p;
  const double extremes = probs.front() + probs.back();

  if (g.json) {
    auto j = record("cascade", g);
    j["n"] = n;
    j["basis"] = basis_text;
    j["detectors"] = probs;
    j["extremes"] = extremes;
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "n\t" << n << '\n' << "basis\t" << basis_text << '\n';
  for (std::size_t d = 0; d < detectors; ++d) out << 'D' << d + 1 << '\t' << num(probs[d]) << '\n';
  out << "D1+D" << detectors << '\t' << num(extremes) << '\n';
  return kOk;
}

// ---- check -----------------------------------------------------------

int cmd_check(const Globals& g, const std::string& path, std::ostream& out, std::ostream& err) {
  std::string source;
  try {
    source = cdl::read_file(path);
  } catch (const std::runtime_error& e) {
    throw IoFailure(e.what());
  }
  auto j = record("check", g);
  j["file"] = path;
  try {
    const auto tree = cdl::parse_source(source);
    cdl::ParameterMap zeros;
    for (const auto& p : cdl::parameters(tree)) zeros[p] = 0.0;
    const auto compiled = cdl::compile(tree, zeros);
    if (g.json) {
      j["ok"] = true;
      j["statistics"] = to_string(tree.statistics);
      j["particles"] = tree.particles.size();
      j["elements"] = tree.elements.size();
      j["partitions"] = tree.measurements.size();
      out << j.dump(2) << '\n';
    } else {
      out << "ok: " << tree.particles.size() << " particles, " << tree.elements.size()
          << " elements, " << tree.measurements.size() << " partitions\n";
    }
    return kOk;
  } catch (const cdl::ParseError& e) {
    if (g.json) {
      std::vector<std::string> expected;
      for (auto k : e.expected()) expected.emplace_back(cdl::to_string(k));
      j["ok"] = false;
      j["error"] = json{{"kind", cdl::to_string(e.kind())},
                        {"line", e.line()},
                        {"col", e.col()},
                        {"message", e.message()},
                        {"expected", expected}};
      out << j.dump(2) << '\n';
    } else {
      err << path << ':' << e.what() << '\n';
    }
    return kInputError;
  } catch (const Error& e) {
    if (g.json) {
      j["ok"] = false;
      j["error"] = json{{"kind", "compile error"}, {"message", e.what()}};
      out << j.dump(2) << '\n';
    } else {
      err << path << ": compile error: " << e.what() << '\n';
    }
    return kInputError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyper-hybrid entanglement simulator", "hhes"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Emit a JSON record");
  app.add_option("--seed", g.seed, "Monte Carlo seed");
  app.add_option("--tolerance", g.tolerance, "Numeric invariant tolerance")
      ->check(CLI::PositiveNumber);

  CircuitFlags table_c, chsh_c, sweep_c;
  PhaseFlags table_p;
  auto* table = app.add_subcommand("table", "Coincidence table of a circuit");
  add_circuit_flags(table, table_c);
  add_phase_flags(table, table_p);

  std::string settings = "0,pi,pi/4,-pi/4";
  auto* chsh_cmd = app.add_subcommand("chsh", "CHSH combination over four settings");
  add_circuit_flags(chsh_cmd, chsh_c);
  chsh_cmd->add_option("--settings", settings, "a0,a1,b0,b1")->capture_default_str();

  std::string grid, output;
  bool csv = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tables over a phase grid, as CSV");
  add_circuit_flags(sweep_cmd, sweep_c);
  sweep_cmd->add_option("--grid", grid, "start,stop,count per phase axis")->required();
  sweep_cmd->add_option("--output,-o", output, "CSV path (stdout if omitted)");
  sweep_cmd->add_flag("--csv", csv, "CSV output (the default)");

  int dofs = 0, copies = 0;
  std::uint64_t mc = 0;
  auto* signal = app.add_subcommand("signal", "Clone-based signaling decode probability");
  signal->add_option("--dofs", dofs, "DOFs per clone");
  signal->add_option("--copies", copies, "Copies of the two-DOF protocol");
  signal->add_option("--mc", mc, "Monte Carlo trials");

  int n = 2;
  std::string basis = "X";
  auto* cascade = app.add_subcommand("cascade", "Detector distribution of a sorter cascade");
  cascade->add_option("--n", n, "Cloned DOFs")->capture_default_str();
  cascade->add_option("--basis", basis, "Alice's basis, Z or X")->capture_default_str();

  std::string check_path;
  auto* check = app.add_subcommand("check", "Validate a circuit file");
  check->add_option("file", check_path, "Circuit file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*table) return cmd_table(g, table_c, table_p, out);
    if (*chsh_cmd) return cmd_chsh(g, chsh_c, settings, out);
    if (*sweep_cmd) return cmd_sweep(g, sweep_c, grid, output, out);
    if (*signal) return cmd_signal(g, dofs, copies, mc, out);
    if (*cascade) return cmd_cascade(g, n, basis, out);
    return cmd_check(g, check_path, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const cdl::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const NumericFailure& e) {
    err << "numeric invariant failed: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool numeric =
        e.code() == ErrorCode::ZeroNorm || e.code() == ErrorCode::ZeroCoincidenceMass;
    return numeric ? kNumericFailure : kInputError;
  }
}

}  // namespace hhes::cli
