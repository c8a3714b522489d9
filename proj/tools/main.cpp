#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spintriad/bounds.hpp"
#include "spintriad/catalog.hpp"
#include "spintriad/designs.hpp"
#include "spintriad/estimation.hpp"
#include "spintriad/json_io.hpp"
#include "spintriad/verify.hpp"

namespace {

using namespace spintriad;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUnknownName = 3;

struct Config {
  double tolerance = 1e-9;
  long long samples = 1000000;
  uint64_t seed = 0;
  std::string format = "md";
  int workers = 1;
};

std::string fmt(double v, int prec = 9) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

Ket parse_state(const std::string& text) {
  const double s = 1.0 / std::sqrt(2.0);
  std::string t = text;
  if (t.size() >= 2 && t.front() == '|' && t.back() == '>') t = t.substr(1, t.size() - 2);
  if (t == "0") return basis_ket(1, 0);
  if (t == "1") return basis_ket(1, 1);
  if (t == "+") return make_ket({s, s});
  if (t == "-") return make_ket({s, -s});
  if (t == "i" || t == "+i") return make_ket({s, Complex(0, s)});
  if (t == "-i") return make_ket({s, Complex(0, -s)});
  // Otherwise a path to a ket in the JSON wire format.
  Ket k = ket_from_json(load_json_file(text));
  if (k.dim() != 2) throw std::invalid_argument("state file must hold a single-qubit ket");
  return k.normalized();
}

FidelityReport make_report(const std::string& name, const Povm& p, const Config& cfg, bool with_mc) {
  FidelityReport r;
  r.strategy = name;
  r.analytic = analytic_fidelity(name);
  r.analytic_expr = analytic_expression(name);
  r.computed = estimation_fidelity(p);
  r.samples = 0;
  r.seed = cfg.seed;
  if (with_mc) {
    const McEstimate mc =
        average_fidelity_mc(p, optimal_estimators(p), cfg.samples, cfg.seed, cfg.workers);
    r.mc_mean = mc.mean;
    r.mc_std_error = mc.std_error;
    r.samples = mc.samples;
  }
  return r;
}

void print_report_row(const FidelityReport& r, const std::string& display_name,
                      const Config& cfg, std::ostream& os) {
  if (cfg.format == "csv") {
    os << display_name << "," << (r.analytic_expr ? *r.analytic_expr : "") << ","
       << (r.analytic ? fmt(*r.analytic) : "") << "," << fmt(r.computed);
    if (r.mc_mean) os << "," << fmt(*r.mc_mean) << "," << fmt(*r.mc_std_error, 7);
    os << "\n";
    return;
  }
  os << display_name << " | " << (r.analytic_expr ? *r.analytic_expr : "-") << " | "
     << fmt(r.computed);
  if (r.mc_mean) os << " | " << fmt(*r.mc_mean) << " +- " << fmt(*r.mc_std_error, 7);
  os << "\n";
}

int cmd_fidelity(const std::string& name, const std::string& povm_file,
                 const std::string& export_path, bool with_mc, const Config& cfg) {
  Povm p;
  std::string strategy = name;
  if (!povm_file.empty()) {
    strategy = povm_file;
    try {
      p = povm_from_json(load_json_file(povm_file));
    } catch (const std::exception& e) {
      std::cerr << "invalid POVM: " << e.what() << "\n";
      return kExitInputError;
    }
  } else {
    try {
      p = povm_by_name(name);
    } catch (const std::exception&) {
      std::cerr << "unknown catalog name: " << name << " (try";
      for (const auto& n : catalog_names()) std::cerr << " " << n;
      std::cerr << " or --povm-file)\n";
      return kExitUnknownName;
    }
  }
  if (!export_path.empty()) {
    std::ofstream out(export_path);
    if (!out) {
      std::cerr << "cannot write " << export_path << "\n";
      return kExitInputError;
    }
    out << povm_to_json(p).dump(2) << "\n";
  }
  const FidelityReport r = make_report(strategy, p, cfg, with_mc);
  if (cfg.format == "json") {
    std::cout << fidelity_report_to_json(r).dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "strategy: " << r.strategy << "\n";
  if (r.analytic)
    std::cout << "analytic: " << *r.analytic_expr << " = " << fmt(*r.analytic) << "\n";
  std::cout << "computed: " << fmt(r.computed) << "\n";
  if (r.mc_mean)
    std::cout << "mc: " << fmt(*r.mc_mean) << " +- " << fmt(*r.mc_std_error, 7) << "  (samples "
              << r.samples << ", seed " << r.seed << ")\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, const Config& cfg, long long grid, long long randoms) {
  VerifyConfig vc;
  vc.tol = cfg.tolerance;
  vc.samples = cfg.samples;
  vc.seed = cfg.seed;
  vc.workers = cfg.workers;
  vc.grid = grid;
  vc.randoms = randoms;
  std::vector<CheckResult> results;
  try {
    results = run_suite(suite, vc);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUnknownName;
  }
  int failed = 0;
  for (const CheckResult& r : results) {
    std::cout << (r.passed ? "[ok]   " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) std::cout << "  -- " << r.detail;
    std::cout << "\n";
    if (!r.passed) ++failed;
  }
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_simulate(const std::string& protocol, long long shots, const std::string& state,
                 const Config& cfg) {
  Protocol proto;
  if (protocol == "2to1") {
    proto = protocol_2to1();
  } else if (protocol == "1to2") {
    proto = protocol_1to2();
  } else {
    std::cerr << "unknown protocol: " << protocol << " (try 2to1 or 1to2)\n";
    return kExitUnknownName;
  }

  auto print_histogram = [&](const SimResult& sim) {
    std::cout << "outcome histogram (" << sim.shots << " shots, seed " << sim.seed << "):\n";
    for (size_t j = 0; j < sim.counts.size(); ++j) {
      const std::string fl = proto.first.labels.empty() ? std::to_string(j) : proto.first.labels[j];
      for (size_t k = 0; k < sim.counts[j].size(); ++k) {
        const std::string bl = proto.branches[j].labels.empty() ? std::to_string(k)
                                                                : proto.branches[j].labels[k];
        std::cout << "  " << fl << "|" << bl << "  count " << sim.counts[j][k] << "  p "
                  << fmt(sim.probs[j][k]) << "\n";
      }
    }
  };

  if (!state.empty()) {
    Ket psi;
    try {
      psi = parse_state(state);
    } catch (const std::exception& e) {
      std::cerr << "malformed state: " << e.what() << "\n";
      return kExitInputError;
    }
    print_histogram(simulate_protocol(proto, psi, shots, cfg.seed, cfg.workers));
    return kExitOk;
  }

  const HaarSimResult res = simulate_protocol_haar(proto, shots, cfg.seed, cfg.workers);
  print_histogram(res.sim);
  std::cout << "mc fidelity: " << fmt(res.fidelity.mean) << " +- "
            << fmt(res.fidelity.std_error, 7) << "  (samples " << res.fidelity.samples
            << ", seed " << res.fidelity.seed << ")\n";
  return kExitOk;
}

int cmd_report(bool with_mc, const Config& cfg) {
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"local-xyz", "Local"},
      {"m-1to2", "1+2 adaptive"},
      {"m-2to1", "Biseparable (2+1 adaptive)"},
      {"collective-octahedron", "Genuine collective"},
  };
  std::vector<FidelityReport> reports;
  for (const auto& [name, display] : rows)
    reports.push_back(make_report(name, povm_by_name(name), cfg, with_mc));

  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(fidelity_report_to_json(r));
    std::cout << arr.dump(2) << "\n";
    return kExitOk;
  }
  if (cfg.format == "csv") {
    std::cout << "measurement,analytic_expr,analytic,computed";
    if (with_mc) std::cout << ",mc_mean,mc_stderr";
    std::cout << "\n";
    for (size_t i = 0; i < rows.size(); ++i) print_report_row(reports[i], rows[i].second, cfg, std::cout);
    return kExitOk;
  }
  std::cout << "Measurement | Maximum estimation fidelity | Computed";
  if (with_mc) std::cout << " | Monte Carlo";
  std::cout << "\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    FidelityReport r = reports[i];
    std::cout << rows[i].second << " | " << *r.analytic_expr << " ~ " << fmt(*r.analytic, 5)
              << " | " << fmt(r.computed);
    if (r.mc_mean) std::cout << " | " << fmt(*r.mc_mean) << " +- " << fmt(*r.mc_std_error, 7);
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Estimation of three parallel qubit spins: fidelities, bound checks, protocol simulation"};
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--samples", cfg.samples, "Monte Carlo sample count")->capture_default_str();
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "tolerance for exact checks")->capture_default_str();
  app.add_option("--format", cfg.format, "output format: json, csv, or md")
      ->check(CLI::IsMember({"json", "csv", "md"}))
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker thread count")->capture_default_str();

  std::string name, povm_file, export_path, suite, protocol, state;
  bool with_mc = false;
  long long shots = 100000, grid = 1000, randoms = 100000;

  CLI::App* fid = app.add_subcommand("fidelity", "estimation fidelity of a catalog or file POVM");
  fid->fallthrough();
  fid->add_option("name", name, "catalog name");
  fid->add_option("--povm-file", povm_file, "POVM in the JSON wire format");
  fid->add_option("--export-povm", export_path, "write the POVM back out in the JSON wire format");
  fid->add_flag("--mc", with_mc, "also run the Monte Carlo estimate");

  CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
  ver->fallthrough();
  ver->add_option("suite", suite, "table1, appendixA, appendixB, appendixC, designs, invariants, all")
      ->required();
  ver->add_option("--grid", grid, "grid resolution per axis for bound scans")->capture_default_str();
  ver->add_option("--randoms", randoms, "random samples for bound scans")->capture_default_str();

  CLI::App* sim = app.add_subcommand("simulate", "simulate an adaptive protocol shot by shot");
  sim->fallthrough();
  sim->add_option("protocol", protocol, "2to1 or 1to2")->required();
  sim->add_option("--shots", shots, "number of shots")->capture_default_str();
  sim->add_option("--state", state, "fixed input state (|0>, |1>, |+>, |->, |i>, |-i>, or a ket JSON file)");

  CLI::App* rep = app.add_subcommand("report", "reproduce the four-strategy fidelity table");
  rep->fallthrough();
  rep->add_flag("--mc", with_mc, "include Monte Carlo columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  if (const char* env = std::getenv("SPIN_TRIAD_WORKERS")) {
    try {
      cfg.workers = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed SPIN_TRIAD_WORKERS\n";
    }
  }

  try {
    if (fid->parsed()) {
      if (name.empty() && povm_file.empty()) {
        std::cerr << "fidelity: need a catalog name or --povm-file\n";
        return kExitInputError;
      }
      return cmd_fidelity(name, povm_file, export_path, with_mc, cfg);
    }
    if (ver->parsed()) return cmd_verify(suite, cfg, grid, randoms);
    if (sim->parsed()) return cmd_simulate(protocol, shots, state, cfg);
    if (rep->parsed()) return cmd_report(with_mc, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
