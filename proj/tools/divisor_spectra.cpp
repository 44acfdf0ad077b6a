// Command line front end: spectra, energies, and verification sweeps for
// divisor prime graphs. Exit codes: 0 success or all checks passed, 1
// verification failure, 2 usage error, 3 resource cap exceeded.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divspec/divspec.hpp"

namespace {

using divspec::Variant;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Table output carries 10 significant digits, machine output 17.
std::string fmt10(double v) { return fmt("%.10g", v); }
std::string fmt17(double v) { return fmt("%.17g", v); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct Options {
  std::uint64_t n = 1;
  std::string range;
  bool standard = false;
  bool modified = false;
  std::string format = "table";
  std::uint64_t tau_cap = divspec::kDefaultDimCap;
  double tolerance = divspec::kDefaultRelTol;
  bool show_matrix = false;
  bool use_kronecker = false;
  unsigned jobs = 1;
  std::vector<std::string> check_tokens{"all"};

  Variant variant() const {
    return standard ? Variant::standard : Variant::modified;
  }
};

void add_common_options(CLI::App* sub, Options& o) {
  auto* mod = sub->add_flag("--modified", o.modified,
                            "modified graph: the loop at 1 is kept (default)");
  auto* std_flag =
      sub->add_flag("--standard", o.standard,
                    "standard graph: the loop at 1 is discarded");
  mod->excludes(std_flag);
  std_flag->excludes(mod);
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  sub->add_option("--tau-cap", o.tau_cap,
                  "largest accepted matrix dimension tau(n)")
      ->envname("DIVISOR_SPECTRA_TAU_CAP")
      ->capture_default_str();
  sub->add_option("--tolerance", o.tolerance,
                  "relative tolerance for closed-vs-numeric verdicts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_flag("--show-matrix", o.show_matrix,
                "print the adjacency matrix (table format)");
  sub->add_flag("--kronecker", o.use_kronecker,
                "assemble the adjacency matrix from Kronecker blocks instead "
                "of pairwise gcds (modified variant, n >= 2; no effect on "
                "verify, whose lemma4 check exercises both paths)");
  sub->add_option("--jobs", o.jobs, "worker threads for verify sweeps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t value = 0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    throw std::invalid_argument("not a nonnegative integer: '" + s + "'");
  }
  return value;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  const std::size_t pos = s.find("..");
  if (pos == std::string::npos) {
    throw std::invalid_argument("range must be written lo..hi, got '" + s +
                                "'");
  }
  return {parse_u64(s.substr(0, pos)), parse_u64(s.substr(pos + 2))};
}

std::vector<divspec::Check> parse_checks(
    const std::vector<std::string>& tokens) {
  std::vector<divspec::Check> checks;
  const auto push = [&checks](divspec::Check c) {
    for (divspec::Check seen : checks) {
      if (seen == c) return;
    }
    checks.push_back(c);
  };
  for (const std::string& token : tokens) {
    std::string lower = token;
    for (char& c : lower) c = static_cast<char>(std::tolower(c));
    if (lower == "all") {
      for (divspec::Check c : divspec::kAllChecks) push(c);
    } else {
      push(divspec::parse_check(lower));
    }
  }
  return checks;
}

divspec::DivisorGraph build_graph(const Options& o) {
  if (o.use_kronecker) {
    if (o.variant() == Variant::standard) {
      throw std::invalid_argument(
          "--kronecker requires the modified variant");
    }
    return divspec::build_kronecker(o.n, divspec::kDefaultFactorCap,
                                    o.tau_cap);
  }
  return divspec::build_direct(o.n, o.variant(), divspec::kDefaultFactorCap,
                               o.tau_cap);
}

nlohmann::json report_to_json(const divspec::EnergyReport& rep) {
  nlohmann::json j;
  j["n"] = rep.n;
  j["variant"] = divspec::variant_name(rep.variant);
  j["tau"] = rep.tau;
  j["sigma"] = rep.sigma;
  j["mu"] = rep.mu;
  j["eigenvalues"] = rep.eigenvalues;
  j["energy_numeric"] = rep.energy_numeric;
  j["energy_closed"] =
      rep.energy_closed ? nlohmann::json(*rep.energy_closed) : nullptr;
  j["residual"] = rep.residual ? nlohmann::json(*rep.residual) : nullptr;
  nlohmann::json entries = nlohmann::json::array();
  for (const divspec::VertexEnergyEntry& e : rep.vertex_energies) {
    nlohmann::json row;
    row["divisor"] = e.divisor;
    row["numeric"] = e.numeric;
    row["closed"] = e.closed ? nlohmann::json(*e.closed) : nullptr;
    row["residual"] = e.residual ? nlohmann::json(*e.residual) : nullptr;
    entries.push_back(std::move(row));
  }
  j["vertex_energies"] = std::move(entries);
  j["passed"] = rep.passed;
  return j;
}

void print_table_header(const divspec::DivisorGraph& g,
                        const divspec::EnergyReport& rep) {
  std::printf("n: %llu (%s divisor prime graph)\n",
              static_cast<unsigned long long>(g.n),
              divspec::variant_name(g.variant));
  std::printf("tau: %llu   sigma: %u   mu: %s\n",
              static_cast<unsigned long long>(rep.tau), rep.sigma,
              fmt10(rep.mu).c_str());
}

void print_matrix(const divspec::DivisorGraph& g) {
  std::printf("adjacency matrix:\n");
  for (std::size_t i = 0; i < g.order(); ++i) {
    std::printf(" ");
    for (std::size_t j = 0; j < g.order(); ++j) {
      std::printf(" %d", static_cast<int>(g.adjacency(i, j)));
    }
    std::printf("\n");
  }
}

enum class GraphCommand { spectrum, energy, vertex_energy };

int run_graph_command(GraphCommand cmd, const Options& o) {
  const divspec::DivisorGraph g = build_graph(o);
  const divspec::SpectralDecomposition s =
      divspec::eigen_symmetric(g.adjacency);
  const divspec::EnergyReport rep = divspec::make_energy_report(
      g, s, o.tolerance, divspec::kDefaultAbsTol);

  if (o.format == "json") {
    std::printf("%s\n", report_to_json(rep).dump(2).c_str());
  } else if (o.format == "csv") {
    if (cmd == GraphCommand::spectrum) {
      std::printf("index,eigenvalue\n");
      for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        std::printf("%zu,%s\n", i, fmt17(rep.eigenvalues[i]).c_str());
      }
    } else if (cmd == GraphCommand::energy) {
      std::printf(
          "n,variant,tau,sigma,mu,energy_numeric,energy_closed,residual,"
          "passed\n");
      std::printf("%llu,%s,%llu,%u,%s,%s,%s,%s,%s\n",
                  static_cast<unsigned long long>(rep.n),
                  divspec::variant_name(rep.variant),
                  static_cast<unsigned long long>(rep.tau), rep.sigma,
                  fmt17(rep.mu).c_str(), fmt17(rep.energy_numeric).c_str(),
                  rep.energy_closed ? fmt17(*rep.energy_closed).c_str() : "",
                  rep.residual ? fmt17(*rep.residual).c_str() : "",
                  rep.passed ? "true" : "false");
    } else {
      std::printf("divisor,numeric,closed,residual\n");
      for (const divspec::VertexEnergyEntry& e : rep.vertex_energies) {
        std::printf("%llu,%s,%s,%s\n",
                    static_cast<unsigned long long>(e.divisor),
                    fmt17(e.numeric).c_str(),
                    e.closed ? fmt17(*e.closed).c_str() : "",
                    e.residual ? fmt17(*e.residual).c_str() : "");
      }
    }
  } else {
    print_table_header(g, rep);
    if (cmd == GraphCommand::spectrum) {
      std::printf("divisors:");
      for (std::uint64_t d : g.vertices) {
        std::printf(" %llu", static_cast<unsigned long long>(d));
      }
      std::printf("\n");
      if (o.show_matrix) print_matrix(g);
      std::printf("eigenvalues (descending):\n");
      for (double lam : rep.eigenvalues) {
        std::printf("  %s\n", fmt10(lam).c_str());
      }
      const double cutoff =
          divspec::zero_eigenvalue_threshold(g.adjacency.frobenius_norm());
      std::printf("zero eigenvalues (|lambda| < %s): %zu of %zu\n",
                  fmt10(cutoff).c_str(), divspec::zero_eigenvalue_count(
                                             s, g.adjacency.frobenius_norm()),
                  rep.eigenvalues.size());
    } else if (cmd == GraphCommand::energy) {
      if (o.show_matrix) print_matrix(g);
      std::printf("energy (numeric): %s\n", fmt10(rep.energy_numeric).c_str());
      if (rep.energy_closed) {
        std::printf("energy (closed):  %s\n",
                    fmt10(*rep.energy_closed).c_str());
        std::printf("residual: %s\n", fmt10(*rep.residual).c_str());
      } else {
        std::printf("energy (closed):  not applicable for this variant\n");
      }
      std::printf("verdict: %s\n", rep.passed ? "pass" : "FAIL");
    } else {
      if (o.show_matrix) print_matrix(g);
      std::printf("%-12s %-16s %-16s %s\n", "divisor", "numeric", "closed",
                  "residual");
      double sum = 0.0;
      for (const divspec::VertexEnergyEntry& e : rep.vertex_energies) {
        sum += e.numeric;
        std::printf("%-12llu %-16s %-16s %s\n",
                    static_cast<unsigned long long>(e.divisor),
                    fmt10(e.numeric).c_str(),
                    e.closed ? fmt10(*e.closed).c_str() : "-",
                    e.residual ? fmt10(*e.residual).c_str() : "-");
      }
      std::printf("sum of vertex energies: %s\n", fmt10(sum).c_str());
      std::printf("total energy:           %s\n",
                  fmt10(rep.energy_numeric).c_str());
      std::printf("sum residual:           %s\n",
                  fmt10(rep.vertex_sum_residual).c_str());
      std::printf("verdict: %s\n", rep.passed ? "pass" : "FAIL");
    }
  }
  return rep.passed ? 0 : 1;
}

int run_verify(const Options& o) {
  divspec::SweepConfig cfg;
  std::tie(cfg.n_lo, cfg.n_hi) = parse_range(o.range);
  cfg.variant = o.variant();
  cfg.tau_cap = o.tau_cap;
  cfg.tolerance_rel = o.tolerance;
  cfg.checks = parse_checks(o.check_tokens);
  const divspec::SweepResult r = divspec::run_sweep(cfg, o.jobs);

  if (o.format == "json") {
    nlohmann::json j;
    j["range"] = {{"lo", cfg.n_lo}, {"hi", cfg.n_hi}};
    j["variant"] = divspec::variant_name(cfg.variant);
    j["tau_cap"] = cfg.tau_cap;
    j["tolerance_rel"] = cfg.tolerance_rel;
    j["tolerance_abs"] = cfg.tolerance_abs;
    nlohmann::json names = nlohmann::json::array();
    for (divspec::Check c : cfg.checks) names.push_back(divspec::check_name(c));
    j["checks"] = std::move(names);
    nlohmann::json summaries = nlohmann::json::array();
    for (const auto& [check, summary] : r.summaries) {
      summaries.push_back({{"check", divspec::check_name(check)},
                           {"checked", summary.checked},
                           {"passed", summary.passed},
                           {"failed", summary.failed},
                           {"worst_residual", summary.worst_residual},
                           {"worst_n", summary.worst_n}});
    }
    j["summaries"] = std::move(summaries);
    nlohmann::json failures = nlohmann::json::array();
    for (const divspec::CheckResult& res : r.results) {
      if (res.passed) continue;
      failures.push_back({{"n", res.n},
                          {"check", divspec::check_name(res.check)},
                          {"residual", res.residual}});
    }
    j["failures"] = std::move(failures);
    nlohmann::json skips = nlohmann::json::array();
    for (const divspec::Skip& s : r.skipped) {
      skips.push_back({{"n", s.n}, {"reason", s.reason}});
    }
    j["skipped"] = std::move(skips);
    j["checked"] = r.results.size();
    j["all_passed"] = r.all_passed();
    std::printf("%s\n", j.dump(2).c_str());
  } else if (o.format == "csv") {
    std::printf("kind,n,check,residual,passed,reason\n");
    for (const divspec::CheckResult& res : r.results) {
      std::printf("result,%llu,%s,%s,%s,\n",
                  static_cast<unsigned long long>(res.n),
                  divspec::check_name(res.check), fmt17(res.residual).c_str(),
                  res.passed ? "true" : "false");
    }
    for (const divspec::Skip& s : r.skipped) {
      std::printf("skip,%llu,,,,%s\n", static_cast<unsigned long long>(s.n),
                  csv_escape(s.reason).c_str());
    }
  } else {
    std::printf("range: %llu..%llu   variant: %s   tau cap: %llu   "
                "tolerance: %s\n",
                static_cast<unsigned long long>(cfg.n_lo),
                static_cast<unsigned long long>(cfg.n_hi),
                divspec::variant_name(cfg.variant),
                static_cast<unsigned long long>(cfg.tau_cap),
                fmt10(cfg.tolerance_rel).c_str());
    std::printf("%-20s %8s %8s %8s %16s %10s\n", "check", "checked", "passed",
                "failed", "worst residual", "worst n");
    for (const auto& [check, summary] : r.summaries) {
      std::printf("%-20s %8zu %8zu %8zu %16s %10llu\n",
                  divspec::check_name(check), summary.checked, summary.passed,
                  summary.failed, fmt10(summary.worst_residual).c_str(),
                  static_cast<unsigned long long>(summary.worst_n));
    }
    for (const divspec::CheckResult& res : r.results) {
      if (res.passed) continue;
      std::printf("FAIL n=%llu check=%s residual=%s\n",
                  static_cast<unsigned long long>(res.n),
                  divspec::check_name(res.check), fmt10(res.residual).c_str());
    }
    std::printf("skipped: %zu\n", r.skipped.size());
    const std::size_t shown = std::min<std::size_t>(r.skipped.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
      std::printf("  n = %llu: %s\n",
                  static_cast<unsigned long long>(r.skipped[i].n),
                  r.skipped[i].reason.c_str());
    }
    if (r.skipped.size() > shown) {
      std::printf("  ... and %zu more\n", r.skipped.size() - shown);
    }
    std::printf("result: %zu checks, %s\n", r.results.size(),
                r.all_passed() ? "all passed" : "FAILURES PRESENT");
  }
  return r.all_passed() ? 0 : 1;
}

int run(int argc, char** argv) {
  CLI::App app{"Divisor prime graph spectra, energies, and closed-form "
               "verification"};
  app.require_subcommand(1);
  Options o;

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Eigenvalues of the divisor prime graph of n");
  spectrum->footer("csv columns: index,eigenvalue");
  CLI::App* energy = app.add_subcommand(
      "energy", "Total graph energy, numeric and closed form");
  energy->footer(
      "csv columns: "
      "n,variant,tau,sigma,mu,energy_numeric,energy_closed,residual,passed");
  CLI::App* vertex = app.add_subcommand(
      "vertex-energy", "Per-divisor vertex energies, numeric and closed form");
  vertex->footer("csv columns: divisor,numeric,closed,residual");
  CLI::App* verify = app.add_subcommand(
      "verify", "Replay the closed-form checks against the eigensolver over "
                "a range of n");
  verify->footer(
      "csv columns: kind,n,check,residual,passed,reason (kind is result or "
      "skip)");

  for (CLI::App* sub : {spectrum, energy, vertex}) {
    sub->add_option("n", o.n, "positive integer to factor")->required();
    add_common_options(sub, o);
  }
  verify->add_option("range", o.range, "inclusive range of n, written lo..hi")
      ->required();
  add_common_options(verify, o);
  verify
      ->add_option("--checks", o.check_tokens,
                   "comma-separated list: thm1, thm2, thm3, thm4, thm5, "
                   "lemma2, lemma4, spectrum-structure, all")
      ->delimiter(',')
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (spectrum->parsed()) return run_graph_command(GraphCommand::spectrum, o);
  if (energy->parsed()) return run_graph_command(GraphCommand::energy, o);
  if (vertex->parsed()) {
    return run_graph_command(GraphCommand::vertex_energy, o);
  }
  return run_verify(o);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const divspec::CapExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const divspec::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::bad_alloc&) {
    std::fprintf(stderr, "error: out of memory\n");
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
