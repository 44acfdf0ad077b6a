#pragma once

// Sweep harness that replays the closed-form claims against the numeric
// eigensolver over a range of n. Every n in the range lands either in the
// result list (at least one enabled check applied) or in the skip list with a
// reason, never both.
//
// Checks and their pinned variants:
//   thm1                standard prime power total energy, 2 sqrt(a)
//   thm2                modified prime power total energy
//   thm3                modified total energy, any n >= 2
//   thm4                modified prime power vertex energies (center/pendant)
//   thm5                modified vertex energies, any n >= 2
//   lemma2              vertex energies sum to the total (config's variant)
//   lemma4              Kronecker assembly equals the direct build, entrywise
//   spectrum-structure  nonzero spectrum = 2^r block eigenvalue products,
//                       zero multiplicity tau - 2^r, nonzeros above 1/tau
//
// lemma2 compares the solver against itself, so it uses the fixed internal
// tolerance rather than the configured one.

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "divspec/energy.hpp"
#include "divspec/graph.hpp"
#include "divspec/linalg.hpp"
#include "divspec/numtheory.hpp"

namespace divspec {

enum class Check {
  thm1,
  thm2,
  thm3,
  thm4,
  thm5,
  lemma2,
  lemma4,
  spectrum_structure,
};

inline constexpr std::array<Check, 8> kAllChecks = {
    Check::thm1,   Check::thm2,   Check::thm3,   Check::thm4,
    Check::thm5,   Check::lemma2, Check::lemma4, Check::spectrum_structure,
};

inline const char* check_name(Check c) {
  switch (c) {
    case Check::thm1: return "thm1";
    case Check::thm2: return "thm2";
    case Check::thm3: return "thm3";
    case Check::thm4: return "thm4";
    case Check::thm5: return "thm5";
    case Check::lemma2: return "lemma2";
    case Check::lemma4: return "lemma4";
    case Check::spectrum_structure: return "spectrum-structure";
  }
  return "unknown";
}

// Case-insensitive; accepts the check_name tokens.
inline Check parse_check(std::string token) {
  std::transform(token.begin(), token.end(), token.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  for (Check c : kAllChecks) {
    if (token == check_name(c)) return c;
  }
  throw std::invalid_argument("unknown check: " + token);
}

struct SweepConfig {
  std::uint64_t n_lo = 2;
  std::uint64_t n_hi = 2;
  // Variant for checks that are not pinned to one (lemma2). The theorem
  // checks build the variant their closed form is about regardless.
  Variant variant = Variant::modified;
  std::uint64_t tau_cap = kDefaultDimCap;
  double tolerance_rel = kDefaultRelTol;
  double tolerance_abs = kDefaultAbsTol;
  std::vector<Check> checks{kAllChecks.begin(), kAllChecks.end()};
};

struct CheckResult {
  std::uint64_t n = 0;
  Check check = Check::thm1;
  double residual = 0.0;
  bool passed = false;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct Skip {
  std::uint64_t n = 0;
  std::string reason;

  friend bool operator==(const Skip&, const Skip&) = default;
};

struct CheckSummary {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double worst_residual = 0.0;
  std::uint64_t worst_n = 0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<CheckResult> results;  // ascending n, config's check order per n
  std::vector<Skip> skipped;         // ascending n
  std::map<Check, CheckSummary> summaries;
  std::optional<CheckResult> worst;

  bool all_passed() const {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.passed; });
  }
};

namespace detail {

// Lazily built per-n graphs and spectra, shared by all checks of one n.
class NContext {
 public:
  NContext(std::uint64_t n, Factorization f, const SweepConfig& cfg)
      : n_(n), f_(std::move(f)), cfg_(cfg) {}

  std::uint64_t n() const { return n_; }
  const Factorization& factorization() const { return f_; }
  const SweepConfig& config() const { return cfg_; }

  const DivisorGraph& graph(Variant v) {
    auto& slot = graph_[index(v)];
    if (!slot) slot = build_direct(n_, v, kDefaultFactorCap, cfg_.tau_cap);
    return *slot;
  }

  const SpectralDecomposition& eigen(Variant v) {
    auto& slot = eigen_[index(v)];
    if (!slot) slot = eigen_symmetric(graph(v).adjacency);
    return *slot;
  }

 private:
  static std::size_t index(Variant v) {
    return v == Variant::standard ? 0 : 1;
  }

  std::uint64_t n_;
  Factorization f_;
  const SweepConfig& cfg_;
  std::optional<DivisorGraph> graph_[2];
  std::optional<SpectralDecomposition> eigen_[2];
};

struct CheckOutcome {
  std::optional<CheckResult> result;
  std::string skip_reason;  // set iff the check does not apply to this n
};

inline CheckOutcome run_check(Check c, NContext& ctx) {
  const Factorization& f = ctx.factorization();
  const SweepConfig& cfg = ctx.config();
  const std::size_t r = f.factors.size();
  const auto done = [&](double residual, bool passed) {
    return CheckOutcome{CheckResult{ctx.n(), c, residual, passed}, {}};
  };
  const auto skip = [&](const std::string& why) {
    return CheckOutcome{std::nullopt,
                        std::string(check_name(c)) + ": " + why};
  };
  const auto compare = [&](double numeric, double closed) {
    return done(relative_residual(numeric, closed),
                within_tolerance(numeric, closed, cfg.tolerance_rel,
                                 cfg.tolerance_abs));
  };

  try {
    switch (c) {
      case Check::thm1: {
        if (r != 1) return skip("closed form applies to prime powers only");
        const SpectralDecomposition& s = ctx.eigen(Variant::standard);
        return compare(total_energy_numeric(s.eigenvalues, 0.0),
                       star_energy_closed(f.factors[0].exponent));
      }

      case Check::thm2: {
        if (r != 1) return skip("closed form applies to prime powers only");
        const DivisorGraph& g = ctx.graph(Variant::modified);
        const SpectralDecomposition& s = ctx.eigen(Variant::modified);
        return compare(total_energy_numeric(s.eigenvalues, g.mu()),
                       prime_power_energy_closed(f.factors[0].exponent));
      }

      case Check::thm3: {
        if (r == 0) return skip("closed form not applicable for n = 1");
        const DivisorGraph& g = ctx.graph(Variant::modified);
        const SpectralDecomposition& s = ctx.eigen(Variant::modified);
        return compare(total_energy_numeric(s.eigenvalues, g.mu()),
                       total_energy_closed(f));
      }

      case Check::thm4: {
        if (r != 1) return skip("closed form applies to prime powers only");
        const DivisorGraph& g = ctx.graph(Variant::modified);
        const SpectralDecomposition& s = ctx.eigen(Variant::modified);
        const std::vector<double> numeric = vertex_energy_numeric(s, g.mu());
        const VertexEnergyPair closed =
            prime_power_vertex_energy_closed(f.factors[0].exponent);
        double worst = relative_residual(numeric[0], closed.center);
        bool ok = within_tolerance(numeric[0], closed.center,
                                   cfg.tolerance_rel, cfg.tolerance_abs);
        for (std::size_t i = 1; i < numeric.size(); ++i) {
          worst = std::max(worst,
                           relative_residual(numeric[i], closed.pendant));
          ok = ok && within_tolerance(numeric[i], closed.pendant,
                                      cfg.tolerance_rel, cfg.tolerance_abs);
        }
        return done(worst, ok);
      }

      case Check::thm5: {
        if (r == 0) return skip("closed form not applicable for n = 1");
        const DivisorGraph& g = ctx.graph(Variant::modified);
        const SpectralDecomposition& s = ctx.eigen(Variant::modified);
        const std::vector<double> numeric = vertex_energy_numeric(s, g.mu());
        double worst = 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < numeric.size(); ++i) {
          const double closed = vertex_energy_closed(f, g.vertices[i]);
          worst = std::max(worst, relative_residual(numeric[i], closed));
          ok = ok && within_tolerance(numeric[i], closed, cfg.tolerance_rel,
                                      cfg.tolerance_abs);
        }
        return done(worst, ok);
      }

      case Check::lemma2: {
        const DivisorGraph& g = ctx.graph(cfg.variant);
        const SpectralDecomposition& s = ctx.eigen(cfg.variant);
        const double total = total_energy_numeric(s.eigenvalues, g.mu());
        const std::vector<double> per_vertex =
            vertex_energy_numeric(s, g.mu());
        double sum = 0.0;
        for (double e : per_vertex) sum += e;
        const double residual = relative_residual(sum, total);
        return done(residual, residual <= kVertexSumRelTol);
      }

      case Check::lemma4: {
        if (r == 0) return skip("needs at least one prime factor");
        const DivisorGraph& direct = ctx.graph(Variant::modified);
        const DivisorGraph product =
            build_kronecker(ctx.n(), kDefaultFactorCap, cfg.tau_cap);
        double worst = 0.0;
        const std::size_t t = direct.adjacency.dim();
        for (std::size_t i = 0; i < t; ++i) {
          for (std::size_t j = 0; j < t; ++j) {
            worst = std::max(worst, std::abs(direct.adjacency(i, j) -
                                             product.adjacency(i, j)));
          }
        }
        return done(worst, worst == 0.0);
      }

      case Check::spectrum_structure: {
        if (r == 0) return skip("structure is stated for n >= 2");
        const DivisorGraph& g = ctx.graph(Variant::modified);
        const SpectralDecomposition& s = ctx.eigen(Variant::modified);

        // Closed nonzero spectrum: all products of one nonzero eigenvalue
        // per prime power block.
        std::vector<double> closed;
        closed.reserve(std::size_t{1} << r);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
          double lam = 1.0;
          for (std::size_t i = 0; i < r; ++i) {
            lam *= block_eigenvalue(f.factors[i].exponent,
                                    (mask >> i & 1) ? 2u : 1u);
          }
          closed.push_back(lam);
        }
        std::sort(closed.begin(), closed.end(), std::greater<double>());

        const double cutoff =
            zero_eigenvalue_threshold(g.adjacency.frobenius_norm());
        std::vector<double> nonzero;
        for (double lam : s.eigenvalues) {
          if (std::abs(lam) >= cutoff) nonzero.push_back(lam);
        }
        if (nonzero.size() != closed.size()) {
          return done(std::numeric_limits<double>::infinity(), false);
        }

        const double mu = g.mu();
        double worst = 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < closed.size(); ++i) {
          worst = std::max(worst, relative_residual(nonzero[i], closed[i]));
          ok = ok && within_tolerance(nonzero[i], closed[i],
                                      cfg.tolerance_rel, cfg.tolerance_abs);
          ok = ok && std::abs(nonzero[i]) > mu;
        }
        return done(worst, ok);
      }
    }
  } catch (const ConvergenceError&) {
    return done(std::numeric_limits<double>::infinity(), false);
  }
  throw std::logic_error("run_check: unhandled check");
}

struct NOutcome {
  std::vector<CheckResult> results;
  std::optional<Skip> skip;
};

inline NOutcome process_n(std::uint64_t n, const SweepConfig& cfg) {
  NOutcome out;
  if (cfg.checks.empty()) {
    out.skip = Skip{n, "no checks enabled"};
    return out;
  }
  Factorization f;
  try {
    f = factorize(n);
  } catch (const std::invalid_argument& e) {
    out.skip = Skip{n, e.what()};
    return out;
  }
  if (f.tau > cfg.tau_cap) {
    out.skip = Skip{n, "tau(n) = " + std::to_string(f.tau) + " exceeds cap " +
                           std::to_string(cfg.tau_cap)};
    return out;
  }

  NContext ctx(n, std::move(f), cfg);
  std::vector<std::string> reasons;
  for (Check c : cfg.checks) {
    CheckOutcome o = run_check(c, ctx);
    if (o.result) {
      out.results.push_back(*o.result);
    } else {
      reasons.push_back(o.skip_reason);
    }
  }
  if (out.results.empty()) {
    std::string joined;
    for (const std::string& why : reasons) {
      if (!joined.empty()) joined += "; ";
      joined += why;
    }
    out.skip = Skip{n, joined};
  }
  return out;
}

}  // namespace detail

// Runs every enabled check for every n in [n_lo, n_hi]. `jobs` threads split
// the range; the output is identical for any job count because each n is
// processed independently into a preallocated slot.
inline SweepResult run_sweep(const SweepConfig& cfg, unsigned jobs = 1) {
  if (cfg.n_lo < 1 || cfg.n_lo > cfg.n_hi) {
    throw std::invalid_argument("run_sweep: invalid range " +
                                std::to_string(cfg.n_lo) + ".." +
                                std::to_string(cfg.n_hi));
  }
  if (cfg.tolerance_rel <= 0.0 || cfg.tolerance_abs <= 0.0) {
    throw std::invalid_argument("run_sweep: tolerances must be positive");
  }

  const std::uint64_t count = cfg.n_hi - cfg.n_lo + 1;
  std::vector<detail::NOutcome> slots(count);
  std::atomic<std::uint64_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::uint64_t idx = next.fetch_add(1);
      if (idx >= count) return;
      slots[idx] = detail::process_n(cfg.n_lo + idx, cfg);
    }
  };

  const unsigned pool_size = std::max(1u, jobs);
  if (pool_size == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(pool_size);
    for (unsigned i = 0; i < pool_size; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  SweepResult out;
  out.config = cfg;
  for (detail::NOutcome& slot : slots) {
    for (const CheckResult& r : slot.results) {
      out.results.push_back(r);
      CheckSummary& summary = out.summaries[r.check];
      ++summary.checked;
      ++(r.passed ? summary.passed : summary.failed);
      if (summary.checked == 1 || r.residual > summary.worst_residual) {
        summary.worst_residual = r.residual;
        summary.worst_n = r.n;
      }
      if (!out.worst || r.residual > out.worst->residual) out.worst = r;
    }
    if (slot.skip) out.skipped.push_back(std::move(*slot.skip));
  }
  return out;
}

}  // namespace divspec
