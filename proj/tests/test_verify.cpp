#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

#include "divspec/verify.hpp"

using divspec::Check;
using divspec::SweepConfig;
using divspec::SweepResult;

TEST_CASE("check names round-trip through the parser") {
  for (Check c : divspec::kAllChecks) {
    REQUIRE(divspec::parse_check(divspec::check_name(c)) == c);
  }
  REQUIRE(divspec::parse_check("THM3") == Check::thm3);
  REQUIRE(divspec::parse_check("Spectrum-Structure") ==
          Check::spectrum_structure);
  REQUIRE_THROWS_AS(divspec::parse_check("bogus"), std::invalid_argument);
  REQUIRE_THROWS_AS(divspec::parse_check("lemma3"), std::invalid_argument);
}

TEST_CASE("run_sweep validates the range") {
  SweepConfig cfg;
  cfg.n_lo = 0;
  cfg.n_hi = 5;
  REQUIRE_THROWS_AS(divspec::run_sweep(cfg), std::invalid_argument);
  cfg.n_lo = 5;
  cfg.n_hi = 3;
  REQUIRE_THROWS_AS(divspec::run_sweep(cfg), std::invalid_argument);
}

TEST_CASE("run_sweep rejects nonpositive tolerances") {
  SweepConfig cfg;
  cfg.n_lo = 2;
  cfg.n_hi = 4;
  cfg.tolerance_rel = 0.0;
  REQUIRE_THROWS_AS(divspec::run_sweep(cfg), std::invalid_argument);
  cfg.tolerance_rel = 1e-8;
  cfg.tolerance_abs = -1e-10;
  REQUIRE_THROWS_AS(divspec::run_sweep(cfg), std::invalid_argument);
}

TEST_CASE("total energy and vertex sum checks pass on 2..6") {
  SweepConfig cfg;
  cfg.n_lo = 2;
  cfg.n_hi = 6;
  cfg.checks = {Check::thm3, Check::lemma2};
  const SweepResult r = divspec::run_sweep(cfg);
  REQUIRE(r.results.size() == 10);
  REQUIRE(r.skipped.empty());
  REQUIRE(r.all_passed());
  REQUIRE(r.summaries.at(Check::thm3).checked == 5);
  REQUIRE(r.summaries.at(Check::thm3).failed == 0);
  REQUIRE(r.summaries.at(Check::lemma2).passed == 5);
  REQUIRE(r.worst);
  REQUIRE(r.worst->residual < 1e-10);
}

TEST_CASE("inapplicable checks produce a skip with a reason") {
  SweepConfig cfg;
  cfg.n_lo = 1;
  cfg.n_hi = 1;
  cfg.checks = {Check::thm3};
  const SweepResult r = divspec::run_sweep(cfg);
  REQUIRE(r.results.empty());
  REQUIRE(r.skipped.size() == 1);
  REQUIRE(r.skipped[0].n == 1);
  REQUIRE(r.skipped[0].reason ==
          "thm3: closed form not applicable for n = 1");
}

TEST_CASE("the vertex sum check applies even to n = 1") {
  SweepConfig cfg;
  cfg.n_lo = 1;
  cfg.n_hi = 1;
  cfg.checks = {Check::lemma2};
  const SweepResult r = divspec::run_sweep(cfg);
  REQUIRE(r.skipped.empty());
  REQUIRE(r.results.size() == 1);
  REQUIRE(r.results[0].passed);
}

TEST_CASE("prime power checks skip composites") {
  SweepConfig cfg;
  cfg.n_lo = 2;
  cfg.n_hi = 10;
  cfg.checks = {Check::thm1};
  const SweepResult r = divspec::run_sweep(cfg);
  std::set<std::uint64_t> checked;
  for (const auto& res : r.results) {
    REQUIRE(res.passed);
    checked.insert(res.n);
  }
  REQUIRE(checked == std::set<std::uint64_t>{2, 3, 4, 5, 7, 8, 9});
  REQUIRE(r.skipped.size() == 2);
  REQUIRE(r.skipped[0].n == 6);
  REQUIRE(r.skipped[1].n == 10);
  REQUIRE(r.skipped[0].reason ==
          "thm1: closed form applies to prime powers only");
}

TEST_CASE("Kronecker assembly matches the direct build exactly") {
  SweepConfig cfg;
  cfg.n_lo = 2;
  cfg.n_hi = 100;
  cfg.checks = {Check::lemma4};
  const SweepResult r = divspec::run_sweep(cfg);
  REQUIRE(r.results.size() == 99);
  for (const auto& res : r.results) {
    REQUIRE(res.passed);
    REQUIRE(res.residual == 0.0);
  }
}

TEST_CASE("every n is covered by results or a skip, never both") {
  SweepConfig cfg;
  cfg.n_lo = 1;
  cfg.n_hi = 30;
  const SweepResult r = divspec::run_sweep(cfg);
  REQUIRE(r.all_passed());
  std::set<std::uint64_t> in_results;
  for (const auto& res : r.results) in_results.insert(res.n);
  std::set<std::uint64_t> in_skips;
  for (const auto& s : r.skipped) in_skips.insert(s.n);
  for (std::uint64_t n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    REQUIRE((in_results.count(n) + in_skips.count(n)) == 1);
  }
}

TEST_CASE("results are identical for any job count") {
  SweepConfig cfg;
  cfg.n_lo = 1;
  cfg.n_hi = 60;
  const SweepResult serial = divspec::run_sweep(cfg, 1);
  const SweepResult parallel = divspec::run_sweep(cfg, 4);
  REQUIRE(serial.results == parallel.results);
  REQUIRE(serial.skipped == parallel.skipped);
}

TEST_CASE("tau cap skips oversized n") {
  SweepConfig cfg;
  cfg.n_lo = 2;
  cfg.n_hi = 16;
  cfg.tau_cap = 4;
  cfg.checks = {Check::thm3};
  const SweepResult r = divspec::run_sweep(cfg);
  std::set<std::uint64_t> skipped;
  for (const auto& s : r.skipped) skipped.insert(s.n);
  REQUIRE(skipped == std::set<std::uint64_t>{12, 16});  // tau 6 and 5
  bool saw_12 = false;
  for (const auto& s : r.skipped) {
    if (s.n == 12) {
      saw_12 = true;
      REQUIRE(s.reason == "tau(n) = 6 exceeds cap 4");
    }
  }
  REQUIRE(saw_12);
  for (const auto& res : r.results) REQUIRE(res.passed);
}

TEST_CASE("an empty check list skips everything") {
  SweepConfig cfg;
  cfg.n_lo = 5;
  cfg.n_hi = 7;
  cfg.checks = {};
  const SweepResult r = divspec::run_sweep(cfg);
  REQUIRE(r.results.empty());
  REQUIRE(r.skipped.size() == 3);
  for (const auto& s : r.skipped) REQUIRE(s.reason == "no checks enabled");
}

TEST_CASE("spectrum structure holds on 2..40") {
  SweepConfig cfg;
  cfg.n_lo = 2;
  cfg.n_hi = 40;
  cfg.checks = {Check::spectrum_structure};
  const SweepResult r = divspec::run_sweep(cfg);
  REQUIRE(r.results.size() == 39);
  REQUIRE(r.all_passed());
}

TEST_CASE("all default checks pass on 2..80 with parallel jobs") {
  SweepConfig cfg;
  cfg.n_lo = 2;
  cfg.n_hi = 80;
  const SweepResult r = divspec::run_sweep(cfg, 2);
  REQUIRE(r.all_passed());
  REQUIRE(r.skipped.empty());  // thm3/thm5/lemma2/lemma4 cover every n >= 2
  // Summary bookkeeping is consistent with the flat result list.
  std::size_t total = 0;
  for (const auto& [check, summary] : r.summaries) {
    REQUIRE(summary.checked == summary.passed + summary.failed);
    total += summary.checked;
  }
  REQUIRE(total == r.results.size());
  REQUIRE(r.worst);
  REQUIRE(r.worst->residual <= 1e-9);
}
