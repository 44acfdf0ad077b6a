#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "divspec/numtheory.hpp"

using divspec::Factorization;
using divspec::PrimePower;

TEST_CASE("factorize handles n = 1") {
  const Factorization f = divspec::factorize(1);
  REQUIRE(f.n == 1);
  REQUIRE(f.factors.empty());
  REQUIRE(f.tau == 1);
}

TEST_CASE("factorize produces ascending prime powers") {
  REQUIRE(divspec::factorize(2).factors ==
          std::vector<PrimePower>{{2, 1}});
  REQUIRE(divspec::factorize(12).factors ==
          std::vector<PrimePower>{{2, 2}, {3, 1}});
  REQUIRE(divspec::factorize(360).factors ==
          std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
  REQUIRE(divspec::factorize(9973).factors ==
          std::vector<PrimePower>{{9973, 1}});
}

TEST_CASE("factorize computes tau") {
  REQUIRE(divspec::factorize(12).tau == 6);
  REQUIRE(divspec::factorize(360).tau == 24);
  REQUIRE(divspec::factorize(30030).tau == 64);  // 2*3*5*7*11*13
}

TEST_CASE("factorize reaches the default cap") {
  const Factorization f = divspec::factorize(1'000'000'000'000ULL);
  REQUIRE(f.factors == std::vector<PrimePower>{{2, 12}, {5, 12}});
  REQUIRE(f.tau == 169);

  const Factorization p = divspec::factorize(999999937);  // prime
  REQUIRE(p.factors == std::vector<PrimePower>{{999999937, 1}});

  const Factorization two39 = divspec::factorize(1ULL << 39);
  REQUIRE(two39.factors == std::vector<PrimePower>{{2, 39}});
  REQUIRE(two39.tau == 40);
}

TEST_CASE("factorize rejects zero and values over the cap") {
  REQUIRE_THROWS_AS(divspec::factorize(0), std::invalid_argument);
  REQUIRE_THROWS_AS(divspec::factorize(1'000'000'000'001ULL),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(divspec::factorize(100, 50), std::invalid_argument);
  REQUIRE(divspec::factorize(100, 100).n == 100);
}

TEST_CASE("gcd") {
  REQUIRE(divspec::gcd(12, 18) == 6);
  REQUIRE(divspec::gcd(7, 13) == 1);
  REQUIRE(divspec::gcd(1, 999) == 1);
  REQUIRE(divspec::gcd(0, 5) == 5);
}

TEST_CASE("divisors come out in mixed-radix order") {
  REQUIRE(divspec::divisors(divspec::factorize(1)) ==
          std::vector<std::uint64_t>{1});
  REQUIRE(divspec::divisors(divspec::factorize(8)) ==
          std::vector<std::uint64_t>{1, 2, 4, 8});
  // Last prime's exponent varies fastest.
  REQUIRE(divspec::divisors(divspec::factorize(6)) ==
          std::vector<std::uint64_t>{1, 3, 2, 6});
  REQUIRE(divspec::divisors(divspec::factorize(12)) ==
          std::vector<std::uint64_t>{1, 3, 2, 6, 4, 12});
  REQUIRE(divspec::divisors(divspec::factorize(30)) ==
          std::vector<std::uint64_t>{1, 5, 3, 15, 2, 10, 6, 30});
}

TEST_CASE("divisors enumerate exactly the divisors") {
  for (std::uint64_t n = 1; n <= 200; ++n) {
    const Factorization f = divspec::factorize(n);
    const std::vector<std::uint64_t> divs = divspec::divisors(f);
    REQUIRE(divs.size() == f.tau);
    REQUIRE(divs[0] == 1);
    std::set<std::uint64_t> seen;
    for (std::uint64_t d : divs) {
      REQUIRE(n % d == 0);
      seen.insert(d);
    }
    REQUIRE(seen.size() == divs.size());
  }
}
