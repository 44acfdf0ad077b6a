#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "divspec/graph.hpp"

using divspec::DivisorGraph;
using divspec::SymmetricMatrix;
using divspec::Variant;

TEST_CASE("variant_name") {
  REQUIRE(std::string(divspec::variant_name(Variant::standard)) == "standard");
  REQUIRE(std::string(divspec::variant_name(Variant::modified)) == "modified");
}

TEST_CASE("prime_power_block") {
  REQUIRE_THROWS_AS(divspec::prime_power_block(0, Variant::modified),
                    std::invalid_argument);
  REQUIRE(divspec::prime_power_block(2, Variant::modified) ==
          SymmetricMatrix(3, {1, 1, 1,    //
                              1, 0, 0,    //
                              1, 0, 0}));
  REQUIRE(divspec::prime_power_block(2, Variant::standard) ==
          SymmetricMatrix(3, {0, 1, 1,    //
                              1, 0, 0,    //
                              1, 0, 0}));
}

TEST_CASE("build_direct on n = 1") {
  const DivisorGraph std1 = divspec::build_direct(1, Variant::standard);
  REQUIRE(std1.order() == 1);
  REQUIRE(std1.vertices == std::vector<std::uint64_t>{1});
  REQUIRE(std1.sigma == 0);
  REQUIRE(std1.adjacency == SymmetricMatrix(1, {0.0}));
  REQUIRE(std1.mu() == 0.0);

  const DivisorGraph mod1 = divspec::build_direct(1, Variant::modified);
  REQUIRE(mod1.sigma == 1);
  REQUIRE(mod1.adjacency == SymmetricMatrix(1, {1.0}));
  REQUIRE(mod1.mu() == 1.0);
}

TEST_CASE("build_direct on n = 6") {
  const DivisorGraph g = divspec::build_direct(6);
  REQUIRE(g.variant == Variant::modified);
  REQUIRE(g.vertices == std::vector<std::uint64_t>{1, 3, 2, 6});
  REQUIRE(g.factorization.tau == 4);
  REQUIRE(g.mu() == 0.25);
  REQUIRE(g.adjacency == SymmetricMatrix(4, {1, 1, 1, 1,    //
                                             1, 0, 1, 0,    //
                                             1, 1, 0, 0,    //
                                             1, 0, 0, 0}));

  const DivisorGraph h = divspec::build_direct(6, Variant::standard);
  REQUIRE(h.sigma == 0);
  REQUIRE(h.adjacency == SymmetricMatrix(4, {0, 1, 1, 1,    //
                                             1, 0, 1, 0,    //
                                             1, 1, 0, 0,    //
                                             1, 0, 0, 0}));
}

TEST_CASE("the variants differ only in the loop at the vertex 1") {
  for (std::uint64_t n : {2, 9, 12, 30, 100}) {
    const DivisorGraph mod = divspec::build_direct(n, Variant::modified);
    const DivisorGraph std = divspec::build_direct(n, Variant::standard);
    REQUIRE(mod.adjacency.trace() == 1.0);
    REQUIRE(std.adjacency.trace() == 0.0);
    for (std::size_t i = 0; i < mod.order(); ++i) {
      for (std::size_t j = 0; j < mod.order(); ++j) {
        const double expected = (i == 0 && j == 0) ? 1.0 : 0.0;
        REQUIRE(mod.adjacency(i, j) - std.adjacency(i, j) == expected);
      }
    }
  }
}

TEST_CASE("adjacency is the coprimality relation on divisors") {
  const DivisorGraph g = divspec::build_direct(60, Variant::modified);
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (std::size_t j = 0; j < g.order(); ++j) {
      if (i == j) continue;
      const double expected =
          divspec::gcd(g.vertices[i], g.vertices[j]) == 1 ? 1.0 : 0.0;
      REQUIRE(g.adjacency(i, j) == expected);
    }
  }
  // The divisor 1 is coprime to everything: degree tau(n) with its loop.
  double row0 = 0.0;
  for (std::size_t j = 0; j < g.order(); ++j) row0 += g.adjacency(0, j);
  REQUIRE(row0 == static_cast<double>(g.factorization.tau));
}

TEST_CASE("build_direct enforces caps") {
  REQUIRE_THROWS_AS(divspec::build_direct(0), std::invalid_argument);
  REQUIRE_THROWS_AS(
      divspec::build_direct(12, Variant::modified, divspec::kDefaultFactorCap,
                            5),
      divspec::CapExceeded);
  REQUIRE(divspec::build_direct(12, Variant::modified,
                                divspec::kDefaultFactorCap, 6)
              .order() == 6);
}

TEST_CASE("build_kronecker matches build_direct entrywise") {
  REQUIRE_THROWS_AS(divspec::build_kronecker(1), std::invalid_argument);
  for (std::uint64_t n = 2; n <= 300; ++n) {
    const DivisorGraph direct = divspec::build_direct(n, Variant::modified);
    const DivisorGraph product = divspec::build_kronecker(n);
    REQUIRE(product.variant == Variant::modified);
    REQUIRE(product.vertices == direct.vertices);
    REQUIRE(product.adjacency == direct.adjacency);
  }
}
