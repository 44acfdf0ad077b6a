#pragma once

// Divisor prime graphs. Vertices are the divisors of n in mixed-radix order;
// two distinct divisors are adjacent iff they are coprime. The standard
// variant drops the self-loop that the coprimality rule would place at the
// vertex 1; the modified variant keeps it, which makes the adjacency matrix
// of n = p1^a1 * ... * pr^ar the Kronecker product of the prime power blocks.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "divspec/linalg.hpp"
#include "divspec/numtheory.hpp"

namespace divspec {

enum class Variant {
  standard,  // loop at 1 discarded, sigma = 0
  modified,  // loop at 1 kept, sigma = 1
};

inline const char* variant_name(Variant v) {
  return v == Variant::standard ? "standard" : "modified";
}

struct DivisorGraph {
  std::uint64_t n = 1;
  Variant variant = Variant::modified;
  Factorization factorization;
  std::vector<std::uint64_t> vertices;  // divisors, mixed-radix order
  SymmetricMatrix adjacency{1};
  unsigned sigma = 0;  // number of self-loops

  std::size_t order() const { return vertices.size(); }

  // Energy shift: self-loop count over vertex count.
  double mu() const {
    return static_cast<double>(sigma) / static_cast<double>(order());
  }
};

// Adjacency block of a prime power p^a. Independent of p: vertex 0 is the
// divisor 1 (adjacent to every power, looped in the modified variant) and
// vertices 1..a are the powers p..p^a, pairwise non-adjacent.
inline SymmetricMatrix prime_power_block(unsigned a, Variant variant) {
  if (a == 0) {
    throw std::invalid_argument("prime_power_block: exponent must be >= 1");
  }
  SymmetricMatrix m(static_cast<std::size_t>(a) + 1);
  if (variant == Variant::modified) m.set(0, 0, 1.0);
  for (std::size_t j = 1; j <= a; ++j) m.set(0, j, 1.0);
  return m;
}

// Builds the graph entrywise from pairwise gcds.
inline DivisorGraph build_direct(std::uint64_t n,
                                 Variant variant = Variant::modified,
                                 std::uint64_t factor_cap = kDefaultFactorCap,
                                 std::size_t dim_cap = kDefaultDimCap) {
  DivisorGraph g;
  g.n = n;
  g.variant = variant;
  g.factorization = factorize(n, factor_cap);
  if (g.factorization.tau > dim_cap) {
    throw CapExceeded("build_direct: tau(" + std::to_string(n) + ") = " +
                      std::to_string(g.factorization.tau) + " exceeds cap " +
                      std::to_string(dim_cap));
  }
  g.vertices = divisors(g.factorization);

  const std::size_t t = g.vertices.size();
  SymmetricMatrix a(t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      if (gcd(g.vertices[i], g.vertices[j]) == 1) a.set(i, j, 1.0);
    }
  }
  if (variant == Variant::modified) {
    a.set(0, 0, 1.0);  // gcd(1, 1) = 1
    g.sigma = 1;
  }
  g.adjacency = std::move(a);
  return g;
}

// Builds the modified graph as the Kronecker product of its prime power
// blocks, left to right over ascending primes. Matches build_direct entry for
// entry because the divisor order is mixed-radix. Modified variant only: the
// factorization needs the loop at 1 in every block.
inline DivisorGraph build_kronecker(std::uint64_t n,
                                    std::uint64_t factor_cap = kDefaultFactorCap,
                                    std::size_t dim_cap = kDefaultDimCap) {
  if (n < 2) {
    throw std::invalid_argument(
        "build_kronecker: need at least one prime factor, got n = " +
        std::to_string(n));
  }
  DivisorGraph g;
  g.n = n;
  g.variant = Variant::modified;
  g.sigma = 1;
  g.factorization = factorize(n, factor_cap);
  if (g.factorization.tau > dim_cap) {
    throw CapExceeded("build_kronecker: tau(" + std::to_string(n) + ") = " +
                      std::to_string(g.factorization.tau) + " exceeds cap " +
                      std::to_string(dim_cap));
  }
  g.vertices = divisors(g.factorization);

  SymmetricMatrix a = prime_power_block(g.factorization.factors[0].exponent,
                                        Variant::modified);
  for (std::size_t i = 1; i < g.factorization.factors.size(); ++i) {
    a = kronecker(
        a, prime_power_block(g.factorization.factors[i].exponent,
                             Variant::modified),
        dim_cap);
  }
  g.adjacency = std::move(a);
  return g;
}

}  // namespace divspec
