#pragma once

// Integer factorization, divisor enumeration, and gcd. The divisor order
// produced here is the vertex order contract for the whole library: under it
// the adjacency matrix of the modified divisor prime graph is entrywise equal
// to the Kronecker product of its prime-power blocks.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace divspec {

// Largest n the trial-division factorizer accepts by default.
inline constexpr std::uint64_t kDefaultFactorCap = 1'000'000'000'000ULL;

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization with primes strictly ascending. For n = 1 the factor
// list is empty and tau = 1.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;
  std::uint64_t tau = 1;  // number of divisors, prod (a_i + 1)

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

inline std::uint64_t gcd(std::uint64_t u, std::uint64_t v) {
  return std::gcd(u, v);
}

// Deterministic trial division by 2, 3, then 6k +- 1 up to sqrt(n).
inline Factorization factorize(std::uint64_t n,
                               std::uint64_t cap = kDefaultFactorCap) {
  if (n == 0) {
    throw std::invalid_argument("factorize: n must be a positive integer");
  }
  if (n > cap) {
    throw std::invalid_argument("factorize: n = " + std::to_string(n) +
                                " exceeds the factorization cap " +
                                std::to_string(cap));
  }

  Factorization f;
  f.n = n;
  std::uint64_t m = n;
  auto strip = [&](std::uint64_t p) {
    if (m % p != 0) return;
    unsigned e = 0;
    do {
      m /= p;
      ++e;
    } while (m % p == 0);
    f.factors.push_back({p, e});
  };

  strip(2);
  strip(3);
  for (std::uint64_t d = 5; d * d <= m; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (m > 1) f.factors.push_back({m, 1});

  f.tau = 1;
  for (const PrimePower& pp : f.factors) f.tau *= pp.exponent + 1;
  return f;
}

// All tau(n) divisors in mixed-radix order: divisor at index j has exponent
// vector (b_1, ..., b_r) over the ascending primes, with the exponent of the
// LAST (largest) prime varying fastest. Index 0 is always divisor 1.
inline std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> divs{1};
  divs.reserve(f.tau);
  for (const PrimePower& pp : f.factors) {
    std::vector<std::uint64_t> expanded;
    expanded.reserve(divs.size() * (pp.exponent + 1));
    for (std::uint64_t d : divs) {
      std::uint64_t q = d;
      expanded.push_back(q);
      for (unsigned b = 1; b <= pp.exponent; ++b) {
        q *= pp.prime;
        expanded.push_back(q);
      }
    }
    divs = std::move(expanded);
  }
  return divs;
}

}  // namespace divspec
