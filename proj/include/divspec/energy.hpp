#pragma once

// Graph energy in the self-loop generalization: E = sum_i |lambda_i - sigma/N|
// for a graph with N vertices and sigma self-loops, plus the closed forms the
// divisor prime graphs satisfy and the residual policy used to compare the
// two routes.
//
// Closed forms implemented here, all checked against the numeric route by the
// test suite:
//   standard variant, n = p^a:   E = 2 sqrt(a)                (star K_{1,a})
//   modified variant, n = p^a:   E = sqrt(4a+1) + (a-1)/(a+1)
//   modified variant, general n: E = prod_i sqrt(4 a_i + 1) + 1 - 2^r / tau
//   modified vertex energies:    weight expansion over the 2^r sign choices
//     of the nonzero block eigenvalues (the prime power case reduces to the
//     center/pendant pair).

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "divspec/graph.hpp"
#include "divspec/linalg.hpp"
#include "divspec/numtheory.hpp"

namespace divspec {

inline constexpr double kDefaultRelTol = 1e-8;
inline constexpr double kDefaultAbsTol = 1e-10;
// The vertex energies must sum to the total energy to this relative accuracy;
// fixed, not user-tunable, because it is a solver consistency check rather
// than a closed-form comparison.
inline constexpr double kVertexSumRelTol = 1e-9;

// |value - reference| / max(1, |reference|)
inline double relative_residual(double value, double reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

inline bool within_tolerance(double value, double reference,
                             double rel_tol = kDefaultRelTol,
                             double abs_tol = kDefaultAbsTol) {
  return relative_residual(value, reference) <= rel_tol ||
         std::abs(value - reference) <= abs_tol;
}

inline double total_energy_numeric(const std::vector<double>& eigenvalues,
                                   double mu) {
  double e = 0.0;
  for (double lam : eigenvalues) e += std::abs(lam - mu);
  return e;
}

// Per-vertex energies: diagonal of |A - mu I|.
inline std::vector<double> vertex_energy_numeric(
    const SpectralDecomposition& s, double mu) {
  return shifted_abs_diagonal(s, mu);
}

// Standard variant of p^a is the star K_{1,a}.
inline double star_energy_closed(unsigned a) {
  if (a == 0) throw std::invalid_argument("star_energy_closed: need a >= 1");
  return 2.0 * std::sqrt(static_cast<double>(a));
}

// Modified variant of p^a.
inline double prime_power_energy_closed(unsigned a) {
  if (a == 0) {
    throw std::invalid_argument("prime_power_energy_closed: need a >= 1");
  }
  const double ad = a;
  return std::sqrt(4.0 * ad + 1.0) + (ad - 1.0) / (ad + 1.0);
}

// Modified variant, any n >= 2. Deliberately rejects n = 1: the formula
// would yield 1 there, but the graph is a single looped vertex with energy
// |1 - 1/1| = 0, so the closed form does not extend.
inline double total_energy_closed(const Factorization& f) {
  if (f.n < 2) {
    throw std::invalid_argument(
        "total_energy_closed: the closed form applies to n >= 2 only (for "
        "n = 1 the energy is 0, not the formula's 1)");
  }
  double prod = 1.0;
  for (const PrimePower& pp : f.factors) {
    prod *= std::sqrt(4.0 * static_cast<double>(pp.exponent) + 1.0);
  }
  const double two_r = std::ldexp(1.0, static_cast<int>(f.factors.size()));
  return prod + 1.0 - two_r / static_cast<double>(f.tau);
}

// Nonzero eigenvalues of the modified prime power block for exponent a:
// x = 1 picks (1 + sqrt(4a+1))/2, x = 2 picks (1 - sqrt(4a+1))/2. The block
// spectrum is completed by the zero eigenvalue with multiplicity a - 1.
inline double block_eigenvalue(unsigned a, unsigned x) {
  if (a == 0) throw std::invalid_argument("block_eigenvalue: need a >= 1");
  if (x != 1 && x != 2) {
    throw std::invalid_argument("block_eigenvalue: branch must be 1 or 2");
  }
  const double s = std::sqrt(4.0 * static_cast<double>(a) + 1.0);
  return x == 1 ? (1.0 + s) / 2.0 : (1.0 - s) / 2.0;
}

// Squared eigenvector coordinate mass that the divisor class of v carries in
// branch x of one prime power block: lambda_x / sqrt(4a+1) when the prime
// does not divide v, 1 / (lambda_x sqrt(4a+1)) when it does, signed by the
// branch. The two branches sum to 1 (prime absent) or 1/a (prime present).
inline double vertex_weight(unsigned a, bool prime_divides_v, unsigned x) {
  const double lam = block_eigenvalue(a, x);
  const double s = std::sqrt(4.0 * static_cast<double>(a) + 1.0);
  const double sign = x == 1 ? 1.0 : -1.0;
  return sign / s * (prime_divides_v ? 1.0 / lam : lam);
}

// Modified variant vertex energy of divisor v of n, assembled from the 2^r
// branch choices: E(v) = (1/tau)(1 - sum_x prod_i w) + sum_x |prod_i
// lambda_{x_i} - 1/tau| prod_i w.
inline double vertex_energy_closed(const Factorization& f, std::uint64_t v) {
  if (f.n < 2) {
    throw std::invalid_argument(
        "vertex_energy_closed: need at least one prime factor, got n = " +
        std::to_string(f.n));
  }
  if (v == 0 || f.n % v != 0) {
    throw std::invalid_argument("vertex_energy_closed: " + std::to_string(v) +
                                " does not divide " + std::to_string(f.n));
  }
  const std::size_t r = f.factors.size();
  const double inv_tau = 1.0 / static_cast<double>(f.tau);
  double sum_w = 0.0;
  double sum_abs = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    double w = 1.0;
    double lam = 1.0;
    for (std::size_t i = 0; i < r; ++i) {
      const unsigned x = (mask >> i & 1) ? 2u : 1u;
      const bool divides = v % f.factors[i].prime == 0;
      w *= vertex_weight(f.factors[i].exponent, divides, x);
      lam *= block_eigenvalue(f.factors[i].exponent, x);
    }
    sum_w += w;
    sum_abs += std::abs(lam - inv_tau) * w;
  }
  return inv_tau * (1.0 - sum_w) + sum_abs;
}

// Modified variant of p^a has two vertex energy values: the divisor 1
// (adjacent to everything) and the a powers of p (all equivalent).
struct VertexEnergyPair {
  double center = 0.0;
  double pendant = 0.0;
};

inline VertexEnergyPair prime_power_vertex_energy_closed(unsigned a) {
  if (a == 0) {
    throw std::invalid_argument(
        "prime_power_vertex_energy_closed: need a >= 1");
  }
  const double ad = a;
  const double s = std::sqrt(4.0 * ad + 1.0);
  VertexEnergyPair p;
  p.center = (2.0 * ad * ad + 3.0 * ad) / ((ad + 1.0) * s);
  p.pendant = (2.0 * ad * ad + 2.0 * ad + 1.0) / (ad * (ad + 1.0) * s) +
              (ad - 1.0) / (ad * (ad + 1.0));
  return p;
}

struct VertexEnergyEntry {
  std::uint64_t divisor = 1;
  double numeric = 0.0;
  std::optional<double> closed;
  std::optional<double> residual;
};

// Full numeric-vs-closed comparison for one graph. Closed columns are filled
// where a closed form exists: total and vertex energies for the modified
// variant with n >= 2, total only for the standard variant of a prime power.
struct EnergyReport {
  std::uint64_t n = 1;
  Variant variant = Variant::modified;
  std::uint64_t tau = 1;
  unsigned sigma = 0;
  double mu = 0.0;
  std::vector<double> eigenvalues;
  double energy_numeric = 0.0;
  std::optional<double> energy_closed;
  std::optional<double> residual;      // relative, floored reference
  std::optional<double> residual_abs;  // plain |numeric - closed|
  std::vector<VertexEnergyEntry> vertex_energies;
  double vertex_sum_residual = 0.0;
  bool passed = true;

  // Largest relative residual among the per-vertex comparisons, when any
  // vertex has a closed form.
  std::optional<double> worst_vertex_residual() const {
    std::optional<double> worst;
    for (const VertexEnergyEntry& e : vertex_energies) {
      if (e.residual && (!worst || *e.residual > *worst)) worst = *e.residual;
    }
    return worst;
  }
};

inline EnergyReport make_energy_report(const DivisorGraph& g,
                                       const SpectralDecomposition& s,
                                       double rel_tol = kDefaultRelTol,
                                       double abs_tol = kDefaultAbsTol) {
  EnergyReport rep;
  rep.n = g.n;
  rep.variant = g.variant;
  rep.tau = g.factorization.tau;
  rep.sigma = g.sigma;
  rep.mu = g.mu();
  rep.eigenvalues = s.eigenvalues;
  rep.energy_numeric = total_energy_numeric(s.eigenvalues, rep.mu);

  const bool modified_closed = g.variant == Variant::modified && g.n >= 2;
  const bool star_closed =
      g.variant == Variant::standard && g.factorization.factors.size() == 1;
  if (modified_closed) {
    rep.energy_closed = total_energy_closed(g.factorization);
  } else if (star_closed) {
    rep.energy_closed = star_energy_closed(g.factorization.factors[0].exponent);
  }
  if (rep.energy_closed) {
    rep.residual = relative_residual(rep.energy_numeric, *rep.energy_closed);
    rep.residual_abs = std::abs(rep.energy_numeric - *rep.energy_closed);
    rep.passed = rep.passed && within_tolerance(rep.energy_numeric,
                                                *rep.energy_closed, rel_tol,
                                                abs_tol);
  }

  const std::vector<double> numeric = vertex_energy_numeric(s, rep.mu);
  double vertex_sum = 0.0;
  rep.vertex_energies.reserve(numeric.size());
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    VertexEnergyEntry entry;
    entry.divisor = g.vertices[i];
    entry.numeric = numeric[i];
    vertex_sum += numeric[i];
    if (modified_closed) {
      entry.closed = vertex_energy_closed(g.factorization, entry.divisor);
      entry.residual = relative_residual(entry.numeric, *entry.closed);
      rep.passed = rep.passed && within_tolerance(entry.numeric, *entry.closed,
                                                  rel_tol, abs_tol);
    }
    rep.vertex_energies.push_back(entry);
  }
  rep.vertex_sum_residual = relative_residual(vertex_sum, rep.energy_numeric);
  rep.passed = rep.passed && rep.vertex_sum_residual <= kVertexSumRelTol;
  return rep;
}

}  // namespace divspec
