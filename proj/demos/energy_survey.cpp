// Library usage example: sweep n from 2 to a bound and tabulate the numeric
// and closed-form energies of the modified divisor prime graph side by side.
//
//   ./energy_survey [max_n]

#include <cstdio>
#include <cstdint>
#include <cstdlib>

#include "divspec/divspec.hpp"

int main(int argc, char** argv) {
  const std::uint64_t max_n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 50;
  if (max_n < 2) {
    std::fprintf(stderr, "usage: %s [max_n >= 2]\n", argv[0]);
    return 2;
  }

  std::printf("%6s %5s %3s %18s %18s %12s\n", "n", "tau", "r", "E numeric",
              "E closed", "residual");
  double worst = 0.0;
  for (std::uint64_t n = 2; n <= max_n; ++n) {
    const divspec::DivisorGraph g = divspec::build_direct(n);
    const divspec::SpectralDecomposition s =
        divspec::eigen_symmetric(g.adjacency);
    const divspec::EnergyReport rep = divspec::make_energy_report(g, s);
    if (rep.residual && *rep.residual > worst) worst = *rep.residual;
    std::printf("%6llu %5llu %3zu %18.12f %18.12f %12.3e\n",
                static_cast<unsigned long long>(n),
                static_cast<unsigned long long>(rep.tau),
                g.factorization.factors.size(), rep.energy_numeric,
                rep.energy_closed ? *rep.energy_closed : 0.0,
                rep.residual ? *rep.residual : 0.0);
  }
  std::printf("worst residual: %.3e\n", worst);
  return 0;
}
