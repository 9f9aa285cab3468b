// Squeezed oscillator: closed-form levels, their Bethe roots, and the same
// levels recovered as zeros of the continued-fraction function F(E).

#include "bargmann/bargmann.hpp"

#include <cstdio>

int main() {
  using namespace bargmann;
  const auto model = ModelSpec::squeezed(1.0, 0.3);

  std::printf("%-6s %-3s %-12s %-12s  roots\n", "q", "M", "E", "E (cf)");
  for (const auto& sector : sector_labels(model)) {
    const auto scan = scan_spectrum(model, sector, -0.5, 5.0);
    for (std::size_t M = 0; M < 3; ++M) {
      const auto state = build_eigenstate(model, sector, M);
      const double cf = M < scan.eigenvalues.size() ? scan.eigenvalues[M].E : 0.0 / 0.0;
      std::printf("%-6s %-3zu %-12.9f %-12.9f ", sector.str().c_str(), M, state.energy, cf);
      for (double z : state.roots) std::printf(" %.6f", z);
      std::printf("\n");
    }
  }
}
