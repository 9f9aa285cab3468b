// Third harmonic generation: the forward series grows like 1/sqrt(27) in the
// weighted sense for every energy, and the truncated matrices never settle.

#include "bargmann/bargmann.hpp"

#include <cmath>
#include <cstdio>

int main() {
  using namespace bargmann;
  const auto model = ModelSpec::k_harmonic(3, 1.0, 0.5);
  const auto report = classify(3);
  std::printf("verdict %s, predicted limit %.6f\n", std::string(to_string(report.verdict)).c_str(),
              *report.predicted_limit);

  for (const auto& sector : sector_labels(model))
    for (double E : {-1.0, 0.3, 2.0}) {
      const auto est = limsup_estimate(make_generator(model, sector, E), 5000);
      std::printf("q=%-4s E=%5.2f  limsup estimate %.6f\n", sector.str().c_str(), E, est.limit);
    }

  const auto study = convergence_study(model, SectorLabel::q_index(3, 0), {50, 100, 200, 400}, 3);
  for (std::size_t t = 0; t < study.truncations.size(); ++t)
    std::printf("N=%-4zu lowest level %.6f\n", study.truncations[t], study.eigen_tables[t][0]);
}
