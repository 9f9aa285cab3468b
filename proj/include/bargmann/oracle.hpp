#pragma once

#include "bargmann/algebra.hpp"
#include "bargmann/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bargmann {

/// Lowest m eigenvalues of a truncated sector Hamiltonian, ascending.
inline std::vector<double> eigenvalues_tridiagonal(const TridiagonalHamiltonian& h, std::size_t m) {
  if (m > h.dimension()) throw std::invalid_argument("m exceeds the truncation dimension");
  return SturmBisection(h.diag, h.offdiag).lowest(m);
}

struct LevelConvergence {
  bool converged = false;
  double last_gap = 0.0;
  bool gaps_nondecreasing = false;  // every gap >= the previous one
  bool monotone_drift = false;      // level moves the same way at every step
};

/// Lowest levels of a sector Hamiltonian tracked across growing truncations.
struct ConvergenceStudy {
  std::vector<std::size_t> truncations;
  std::vector<std::vector<double>> eigen_tables;  // [truncation][level]
  std::vector<std::vector<double>> cauchy_gaps;   // [step][level], step j compares j and j+1
  std::vector<LevelConvergence> levels;
  double tol = 1e-8;

  bool all_converged() const {
    return std::all_of(levels.begin(), levels.end(), [](const auto& l) { return l.converged; });
  }
  bool none_converged() const {
    return std::none_of(levels.begin(), levels.end(), [](const auto& l) { return l.converged; });
  }
};

/// A level is converged when its final Cauchy gap is below tol and the gaps
/// shrink step to step. Gaps already below tol count as shrinking: once the
/// level is resolved they are rounding noise.
inline ConvergenceStudy convergence_study(const ModelSpec& model, const SectorLabel& sector,
                                          std::vector<std::size_t> truncations, std::size_t m,
                                          double tol = 1e-8) {
  if (truncations.size() < 2) throw std::invalid_argument("convergence study needs at least two truncations");
  if (!std::is_sorted(truncations.begin(), truncations.end()) ||
      std::adjacent_find(truncations.begin(), truncations.end()) != truncations.end())
    throw std::invalid_argument("truncations must be strictly increasing");
  if (m == 0 || m > truncations.front()) throw std::invalid_argument("level count must be in 1..min(N)");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");

  ConvergenceStudy study;
  study.truncations = truncations;
  study.tol = tol;
  for (const auto N : truncations) study.eigen_tables.push_back(eigenvalues_tridiagonal(build_hamiltonian(model, sector, N), m));

  for (std::size_t j = 0; j + 1 < truncations.size(); ++j) {
    std::vector<double> gaps(m);
    for (std::size_t i = 0; i < m; ++i) gaps[i] = std::abs(study.eigen_tables[j + 1][i] - study.eigen_tables[j][i]);
    study.cauchy_gaps.push_back(std::move(gaps));
  }

  for (std::size_t i = 0; i < m; ++i) {
    LevelConvergence level;
    level.last_gap = study.cauchy_gaps.back()[i];
    bool shrinking = true;
    bool nondecreasing = true;
    for (std::size_t j = 1; j < study.cauchy_gaps.size(); ++j) {
      const double prev = study.cauchy_gaps[j - 1][i];
      const double cur = study.cauchy_gaps[j][i];
      if (cur > prev && cur >= tol) shrinking = false;
      if (cur < prev) nondecreasing = false;
    }
    int direction = 0;
    level.monotone_drift = true;
    for (std::size_t j = 0; j + 1 < truncations.size(); ++j) {
      const double step = study.eigen_tables[j + 1][i] - study.eigen_tables[j][i];
      const int d = step > 0 ? 1 : (step < 0 ? -1 : 0);
      if (d == 0 || (direction != 0 && d != direction)) level.monotone_drift = false;
      direction = d;
    }
    level.gaps_nondecreasing = nondecreasing;
    level.converged = level.last_gap < tol && shrinking;
    study.levels.push_back(level);
  }
  return study;
}

}  // namespace bargmann
