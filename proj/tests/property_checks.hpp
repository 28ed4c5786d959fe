#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "cradle/dynamics.hpp"
#include "cradle/spectral.hpp"
#include "support.hpp"

namespace testing_support {

// Worst-case invariant violations over a batch of random chains and states.
struct PropertyReport {
  std::size_t chains = 0;
  double orthogonality = 0.0;  // max |g g^T - I|
  double residual = 0.0;       // max |H g - omega g| / max|omega|
  bool ordered = true;         // omega nondecreasing
  double row_sum = 0.0;        // max |sum_j p_j - 1|
  double initial_row = 0.0;    // max |p_j(0) - |z_j|^2|
  double group = 0.0;          // max |U(a) U(b) psi - U(a+b) psi|
};

inline PropertyReport check_properties(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, 60);
  std::uniform_real_distribution<double> time(-20.0, 20.0);
  PropertyReport r;
  for (std::size_t trial = 0; trial < count; ++trial) {
    const std::size_t m = size(rng);
    const auto chain = random_chain(rng, m);
    const auto s = cradle::diagonalize(chain);
    ++r.chains;

    double scale = 0.0;
    for (double w : s.omega()) scale = std::max(scale, std::abs(w));
    scale = std::max(scale, 1e-300);
    for (std::size_t a = 0; a < m; ++a) {
      if (a + 1 < m && s.omega()[a + 1] < s.omega()[a]) r.ordered = false;
      for (std::size_t b = 0; b < m; ++b) {
        double dot = 0.0;
        for (std::size_t j = 0; j < m; ++j) dot += s.g(a, j) * s.g(b, j);
        r.orthogonality = std::max(r.orthogonality, std::abs(dot - (a == b ? 1.0 : 0.0)));
      }
      for (std::size_t j = 0; j < m; ++j) {
        double hg = chain.eps()[j] * s.g(a, j);
        if (j > 0) hg -= chain.tau()[j - 1] * s.g(a, j - 1);
        if (j + 1 < m) hg -= chain.tau()[j] * s.g(a, j + 1);
        r.residual = std::max(r.residual, std::abs(hg - s.omega()[a] * s.g(a, j)) / scale);
      }
    }

    const auto psi = random_state(rng, m);
    const double t_max = std::abs(time(rng)) + 0.1;
    const auto grid = cradle::evolution_grid(s, psi, t_max, 17);
    for (std::size_t k = 0; k < grid.samples(); ++k) {
      double sum = 0.0;
      for (double p : grid.row(k)) sum += p;
      r.row_sum = std::max(r.row_sum, std::abs(sum - 1.0));
    }
    for (std::size_t j = 0; j < m; ++j)
      r.initial_row = std::max(r.initial_row, std::abs(grid.row(0)[j] - std::norm(psi[j])));

    const double ta = time(rng), tb = time(rng);
    const auto two_step = cradle::evolve(s, cradle::evolve(s, psi, ta), tb);
    const auto one_step = cradle::evolve(s, psi, ta + tb);
    for (std::size_t j = 0; j < m; ++j) r.group = std::max(r.group, std::abs(two_step[j] - one_step[j]));
  }
  return r;
}

}  // namespace testing_support
