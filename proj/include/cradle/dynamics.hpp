#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "cradle/chains.hpp"
#include "cradle/spectral.hpp"

namespace cradle {

// Time is measured in units of 1/energy (hbar = 1).

struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;
};

/// Guard on dense grid allocation (time samples x sites).
struct GridLimits {
  static constexpr std::size_t kDefaultMaxCells = 100000;
  std::size_t max_cells = kDefaultMaxCells;

  static GridLimits unlimited() { return {std::numeric_limits<std::size_t>::max()}; }
};

/// Site probabilities |A_j(t)|^2 on a uniform time grid.
class EvolutionGrid {
public:
  EvolutionGrid(ChainSpec chain, WaveState initial, std::vector<double> times,
                std::vector<double> prob);

  const ChainSpec& chain() const noexcept { return chain_; }
  const WaveState& initial() const noexcept { return initial_; }
  std::size_t sites() const noexcept { return chain_.sites(); }
  std::size_t samples() const noexcept { return times_.size(); }
  std::span<const double> times() const noexcept { return times_; }
  /// Row-major samples() x sites().
  std::span<const double> prob() const noexcept { return prob_; }
  std::span<const double> row(std::size_t k) const { return {prob_.data() + k * sites(), sites()}; }

private:
  ChainSpec chain_;
  WaveState initial_;
  std::vector<double> times_;
  std::vector<double> prob_;
};

struct TransferReport {
  double peak_time = 0.0;
  double peak_amplitude = 0.0;
  TimeWindow window;
  std::size_t samples = 0;
};

inline constexpr double kWindowLengthPerSite = 1.5;  // in units of 1/tau_max
inline constexpr double kCoarseTimeStep = 0.05;      // in units of 1/tau_max
inline constexpr double kPeakTimeTolerance = 1e-6;

/// A_j(t) = sum_n exp(-i omega_n t) g_{n,j} sum_j' g_{n,j'} z_j'(0). Any real t.
WaveState evolve(const Spectrum& spectrum, const WaveState& state, double t);

/// steps >= 2 samples at t_k = t_max k / (steps - 1). Rows are computed in
/// parallel. Throws TooLargeError when steps * M exceeds limits.max_cells.
EvolutionGrid evolution_grid(const Spectrum& spectrum, const WaveState& state, double t_max,
                             std::size_t steps, GridLimits limits = {});

/// End amplitude A_M(t) for the kick at site 1, from the mirror parities:
///   A_M(t) = sum_n p_n g_{n,1}^2 exp(-i omega_n t).
/// Throws PreconditionError unless the chain is mirror symmetric and every
/// eigenvector has a definite parity.
cplx end_amplitude(const Spectrum& spectrum, double t);

/// [0, 1.5 M / tau_max]: brackets the first ballistic arrival at the far end.
TimeWindow default_window(const ChainSpec& chain);
/// Number of coarse intervals giving a step of 0.05 / tau_max over the window.
std::size_t default_coarse_steps(const ChainSpec& chain, TimeWindow window);

/// Maximum of |A_M(t)| for the kick at site 1: a coarse scan with
/// coarse_steps intervals (>= 10), then golden-section refinement around the
/// best sample down to kPeakTimeTolerance.
TransferReport peak_transfer(const Spectrum& spectrum, TimeWindow window, std::size_t coarse_steps);
TransferReport peak_transfer(const Spectrum& spectrum);
TransferReport peak_transfer(const EdgeSpectrum& spectrum, TimeWindow window,
                             std::size_t coarse_steps);

/// |<psi(0)|psi(t)>|.
double revival_fidelity(const Spectrum& spectrum, const WaveState& state, double t);

/// Largest total probability found on the edge_width outermost sites of both
/// ends at any grid time.
double edge_exposure(const EvolutionGrid& grid, std::size_t edge_width);

}  // namespace cradle
