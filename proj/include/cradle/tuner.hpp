#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cradle {

/// Coarse grid per axis: `points` values evenly spaced on [lo, hi]; a single
/// point means just `hi`.
struct GridResolution {
  std::size_t points = 50;
  double lo = 0.02;
  double hi = 1.0;

  std::vector<double> values() const;
};

struct TuneSample {
  std::vector<double> params;
  double amplitude = 0.0;
  double time = 0.0;
};

struct TuneResult {
  std::vector<double> best_params;
  double best_amplitude = 0.0;
  double best_time = 0.0;
  std::size_t evaluations = 0;
  /// Every objective evaluation in order: grid first (row-major, x outermost), then refinement.
  std::vector<TuneSample> trace;
  /// Incumbents accepted during refinement, starting from the best grid point.
  std::vector<TuneSample> path;
};

inline constexpr double kParamTolerance = 1e-4;

/// Peak end-to-end amplitude of edge_modified_chain(M, tau, params...) over
/// the default transfer window. params holds x, or x and y.
TuneSample transfer_objective(std::size_t sites, double tau, std::span<const double> params);

/// Best end-bond weakening x: grid scan then golden-section refinement.
TuneResult tune_single(std::size_t sites, double tau, GridResolution grid = {});

/// Best (x, y) for the two outermost bond pairs: 2-D grid scan then
/// coordinate descent with golden-section line searches. Ties on the grid go
/// to the lowest x, then the lowest y.
TuneResult tune_double(std::size_t sites, double tau, GridResolution grid = {});

/// Smallest peak amplitude over an axis-aligned box of half-width `radius`
/// around params, sampled at 5 points per axis. Points outside (0, 1] are
/// dropped.
double flatness_probe(std::size_t sites, double tau, std::span<const double> params, double radius);

}  // namespace cradle
