#include "cradle/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "cradle/chains.hpp"
#include "cradle/dynamics.hpp"
#include "cradle/kernels.hpp"
#include "cradle/optimize.hpp"
#include "cradle/spectral.hpp"

namespace cradle {

namespace {

// Lower clip for refinement brackets; x -> 0 disconnects the chain ends.
constexpr double kMinParam = 1e-3;
constexpr int kMaxDescentSweeps = 40;

void validate(const GridResolution& grid) {
  if (grid.points < 1) throw std::invalid_argument("grid needs at least one point");
  if (!(grid.lo > 0.0 && grid.lo <= grid.hi && grid.hi <= 1.0))
    throw std::invalid_argument("grid bounds must satisfy 0 < lo <= hi <= 1");
}

double spacing(const GridResolution& grid) {
  return grid.points > 1 ? (grid.hi - grid.lo) / static_cast<double>(grid.points - 1) : 0.0;
}

// Evaluates the objective on each parameter set in parallel; order is preserved.
std::vector<TuneSample> evaluate_all(std::size_t sites, double tau,
                                     const std::vector<std::vector<double>>& points) {
  std::vector<TuneSample> out(points.size());
  std::vector<double> amp(points.size());
  kernels::parallel_map(
      points.size(),
      [&](std::size_t i) {
        out[i] = transfer_objective(sites, tau, points[i]);
        return out[i].amplitude;
      },
      amp);
  return out;
}

std::size_t first_max(const std::vector<TuneSample>& samples) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].amplitude > samples[best].amplitude) best = i;
  return best;
}

// Records every evaluation in the trace and every improvement in the path.
class Recorder {
public:
  Recorder(std::size_t sites, double tau, TuneResult& result)
      : sites_(sites), tau_(tau), result_(result) {}

  double operator()(std::vector<double> params) {
    auto s = transfer_objective(sites_, tau_, params);
    result_.trace.push_back(s);
    if (s.amplitude > result_.path.back().amplitude) result_.path.push_back(s);
    return s.amplitude;
  }

private:
  std::size_t sites_;
  double tau_;
  TuneResult& result_;
};

void finish(TuneResult& result) {
  const auto& best = result.path.back();
  result.best_params = best.params;
  result.best_amplitude = best.amplitude;
  result.best_time = best.time;
  result.evaluations = result.trace.size();
}

}  // namespace

std::vector<double> GridResolution::values() const {
  validate(*this);
  if (points == 1) return {hi};
  std::vector<double> v(points);
  const double h = spacing(*this);
  for (std::size_t i = 0; i < points; ++i)
    v[i] = i + 1 == points ? hi : lo + h * static_cast<double>(i);
  return v;
}

TuneSample transfer_objective(std::size_t sites, double tau, std::span<const double> params) {
  if (params.empty() || params.size() > 2)
    throw std::invalid_argument("transfer objective takes one or two parameters");
  const std::optional<double> y = params.size() == 2 ? std::optional(params[1]) : std::nullopt;
  const auto chain = edge_modified_chain(sites, tau, params[0], y);
  const auto window = default_window(chain);
  const auto report = peak_transfer(edge_spectrum(chain), window, default_coarse_steps(chain, window));
  return {std::vector<double>(params.begin(), params.end()), report.peak_amplitude,
          report.peak_time};
}

TuneResult tune_single(std::size_t sites, double tau, GridResolution grid) {
  validate(grid);
  if (sites < 3) throw std::invalid_argument("single-bond tuning needs at least 3 sites");

  std::vector<std::vector<double>> points;
  for (double x : grid.values()) points.push_back({x});

  TuneResult result;
  result.trace = evaluate_all(sites, tau, points);
  result.path.push_back(result.trace[first_max(result.trace)]);

  if (grid.points > 1) {
    const double h = spacing(grid);
    const double x0 = result.path.back().params[0];
    Recorder record(sites, tau, result);
    golden_section_max([&](double x) { return record({x}); }, std::max(kMinParam, x0 - h),
                       std::min(1.0, x0 + h), kParamTolerance, {x0, result.path.back().amplitude});
  }
  finish(result);
  return result;
}

TuneResult tune_double(std::size_t sites, double tau, GridResolution grid) {
  validate(grid);
  if (sites < 5) throw std::invalid_argument("two-bond tuning needs at least 5 sites");

  const auto axis = grid.values();
  std::vector<std::vector<double>> points;
  points.reserve(axis.size() * axis.size());
  for (double x : axis)
    for (double y : axis) points.push_back({x, y});

  TuneResult result;
  result.trace = evaluate_all(sites, tau, points);
  result.path.push_back(result.trace[first_max(result.trace)]);

  if (grid.points > 1) {
    const double h = spacing(grid);
    Recorder record(sites, tau, result);
    for (int sweep = 0; sweep < kMaxDescentSweeps; ++sweep) {
      double moved = 0.0;
      for (std::size_t axis_index = 0; axis_index < 2; ++axis_index) {
        const auto current = result.path.back();
        const double c = current.params[axis_index];
        auto along = [&](double v) {
          auto p = current.params;
          p[axis_index] = v;
          return record(p);
        };
        const auto line = golden_section_max(along, std::max(kMinParam, c - h), std::min(1.0, c + h),
                                             kParamTolerance, {c, current.amplitude});
        moved = std::max(moved, std::abs(line.x - c));
      }
      if (moved < kParamTolerance) break;
    }
  }
  finish(result);
  return result;
}

double flatness_probe(std::size_t sites, double tau, std::span<const double> params, double radius) {
  if (params.empty() || params.size() > 2)
    throw std::invalid_argument("flatness probe takes one or two parameters");
  for (double p : params)
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("parameters must lie in (0, 1]");
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("radius must be non-negative");

  const double offsets[5] = {-radius, -0.5 * radius, 0.0, 0.5 * radius, radius};
  auto inside = [](double v) { return v > 0.0 && v <= 1.0; };

  std::vector<std::vector<double>> points;
  if (params.size() == 1) {
    for (double dx : offsets)
      if (inside(params[0] + dx)) points.push_back({params[0] + dx});
  } else {
    for (double dx : offsets)
      for (double dy : offsets)
        if (inside(params[0] + dx) && inside(params[1] + dy))
          points.push_back({params[0] + dx, params[1] + dy});
  }
  if (points.empty()) throw std::invalid_argument("flatness neighbourhood lies outside (0, 1]");

  const auto samples = evaluate_all(sites, tau, points);
  double worst = samples.front().amplitude;
  for (const auto& s : samples) worst = std::min(worst, s.amplitude);
  return worst;
}

}  // namespace cradle
