#include "cradle/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cradle/errors.hpp"
#include "cradle/kernels.hpp"
#include "cradle/optimize.hpp"

namespace cradle {

namespace {

void require_dimension(const Spectrum& spectrum, const WaveState& state) {
  if (state.sites() != spectrum.sites())
    throw std::invalid_argument("state has " + std::to_string(state.sites()) +
                                " sites, spectrum has " + std::to_string(spectrum.sites()));
}

// c_n = sum_j g_{n,j} z_j
std::vector<cplx> mode_coefficients(const Spectrum& spectrum, const WaveState& state) {
  const std::size_t m = spectrum.sites();
  std::vector<cplx> c(m);
  for (std::size_t n = 0; n < m; ++n) {
    const auto g = spectrum.mode(n);
    cplx s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += g[j] * state[j];
    c[n] = s;
  }
  return c;
}

double tau_scale(const ChainSpec& chain) {
  const double t = chain.max_tau();
  return t > 0.0 ? t : 1.0;
}

TransferReport refine_peak(std::span<const double> omega, std::span<const double> weights,
                           TimeWindow window, std::size_t coarse_steps) {
  if (!(window.end > window.begin) || window.begin < 0.0 || !std::isfinite(window.end))
    throw std::invalid_argument("transfer window must be a non-empty interval in [0, inf)");
  if (coarse_steps < 10) throw std::invalid_argument("peak search needs at least 10 coarse steps");

  const double h = (window.end - window.begin) / static_cast<double>(coarse_steps);
  std::vector<double> amp(coarse_steps + 1);
  kernels::modulus_scan_uniform(omega, weights, window.begin, h, amp);

  const auto best = static_cast<std::size_t>(std::max_element(amp.begin(), amp.end()) - amp.begin());

  auto modulus = [&](double t) {
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < omega.size(); ++n) {
      re += weights[n] * std::cos(omega[n] * t);
      im -= weights[n] * std::sin(omega[n] * t);
    }
    return std::hypot(re, im);
  };
  const double t_best = std::min(window.end, window.begin + h * static_cast<double>(best));
  const double lo = std::max(window.begin, t_best - h);
  const double hi = std::min(window.end, t_best + h);
  const auto peak = golden_section_max(modulus, lo, hi, kPeakTimeTolerance, {t_best, amp[best]});

  TransferReport report;
  report.peak_time = peak.x;
  report.peak_amplitude = std::min(peak.value, 1.0);
  report.window = window;
  report.samples = amp.size();
  return report;
}

}  // namespace

EvolutionGrid::EvolutionGrid(ChainSpec chain, WaveState initial, std::vector<double> times,
                             std::vector<double> prob)
    : chain_(std::move(chain)),
      initial_(std::move(initial)),
      times_(std::move(times)),
      prob_(std::move(prob)) {
  if (initial_.sites() != chain_.sites() || prob_.size() != times_.size() * chain_.sites())
    throw std::invalid_argument("evolution grid dimensions do not match");
}

WaveState evolve(const Spectrum& spectrum, const WaveState& state, double t) {
  require_dimension(spectrum, state);
  if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
  if (t == 0.0) return state;

  const std::size_t m = spectrum.sites();
  auto c = mode_coefficients(spectrum, state);
  const auto omega = spectrum.omega();
  for (std::size_t n = 0; n < m; ++n) c[n] *= std::polar(1.0, -omega[n] * t);

  std::vector<cplx> z(m, 0.0);
  for (std::size_t n = 0; n < m; ++n) {
    const auto g = spectrum.mode(n);
    for (std::size_t j = 0; j < m; ++j) z[j] += g[j] * c[n];
  }
  return WaveState(std::move(z));
}

EvolutionGrid evolution_grid(const Spectrum& spectrum, const WaveState& state, double t_max,
                             std::size_t steps, GridLimits limits) {
  require_dimension(spectrum, state);
  if (steps < 2) throw std::invalid_argument("evolution grid needs at least 2 time samples");
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw std::invalid_argument("t_max must be positive and finite");

  const std::size_t m = spectrum.sites();
  if (steps > limits.max_cells / m)
    throw TooLargeError(steps * m, limits.max_cells,
                        "evolution grid of " + std::to_string(steps) + " x " + std::to_string(m) +
                            " cells exceeds the cap of " + std::to_string(limits.max_cells));

  std::vector<double> times(steps);
  for (std::size_t k = 0; k < steps; ++k)
    times[k] = t_max * static_cast<double>(k) / static_cast<double>(steps - 1);

  const auto c = mode_coefficients(spectrum, state);
  std::vector<double> prob(steps * m);
  kernels::probability_rows(spectrum.omega(), spectrum.modes(), c, times, prob);
  return EvolutionGrid(spectrum.chain(), state, std::move(times), std::move(prob));
}

cplx end_amplitude(const Spectrum& spectrum, double t) {
  if (!mirror_symmetric(spectrum.chain(), 1e-12))
    throw PreconditionError("end amplitude via mirror parity needs a mirror-symmetric chain");
  const auto parity = mirror_parity(spectrum);
  if (!parity.all_defined())
    throw PreconditionError("end amplitude via mirror parity needs definite eigenvector parities");

  const auto omega = spectrum.omega();
  cplx a = 0.0;
  for (std::size_t n = 0; n < spectrum.sites(); ++n) {
    const double g1 = spectrum.g(n, 0);
    a += static_cast<double>(parity.parity[n]) * g1 * g1 * std::polar(1.0, -omega[n] * t);
  }
  return a;
}

TimeWindow default_window(const ChainSpec& chain) {
  return {0.0, kWindowLengthPerSite * static_cast<double>(chain.sites()) / tau_scale(chain)};
}

std::size_t default_coarse_steps(const ChainSpec& chain, TimeWindow window) {
  const double step = kCoarseTimeStep / tau_scale(chain);
  const auto steps = static_cast<std::size_t>(std::ceil((window.end - window.begin) / step));
  return std::max<std::size_t>(steps, 10);
}

TransferReport peak_transfer(const Spectrum& spectrum, TimeWindow window,
                             std::size_t coarse_steps) {
  const std::size_t m = spectrum.sites();
  std::vector<double> weights(m);
  for (std::size_t n = 0; n < m; ++n) weights[n] = spectrum.g(n, 0) * spectrum.g(n, m - 1);
  return refine_peak(spectrum.omega(), weights, window, coarse_steps);
}

TransferReport peak_transfer(const Spectrum& spectrum) {
  const auto window = default_window(spectrum.chain());
  return peak_transfer(spectrum, window, default_coarse_steps(spectrum.chain(), window));
}

TransferReport peak_transfer(const EdgeSpectrum& spectrum, TimeWindow window,
                             std::size_t coarse_steps) {
  std::vector<double> weights(spectrum.omega.size());
  for (std::size_t n = 0; n < weights.size(); ++n)
    weights[n] = spectrum.first[n] * spectrum.last[n];
  return refine_peak(spectrum.omega, weights, window, coarse_steps);
}

double revival_fidelity(const Spectrum& spectrum, const WaveState& state, double t) {
  require_dimension(spectrum, state);
  const auto c = mode_coefficients(spectrum, state);
  const auto omega = spectrum.omega();
  // <psi(0)|psi(t)> = sum_n |c_n|^2 exp(-i omega_n t)
  cplx overlap = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n)
    overlap += std::norm(c[n]) * std::polar(1.0, -omega[n] * t);
  return std::min(std::abs(overlap), 1.0);
}

double edge_exposure(const EvolutionGrid& grid, std::size_t edge_width) {
  const std::size_t m = grid.sites();
  if (edge_width < 1 || edge_width > m / 2)
    throw std::invalid_argument("edge width must lie in 1.." + std::to_string(m / 2));
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.samples(); ++k) {
    const auto p = grid.row(k);
    double s = 0.0;
    for (std::size_t j = 0; j < edge_width; ++j) s += p[j] + p[m - 1 - j];
    worst = std::max(worst, s);
  }
  return worst;
}

}  // namespace cradle
