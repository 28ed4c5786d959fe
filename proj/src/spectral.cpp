#include "cradle/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cradle/errors.hpp"
#include "cradle/tridiagonal.hpp"

namespace cradle {

namespace {

// Hopping enters the Hamiltonian with a minus sign.
std::vector<double> negated(std::span<const double> v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double x) { return -x; });
  return out;
}

}  // namespace

Spectrum::Spectrum(ChainSpec chain, std::vector<double> omega, std::vector<double> modes)
    : chain_(std::move(chain)), omega_(std::move(omega)), modes_(std::move(modes)) {
  const std::size_t m = chain_.sites();
  if (omega_.size() != m || modes_.size() != m * m)
    throw std::invalid_argument("spectrum dimensions do not match the chain");

  degenerate_.assign(m, false);
  if (m < 2) return;
  const double width = omega_.back() - omega_.front();
  for (std::size_t n = 0; n + 1 < m; ++n) {
    if (omega_[n + 1] - omega_[n] <= kDegeneracyTolerance * width) {
      degenerate_[n] = true;
      degenerate_[n + 1] = true;
    }
  }
}

bool Spectrum::simple() const noexcept {
  return std::none_of(degenerate_.begin(), degenerate_.end(), [](bool d) { return d; });
}

Spectrum diagonalize(const ChainSpec& chain) {
  const auto off = negated(chain.tau());
  auto eig = tridiagonal_eigen(chain.eps(), off);
  // Full row set: components are already laid out as g_{n,j}.
  return Spectrum(chain, std::move(eig.values), std::move(eig.components));
}

EdgeSpectrum edge_spectrum(const ChainSpec& chain) {
  const std::size_t m = chain.sites();
  const auto off = negated(chain.tau());
  const std::size_t rows[2] = {0, m - 1};
  const auto eig =
      tridiagonal_eigen(chain.eps(), off, std::span<const std::size_t>(rows, m > 1 ? 2 : 1));

  EdgeSpectrum out;
  out.omega = eig.values;
  out.first.resize(m);
  out.last.resize(m);
  for (std::size_t n = 0; n < m; ++n) {
    out.first[n] = eig.component(n, 0);
    out.last[n] = m > 1 ? eig.component(n, 1) : eig.component(n, 0);
  }
  return out;
}

bool ParitySignature::all_defined() const noexcept {
  return std::none_of(parity.begin(), parity.end(),
                      [](Parity p) { return p == Parity::undefined; });
}

bool ParitySignature::alternating() const noexcept {
  if (!all_defined()) return false;
  for (std::size_t n = 0; n + 1 < parity.size(); ++n)
    if (parity[n] == parity[n + 1]) return false;
  return true;
}

ParitySignature mirror_parity(const Spectrum& spectrum, double tol) {
  const std::size_t m = spectrum.sites();
  ParitySignature sig;
  sig.parity.assign(m, Parity::undefined);
  for (std::size_t n = 0; n < m; ++n) {
    double dev_even = 0.0, dev_odd = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double a = spectrum.g(n, j);
      const double b = spectrum.g(n, m - 1 - j);
      dev_even = std::max(dev_even, std::abs(b - a));
      dev_odd = std::max(dev_odd, std::abs(b + a));
    }
    const double best = std::min(dev_even, dev_odd);
    sig.max_deviation = std::max(sig.max_deviation, best);
    if (spectrum.near_degenerate(n) || !(best <= tol)) continue;
    sig.parity[n] = dev_even <= dev_odd ? Parity::even : Parity::odd;
  }
  return sig;
}

std::vector<double> pseudo_wavevectors(std::size_t sites, double x, double root_tol) {
  if (sites < 1) throw std::invalid_argument("pseudo-wavevectors need at least one site");
  if (!(x > 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in (0, 1]");
  if (!(root_tol > 0.0)) throw std::invalid_argument("root tolerance must be positive");

  constexpr double pi = std::numbers::pi;
  const double ratio = (2.0 - x * x) / (x * x);
  const double mm1 = static_cast<double>(sites) - 1.0;

  std::vector<double> k(sites);
  for (std::size_t n = 1; n <= sites; ++n) {
    // (M+1)k - pi n - 2 phi(k), rewritten with arccot(y) = pi/2 - atan(y);
    // strictly increasing on (0, pi).
    auto residual = [&](double kk) {
      return mm1 * kk - pi * static_cast<double>(n - 1) - 2.0 * std::atan(ratio / std::tan(kk));
    };
    double lo = std::numeric_limits<double>::min();
    double hi = pi * (1.0 - std::numeric_limits<double>::epsilon());
    double f_lo = residual(lo);
    const double f_hi = residual(hi);
    if (!(f_lo < 0.0 && f_hi > 0.0))
      throw NoRootError(n, "pseudo-wavevector k_" + std::to_string(n) + " is not bracketed in (0, pi)");

    double root = 0.5 * (lo + hi);
    double f_root = residual(root);
    while (std::abs(f_root) > root_tol) {
      if ((f_root < 0.0) == (f_lo < 0.0)) {
        lo = root;
        f_lo = f_root;
      } else {
        hi = root;
      }
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi)
        throw NoRootError(n, "pseudo-wavevector k_" + std::to_string(n) +
                                 " cannot reach residual " + std::to_string(root_tol));
      root = mid;
      f_root = residual(root);
    }
    k[n - 1] = root;
  }
  return k;
}

double linearity_deviation(const Spectrum& spectrum, ModeRange range) {
  const std::size_t m = spectrum.sites();
  if (range.first < 1 || range.last > m || range.first > range.last)
    throw std::invalid_argument("mode range outside 1.." + std::to_string(m));
  if (range.last - range.first + 1 < 3)
    throw std::invalid_argument("linearity needs at least three modes");

  const auto w = spectrum.omega();
  const std::size_t a = range.first - 1, b = range.last - 1;
  const double mean = (w[b] - w[a]) / static_cast<double>(b - a);
  if (!(mean > 0.0)) throw DegenerateSpectrumError("mean level spacing is zero");

  double dev = 0.0;
  for (std::size_t n = a; n < b; ++n) dev = std::max(dev, std::abs(w[n + 1] - w[n] - mean) / mean);
  return dev;
}

double linearity_deviation(const Spectrum& spectrum) {
  return linearity_deviation(spectrum, {1, spectrum.sites()});
}

std::vector<double> mode_overlaps(const Spectrum& spectrum, const WaveState& state) {
  const std::size_t m = spectrum.sites();
  if (state.sites() != m)
    throw std::invalid_argument("state has " + std::to_string(state.sites()) +
                                " sites, spectrum has " + std::to_string(m));
  std::vector<double> w(m);
  for (std::size_t n = 0; n < m; ++n) {
    cplx c = 0.0;
    const auto g = spectrum.mode(n);
    for (std::size_t j = 0; j < m; ++j) c += g[j] * state[j];
    w[n] = std::norm(c);
  }
  return w;
}

}  // namespace cradle
