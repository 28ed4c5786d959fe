#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cradle {

using cplx = std::complex<double>;

/// Nearest-neighbour hopping chain with M sites.
///
/// The single-particle Hamiltonian is
///   H = -sum_j tau_j (|j><j+1| + |j+1><j|) + sum_j eps_j |j><j|
/// with hbar = 1. tau has M-1 strictly positive entries, eps has M entries.
/// Sites are labelled 1..M in the public API; storage is 0-based.
class ChainSpec {
public:
  /// Throws std::invalid_argument unless eps is non-empty,
  /// tau.size() == eps.size() - 1, every tau is positive and all values are finite.
  ChainSpec(std::vector<double> tau, std::vector<double> eps);

  std::size_t sites() const noexcept { return eps_.size(); }
  std::span<const double> tau() const noexcept { return tau_; }
  std::span<const double> eps() const noexcept { return eps_; }
  double max_tau() const noexcept;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

private:
  std::vector<double> tau_;
  std::vector<double> eps_;
};

/// True iff tau_j = tau_{M-j} and eps_j = eps_{M+1-j} (exact comparison by default).
bool mirror_symmetric(const ChainSpec& chain, double tol = 0.0);

/// Unit-norm vector of complex site amplitudes.
class WaveState {
public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws std::invalid_argument when empty or |sum |z|^2 - 1| > kNormTolerance.
  explicit WaveState(std::vector<cplx> amplitudes);

  /// Rescales to unit norm. Throws DegenerateStateError if the weight is zero
  /// or underflowed.
  static WaveState normalized(std::vector<cplx> amplitudes);

  std::size_t sites() const noexcept { return z_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return z_; }
  const cplx& operator[](std::size_t i) const { return z_[i]; }
  double norm_squared() const noexcept;

private:
  struct Unchecked {};
  WaveState(std::vector<cplx> amplitudes, Unchecked) : z_(std::move(amplitudes)) {}

  std::vector<cplx> z_;
};

// Sign with which the Gaussian profile enters the diagonal so that a
// zero-momentum packet is confined (a well for the band-bottom states).
inline constexpr int kConfiningTrapSign = -1;

ChainSpec uniform_chain(std::size_t sites, double tau);

/// tau_j = omega * sqrt(j (M - j)); equally spaced spectrum with spacing 2*omega.
ChainSpec pst_chain(std::size_t sites, double omega);

/// Uniform chain with tau_1 = tau_{M-1} = x*tau and, when y is given,
/// tau_2 = tau_{M-2} = y*tau.
ChainSpec edge_modified_chain(std::size_t sites, double tau, double x,
                              std::optional<double> y = std::nullopt);

/// Uniform hopping plus eps_j = sign * exp(-(j - center)^2 / width^2).
ChainSpec gaussian_trap_chain(std::size_t sites, double tau, double center, double width,
                              int sign = kConfiningTrapSign);

/// Excitation localized on `site` (1-based).
WaveState kick_state(std::size_t sites, std::size_t site);

/// z_j proportional to exp(-(j - center)^2 / width^2), l2-normalized over the sites.
WaveState gaussian_wavepacket(std::size_t sites, double center, double width);

}  // namespace cradle
