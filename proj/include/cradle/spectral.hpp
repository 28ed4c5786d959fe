#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cradle/chains.hpp"

namespace cradle {

/// Eigen-decomposition of a chain's single-particle Hamiltonian.
///
/// Eigenvalues ascend with the mode label n = 1..M. `mode(n)` is the
/// normalized eigenvector g_{n,.} (0-based n in this accessor). The first
/// component above round-off of every eigenvector is positive.
class Spectrum {
public:
  static constexpr double kDegeneracyTolerance = 1e-12;

  Spectrum(ChainSpec chain, std::vector<double> omega, std::vector<double> modes);

  const ChainSpec& chain() const noexcept { return chain_; }
  std::size_t sites() const noexcept { return omega_.size(); }
  std::span<const double> omega() const noexcept { return omega_; }
  /// Row-major M x M, row n is eigenvector n.
  std::span<const double> modes() const noexcept { return modes_; }
  std::span<const double> mode(std::size_t n) const { return {modes_.data() + n * sites(), sites()}; }
  double g(std::size_t n, std::size_t j) const { return modes_[n * sites() + j]; }

  /// True where the level lies within kDegeneracyTolerance * width of a neighbour.
  bool near_degenerate(std::size_t n) const { return degenerate_[n]; }
  bool simple() const noexcept;

private:
  ChainSpec chain_;
  std::vector<double> omega_;
  std::vector<double> modes_;
  std::vector<bool> degenerate_;
};

Spectrum diagonalize(const ChainSpec& chain);

/// Eigenvalues with only the end-site components g_{n,1} and g_{n,M}: all a
/// kick-at-site-1 transfer computation needs, in O(M^2).
struct EdgeSpectrum {
  std::vector<double> omega;
  std::vector<double> first;
  std::vector<double> last;
};

EdgeSpectrum edge_spectrum(const ChainSpec& chain);

enum class Parity { odd = -1, undefined = 0, even = 1 };

struct ParitySignature {
  std::vector<Parity> parity;
  // Largest over modes of min_p max_j |g_{n,M+1-j} - p g_{n,j}|; small means every
  // eigenvector is close to having some parity.
  double max_deviation = 0.0;

  bool all_defined() const noexcept;
  bool alternating() const noexcept;
};

/// Mirror parity of each eigenvector; undefined when neither parity fits
/// within `tol` or the level is near-degenerate.
ParitySignature mirror_parity(const Spectrum& spectrum, double tol = 1e-8);

/// Pseudo-wavevectors k_1 < ... < k_M in (0, pi) of the chain whose end bonds
/// are weakened to x*tau. Solves (M+1) k = pi n + 2 phi(k) with
///   phi(k) = k - arccot(((2 - x^2) / x^2) cot k),  arccot valued in (0, pi),
/// by bisection on the monotone residual. -2 tau cos(k_n) are the eigenvalues.
std::vector<double> pseudo_wavevectors(std::size_t sites, double x, double root_tol = 1e-12);

/// 1-based inclusive range of mode labels.
struct ModeRange {
  std::size_t first;
  std::size_t last;
};

/// max_n |omega_{n+1} - omega_n - s| / s over the range, with s the mean spacing.
double linearity_deviation(const Spectrum& spectrum, ModeRange range);
double linearity_deviation(const Spectrum& spectrum);

/// w_n = |sum_j g_{n,j} z_j|^2.
std::vector<double> mode_overlaps(const Spectrum& spectrum, const WaveState& state);

}  // namespace cradle
