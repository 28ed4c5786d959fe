#include "cradle/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cradle/errors.hpp"

namespace cradle {

ChainSpec::ChainSpec(std::vector<double> tau, std::vector<double> eps)
    : tau_(std::move(tau)), eps_(std::move(eps)) {
  if (eps_.empty()) throw std::invalid_argument("chain needs at least one site");
  if (tau_.size() + 1 != eps_.size())
    throw std::invalid_argument("chain with " + std::to_string(eps_.size()) + " sites needs " +
                                std::to_string(eps_.size() - 1) + " couplings, got " +
                                std::to_string(tau_.size()));
  for (std::size_t j = 0; j < tau_.size(); ++j) {
    if (!(tau_[j] > 0.0) || !std::isfinite(tau_[j]))
      throw std::invalid_argument("coupling tau_" + std::to_string(j + 1) +
                                  " must be positive and finite");
  }
  for (std::size_t j = 0; j < eps_.size(); ++j) {
    if (!std::isfinite(eps_[j]))
      throw std::invalid_argument("offset eps_" + std::to_string(j + 1) + " is not finite");
  }
}

double ChainSpec::max_tau() const noexcept {
  if (tau_.empty()) return 0.0;
  return *std::max_element(tau_.begin(), tau_.end());
}

bool mirror_symmetric(const ChainSpec& chain, double tol) {
  auto close = [tol](double a, double b) {
    return tol == 0.0 ? a == b : std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
  };
  const auto tau = chain.tau();
  const auto eps = chain.eps();
  for (std::size_t j = 0; j < tau.size(); ++j)
    if (!close(tau[j], tau[tau.size() - 1 - j])) return false;
  for (std::size_t j = 0; j < eps.size(); ++j)
    if (!close(eps[j], eps[eps.size() - 1 - j])) return false;
  return true;
}

WaveState::WaveState(std::vector<cplx> amplitudes) : z_(std::move(amplitudes)) {
  if (z_.empty()) throw std::invalid_argument("state needs at least one site");
  const double n2 = norm_squared();
  if (!(std::abs(n2 - 1.0) <= kNormTolerance))
    throw std::invalid_argument("state is not normalized (sum |z|^2 = " + std::to_string(n2) +
                                ")");
}

WaveState WaveState::normalized(std::vector<cplx> amplitudes) {
  if (amplitudes.empty()) throw std::invalid_argument("state needs at least one site");
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  if (!(n2 >= std::numeric_limits<double>::min()) || !std::isfinite(n2))
    throw DegenerateStateError("state weight vanished or is not finite; cannot normalize");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes) a *= scale;
  return WaveState(std::move(amplitudes), Unchecked{});
}

double WaveState::norm_squared() const noexcept {
  double n2 = 0.0;
  for (const auto& a : z_) n2 += std::norm(a);
  return n2;
}

namespace {

void require_sites(std::size_t sites, std::size_t minimum, const char* what) {
  if (sites < minimum)
    throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(minimum) +
                                " sites, got " + std::to_string(sites));
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

void require_unit_interval(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1], got " +
                                std::to_string(v));
}

}  // namespace

ChainSpec uniform_chain(std::size_t sites, double tau) {
  require_sites(sites, 1, "uniform chain");
  require_positive(tau, "tau");
  return ChainSpec(std::vector<double>(sites - 1, tau), std::vector<double>(sites, 0.0));
}

ChainSpec pst_chain(std::size_t sites, double omega) {
  require_sites(sites, 2, "perfect-transfer chain");
  require_positive(omega, "omega");
  std::vector<double> tau(sites - 1);
  for (std::size_t j = 1; j < sites; ++j)
    tau[j - 1] = omega * std::sqrt(static_cast<double>(j) * static_cast<double>(sites - j));
  return ChainSpec(std::move(tau), std::vector<double>(sites, 0.0));
}

ChainSpec edge_modified_chain(std::size_t sites, double tau, double x, std::optional<double> y) {
  require_sites(sites, y ? 5 : 3, "edge-modified chain");
  require_positive(tau, "tau");
  require_unit_interval(x, "x");
  if (y) require_unit_interval(*y, "y");

  std::vector<double> t(sites - 1, tau);
  t.front() = t.back() = x * tau;
  if (y) t[1] = t[t.size() - 2] = *y * tau;
  return ChainSpec(std::move(t), std::vector<double>(sites, 0.0));
}

ChainSpec gaussian_trap_chain(std::size_t sites, double tau, double center, double width,
                              int sign) {
  require_sites(sites, 1, "trap chain");
  require_positive(tau, "tau");
  require_positive(width, "trap width");
  if (sign != 1 && sign != -1) throw std::invalid_argument("trap sign must be +1 or -1");
  if (!std::isfinite(center)) throw std::invalid_argument("trap center must be finite");

  std::vector<double> eps(sites);
  for (std::size_t j = 1; j <= sites; ++j) {
    const double d = static_cast<double>(j) - center;
    eps[j - 1] = sign * std::exp(-(d * d) / (width * width));
  }
  return ChainSpec(std::vector<double>(sites - 1, tau), std::move(eps));
}

WaveState kick_state(std::size_t sites, std::size_t site) {
  require_sites(sites, 1, "kick state");
  if (site < 1 || site > sites)
    throw std::invalid_argument("kick site " + std::to_string(site) + " outside 1.." +
                                std::to_string(sites));
  std::vector<cplx> z(sites, 0.0);
  z[site - 1] = 1.0;
  return WaveState(std::move(z));
}

WaveState gaussian_wavepacket(std::size_t sites, double center, double width) {
  require_sites(sites, 1, "wavepacket");
  require_positive(width, "packet width");
  if (!std::isfinite(center)) throw std::invalid_argument("packet center must be finite");

  std::vector<cplx> z(sites);
  for (std::size_t j = 1; j <= sites; ++j) {
    const double d = static_cast<double>(j) - center;
    z[j - 1] = std::exp(-(d * d) / (width * width));
  }
  return WaveState::normalized(std::move(z));
}

}  // namespace cradle
