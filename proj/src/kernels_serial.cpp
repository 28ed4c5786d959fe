#include <cmath>
#include <stdexcept>

#include "cradle/kernels.hpp"

namespace cradle::kernels::serial {

void probability_rows(std::span<const double> omega, std::span<const double> modes,
                      std::span<const cplx> coeffs, std::span<const double> times,
                      std::span<double> out) {
  const std::size_t m = omega.size();
  if (modes.size() != m * m || coeffs.size() != m || out.size() != times.size() * m)
    throw std::invalid_argument("probability_rows: inconsistent dimensions");

  for (std::size_t k = 0; k < times.size(); ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      cplx a = 0.0;
      for (std::size_t n = 0; n < m; ++n)
        a += modes[n * m + j] * std::exp(cplx(0.0, -omega[n] * times[k])) * coeffs[n];
      out[k * m + j] = std::norm(a);
    }
  }
}

void modulus_scan(std::span<const double> omega, std::span<const double> weights,
                  std::span<const double> times, std::span<double> out) {
  if (weights.size() != omega.size() || out.size() != times.size())
    throw std::invalid_argument("modulus_scan: inconsistent dimensions");
  for (std::size_t k = 0; k < times.size(); ++k) {
    cplx a = 0.0;
    for (std::size_t n = 0; n < omega.size(); ++n)
      a += weights[n] * std::exp(cplx(0.0, -omega[n] * times[k]));
    out[k] = std::abs(a);
  }
}

void modulus_scan_uniform(std::span<const double> omega, std::span<const double> weights,
                          double t0, double step, std::span<double> out) {
  if (weights.size() != omega.size())
    throw std::invalid_argument("modulus_scan_uniform: inconsistent dimensions");
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double t = t0 + step * static_cast<double>(k);
    cplx a = 0.0;
    for (std::size_t n = 0; n < omega.size(); ++n)
      a += weights[n] * std::exp(cplx(0.0, -omega[n] * t));
    out[k] = std::abs(a);
  }
}

void parallel_map(std::size_t count, const std::function<double(std::size_t)>& f,
                  std::span<double> out) {
  if (out.size() != count) throw std::invalid_argument("parallel_map: output size mismatch");
  for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
}

}  // namespace cradle::kernels::serial
