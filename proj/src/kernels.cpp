#include "cradle/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <vector>

namespace cradle::kernels {

namespace {

void check_rows(std::span<const double> omega, std::span<const double> modes,
                std::span<const cplx> coeffs, std::span<const double> times,
                std::span<double> out) {
  const std::size_t m = omega.size();
  if (modes.size() != m * m || coeffs.size() != m || out.size() != times.size() * m)
    throw std::invalid_argument("probability_rows: inconsistent dimensions");
}

}  // namespace

void probability_rows(std::span<const double> omega, std::span<const double> modes,
                      std::span<const cplx> coeffs, std::span<const double> times,
                      std::span<double> out) {
  check_rows(omega, modes, coeffs, times, out);
  const std::size_t m = omega.size();
  const auto nt = static_cast<std::ptrdiff_t>(times.size());

#pragma omp parallel
  {
    std::vector<double> re(m), im(m), are(m), aim(m);
#pragma omp for schedule(static)
    for (std::ptrdiff_t k = 0; k < nt; ++k) {
      const double t = times[static_cast<std::size_t>(k)];
      for (std::size_t n = 0; n < m; ++n) {
        const cplx c = coeffs[n] * std::polar(1.0, -omega[n] * t);
        re[n] = c.real();
        im[n] = c.imag();
      }
      std::fill(are.begin(), are.end(), 0.0);
      std::fill(aim.begin(), aim.end(), 0.0);
      // A_j = sum_n g_{n,j} c_n(t); g is real so the two parts separate.
      for (std::size_t n = 0; n < m; ++n) {
        const double* g = modes.data() + n * m;
        const double rn = re[n], in = im[n];
        for (std::size_t j = 0; j < m; ++j) {
          are[j] += g[j] * rn;
          aim[j] += g[j] * in;
        }
      }
      double* row = out.data() + static_cast<std::size_t>(k) * m;
      for (std::size_t j = 0; j < m; ++j) row[j] = are[j] * are[j] + aim[j] * aim[j];
    }
  }
}

void modulus_scan(std::span<const double> omega, std::span<const double> weights,
                  std::span<const double> times, std::span<double> out) {
  if (weights.size() != omega.size() || out.size() != times.size())
    throw std::invalid_argument("modulus_scan: inconsistent dimensions");
  const std::size_t m = omega.size();
  const auto nt = static_cast<std::ptrdiff_t>(times.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < nt; ++k) {
    const double t = times[static_cast<std::size_t>(k)];
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < m; ++n) {
      const double ph = omega[n] * t;
      re += weights[n] * std::cos(ph);
      im -= weights[n] * std::sin(ph);
    }
    out[static_cast<std::size_t>(k)] = std::hypot(re, im);
  }
}

void modulus_scan_uniform(std::span<const double> omega, std::span<const double> weights,
                          double t0, double step, std::span<double> out) {
  if (weights.size() != omega.size())
    throw std::invalid_argument("modulus_scan_uniform: inconsistent dimensions");
  const std::size_t m = omega.size();
  const auto blocks = static_cast<std::ptrdiff_t>((out.size() + kPhasorBlock - 1) / kPhasorBlock);

#pragma omp parallel
  {
    // z_n = w_n exp(-i omega_n t), r_n = exp(-i omega_n step)
    std::vector<double> zr(m), zi(m), rr(m), ri(m);
    for (std::size_t n = 0; n < m; ++n) {
      rr[n] = std::cos(omega[n] * step);
      ri[n] = -std::sin(omega[n] * step);
    }
#pragma omp for schedule(static)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
      const std::size_t k0 = static_cast<std::size_t>(b) * kPhasorBlock;
      const std::size_t k1 = std::min(out.size(), k0 + kPhasorBlock);
      const double t = t0 + step * static_cast<double>(k0);
      for (std::size_t n = 0; n < m; ++n) {
        zr[n] = weights[n] * std::cos(omega[n] * t);
        zi[n] = -weights[n] * std::sin(omega[n] * t);
      }
      for (std::size_t k = k0; k < k1; ++k) {
        double re = 0.0, im = 0.0;
        for (std::size_t n = 0; n < m; ++n) {
          re += zr[n];
          im += zi[n];
          const double a = zr[n] * rr[n] - zi[n] * ri[n];
          zi[n] = zr[n] * ri[n] + zi[n] * rr[n];
          zr[n] = a;
        }
        out[k] = std::hypot(re, im);
      }
    }
  }
}

void parallel_map(std::size_t count, const std::function<double(std::size_t)>& f,
                  std::span<double> out) {
  if (out.size() != count) throw std::invalid_argument("parallel_map: output size mismatch");
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::ptrdiff_t>(count);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out[idx] = f(idx);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace cradle::kernels
