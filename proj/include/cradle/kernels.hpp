#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "cradle/chains.hpp"

// Data-parallel inner loops. Each kernel has an OpenMP version in
// cradle::kernels and a plain serial version in cradle::kernels::serial that
// the tests use as reference. Outputs are indexed by input position, so the
// result never depends on thread scheduling.
namespace cradle::kernels {

/// out[k*M + j] = |sum_n g_{n,j} c_n exp(-i omega_n t_k)|^2 where `modes` is the
/// row-major M x M eigenvector matrix and c_n = <n|psi(0)>.
void probability_rows(std::span<const double> omega, std::span<const double> modes,
                      std::span<const cplx> coeffs, std::span<const double> times,
                      std::span<double> out);

/// out[k] = |sum_n weights_n exp(-i omega_n t_k)|.
void modulus_scan(std::span<const double> omega, std::span<const double> weights,
                  std::span<const double> times, std::span<double> out);

/// Same as modulus_scan on the uniform grid t_k = t0 + k*step, k < out.size().
/// Phases advance by a recurrence re-seeded every kPhasorBlock samples.
void modulus_scan_uniform(std::span<const double> omega, std::span<const double> weights,
                          double t0, double step, std::span<double> out);

inline constexpr std::size_t kPhasorBlock = 64;

/// out[i] = f(i). Exceptions thrown by f are rethrown on the calling thread
/// (the one from the lowest index wins).
void parallel_map(std::size_t count, const std::function<double(std::size_t)>& f,
                  std::span<double> out);

namespace serial {

void probability_rows(std::span<const double> omega, std::span<const double> modes,
                      std::span<const cplx> coeffs, std::span<const double> times,
                      std::span<double> out);

void modulus_scan(std::span<const double> omega, std::span<const double> weights,
                  std::span<const double> times, std::span<double> out);

void modulus_scan_uniform(std::span<const double> omega, std::span<const double> weights,
                          double t0, double step, std::span<double> out);

void parallel_map(std::size_t count, const std::function<double(std::size_t)>& f,
                  std::span<double> out);

}  // namespace serial

}  // namespace cradle::kernels
