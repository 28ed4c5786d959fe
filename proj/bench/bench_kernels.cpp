// Serial vs OpenMP kernels on a uniform chain. Range argument = number of sites.

#include <benchmark/benchmark.h>

#include <vector>

#include "cradle/dynamics.hpp"
#include "cradle/kernels.hpp"
#include "cradle/spectral.hpp"

using namespace cradle;

namespace {

struct Setup {
  Spectrum spectrum;
  std::vector<cplx> coeffs;
  std::vector<double> weights;
  std::vector<double> times;

  explicit Setup(std::size_t m) : spectrum(diagonalize(uniform_chain(m, 1.0))) {
    const auto psi = kick_state(m, 1);
    for (std::size_t n = 0; n < m; ++n) {
      double c = 0.0;
      for (std::size_t j = 0; j < m; ++j) c += spectrum.mode(n)[j] * psi[j].real();
      coeffs.emplace_back(c, 0.0);
      weights.push_back(spectrum.mode(n)[0] * spectrum.mode(n)[m - 1]);
    }
    for (std::size_t k = 0; k < 2000; ++k) times.push_back(0.05 * k);
  }
};

template <bool Parallel>
void probability_rows(benchmark::State& state) {
  const Setup s(static_cast<std::size_t>(state.range(0)));
  const std::size_t m = s.weights.size();
  const std::vector<double> t(s.times.begin(), s.times.begin() + 200);
  std::vector<double> out(t.size() * m);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::probability_rows(s.spectrum.omega(), s.spectrum.modes(), s.coeffs, t, out);
    else
      kernels::serial::probability_rows(s.spectrum.omega(), s.spectrum.modes(), s.coeffs, t, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void modulus_scan(benchmark::State& state) {
  const Setup s(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(s.times.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::modulus_scan(s.spectrum.omega(), s.weights, s.times, out);
    else
      kernels::serial::modulus_scan(s.spectrum.omega(), s.weights, s.times, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void modulus_scan_uniform(benchmark::State& state) {
  const Setup s(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(s.times.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::modulus_scan_uniform(s.spectrum.omega(), s.weights, 0.0, 0.05, out);
    else
      kernels::serial::modulus_scan_uniform(s.spectrum.omega(), s.weights, 0.0, 0.05, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(probability_rows<false>)->Arg(50)->Arg(200);
BENCHMARK(probability_rows<true>)->Arg(50)->Arg(200);
BENCHMARK(modulus_scan<false>)->Arg(100)->Arg(400);
BENCHMARK(modulus_scan<true>)->Arg(100)->Arg(400);
BENCHMARK(modulus_scan_uniform<false>)->Arg(100)->Arg(400);
BENCHMARK(modulus_scan_uniform<true>)->Arg(100)->Arg(400);

BENCHMARK_MAIN();
