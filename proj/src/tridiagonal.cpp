#include "cradle/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cradle {

namespace {

constexpr int kMaxSweepsPerValue = 60;

// Components below this are treated as zero when fixing the sign.
constexpr double kSignThreshold = 64 * std::numeric_limits<double>::epsilon();

}  // namespace

TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> off,
                                   std::span<const std::size_t> rows) {
  const std::size_t n = diag.size();
  if (n == 0) throw std::invalid_argument("empty tridiagonal matrix");
  if (off.size() + 1 != n) throw std::invalid_argument("off-diagonal length must be n-1");
  for (auto r : rows)
    if (r >= n) throw std::invalid_argument("requested row out of range");

  const std::size_t nr = rows.size();
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());

  // z[i * nr + r]: component on rows[r] of the i-th (unsorted) eigenvector.
  std::vector<double> z(n * nr, 0.0);
  for (std::size_t r = 0; r < nr; ++r) z[rows[r] * nr + r] = 1.0;

  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (sweeps++ == kMaxSweepsPerValue)
        throw std::runtime_error("tridiagonal QL failed to converge at row " + std::to_string(l));

      // Wilkinson-type shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        double* zi = &z[i * nr];
        double* zj = &z[(i + 1) * nr];
        for (std::size_t k = 0; k < nr; ++k) {
          f = zj[k];
          zj[k] = s * zi[k] + c * f;
          zi[k] = c * zi[k] - s * f;
        }
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.values.resize(n);
  out.rows.assign(rows.begin(), rows.end());
  out.components.resize(n * nr);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = d[src];
    double sign = 1.0;
    for (std::size_t r = 0; r < nr; ++r) {
      const double v = z[src * nr + r];
      if (std::abs(v) > kSignThreshold) {
        sign = v > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t r = 0; r < nr; ++r) out.components[k * nr + r] = sign * z[src * nr + r];
  }
  return out;
}

TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> off) {
  std::vector<std::size_t> rows(diag.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return tridiagonal_eigen(diag, off, rows);
}

}  // namespace cradle
