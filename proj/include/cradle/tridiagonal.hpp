#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cradle {

/// Eigenpairs of a real symmetric tridiagonal matrix, sorted ascending.
///
/// `components` is row-major values.size() x rows: entry (n, r) is the
/// component of eigenvector n on matrix row rows[r]. Each eigenvector is
/// normalized and its sign fixed so that its component on the first
/// requested row is non-negative.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<std::size_t> rows;
  std::vector<double> components;

  double component(std::size_t n, std::size_t r) const { return components[n * rows.size() + r]; }
};

/// Implicit-shift QL iteration. `off[i]` couples rows i and i+1.
///
/// Only the eigenvector components on `rows` are accumulated, so asking for a
/// few rows costs O(n^2) instead of O(n^3).
TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> off,
                                   std::span<const std::size_t> rows);

/// Same, accumulating full eigenvectors.
TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> off);

}  // namespace cradle
