#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "config.hpp"

namespace cradle::cli {

/// Compute caps; CRADLE_NO_COMPUTE_CAP=1 in the environment lifts them.
struct ComputeCaps {
  std::size_t grid_cells;
  std::size_t oracle_sites;

  static ComputeCaps defaults();
  static ComputeCaps unlimited();
  static ComputeCaps from_environment();
};

using Written = std::vector<std::filesystem::path>;

// Each command computes everything first, then writes its files into `out`.
Written cmd_spectrum(const RunConfig& rc, const std::filesystem::path& out, const ComputeCaps& caps);
Written cmd_evolve(const RunConfig& rc, const std::filesystem::path& out, const ComputeCaps& caps);
Written cmd_tune(const RunConfig& rc, const std::filesystem::path& out, const ComputeCaps& caps);
Written cmd_oracle(const RunConfig& rc, const std::filesystem::path& out, const ComputeCaps& caps);

}  // namespace cradle::cli
