#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>
#include <system_error>

#include "cradle/dynamics.hpp"
#include "cradle/errors.hpp"
#include "cradle/hubbard.hpp"
#include "cradle/spectral.hpp"
#include "cradle/tuner.hpp"
#include "output.hpp"

namespace cradle::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kOracleSiteCap = 5;
constexpr double kRowSumTolerance = 1e-9;

std::string cap_text(std::size_t v) {
  return v == std::numeric_limits<std::size_t>::max() ? "none" : std::to_string(v);
}

std::string num(double v) { return format_shortest(v); }

Metadata base_metadata(const char* command, const RunConfig& rc, const ComputeCaps& caps) {
  return {
      {"tool", std::string("cradle-") + kToolVersion},
      {"command", command},
      {"config_hash", rc.hash},
      {"trap_sign", std::to_string(rc.chain ? rc.chain->trap_sign : kConfiningTrapSign)},
      {"window_per_site", num(kWindowLengthPerSite)},
      {"coarse_step", num(kCoarseTimeStep)},
      {"peak_time_tol", num(kPeakTimeTolerance)},
      {"param_tol", num(kParamTolerance)},
      {"norm_tol", num(WaveState::kNormTolerance)},
      {"degeneracy_tol", num(Spectrum::kDegeneracyTolerance)},
      {"grid_cells_cap", cap_text(caps.grid_cells)},
      {"oracle_sites_cap", cap_text(caps.oracle_sites)},
      {"basis_cap", std::to_string(FockBasis::kDefaultCap)},
      {"dense_cap", std::to_string(Propagator::kDefaultDimensionCap)},
      {"precision", std::to_string(rc.output.precision)},
  };
}

fs::path prepare(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out))
    throw IoError("cannot create output directory " + out.string() +
                  (ec ? ": " + ec.message() : std::string()));
  return out;
}

template <typename T>
const T& require(const std::optional<T>& block, const char* section, const char* command) {
  if (!block)
    throw ConfigError(section, 0,
                      std::string(command) + " needs a [" + section + "] section");
  return *block;
}

}  // namespace

ComputeCaps ComputeCaps::defaults() { return {GridLimits::kDefaultMaxCells, kOracleSiteCap}; }

ComputeCaps ComputeCaps::unlimited() {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  return {kMax, kMax};
}

ComputeCaps ComputeCaps::from_environment() {
  const char* v = std::getenv("CRADLE_NO_COMPUTE_CAP");
  return v && std::string(v) == "1" ? unlimited() : defaults();
}

Written cmd_spectrum(const RunConfig& rc, const fs::path& out, const ComputeCaps& caps) {
  const auto& chain = require(rc.chain, "chain", "spectrum");
  const auto spectrum = diagonalize(chain.spec);
  std::optional<std::vector<double>> overlaps;
  if (rc.state) overlaps = mode_overlaps(spectrum, rc.state->state);

  auto meta = base_metadata("spectrum", rc, caps);
  meta.emplace_back("chain", chain.kind);
  meta.emplace_back("M", std::to_string(spectrum.sites()));
  std::vector<std::string> columns{"n", "omega"};
  if (overlaps) columns.push_back("overlap");

  CsvDocument doc(meta, columns, rc.output.precision);
  for (std::size_t n = 0; n < spectrum.sites(); ++n) {
    doc.integer(n + 1).real(spectrum.omega()[n]);
    if (overlaps) doc.real((*overlaps)[n]);
    doc.end_row();
  }
  const auto dir = prepare(out);
  write_atomic(dir / "spectrum.csv", doc.text());
  return {dir / "spectrum.csv"};
}

Written cmd_evolve(const RunConfig& rc, const fs::path& out, const ComputeCaps& caps) {
  const auto& chain = require(rc.chain, "chain", "evolve");
  const auto& state = require(rc.state, "state", "evolve");
  const auto& ev = require(rc.evolve, "evolve", "evolve");

  const auto grid = evolution_grid(diagonalize(chain.spec), state.state, ev.t_max, ev.steps,
                                   GridLimits{caps.grid_cells});
  const std::size_t m = grid.sites();

  auto meta = base_metadata("evolve", rc, caps);
  meta.emplace_back("chain", chain.kind);
  meta.emplace_back("state", state.kind);
  meta.emplace_back("M", std::to_string(m));
  meta.emplace_back("t_max", num(ev.t_max));
  meta.emplace_back("steps", std::to_string(ev.steps));
  meta.emplace_back("row_sum_tol", num(kRowSumTolerance));

  CsvDocument longform(meta, {"t", "j", "prob"}, rc.output.precision);
  std::vector<std::string> columns;
  for (std::size_t j = 1; j <= m; ++j) columns.push_back("p_" + std::to_string(j));
  CsvDocument matrix(meta, columns, rc.output.precision);

  for (std::size_t k = 0; k < grid.samples(); ++k) {
    const auto row = grid.row(k);
    for (std::size_t j = 0; j < m; ++j) {
      longform.real(grid.times()[k]).integer(j + 1).real(row[j]);
      longform.end_row();
      matrix.real(row[j]);
    }
    matrix.end_row();
  }
  const auto dir = prepare(out);
  write_atomic(dir / "grid.csv", longform.text());
  write_atomic(dir / "grid_matrix.csv", matrix.text());
  return {dir / "grid.csv", dir / "grid_matrix.csv"};
}

Written cmd_tune(const RunConfig& rc, const fs::path& out, const ComputeCaps& caps) {
  const auto& tc = require(rc.tune, "tune", "tune");
  const bool two = tc.mode == "double";
  const auto result = two ? tune_double(tc.sites, tc.tau, tc.grid) : tune_single(tc.sites, tc.tau, tc.grid);

  auto meta = base_metadata("tune", rc, caps);
  meta.emplace_back("mode", tc.mode);
  meta.emplace_back("M", std::to_string(tc.sites));
  meta.emplace_back("tau", num(tc.tau));
  meta.emplace_back("points", std::to_string(tc.grid.points));
  meta.emplace_back("lo", num(tc.grid.lo));
  meta.emplace_back("hi", num(tc.grid.hi));

  std::vector<std::string> params{"x"};
  if (two) params.push_back("y");

  auto trace_cols = params;
  trace_cols.insert(trace_cols.begin(), "index");
  trace_cols.insert(trace_cols.end(), {"amplitude", "time"});
  CsvDocument trace(meta, trace_cols, rc.output.precision);
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const auto& s = result.trace[i];
    trace.integer(i + 1);
    for (double p : s.params) trace.real(p);
    trace.real(s.amplitude).real(s.time);
    trace.end_row();
  }

  auto best_cols = params;
  best_cols.insert(best_cols.end(), {"amplitude", "time", "evaluations"});
  CsvDocument best(meta, best_cols, rc.output.precision);
  for (double p : result.best_params) best.real(p);
  best.real(result.best_amplitude).real(result.best_time).integer(result.evaluations);
  best.end_row();

  const auto dir = prepare(out);
  write_atomic(dir / "tune.csv", trace.text());
  write_atomic(dir / "tune_best.csv", best.text());
  return {dir / "tune.csv", dir / "tune_best.csv"};
}

Written cmd_oracle(const RunConfig& rc, const fs::path& out, const ComputeCaps& caps) {
  const auto& hc = require(rc.hubbard, "hubbard", "oracle");
  if (hc.sites > caps.oracle_sites)
    throw TooLargeError(hc.sites, caps.oracle_sites,
                        "oracle runs are capped at M <= " + std::to_string(caps.oracle_sites) +
                            " (requested " + std::to_string(hc.sites) +
                            "; set CRADLE_NO_COMPUTE_CAP=1 to lift)");

  auto p = HubbardParams::species_independent(hc.sites, hc.hopping, hc.U);
  p.U0 = hc.U0;
  p.U1 = hc.U1;

  // Default horizon: one transfer time of the reduced chain.
  double t_max = 1.0;
  if (hc.t_max) {
    t_max = *hc.t_max;
  } else if (hc.hopping > 0.0) {
    const auto chain = reduce_to_chain(effective_params(p), std::vector<double>(hc.sites, 0.0), 1e-10);
    t_max = peak_transfer(diagonalize(chain)).peak_time;
  }
  std::vector<double> times(hc.samples);
  for (std::size_t k = 0; k < hc.samples; ++k)
    times[k] = t_max * static_cast<double>(k) / static_cast<double>(hc.samples - 1);

  const auto report = compare_effective(p, times, hc.nmax);

  auto meta = base_metadata("oracle", rc, caps);
  meta.emplace_back("M", std::to_string(hc.sites));
  meta.emplace_back("N0", std::to_string(hc.sites - 1));
  meta.emplace_back("N1", "1");
  meta.emplace_back("nmax", std::to_string(hc.nmax));
  meta.emplace_back("basis_dim", std::to_string(report.basis_dimension));
  meta.emplace_back("tau_convention", to_string(report.convention));
  meta.emplace_back("alt_max_deviation", num(report.alt_max_deviation()));
  meta.emplace_back("t_max", num(t_max));

  CsvDocument doc(meta, {"t", "leakage", "max_deviation"}, rc.output.precision);
  for (const auto& s : report.samples) {
    doc.real(s.time).real(s.leakage).real(s.max_deviation);
    doc.end_row();
  }
  const auto dir = prepare(out);
  write_atomic(dir / "oracle.csv", doc.text());
  return {dir / "oracle.csv"};
}

}  // namespace cradle::cli
