#include "cradle/hubbard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cradle/dynamics.hpp"
#include "cradle/errors.hpp"
#include "cradle/spectral.hpp"

namespace cradle {

namespace {

// Residual interactions below this fraction of the hopping count as zero.
constexpr double kFreeFermionTolerance = 1e-10;

// Number of ways to put n identical bosons on `sites` sites with at most cap
// per site, saturating at max size_t.
std::size_t count_placements(std::size_t n, std::size_t sites, std::size_t cap) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> ways(n + 1, 0);
  ways[0] = 1;
  for (std::size_t s = 0; s < sites; ++s) {
    std::vector<std::size_t> next(n + 1, 0);
    for (std::size_t have = 0; have <= n; ++have) {
      if (ways[have] == 0) continue;
      for (std::size_t k = 0; k <= cap && have + k <= n; ++k) {
        next[have + k] = next[have + k] > kMax - ways[have] ? kMax : next[have + k] + ways[have];
      }
    }
    ways = std::move(next);
  }
  return ways[n];
}

// Appends all placements in lexicographically ascending order.
void place(std::size_t remaining, std::size_t site, std::size_t cap, std::vector<std::uint8_t>& cur,
           std::vector<std::vector<std::uint8_t>>& out) {
  if (site + 1 == cur.size()) {
    if (remaining <= cap) {
      cur[site] = static_cast<std::uint8_t>(remaining);
      out.push_back(cur);
    }
    return;
  }
  for (std::size_t k = 0; k <= std::min(cap, remaining); ++k) {
    cur[site] = static_cast<std::uint8_t>(k);
    place(remaining - k, site + 1, cap, cur, out);
  }
}

std::vector<std::vector<std::uint8_t>> placements(std::size_t n, std::size_t sites, std::size_t cap) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> cur(sites, 0);
  place(n, 0, cap, cur, out);
  return out;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

HubbardParams HubbardParams::species_independent(std::size_t sites, double t, double U) {
  if (sites < 1) throw std::invalid_argument("Hubbard chain needs at least one site");
  HubbardParams p;
  p.sites = sites;
  p.t0.assign(sites - 1, t);
  p.t1.assign(sites - 1, t);
  p.U = p.U0 = p.U1 = U;
  return p;
}

void HubbardParams::validate() const {
  if (sites < 1) throw std::invalid_argument("Hubbard chain needs at least one site");
  if (t0.size() + 1 != sites || t1.size() + 1 != sites)
    throw std::invalid_argument("hopping lists must have M-1 entries");
  if (!xi.empty() && xi.size() != sites)
    throw std::invalid_argument("site offsets must have M entries");
  if (!(U > 0.0) || !(U0 > 0.0) || !(U1 > 0.0))
    throw std::invalid_argument("interactions U, U0, U1 must be positive");
  for (double t : t0)
    if (!std::isfinite(t)) throw std::invalid_argument("hopping must be finite");
  for (double t : t1)
    if (!std::isfinite(t)) throw std::invalid_argument("hopping must be finite");
}

EffectiveParams effective_params(const HubbardParams& p) {
  p.validate();
  const std::size_t bonds = p.sites - 1;
  EffectiveParams e;
  e.tau.resize(bonds);
  e.gamma.resize(bonds);
  e.sigma.resize(bonds);
  for (std::size_t j = 0; j < bonds; ++j) {
    const double a2 = p.t0[j] * p.t0[j];
    const double b2 = p.t1[j] * p.t1[j];
    e.tau[j] = 2.0 * p.t0[j] * p.t1[j] / p.U;
    e.gamma[j] = 2.0 * ((a2 + b2) / p.U - a2 / p.U0 - b2 / p.U1);
    e.sigma[j] = 2.0 * a2 / p.U0 - (a2 + b2) / p.U;
  }
  return e;
}

ChainSpec reduce_to_chain(const EffectiveParams& e, std::vector<double> eps, double tol) {
  if (e.gamma.size() != e.tau.size() || e.sigma.size() != e.tau.size())
    throw std::invalid_argument("effective parameter lists differ in length");
  if (eps.size() != e.tau.size() + 1)
    throw std::invalid_argument("site offsets must have one more entry than bonds");

  const double scale = max_abs(e.tau);
  for (std::size_t j = 0; j < e.tau.size(); ++j) {
    const double residual = std::max(std::abs(e.gamma[j]), std::abs(e.sigma[j]));
    if (residual > tol * scale)
      throw NotFreeFermionError(j + 1, "bond " + std::to_string(j + 1) +
                                           " keeps residual interaction " +
                                           std::to_string(residual) + " relative to hopping " +
                                           std::to_string(scale));
  }
  return ChainSpec(e.tau, std::move(eps));
}

FockBasis::FockBasis(std::size_t sites, std::size_t n0, std::size_t n1, std::size_t nmax,
                     std::vector<Occupation> states)
    : sites_(sites), n0_(n0), n1_(n1), nmax_(nmax), states_(std::move(states)) {
  if (!std::is_sorted(states_.begin(), states_.end()))
    throw std::invalid_argument("basis states must be sorted");
}

std::optional<std::size_t> FockBasis::index(const Occupation& occ) const {
  const auto it = std::lower_bound(states_.begin(), states_.end(), occ);
  if (it == states_.end() || *it != occ) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

FockBasis enumerate_basis(std::size_t sites, std::size_t n0, std::size_t n1, std::size_t nmax,
                          std::size_t cap) {
  if (sites < 1) throw std::invalid_argument("basis needs at least one site");
  if (nmax < 1 || nmax > 255) throw std::invalid_argument("occupancy cap must lie in 1..255");

  const std::size_t c0 = count_placements(n0, sites, nmax);
  const std::size_t c1 = count_placements(n1, sites, nmax);
  const bool overflow = c1 != 0 && c0 > std::numeric_limits<std::size_t>::max() / c1;
  const std::size_t dim = overflow ? std::numeric_limits<std::size_t>::max() : c0 * c1;
  if (dim > cap)
    throw TooLargeError(dim, cap,
                        "Fock basis has " + (overflow ? std::string("more than 2^64") : std::to_string(dim)) +
                            " states, cap is " + std::to_string(cap));

  const auto p0 = placements(n0, sites, nmax);
  const auto p1 = placements(n1, sites, nmax);
  std::vector<FockBasis::Occupation> states;
  states.reserve(dim);
  for (const auto& a : p0) {
    for (const auto& b : p1) {
      FockBasis::Occupation s(a);
      s.insert(s.end(), b.begin(), b.end());
      states.push_back(std::move(s));
    }
  }
  return FockBasis(sites, n0, n1, nmax, std::move(states));
}

Eigen::SparseMatrix<double> build_hamiltonian(const HubbardParams& p, const FockBasis& basis) {
  p.validate();
  const std::size_t m = p.sites;
  if (basis.sites() != m) throw std::invalid_argument("basis and parameters differ in site count");

  const std::size_t dim = basis.size();
  const std::vector<double>* hop[2] = {&p.t0, &p.t1};

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(dim * (1 + 4 * m));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& s = basis.state(i);
    double diag = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double a = s[j], b = s[m + j];
      const double xi = p.xi.empty() ? 0.0 : p.xi[j];
      diag += p.U0 * a * (a - 1.0) + p.U1 * b * (b - 1.0) + xi * (a + b);
      diag += p.U * (a - 0.5) * (b - 0.5);
    }
    entries.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);

    for (std::size_t species = 0; species < 2; ++species) {
      const std::size_t off = species * m;
      for (std::size_t j = 0; j + 1 < m; ++j) {
        const double t = (*hop[species])[j];
        if (t == 0.0) continue;
        // one boson from `from` to `to`, both directions across bond j
        for (const auto& [from, to] : {std::pair{j + 1, j}, std::pair{j, j + 1}}) {
          const auto n_from = s[off + from];
          const auto n_to = s[off + to];
          if (n_from == 0 || n_to >= basis.nmax()) continue;
          auto target = s;
          --target[off + from];
          ++target[off + to];
          const auto k = basis.index(target);
          if (!k) continue;
          const double amp = -t * std::sqrt(static_cast<double>(n_from)) *
                             std::sqrt(static_cast<double>(n_to) + 1.0);
          entries.emplace_back(static_cast<int>(*k), static_cast<int>(i), amp);
        }
      }
    }
  }

  Eigen::SparseMatrix<double> H(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  H.setFromTriplets(entries.begin(), entries.end());
  return H;
}

Propagator::Propagator(const Eigen::SparseMatrix<double>& H, std::size_t dimension_cap) {
  const auto dim = static_cast<std::size_t>(H.rows());
  if (H.rows() != H.cols()) throw std::invalid_argument("Hamiltonian must be square");
  if (dim > dimension_cap)
    throw TooLargeError(dim, dimension_cap,
                        "dense propagation of dimension " + std::to_string(dim) +
                            " exceeds the cap of " + std::to_string(dimension_cap));

  const Eigen::MatrixXd dense(H);
  const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
  if ((dense - dense.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("Hamiltonian is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::VectorXcd Propagator::evolve(const Eigen::VectorXcd& state, double t) const {
  if (static_cast<std::size_t>(state.size()) != dimension())
    throw std::invalid_argument("state dimension does not match the Hamiltonian");
  if (t == 0.0) return state;
  Eigen::VectorXcd c = vectors_.transpose().cast<cplx>() * state;
  for (Eigen::Index n = 0; n < c.size(); ++n) c[n] *= std::polar(1.0, -energies_[n] * t);
  return vectors_.cast<cplx>() * c;
}

Eigen::VectorXcd exact_evolve(const Eigen::SparseMatrix<double>& H, const Eigen::VectorXcd& state,
                              double t, std::size_t dimension_cap) {
  return Propagator(H, dimension_cap).evolve(state, t);
}

const char* to_string(TauConvention c) {
  switch (c) {
    case TauConvention::second_order:
      return "2*t0*t1/U";
    case TauConvention::half:
      return "t^2/U";
  }
  return "unknown";
}

double OracleReport::max_deviation() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.max_deviation);
  return m;
}

double OracleReport::alt_max_deviation() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.alt_max_deviation);
  return m;
}

double OracleReport::max_leakage() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.leakage);
  return m;
}

OracleReport compare_effective(const HubbardParams& p, std::span<const double> times,
                               std::size_t nmax) {
  p.validate();
  const std::size_t m = p.sites;
  if (m < 2) throw std::invalid_argument("oracle comparison needs at least two sites");
  for (double t : times)
    if (!std::isfinite(t)) throw std::invalid_argument("oracle times must be finite");

  // Site offsets only add a constant inside the singly-occupied sector.
  const auto eff = effective_params(p);
  const bool frozen = max_abs(eff.tau) == 0.0;
  std::optional<Spectrum> spectra[2];
  if (!frozen) {
    const auto chain = reduce_to_chain(eff, std::vector<double>(m, 0.0), kFreeFermionTolerance);
    std::vector<double> half(chain.tau().begin(), chain.tau().end());
    for (auto& t : half) t *= 0.5;
    spectra[0] = diagonalize(chain);
    spectra[1] = diagonalize(ChainSpec(std::move(half), std::vector<double>(m, 0.0)));
  } else if (std::max(max_abs(eff.gamma), max_abs(eff.sigma)) != 0.0) {
    throw NotFreeFermionError(1, "residual interaction without hopping");
  }

  const auto basis = enumerate_basis(m, m - 1, 1, nmax);
  const Propagator propagator(build_hamiltonian(p, basis));

  // Singly-occupied states with the species-1 atom on site q.
  auto sector_state = [m](std::size_t q) {
    FockBasis::Occupation s(2 * m, 0);
    for (std::size_t j = 0; j < m; ++j) s[j] = j == q ? 0 : 1;
    s[m + q] = 1;
    return s;
  };
  std::vector<std::size_t> sector(m);
  for (std::size_t q = 0; q < m; ++q) sector[q] = *basis.index(sector_state(q));

  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  psi0[static_cast<Eigen::Index>(sector[0])] = 1.0;
  const auto kick = kick_state(m, 1);

  OracleReport report;
  report.basis_dimension = basis.size();
  std::vector<double> dev[2];
  for (double t : times) {
    const auto psi = propagator.evolve(psi0, t);
    std::vector<double> prob(m);
    double kept = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      prob[q] = std::norm(psi[static_cast<Eigen::Index>(sector[q])]);
      kept += prob[q];
    }
    OracleSample s;
    s.time = t;
    s.leakage = std::max(0.0, 1.0 - kept);
    for (int c = 0; c < 2; ++c) {
      double worst = 0.0;
      for (std::size_t q = 0; q < m; ++q) {
        const double effective =
            frozen ? (q == 0 ? 1.0 : 0.0) : std::norm(evolve(*spectra[c], kick, t)[q]);
        worst = std::max(worst, std::abs(prob[q] - effective));
      }
      dev[c].push_back(worst);
    }
    report.samples.push_back(s);
  }

  const double worst0 = dev[0].empty() ? 0.0 : *std::max_element(dev[0].begin(), dev[0].end());
  const double worst1 = dev[1].empty() ? 0.0 : *std::max_element(dev[1].begin(), dev[1].end());
  const int chosen = worst1 < worst0 ? 1 : 0;
  report.convention = chosen == 0 ? TauConvention::second_order : TauConvention::half;
  for (std::size_t k = 0; k < report.samples.size(); ++k) {
    report.samples[k].max_deviation = dev[chosen][k];
    report.samples[k].alt_max_deviation = dev[1 - chosen][k];
  }
  return report;
}

}  // namespace cradle
