#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cradle/chains.hpp"

namespace cradle {

/// Two-species Bose-Hubbard chain:
///   H = sum_{a,j} [U_a n_aj (n_aj - 1) + xi_j n_aj] + U sum_j (n_0j - 1/2)(n_1j - 1/2)
///       - sum_{a,j} t_aj (a+_aj a_a,j+1 + h.c.)
struct HubbardParams {
  std::size_t sites = 0;
  std::vector<double> t0;  // M-1 species-0 hoppings
  std::vector<double> t1;  // M-1 species-1 hoppings
  double U = 0.0;          // inter-species
  double U0 = 0.0;         // intra-species
  double U1 = 0.0;
  std::vector<double> xi;  // M site offsets; empty means zero

  /// Equal hoppings t on every bond and U0 = U1 = U.
  static HubbardParams species_independent(std::size_t sites, double t, double U);

  /// Throws std::invalid_argument on wrong lengths or non-positive interactions.
  void validate() const;
};

/// Second-order effective couplings of the singly-occupied sector, per bond:
///   tau_j   = 2 t0 t1 / U
///   gamma_j = 2 [(t0^2 + t1^2)/U - t0^2/U0 - t1^2/U1]
///   sigma_j = 2 t0^2/U0 - (t0^2 + t1^2)/U
struct EffectiveParams {
  std::vector<double> tau;
  std::vector<double> gamma;
  std::vector<double> sigma;
};

EffectiveParams effective_params(const HubbardParams& p);

/// Free-fermion chain from the effective couplings. Throws NotFreeFermionError
/// naming the first bond where max(|gamma|, |sigma|) > tol * max(tau).
ChainSpec reduce_to_chain(const EffectiveParams& e, std::vector<double> eps, double tol);

/// Occupation-number basis with fixed species populations. A state is the
/// vector (n_0,1..n_0,M, n_1,1..n_1,M); states are sorted lexicographically.
class FockBasis {
public:
  using Occupation = std::vector<std::uint8_t>;
  static constexpr std::size_t kDefaultCap = 200000;

  FockBasis(std::size_t sites, std::size_t n0, std::size_t n1, std::size_t nmax,
            std::vector<Occupation> states);

  std::size_t sites() const noexcept { return sites_; }
  std::size_t n0() const noexcept { return n0_; }
  std::size_t n1() const noexcept { return n1_; }
  std::size_t nmax() const noexcept { return nmax_; }
  std::size_t size() const noexcept { return states_.size(); }
  const Occupation& state(std::size_t i) const { return states_[i]; }
  std::optional<std::size_t> index(const Occupation& occ) const;

private:
  std::size_t sites_, n0_, n1_, nmax_;
  std::vector<Occupation> states_;
};

/// Throws TooLargeError (with the computed dimension) above `cap` states.
FockBasis enumerate_basis(std::size_t sites, std::size_t n0, std::size_t n1, std::size_t nmax,
                          std::size_t cap = FockBasis::kDefaultCap);

/// Real symmetric Hamiltonian on the basis. Hops that would exceed nmax are dropped.
Eigen::SparseMatrix<double> build_hamiltonian(const HubbardParams& p, const FockBasis& basis);

/// exp(-i H t) through a full eigendecomposition, reusable across times.
class Propagator {
public:
  static constexpr std::size_t kDefaultDimensionCap = 4096;

  explicit Propagator(const Eigen::SparseMatrix<double>& H,
                      std::size_t dimension_cap = kDefaultDimensionCap);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(energies_.size()); }
  Eigen::VectorXcd evolve(const Eigen::VectorXcd& state, double t) const;

private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
};

Eigen::VectorXcd exact_evolve(const Eigen::SparseMatrix<double>& H, const Eigen::VectorXcd& state,
                              double t, std::size_t dimension_cap = Propagator::kDefaultDimensionCap);

enum class TauConvention {
  second_order,  // tau = 2 t0 t1 / U
  half,          // tau = t^2 / U
};

const char* to_string(TauConvention c);

struct OracleSample {
  double time = 0.0;
  double leakage = 0.0;
  double max_deviation = 0.0;      // under the selected convention
  double alt_max_deviation = 0.0;  // under the other one
};

struct OracleReport {
  TauConvention convention = TauConvention::second_order;
  std::size_t basis_dimension = 0;
  std::vector<OracleSample> samples;

  double max_deviation() const;
  double alt_max_deviation() const;
  double max_leakage() const;
};

/// Exact versus free-fermion dynamics of one species-1 atom launched at site 1
/// among M-1 species-0 atoms. For each time: leakage = 1 - |P psi|^2 with P
/// the projector on single occupancy, and the largest site-probability gap
/// between the projected exact state and the chain prediction. Both tau
/// conventions are evaluated; the one with the smaller overall deviation is
/// reported as selected.
OracleReport compare_effective(const HubbardParams& p, std::span<const double> times,
                               std::size_t nmax = 2);

}  // namespace cradle
