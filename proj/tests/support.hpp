#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cradle/chains.hpp"

namespace testing_support {

// Dense single-particle Hamiltonian, built independently of the library solver.
inline Eigen::MatrixXd dense_hamiltonian(const cradle::ChainSpec& c) {
  const auto m = static_cast<Eigen::Index>(c.sites());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) h(j, j) = c.eps()[static_cast<std::size_t>(j)];
  for (Eigen::Index j = 0; j + 1 < m; ++j) {
    h(j, j + 1) = -c.tau()[static_cast<std::size_t>(j)];
    h(j + 1, j) = -c.tau()[static_cast<std::size_t>(j)];
  }
  return h;
}

// exp(-iHt) psi through Eigen's dense solver.
inline Eigen::VectorXcd dense_evolve(const cradle::ChainSpec& c, const Eigen::VectorXcd& psi, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hamiltonian(c));
  const Eigen::MatrixXcd v = es.eigenvectors().cast<std::complex<double>>();
  Eigen::VectorXcd c0 = v.adjoint() * psi;
  for (Eigen::Index n = 0; n < c0.size(); ++n) c0[n] *= std::polar(1.0, -es.eigenvalues()[n] * t);
  return v * c0;
}

inline cradle::ChainSpec random_chain(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> tau(0.1, 2.0), eps(-1.5, 1.5);
  std::vector<double> t(m - 1), e(m);
  for (auto& x : t) x = tau(rng);
  for (auto& x : e) x = eps(rng);
  return cradle::ChainSpec(std::move(t), std::move(e));
}

inline cradle::WaveState random_state(std::mt19937_64& rng, std::size_t m) {
  std::normal_distribution<double> g;
  std::vector<cradle::cplx> z(m);
  for (auto& a : z) a = {g(rng), g(rng)};
  return cradle::WaveState::normalized(std::move(z));
}

}  // namespace testing_support
