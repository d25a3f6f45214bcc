#pragma once

// Shared helpers for the unit, property and acceptance tests: seeded random
// inputs and brute-force oracles that avoid the library's LAPACK paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "folner/common.hpp"

namespace folner::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  Complex complex() { return {uniform(), uniform()}; }

  DenseMatrix dense(long rows, long cols) {
    DenseMatrix m(rows, cols);
    for (long j = 0; j < cols; ++j)
      for (long i = 0; i < rows; ++i) m(i, j) = complex();
    return m;
  }
  DenseMatrix dense(long d) { return dense(d, d); }
  DenseMatrix hermitian(long d) {
    DenseMatrix m = dense(d);
    return (m + m.adjoint()) / 2.0;
  }

  /// Strictly increasing subset of {lo..hi} with `size` elements.
  std::vector<long> subset(long lo, long hi, long size) {
    std::vector<long> all;
    for (long i = lo; i <= hi; ++i) all.push_back(i);
    std::shuffle(all.begin(), all.end(), gen_);
    all.resize(static_cast<std::size_t>(size));
    std::sort(all.begin(), all.end());
    return all;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Singular values by one-sided Jacobi, descending.
inline Eigen::VectorXd oracle_singular_values(const DenseMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<DenseMatrix>(m).singularValues();
}

inline double oracle_schatten1(const DenseMatrix& m) { return oracle_singular_values(m).sum(); }
inline double oracle_schatten2(const DenseMatrix& m) { return std::sqrt(m.cwiseAbs2().sum()); }
inline double oracle_op_norm(const DenseMatrix& m) {
  const auto s = oracle_singular_values(m);
  return s.size() ? s(0) : 0.0;
}

/// Diagonal 0/1 matrix of size d with ones at `sites` (zero-based positions).
inline DenseMatrix oracle_indicator(long d, const std::vector<long>& sites) {
  DenseMatrix p = DenseMatrix::Zero(d, d);
  for (long s : sites) p(s, s) = 1.0;
  return p;
}

/// Kronecker product written out blockwise.
inline DenseMatrix oracle_kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Almost Mathieu matrix on sites lo..hi of Z, written out from the formula.
inline DenseMatrix oracle_almost_mathieu(double lambda, double alpha, double phi, long lo, long hi) {
  const long d = hi - lo + 1;
  DenseMatrix m = DenseMatrix::Zero(d, d);
  for (long i = 0; i < d; ++i) {
    m(i, i) = 2.0 * lambda * std::cos(kTwoPi * (alpha * static_cast<double>(lo + i) + phi));
    if (i + 1 < d) m(i, i + 1) = m(i + 1, i) = 1.0;
  }
  return m;
}

/// Eigenvalues by Eigen's self-adjoint solver, ascending.
inline std::vector<double> oracle_eigenvalues(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// 2 cos(k pi/(d+1)), k = 1..d, ascending: spectrum of the d x d 0/1 tridiagonal matrix.
inline std::vector<double> chebyshev_spectrum(long d) {
  std::vector<double> out;
  for (long k = d; k >= 1; --k) out.push_back(2.0 * std::cos(kPi * static_cast<double>(k) / static_cast<double>(d + 1)));
  return out;
}

inline double golden_alpha() { return (std::sqrt(5.0) - 1.0) / 2.0; }

}  // namespace folner::testing
