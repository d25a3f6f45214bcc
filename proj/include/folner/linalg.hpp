#pragma once

#include <span>
#include <vector>

#include "folner/common.hpp"

namespace folner {

/// Schatten index: trace class, Hilbert-Schmidt or operator norm.
enum class Schatten { One, Two, Inf };

const char* to_string(Schatten p);
Schatten schatten_from_string(const std::string& s);

struct EigenOptions {
  /// Max entrywise |M - M^H| accepted, relative to max(1, max |M_ij|).
  double hermitian_tol = 1e-10;
  /// Residual contract: ||Mv - lv|| <= residual_factor * ||M||_inf * sqrt(d).
  double residual_factor = 1e-9;
  bool check_residual = true;
};

/// Ascending eigenvalues of a Hermitian matrix. The input is symmetrized as
/// (M + M^H)/2 before solving. Throws SpecError when M is not Hermitian
/// within tolerance and NumericalError on a residual breach.
std::vector<double> eigenvalues_hermitian(const DenseMatrix& m, const EigenOptions& opts = {});

/// Singular values in descending order.
std::vector<double> singular_values(const DenseMatrix& m);

double schatten_norm(const DenseMatrix& m, Schatten p);

/// Same as the dense overload, but all-zero rows and columns are dropped
/// before any SVD so boundary-supported commutators stay cheap.
double schatten_norm(const SparseMatrix& m, Schatten p);

/// Largest |M_ij - conj(M_ji)|.
double hermitian_defect(const DenseMatrix& m);

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

/// Rows and columns listed in `rows`/`cols` of `m`, in the given order.
SparseMatrix submatrix(const SparseMatrix& m, std::span<const long> rows, std::span<const long> cols);

/// Diagonal 0/1 matrix with ones at `positions`.
SparseMatrix indicator(long dim, std::span<const long> positions);

}  // namespace folner
