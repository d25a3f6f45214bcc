#include "folner/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include <lapacke.h>

namespace folner {

const char* to_string(Schatten p) {
  switch (p) {
    case Schatten::One:
      return "1";
    case Schatten::Two:
      return "2";
    case Schatten::Inf:
      return "inf";
  }
  return "?";
}

Schatten schatten_from_string(const std::string& s) {
  if (s == "1") return Schatten::One;
  if (s == "2") return Schatten::Two;
  if (s == "inf" || s == "oo") return Schatten::Inf;
  throw SpecError("unknown Schatten index '" + s + "' (expected 1, 2 or inf)");
}

double hermitian_defect(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw SpecError("matrix is not square");
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

namespace {

void check_residual(const DenseMatrix& m, const DenseMatrix& vecs, const std::vector<double>& vals,
                    const EigenOptions& opts) {
  if (vals.empty()) return;
  const double scale = std::max(std::abs(vals.front()), std::abs(vals.back()));
  const double bound = opts.residual_factor * std::max(scale, 1e-300) *
                       std::sqrt(static_cast<double>(vals.size()));
  DenseMatrix r = m * vecs;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    r.col(col) -= vals[k] * vecs.col(col);
    const double res = r.col(col).norm();
    if (res > bound && scale > 0.0) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "eigensolver residual %.3e exceeds bound %.3e for eigenpair %zu", res, bound, k);
      throw NumericalError(msg);
    }
  }
}

}  // namespace

std::vector<double> eigenvalues_hermitian(const DenseMatrix& m, const EigenOptions& opts) {
  if (m.rows() != m.cols()) throw SpecError("eigenvalues_hermitian: matrix is not square");
  const auto n = static_cast<lapack_int>(m.rows());
  if (n == 0) return {};
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = hermitian_defect(m);
  if (defect > opts.hermitian_tol * scale) {
    throw SpecError("eigenvalues_hermitian: matrix not Hermitian (defect " + std::to_string(defect) +
                    ")");
  }
  const DenseMatrix sym = 0.5 * (m + m.adjoint());
  const char jobz = opts.check_residual ? 'V' : 'N';
  std::vector<double> vals(static_cast<std::size_t>(n));
  DenseMatrix vecs;

  // Always the complex MRRR driver: the real symmetric drivers (dsyev,
  // dsyevd, dsyevr) of the system OpenBLAS return wrong eigenvectors from a
  // few hundred rows on, and zheevd fails the same way.
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  DenseMatrix a = sym;
  DenseMatrix z(jobz == 'V' ? n : 1, jobz == 'V' ? n : 1);
  const lapack_int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, jobz, 'A', 'U', n, reinterpret_cast<lapack_complex_double*>(a.data()), n, 0.0, 0.0, 0, 0, 0.0,
      &found, vals.data(), reinterpret_cast<lapack_complex_double*>(z.data()), static_cast<lapack_int>(z.rows()),
      support.data());
  if (info != 0) throw NumericalError("zheevr failed, info=" + std::to_string(info));
  if (opts.check_residual) vecs = std::move(z);
  if (found != n) throw NumericalError("eigensolver returned " + std::to_string(found) + " of " + std::to_string(n) + " eigenvalues");
  if (opts.check_residual) check_residual(sym, vecs, vals, opts);
  return vals;
}

std::vector<double> singular_values(const DenseMatrix& m) {
  if (m.size() == 0) return {};
  DenseMatrix a = m;
  const auto rows = static_cast<lapack_int>(a.rows());
  const auto cols = static_cast<lapack_int>(a.cols());
  std::vector<double> s(static_cast<std::size_t>(std::min(rows, cols)));
  const lapack_int info =
      LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, reinterpret_cast<lapack_complex_double*>(a.data()),
                     rows, s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw NumericalError("zgesdd failed, info=" + std::to_string(info));
  return s;
}

double schatten_norm(const DenseMatrix& m, Schatten p) {
  switch (p) {
    case Schatten::Two:
      return m.norm();
    case Schatten::One: {
      double sum = 0.0;
      for (double s : singular_values(m)) sum += s;
      return sum;
    }
    case Schatten::Inf: {
      const auto s = singular_values(m);
      return s.empty() ? 0.0 : s.front();
    }
  }
  return 0.0;
}

double schatten_norm(const SparseMatrix& m, Schatten p) {
  if (p == Schatten::Two) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < m.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(m, k); it; ++it) sum += std::norm(it.value());
    return std::sqrt(sum);
  }
  std::vector<char> row_used(static_cast<std::size_t>(m.rows()), 0);
  std::vector<char> col_used(static_cast<std::size_t>(m.cols()), 0);
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value() != Complex{}) {
        row_used[static_cast<std::size_t>(it.row())] = 1;
        col_used[static_cast<std::size_t>(it.col())] = 1;
      }
    }
  }
  std::vector<long> rows, cols;
  for (std::size_t i = 0; i < row_used.size(); ++i)
    if (row_used[i]) rows.push_back(static_cast<long>(i));
  for (std::size_t j = 0; j < col_used.size(); ++j)
    if (col_used[j]) cols.push_back(static_cast<long>(j));
  if (rows.empty()) return 0.0;
  return schatten_norm(DenseMatrix(submatrix(m, rows, cols)), p);
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Eigen::Index ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (Eigen::Index kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          trips.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                             ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix submatrix(const SparseMatrix& m, std::span<const long> rows, std::span<const long> cols) {
  std::vector<long> row_map(static_cast<std::size_t>(m.rows()), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_map[static_cast<std::size_t>(rows[i])] = static_cast<long>(i);
  std::vector<Eigen::Triplet<Complex>> trips;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (SparseMatrix::InnerIterator it(m, cols[j]); it; ++it) {
      const long r = row_map[static_cast<std::size_t>(it.row())];
      if (r >= 0) trips.emplace_back(r, static_cast<long>(j), it.value());
    }
  }
  SparseMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix indicator(long dim, std::span<const long> positions) {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(positions.size());
  for (long p : positions) trips.emplace_back(p, p, Complex{1.0, 0.0});
  SparseMatrix out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace folner
