#include "folner/diagnostics.hpp"

#include <cmath>

#include "folner/parallel.hpp"

namespace folner {

PaddedCompression PaddedCompression::of(const OperatorSpec& op, const ProjectionSpec& p) {
  ProjectionSpec hull = coupling_hull(op, p);
  SparseMatrix m = compress_sparse(op, hull);
  auto inner = positions_in(p, hull);
  return PaddedCompression{std::move(hull), std::move(m), std::move(inner)};
}

namespace {

SparseMatrix complement(const SparseMatrix& proj) {
  SparseMatrix id(proj.rows(), proj.cols());
  id.setIdentity();
  return id - proj;
}

double projection_norm(const ProjectionSpec& p, Schatten norm) {
  switch (norm) {
    case Schatten::One:
      return p.trace_norm();
    case Schatten::Two:
      return p.hs_norm();
    case Schatten::Inf:
      break;
  }
  throw SpecError("Følner ratios are defined for p = 1 or p = 2 only");
}

}  // namespace

SparseMatrix PaddedCompression::commutator() const {
  const SparseMatrix d = indicator(matrix.rows(), inner);
  return SparseMatrix(d * matrix - matrix * d);
}

SparseMatrix PaddedCompression::off_corner() const {
  const SparseMatrix d = indicator(matrix.rows(), inner);
  return SparseMatrix(complement(d) * matrix * d);
}

SparseMatrix PaddedCompression::off_corner_adjoint_side() const {
  const SparseMatrix d = indicator(matrix.rows(), inner);
  return SparseMatrix(d * matrix * complement(d));
}

SparseMatrix PaddedCompression::corner() const {
  const SparseMatrix d = indicator(matrix.rows(), inner);
  return SparseMatrix(d * matrix * d);
}

double folner_ratio(const OperatorSpec& op, const ProjectionSpec& p, Schatten norm) {
  const double denom = projection_norm(p, norm);
  return schatten_norm(PaddedCompression::of(op, p).commutator(), norm) / denom;
}

double off_corner_ratio(const OperatorSpec& op, const ProjectionSpec& p, Schatten norm) {
  const double denom = projection_norm(p, norm);
  return schatten_norm(PaddedCompression::of(op, p).off_corner(), norm) / denom;
}

double qd_gap(const OperatorSpec& op, const ProjectionSpec& p) {
  return schatten_norm(PaddedCompression::of(op, p).commutator(), Schatten::Inf);
}

std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double n = static_cast<double>(count);
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

FolnerReport folner_profile(std::span<const LabeledOperator> ops, const ProjectionSequence& seq,
                            std::span<const Schatten> norms) {
  if (ops.empty() || seq.size() == 0 || norms.empty()) throw SpecError("folner_profile: empty input");
  for (Schatten s : norms) projection_norm(seq.projections.front(), s);

  const std::size_t cells = ops.size() * seq.size();
  std::vector<std::vector<FolnerRow>> grid(cells);
  parallel_for(cells, [&](std::size_t cell) {
    const auto& lop = ops[cell / seq.size()];
    const std::size_t k = cell % seq.size();
    const auto& proj = seq.projections[k];
    const auto padded = PaddedCompression::of(lop.op, proj);
    const SparseMatrix comm = padded.commutator();
    const SparseMatrix off = padded.off_corner();
    const double gap = schatten_norm(comm, Schatten::Inf);
    for (Schatten s : norms) {
      const double denom = projection_norm(proj, s);
      grid[cell].push_back(FolnerRow{lop.label, seq.n_values[k], proj.rank(), s, schatten_norm(comm, s) / denom,
                                     schatten_norm(off, s) / denom, gap});
    }
  });

  FolnerReport report;
  for (auto& rows : grid) {
    for (auto& row : rows) report.rows.push_back(std::move(row));
  }
  for (const auto& lop : ops) {
    for (Schatten s : norms) {
      std::vector<double> dims, ratios;
      for (const auto& row : report.rows) {
        if (row.label == lop.label && row.p == s) {
          dims.push_back(static_cast<double>(row.dim));
          ratios.push_back(row.ratio);
        }
      }
      std::size_t used = 0;
      for (double r : ratios) used += r > 0.0 ? 1 : 0;
      report.fits.push_back(DecayFit{lop.label, s, loglog_slope(dims, ratios), used});
    }
  }
  return report;
}

}  // namespace folner
