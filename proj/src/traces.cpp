#include "folner/traces.hpp"

#include <cstdlib>

#include "folner/parallel.hpp"

namespace folner {

Complex trace_estimate(const OperatorSpec& op, const ProjectionSpec& p) {
  const SparseMatrix m = compress_sparse(op, p);
  Complex sum{};
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.row() == it.col()) sum += it.value();
    }
  }
  return sum / static_cast<double>(p.rank());
}

OperatorSpec represent_nc(const NCPolynomial& a, double phase) {
  const OperatorSpec u = band_op({{-1, DiagonalFn::constant(1.0)}});
  const OperatorSpec v = band_op({{0, DiagonalFn::exponential(1.0, a.alpha(), phase)}});
  std::vector<PolyTerm> terms;
  for (const auto& [key, c] : a.raw_terms()) {
    PolyTerm t{c * rotation_phase(a.alpha(), key.phase), {}};
    for (long i = 0; i < std::abs(key.m); ++i) t.factors.push_back(PolyFactor{u, key.m < 0});
    for (long i = 0; i < std::abs(key.k); ++i) t.factors.push_back(PolyFactor{v, key.k < 0});
    terms.push_back(std::move(t));
  }
  return poly_op(Lattice::z(), std::move(terms));
}

TraceReport trace_convergence_report(std::span<const LabeledOperator> ops, const ProjectionSequence& seq,
                                     const std::map<std::string, Complex>& refs) {
  if (ops.empty() || seq.size() == 0) throw SpecError("trace_convergence_report: empty input");
  const std::size_t cells = ops.size() * seq.size();
  std::vector<TraceRow> rows(cells);
  parallel_for(cells, [&](std::size_t cell) {
    const auto& lop = ops[cell / seq.size()];
    const std::size_t k = cell % seq.size();
    TraceRow row{lop.label, seq.n_values[k], seq.projections[k].rank(),
                 trace_estimate(lop.op, seq.projections[k]), std::nullopt, std::nullopt};
    if (const auto it = refs.find(lop.label); it != refs.end()) {
      row.reference = it->second;
      row.error = std::abs(row.estimate - it->second);
    }
    rows[cell] = std::move(row);
  });
  return TraceReport{std::move(rows)};
}

}  // namespace folner
