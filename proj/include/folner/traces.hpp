#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "folner/diagnostics.hpp"
#include "folner/nc_polynomial.hpp"
#include "folner/operator.hpp"

namespace folner {

/// Tr(A P) / Tr(P), read off the diagonal of the (exact) compression.
Complex trace_estimate(const OperatorSpec& op, const ProjectionSpec& p);

/// Realizes a rotation-algebra element on l2(Z) with u the bilateral shift
/// (u e_n = e_{n+1}) and v the modulation v e_n = exp(2 pi i (alpha n + phase)) e_n.
/// The result is a polynomial in those two band generators.
OperatorSpec represent_nc(const NCPolynomial& a, double phase = 0.0);

struct TraceRow {
  std::string label;
  long n = 0;
  std::size_t dim = 0;
  Complex estimate;
  std::optional<Complex> reference;
  std::optional<double> error;
};

struct TraceReport {
  std::vector<TraceRow> rows;
};

TraceReport trace_convergence_report(std::span<const LabeledOperator> ops, const ProjectionSequence& seq,
                                     const std::map<std::string, Complex>& refs = {});

}  // namespace folner
