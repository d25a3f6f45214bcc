#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "folner/diagnostics.hpp"
#include "folner/nc_polynomial.hpp"
#include "folner/spectral.hpp"
#include "folner/traces.hpp"

namespace folner {

/// Finite surrogate for "every continuous f": monomials x^0..x^max_degree
/// and `hat_count` hat functions on a uniform grid over the empirical
/// support at the largest n. A negative degree or zero count disables a family.
struct FunctionFamily {
  int max_degree = 6;
  int hat_count = 17;

  /// Grammar: comma-separated items "default", "poly:K", "hat:M", "none".
  static FunctionFamily parse(const std::string& text);
  std::string to_string() const;
};

/// Hat family over [lo, hi]: centers lo + i (hi - lo)/(count - 1), half-width
/// equal to the grid spacing. A degenerate support is widened to [lo-1, hi+1].
std::vector<TestFunction> hat_family(double lo, double hi, int count);

/// Moment sequence tau(a^0), ..., tau(a^K) of a self-adjoint element.
ReferenceMeasure moments_reference(const NCPolynomial& a, int max_degree);

struct SzegoIntegralRow {
  std::string label;
  long n = 0;
  std::size_t dim = 0;
  std::string family;  // "poly" or "hat"
  std::string function;
  double empirical = 0.0;
  double reference = 0.0;
  double error = 0.0;
  /// error / max(1, |reference|)
  double relative_error = 0.0;
};

struct SzegoDistanceRow {
  std::string label;
  long n = 0;
  std::size_t dim = 0;
  /// Absent when the reference carries moments only.
  std::optional<double> kolmogorov;
};

struct SzegoSummary {
  std::string label;
  long largest_n = 0;
  double max_poly_error = 0.0;
  std::optional<double> max_hat_error;
  std::optional<double> kolmogorov;
  std::optional<double> poly_error_slope;
  std::optional<double> hat_error_slope;
  std::optional<double> kolmogorov_slope;
};

struct SzegoReport {
  std::vector<SzegoIntegralRow> integrals;
  std::vector<SzegoDistanceRow> distances;
  std::vector<SzegoSummary> summaries;
  FolnerReport folner;
  TraceReport trace;
};

/// Compares (1/d_n) sum f(lambda_i) with the reference integral for every
/// operator, n and test function; also records Kolmogorov distances, Følner
/// ratios (p = 1, 2) and trace estimates for the same windows.
SzegoReport szego_pair_test(std::span<const LabeledOperator> ops, const ProjectionSequence& seq,
                            const std::map<std::string, ReferenceMeasure>& refs, const FunctionFamily& family = {},
                            const EigenOptions& eig = {});

}  // namespace folner
