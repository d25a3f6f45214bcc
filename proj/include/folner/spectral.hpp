#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "folner/linalg.hpp"
#include "folner/operator.hpp"

namespace folner {

/// Uniform probability measure on the eigenvalues of a compression,
/// multiplicities kept as repeated atoms.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::vector<double> atoms);

  const std::vector<double>& atoms() const { return atoms_; }
  std::size_t dim() const { return atoms_.size(); }
  double weight() const { return 1.0 / static_cast<double>(atoms_.size()); }
  /// Right-continuous CDF: fraction of atoms <= x.
  double cdf(double x) const;
  double min() const { return atoms_.front(); }
  double max() const { return atoms_.back(); }

 private:
  std::vector<double> atoms_;
};

/// Limit spectral measure given as a step CDF on a grid, by its moments, or both.
class ReferenceMeasure {
 public:
  /// `grid` strictly increasing, `cdf` nondecreasing in [0, 1] ending at 1.
  static ReferenceMeasure from_cdf(std::vector<double> grid, std::vector<double> cdf);
  /// moments[k] = integral of x^k; moments[0] must be 1.
  static ReferenceMeasure from_moments(std::vector<double> moments);

  bool has_cdf() const { return !grid_.empty(); }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& cdf_values() const { return cdf_; }
  const std::vector<double>& moments() const { return moments_; }
  void set_moments(std::vector<double> moments);

  /// Right-continuous step CDF; requires has_cdf().
  double cdf(double x) const;

 private:
  std::vector<double> grid_;
  std::vector<double> cdf_;
  std::vector<double> moments_;
};

/// Test functions for weak convergence: polynomials and hat functions.
class TestFunction {
 public:
  enum class Kind { Polynomial, Hat };

  static TestFunction monomial(int degree);
  /// sum_k coeffs[k] x^k.
  static TestFunction polynomial(std::vector<double> coeffs);
  /// Piecewise-linear bump: 1 at center, 0 outside (center - w, center + w).
  static TestFunction hat(double center, double half_width);

  Kind kind() const { return kind_; }
  double operator()(double x) const;
  std::string name() const;
  const std::vector<double>& coefficients() const { return coeffs_; }
  double center() const { return center_; }
  double half_width() const { return half_width_; }

 private:
  Kind kind_ = Kind::Polynomial;
  std::vector<double> coeffs_;
  double center_ = 0.0;
  double half_width_ = 0.0;
  int monomial_degree_ = -1;
};

struct Count {
  std::size_t count = 0;
  double fraction = 0.0;
};

EmpiricalMeasure empirical_measure(const OperatorSpec& op, const ProjectionSpec& p, const EigenOptions& opts = {});

/// N(Delta) and N(Delta)/d for Delta = [lo, hi).
Count counting(const EmpiricalMeasure& m, double lo, double hi);

double integrate(const EmpiricalMeasure& m, const TestFunction& f);
/// Stieltjes sum against the CDF grid, or the moment list for polynomials
/// when no CDF is present. Throws SpecError if neither applies.
double integrate(const ReferenceMeasure& m, const TestFunction& f);

inline constexpr std::size_t kDefaultPushforwardNodes = std::size_t{1} << 16;

/// Distribution of a real symbol g under normalized Haar measure, from
/// uniform theta-sampling. Throws SpecError for complex-valued symbols.
ReferenceMeasure reference_pushforward(const ToeplitzData& symbol,
                                       std::size_t nodes = kDefaultPushforwardNodes);

double kolmogorov_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);
double kolmogorov_distance(const EmpiricalMeasure& a, const ReferenceMeasure& b);
double kolmogorov_distance(const ReferenceMeasure& a, const EmpiricalMeasure& b);
double kolmogorov_distance(const ReferenceMeasure& a, const ReferenceMeasure& b);

}  // namespace folner
