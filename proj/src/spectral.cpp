#include "folner/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace folner {

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw SpecError("empirical measure needs at least one atom");
  std::sort(atoms_.begin(), atoms_.end());
}

double EmpiricalMeasure::cdf(double x) const {
  const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
  return static_cast<double>(it - atoms_.begin()) / static_cast<double>(atoms_.size());
}

ReferenceMeasure ReferenceMeasure::from_cdf(std::vector<double> grid, std::vector<double> cdf) {
  if (grid.empty() || grid.size() != cdf.size()) throw SpecError("reference CDF grid is empty or ragged");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) throw SpecError("reference CDF grid must be strictly increasing");
    if (cdf[i] < 0.0 || cdf[i] > 1.0) throw SpecError("reference CDF leaves [0, 1]");
    if (i > 0 && cdf[i] < cdf[i - 1]) throw SpecError("reference CDF must be nondecreasing");
  }
  if (std::abs(cdf.back() - 1.0) > 1e-12) throw SpecError("reference CDF must reach 1");
  ReferenceMeasure m;
  m.grid_ = std::move(grid);
  m.cdf_ = std::move(cdf);
  return m;
}

ReferenceMeasure ReferenceMeasure::from_moments(std::vector<double> moments) {
  ReferenceMeasure m;
  m.set_moments(std::move(moments));
  return m;
}

void ReferenceMeasure::set_moments(std::vector<double> moments) {
  if (moments.empty() || std::abs(moments.front() - 1.0) > 1e-12) {
    throw SpecError("moment list must start with total mass 1");
  }
  moments_ = std::move(moments);
}

double ReferenceMeasure::cdf(double x) const {
  if (!has_cdf()) throw SpecError("reference measure carries moments only");
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  if (it == grid_.begin()) return 0.0;
  return cdf_[static_cast<std::size_t>(it - grid_.begin()) - 1];
}

// -- test functions --------------------------------------------------------------

TestFunction TestFunction::monomial(int degree) {
  if (degree < 0) throw SpecError("monomial degree must be non-negative");
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = 1.0;
  TestFunction f = polynomial(std::move(c));
  f.monomial_degree_ = degree;
  return f;
}

TestFunction TestFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw SpecError("polynomial test function needs coefficients");
  TestFunction f;
  f.kind_ = Kind::Polynomial;
  f.coeffs_ = std::move(coeffs);
  return f;
}

TestFunction TestFunction::hat(double center, double half_width) {
  if (!(half_width > 0.0)) throw SpecError("hat half-width must be positive");
  TestFunction f;
  f.kind_ = Kind::Hat;
  f.center_ = center;
  f.half_width_ = half_width;
  return f;
}

double TestFunction::operator()(double x) const {
  if (kind_ == Kind::Hat) return std::max(0.0, 1.0 - std::abs(x - center_) / half_width_);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string TestFunction::name() const {
  std::ostringstream os;
  os.precision(6);
  if (kind_ == Kind::Hat) {
    os << "hat(" << center_ << "," << half_width_ << ")";
  } else if (monomial_degree_ >= 0) {
    os << "x^" << monomial_degree_;
  } else {
    os << "poly(";
    for (std::size_t k = 0; k < coeffs_.size(); ++k) os << (k ? "," : "") << coeffs_[k];
    os << ")";
  }
  return os.str();
}

// -- measures ---------------------------------------------------------------------

EmpiricalMeasure empirical_measure(const OperatorSpec& op, const ProjectionSpec& p, const EigenOptions& opts) {
  return EmpiricalMeasure(eigenvalues_hermitian(compress(op, p), opts));
}

Count counting(const EmpiricalMeasure& m, double lo, double hi) {
  if (hi < lo) throw SpecError("counting interval has hi < lo");
  const auto& a = m.atoms();
  const auto first = std::lower_bound(a.begin(), a.end(), lo);
  const auto last = std::lower_bound(a.begin(), a.end(), hi);
  const auto count = static_cast<std::size_t>(last - first);
  return Count{count, static_cast<double>(count) / static_cast<double>(a.size())};
}

double integrate(const EmpiricalMeasure& m, const TestFunction& f) {
  double sum = 0.0;
  for (double x : m.atoms()) sum += f(x);
  return sum * m.weight();
}

double integrate(const ReferenceMeasure& m, const TestFunction& f) {
  if (m.has_cdf()) {
    double sum = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < m.grid().size(); ++i) {
      const double jump = m.cdf_values()[i] - prev;
      if (jump != 0.0) sum += f(m.grid()[i]) * jump;
      prev = m.cdf_values()[i];
    }
    return sum;
  }
  if (f.kind() != TestFunction::Kind::Polynomial) {
    throw SpecError("moment-only reference cannot integrate " + f.name());
  }
  const auto& c = f.coefficients();
  if (c.size() > m.moments().size()) {
    throw SpecError("reference carries " + std::to_string(m.moments().size()) + " moments; " + f.name() +
                    " needs " + std::to_string(c.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) sum += c[k] * m.moments()[k];
  return sum;
}

ReferenceMeasure reference_pushforward(const ToeplitzData& symbol, std::size_t nodes) {
  if (nodes == 0) throw SpecError("pushforward needs at least one node");
  std::vector<double> values(nodes);
  double scale = 1.0;
  for (const auto& [k, a] : symbol.coefficients) scale += std::abs(a);
  for (std::size_t j = 0; j < nodes; ++j) {
    const Complex g = symbol.symbol(kTwoPi * static_cast<double>(j) / static_cast<double>(nodes));
    if (std::abs(g.imag()) > 1e-12 * scale) throw SpecError("pushforward requires a real-valued symbol");
    values[j] = g.real();
  }
  std::sort(values.begin(), values.end());
  std::vector<double> grid, cdf;
  const double m = static_cast<double>(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    if (j + 1 < nodes && values[j + 1] == values[j]) continue;
    grid.push_back(values[j]);
    cdf.push_back(static_cast<double>(j + 1) / m);
  }
  cdf.back() = 1.0;
  return ReferenceMeasure::from_cdf(std::move(grid), std::move(cdf));
}

namespace {

struct StepCdf {
  std::vector<double> x;
  std::vector<double> f;
};

StepCdf step_of(const EmpiricalMeasure& m) {
  StepCdf s;
  const auto& a = m.atoms();
  const double d = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i + 1 < a.size() && a[i + 1] == a[i]) continue;
    s.x.push_back(a[i]);
    s.f.push_back(static_cast<double>(i + 1) / d);
  }
  return s;
}

StepCdf step_of(const ReferenceMeasure& m) {
  if (!m.has_cdf()) throw SpecError("Kolmogorov distance needs a CDF; reference carries moments only");
  return StepCdf{m.grid(), m.cdf_values()};
}

// Both CDFs are constant between consecutive merged jump points, so the
// supremum is attained at one of them.
double sup_distance(const StepCdf& a, const StepCdf& b) {
  std::size_t i = 0, j = 0;
  double fa = 0.0, fb = 0.0, worst = 0.0;
  while (i < a.x.size() || j < b.x.size()) {
    double x;
    if (j >= b.x.size() || (i < a.x.size() && a.x[i] <= b.x[j])) {
      x = a.x[i];
    } else {
      x = b.x[j];
    }
    while (i < a.x.size() && a.x[i] <= x) fa = a.f[i++];
    while (j < b.x.size() && b.x[j] <= x) fb = b.f[j++];
    worst = std::max(worst, std::abs(fa - fb));
  }
  return worst;
}

}  // namespace

double kolmogorov_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  return sup_distance(step_of(a), step_of(b));
}
double kolmogorov_distance(const EmpiricalMeasure& a, const ReferenceMeasure& b) {
  return sup_distance(step_of(a), step_of(b));
}
double kolmogorov_distance(const ReferenceMeasure& a, const EmpiricalMeasure& b) {
  return sup_distance(step_of(a), step_of(b));
}
double kolmogorov_distance(const ReferenceMeasure& a, const ReferenceMeasure& b) {
  return sup_distance(step_of(a), step_of(b));
}

}  // namespace folner
