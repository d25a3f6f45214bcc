#include "folner/szego.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "folner/parallel.hpp"

namespace folner {

FunctionFamily FunctionFamily::parse(const std::string& text) {
  FunctionFamily fam{-1, 0};
  std::stringstream ss(text);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    any = true;
    if (item == "default") {
      fam.max_degree = std::max(fam.max_degree, 6);
      fam.hat_count = std::max(fam.hat_count, 17);
      continue;
    }
    if (item == "none") continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw SpecError("function family item '" + item + "' is not kind:count");
    const std::string kind = item.substr(0, colon);
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(item.substr(colon + 1), &used);
      if (used != item.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw SpecError("function family item '" + item + "' has a bad count");
    }
    if (kind == "poly") {
      if (value < 0 || value > 32) throw SpecError("poly degree must be in [0, 32]");
      fam.max_degree = std::max(fam.max_degree, value);
    } else if (kind == "hat") {
      if (value < 2 || value > 4096) throw SpecError("hat count must be in [2, 4096]");
      fam.hat_count = std::max(fam.hat_count, value);
    } else {
      throw SpecError("unknown function family '" + kind + "'");
    }
  }
  if (!any) throw SpecError("empty function family");
  return fam;
}

std::string FunctionFamily::to_string() const {
  std::string out;
  if (max_degree >= 0) out += "poly:" + std::to_string(max_degree);
  if (hat_count > 0) out += std::string(out.empty() ? "" : ",") + "hat:" + std::to_string(hat_count);
  return out.empty() ? "none" : out;
}

std::vector<TestFunction> hat_family(double lo, double hi, int count) {
  if (count < 2) throw SpecError("hat family needs at least two hats");
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  std::vector<TestFunction> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(TestFunction::hat(lo + step * i, step));
  return out;
}

ReferenceMeasure moments_reference(const NCPolynomial& a, int max_degree) {
  if (max_degree < 0) throw SpecError("moment degree must be non-negative");
  if (!nc_is_selfadjoint(a)) throw SpecError("moments_reference: element is not self-adjoint");
  std::vector<double> moments;
  NCPolynomial power = NCPolynomial::constant(a.alpha(), 1.0);
  for (int k = 0; k <= max_degree; ++k) {
    moments.push_back(canonical_trace(power).real());
    power = nc_multiply(power, a);
  }
  return ReferenceMeasure::from_moments(std::move(moments));
}

namespace {

std::optional<double> slope_over(const std::vector<std::pair<double, double>>& pts) {
  std::vector<double> x, y;
  for (const auto& [d, e] : pts) {
    x.push_back(d);
    y.push_back(e);
  }
  return loglog_slope(x, y);
}

}  // namespace

SzegoReport szego_pair_test(std::span<const LabeledOperator> ops, const ProjectionSequence& seq,
                            const std::map<std::string, ReferenceMeasure>& refs, const FunctionFamily& family,
                            const EigenOptions& eig) {
  if (ops.empty() || seq.size() == 0) throw SpecError("szego_pair_test: empty input");
  for (const auto& lop : ops) {
    if (!refs.count(lop.label)) throw SpecError("szego_pair_test: no reference measure for '" + lop.label + "'");
  }

  const std::size_t cells = ops.size() * seq.size();
  std::vector<std::optional<EmpiricalMeasure>> measures(cells);
  parallel_for(cells, [&](std::size_t cell) {
    const auto& lop = ops[cell / seq.size()];
    const auto& proj = seq.projections[cell % seq.size()];
    const DenseMatrix m = compress(lop.op, proj);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (hermitian_defect(m) > eig.hermitian_tol * scale) {
      throw SpecError("szego_pair_test: '" + lop.label + "' is not self-adjoint on window n=" +
                      std::to_string(seq.n_values[cell % seq.size()]));
    }
    measures[cell].emplace(eigenvalues_hermitian(m, eig));
  });

  SzegoReport report;
  std::map<std::string, Complex> trace_refs;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& lop = ops[i];
    const ReferenceMeasure& ref = refs.at(lop.label);
    const auto& last = *measures[i * seq.size() + seq.size() - 1];

    std::vector<TestFunction> polys;
    for (int k = 0; k <= family.max_degree; ++k) polys.push_back(TestFunction::monomial(k));
    std::vector<TestFunction> hats;
    if (family.hat_count > 0 && ref.has_cdf()) hats = hat_family(last.min(), last.max(), family.hat_count);
    if (family.max_degree >= 0 && !ref.has_cdf() && static_cast<int>(ref.moments().size()) <= family.max_degree) {
      throw SpecError("reference for '" + lop.label + "' carries too few moments for poly:" +
                      std::to_string(family.max_degree));
    }
    if (ref.has_cdf() || ref.moments().size() > 1) {
      trace_refs[lop.label] = integrate(ref, TestFunction::monomial(1));
    }

    std::vector<double> ref_poly, ref_hat;
    for (const auto& f : polys) ref_poly.push_back(integrate(ref, f));
    for (const auto& f : hats) ref_hat.push_back(integrate(ref, f));

    SzegoSummary summary{lop.label, seq.n_values.back(), 0.0, std::nullopt, std::nullopt, {}, {}, {}};
    std::vector<std::pair<double, double>> poly_pts, hat_pts, ks_pts;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      const auto& meas = *measures[i * seq.size() + k];
      const long n = seq.n_values[k];
      const auto dim = meas.dim();
      double worst_poly = 0.0, worst_hat = 0.0;
      auto emit = [&](const char* fam, const TestFunction& f, double refval) {
        const double emp = integrate(meas, f);
        const double err = std::abs(emp - refval);
        report.integrals.push_back(
            SzegoIntegralRow{lop.label, n, dim, fam, f.name(), emp, refval, err, err / std::max(1.0, std::abs(refval))});
        return err;
      };
      for (std::size_t j = 0; j < polys.size(); ++j) worst_poly = std::max(worst_poly, emit("poly", polys[j], ref_poly[j]));
      for (std::size_t j = 0; j < hats.size(); ++j) worst_hat = std::max(worst_hat, emit("hat", hats[j], ref_hat[j]));

      SzegoDistanceRow dist{lop.label, n, dim, std::nullopt};
      if (ref.has_cdf()) dist.kolmogorov = kolmogorov_distance(meas, ref);
      report.distances.push_back(dist);

      const double d = static_cast<double>(dim);
      if (!polys.empty()) poly_pts.emplace_back(d, worst_poly);
      if (!hats.empty()) hat_pts.emplace_back(d, worst_hat);
      if (dist.kolmogorov) ks_pts.emplace_back(d, *dist.kolmogorov);
      if (k + 1 == seq.size()) {
        summary.max_poly_error = worst_poly;
        if (!hats.empty()) summary.max_hat_error = worst_hat;
        summary.kolmogorov = dist.kolmogorov;
      }
    }
    summary.poly_error_slope = slope_over(poly_pts);
    if (!hat_pts.empty()) summary.hat_error_slope = slope_over(hat_pts);
    if (!ks_pts.empty()) summary.kolmogorov_slope = slope_over(ks_pts);
    report.summaries.push_back(std::move(summary));
  }

  const Schatten norms[] = {Schatten::One, Schatten::Two};
  report.folner = folner_profile(ops, seq, norms);
  report.trace = trace_convergence_report(ops, seq, trace_refs);
  return report;
}

}  // namespace folner
