#include "folner/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <tuple>

namespace folner {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

int schatten_rank(Schatten p) { return static_cast<int>(p); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt_opt(const std::optional<double>& x) { return x ? format_double(*x) : ""; }

Json opt_json(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

void sort_rows(FolnerReport& r) {
  std::stable_sort(r.rows.begin(), r.rows.end(), [](const FolnerRow& a, const FolnerRow& b) {
    return std::tuple(a.label, a.n, schatten_rank(a.p)) < std::tuple(b.label, b.n, schatten_rank(b.p));
  });
  std::stable_sort(r.fits.begin(), r.fits.end(), [](const DecayFit& a, const DecayFit& b) {
    return std::tuple(a.label, schatten_rank(a.p)) < std::tuple(b.label, schatten_rank(b.p));
  });
}

void sort_rows(TraceReport& r) {
  std::stable_sort(r.rows.begin(), r.rows.end(), [](const TraceRow& a, const TraceRow& b) {
    return std::tie(a.label, a.n) < std::tie(b.label, b.n);
  });
}

void sort_rows(SzegoReport& r) {
  // stable: function order inside a (label, n) block is kept
  std::stable_sort(r.integrals.begin(), r.integrals.end(), [](const SzegoIntegralRow& a, const SzegoIntegralRow& b) {
    return std::tie(a.label, a.n) < std::tie(b.label, b.n);
  });
  std::stable_sort(r.distances.begin(), r.distances.end(), [](const SzegoDistanceRow& a, const SzegoDistanceRow& b) {
    return std::tie(a.label, a.n) < std::tie(b.label, b.n);
  });
  std::stable_sort(r.summaries.begin(), r.summaries.end(),
                   [](const SzegoSummary& a, const SzegoSummary& b) { return a.label < b.label; });
  sort_rows(r.folner);
  sort_rows(r.trace);
}

Json to_json(const FolnerReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"label", row.label},
                    {"n", row.n},
                    {"d_n", row.dim},
                    {"p", to_string(row.p)},
                    {"ratio", row.ratio},
                    {"off_corner", row.off_corner},
                    {"qd_gap", row.qd_gap}});
  }
  Json fits = Json::array();
  for (const auto& f : r.fits) {
    fits.push_back({{"label", f.label}, {"p", to_string(f.p)}, {"slope", opt_json(f.slope)}, {"points", f.points}});
  }
  return {{"rows", rows}, {"fits", fits}};
}

Json to_json(const TraceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"label", row.label},
                    {"n", row.n},
                    {"d_n", row.dim},
                    {"estimate", complex_to_json(row.estimate)},
                    {"reference", row.reference ? complex_to_json(*row.reference) : Json(nullptr)},
                    {"error", opt_json(row.error)}});
  }
  return {{"rows", rows}};
}

Json to_json(const SzegoReport& r) {
  Json integrals = Json::array();
  for (const auto& row : r.integrals) {
    integrals.push_back({{"label", row.label},
                         {"n", row.n},
                         {"d_n", row.dim},
                         {"family", row.family},
                         {"function", row.function},
                         {"empirical", row.empirical},
                         {"reference", row.reference},
                         {"error", row.error},
                         {"relative_error", row.relative_error}});
  }
  Json distances = Json::array();
  for (const auto& row : r.distances) {
    distances.push_back({{"label", row.label}, {"n", row.n}, {"d_n", row.dim}, {"kolmogorov", opt_json(row.kolmogorov)}});
  }
  Json summaries = Json::array();
  for (const auto& s : r.summaries) {
    summaries.push_back({{"label", s.label},
                         {"largest_n", s.largest_n},
                         {"max_poly_error", s.max_poly_error},
                         {"max_hat_error", opt_json(s.max_hat_error)},
                         {"kolmogorov", opt_json(s.kolmogorov)},
                         {"poly_error_slope", opt_json(s.poly_error_slope)},
                         {"hat_error_slope", opt_json(s.hat_error_slope)},
                         {"kolmogorov_slope", opt_json(s.kolmogorov_slope)}});
  }
  return {{"integrals", integrals},
          {"distances", distances},
          {"summaries", summaries},
          {"folner", to_json(r.folner)},
          {"trace", to_json(r.trace)}};
}

Json to_json(const TensorBoundRecord& r) {
  return {{"lhs", r.lhs},
          {"intermediate", r.intermediate},
          {"rhs", r.rhs},
          {"slack", r.slack},
          {"intermediate_slack", r.intermediate_slack},
          {"ratio_a", r.ratio_a},
          {"ratio_b", r.ratio_b},
          {"norm_a", r.norm_a},
          {"norm_b", r.norm_b},
          {"d", r.dim},
          {"padded_d", r.padded_dim},
          {"norms_from_padded_compression", r.norms_from_padded_compression}};
}

Json to_json(const EmpiricalMeasure& m) {
  return {{"atoms", m.atoms()}, {"weights", std::vector<double>(m.dim(), m.weight())}};
}

Json to_json(const ReferenceMeasure& m) {
  Json out = Json::object();
  if (m.has_cdf()) {
    out["cdf_grid"] = m.grid();
    std::vector<double> weights(m.grid().size());
    double prev = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] = m.cdf_values()[i] - prev;
      prev = m.cdf_values()[i];
    }
    out["cdf"] = m.cdf_values();
    out["weights"] = weights;
  }
  if (!m.moments().empty()) out["moments"] = m.moments();
  return out;
}

std::string version_stamp(const std::string& command) {
  return std::string("# folner-lab ") + kVersion + " " + command;
}

void write_csv(std::ostream& os, const FolnerReport& r) {
  os << "label,n,d_n,p,ratio,off_corner,qd_gap\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.label) << ',' << row.n << ',' << row.dim << ',' << to_string(row.p) << ','
       << format_double(row.ratio) << ',' << format_double(row.off_corner) << ',' << format_double(row.qd_gap) << '\n';
  }
}

void write_csv(std::ostream& os, const TraceReport& r) {
  os << "label,n,d_n,estimate_re,estimate_im,reference_re,reference_im,error\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.label) << ',' << row.n << ',' << row.dim << ',' << format_double(row.estimate.real()) << ','
       << format_double(row.estimate.imag()) << ','
       << (row.reference ? format_double(row.reference->real()) : "") << ','
       << (row.reference ? format_double(row.reference->imag()) : "") << ',' << fmt_opt(row.error) << '\n';
  }
}

void write_csv(std::ostream& os, const SzegoReport& r) {
  os << "label,n,d_n,family,function,empirical,reference,error,relative_error\n";
  for (const auto& row : r.integrals) {
    os << csv_field(row.label) << ',' << row.n << ',' << row.dim << ',' << row.family << ',' << csv_field(row.function)
       << ',' << format_double(row.empirical) << ',' << format_double(row.reference) << ','
       << format_double(row.error) << ',' << format_double(row.relative_error) << '\n';
  }
}

void write_plot_csv(std::ostream& os, const SzegoReport& r) {
  struct Cell {
    std::size_t dim = 0;
    double poly = 0.0;
    std::optional<double> hat;
    std::optional<double> ks;
  };
  std::map<std::pair<std::string, long>, Cell> cells;
  for (const auto& row : r.integrals) {
    auto& c = cells[{row.label, row.n}];
    c.dim = row.dim;
    if (row.family == "poly") {
      c.poly = std::max(c.poly, row.error);
    } else {
      c.hat = std::max(c.hat.value_or(0.0), row.error);
    }
  }
  for (const auto& row : r.distances) {
    auto& c = cells[{row.label, row.n}];
    c.dim = row.dim;
    c.ks = row.kolmogorov;
  }
  os << "label,n,d_n,max_poly_error,max_hat_error,kolmogorov\n";
  for (const auto& [key, c] : cells) {
    os << csv_field(key.first) << ',' << key.second << ',' << c.dim << ',' << format_double(c.poly) << ','
       << fmt_opt(c.hat) << ',' << fmt_opt(c.ks) << '\n';
  }
}

void write_cdf_csv(std::ostream& os, const EmpiricalMeasure& m) {
  os << "x,F\n";
  const auto& a = m.atoms();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i + 1 < a.size() && a[i + 1] == a[i]) continue;
    os << format_double(a[i]) << ',' << format_double(static_cast<double>(i + 1) / static_cast<double>(a.size()))
       << '\n';
  }
}

void write_cdf_csv(std::ostream& os, const ReferenceMeasure& m) {
  os << "x,F\n";
  for (std::size_t i = 0; i < m.grid().size(); ++i) {
    os << format_double(m.grid()[i]) << ',' << format_double(m.cdf_values()[i]) << '\n';
  }
}

}  // namespace folner
