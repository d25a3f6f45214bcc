// folner-lab: batch driver for Følner-ratio, trace and Szegő diagnostics.
//
// Exit codes: 0 success, 1 numerical failure, 2 configuration error,
// 3 spec validation error.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "folner/diagnostics.hpp"
#include "folner/json_io.hpp"
#include "folner/report.hpp"
#include "folner/spectral.hpp"
#include "folner/szego.hpp"
#include "folner/tensor.hpp"
#include "folner/traces.hpp"

namespace {

using namespace folner;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> op_files;
  std::string n_list = "";
  std::string norms = "1,2";
  std::string family = "default";
  std::size_t nodes = kDefaultPushforwardNodes;
  std::string format = "csv";
  std::string out;
  std::string plot_out;
  std::uint64_t seed = 0;
  std::size_t random_cases = 0;
  std::size_t max_dim = 64;
  std::size_t kron_cap = kDefaultKronDimensionCap;
  EigenOptions eig;
};

long parse_long(const std::string& s) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("'" + s + "' is not an integer");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// "1,3,7,15" | "dyadic:a:b" (2^a..2^b) | "range:a:b" (a..b)
std::vector<long> parse_n_list(const std::string& text) {
  std::vector<long> out;
  if (text.rfind("dyadic:", 0) == 0 || text.rfind("range:", 0) == 0) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("n-list rule must be dyadic:a:b or range:a:b");
    const long a = parse_long(parts[1]);
    const long b = parse_long(parts[2]);
    if (a > b || a < 0) throw ConfigError("n-list rule needs 0 <= a <= b");
    if (parts[0] == "dyadic") {
      if (b > 40) throw ConfigError("dyadic exponent too large");
      for (long k = a; k <= b; ++k) out.push_back(1L << k);
    } else {
      for (long k = a; k <= b; ++k) out.push_back(k);
    }
  } else {
    for (const auto& item : split(text, ',')) out.push_back(parse_long(item));
  }
  if (out.empty()) throw ConfigError("empty n-list");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] <= 0) throw ConfigError("n values must be positive");
    if (i > 0 && out[i] <= out[i - 1]) throw ConfigError("n-list must be strictly increasing");
  }
  return out;
}

std::vector<Schatten> parse_norms(const std::string& text) {
  std::vector<Schatten> out;
  for (const auto& item : split(text, ',')) {
    if (item == "1") {
      out.push_back(Schatten::One);
    } else if (item == "2") {
      out.push_back(Schatten::Two);
    } else {
      throw ConfigError("--p accepts 1 and 2, got '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty --p list");
  return out;
}

FunctionFamily parse_family(const std::string& text) {
  try {
    return FunctionFamily::parse(text);
  } catch (const SpecError& e) {
    throw ConfigError(e.what());
  }
}

// An operator file together with whatever ground truth it implies.
struct LoadedOperator {
  LabeledOperator op;
  Json json;
  std::optional<NCPolynomial> nc;
};

LoadedOperator load_operator(const std::string& path) {
  Json j = read_json_file(path);
  std::string label = std::filesystem::path(path).stem().string();
  if (j.is_object() && j.contains("label") && j["label"].is_string()) label = j["label"].get<std::string>();
  if (j.is_object() && !j.contains("kind") && j.contains("alpha") && j.contains("terms")) j["kind"] = "nc";
  LoadedOperator out{LabeledOperator{label, operator_from_json(j)}, j, std::nullopt};
  const auto kind = j.value("kind", std::string{});
  if (kind == "nc") out.nc = nc_from_json(j);
  if (kind == "almost_mathieu") {
    out.nc = NCPolynomial::almost_mathieu(j.at("frequency").get<double>(), j.at("coupling").get<double>());
  }
  return out;
}

std::vector<LoadedOperator> load_operators(const RunConfig& cfg) {
  if (cfg.op_files.empty()) throw ConfigError("at least one --op file is required");
  std::vector<LoadedOperator> ops;
  for (const auto& f : cfg.op_files) ops.push_back(load_operator(f));
  return ops;
}

std::optional<Complex> trace_reference(const LoadedOperator& lo) {
  if (lo.json.contains("trace_reference")) return complex_from_json(lo.json["trace_reference"]);
  if (const auto* t = lo.op.op.get_if<ToeplitzOp>()) return t->data.coefficient(0);
  if (lo.nc) return canonical_trace(*lo.nc);
  return std::nullopt;
}

ReferenceMeasure spectral_reference(const LoadedOperator& lo, const RunConfig& cfg, const FunctionFamily& fam) {
  if (lo.json.contains("reference")) {
    const Json& r = lo.json["reference"];
    if (r.contains("cdf_grid")) {
      auto ref = ReferenceMeasure::from_cdf(r.at("cdf_grid").get<std::vector<double>>(),
                                            r.at("cdf").get<std::vector<double>>());
      if (r.contains("moments")) ref.set_moments(r["moments"].get<std::vector<double>>());
      return ref;
    }
    return ReferenceMeasure::from_moments(r.at("moments").get<std::vector<double>>());
  }
  if (const auto* t = lo.op.op.get_if<ToeplitzOp>()) return reference_pushforward(t->data, cfg.nodes);
  if (lo.nc) return moments_reference(*lo.nc, std::max(fam.max_degree, 1));
  throw SpecError("no reference measure available for '" + lo.op.label +
                  "' (give a toeplitz symbol, an nc/almost_mathieu element or a 'reference' field)");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const RunConfig& cfg, const std::string& command, Json report) {
  Output out(cfg.out);
  Json doc{{"tool", "folner-lab"}, {"version", kVersion}, {"command", command}, {"report", std::move(report)}};
  out.stream() << doc.dump(2) << '\n';
}

void check_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
}

int cmd_folner(const RunConfig& cfg) {
  check_format(cfg);
  const auto norms = parse_norms(cfg.norms);
  const auto ns = parse_n_list(cfg.n_list.empty() ? "dyadic:1:10" : cfg.n_list);
  FolnerReport report;
  for (const auto& lo : load_operators(cfg)) {
    const auto seq = finite_section_sequence(lo.op.op.lattice(), ns);
    auto part = folner_profile(std::span(&lo.op, 1), seq, norms);
    report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
    report.fits.insert(report.fits.end(), part.fits.begin(), part.fits.end());
  }
  sort_rows(report);
  if (cfg.format == "json") {
    emit_json(cfg, "folner", to_json(report));
  } else {
    Output out(cfg.out);
    out.stream() << version_stamp("folner") << '\n';
    write_csv(out.stream(), report);
  }
  return 0;
}

int cmd_trace(const RunConfig& cfg) {
  check_format(cfg);
  const auto ns = parse_n_list(cfg.n_list.empty() ? "dyadic:1:10" : cfg.n_list);
  TraceReport report;
  for (const auto& lo : load_operators(cfg)) {
    std::map<std::string, Complex> refs;
    if (auto ref = trace_reference(lo)) refs[lo.op.label] = *ref;
    const auto seq = finite_section_sequence(lo.op.op.lattice(), ns);
    auto part = trace_convergence_report(std::span(&lo.op, 1), seq, refs);
    report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
  }
  sort_rows(report);
  if (cfg.format == "json") {
    emit_json(cfg, "trace", to_json(report));
  } else {
    Output out(cfg.out);
    out.stream() << version_stamp("trace") << '\n';
    write_csv(out.stream(), report);
  }
  return 0;
}

int cmd_szego(const RunConfig& cfg) {
  check_format(cfg);
  const auto ns = parse_n_list(cfg.n_list.empty() ? "dyadic:4:9" : cfg.n_list);
  const auto fam = parse_family(cfg.family);
  SzegoReport report;
  for (const auto& lo : load_operators(cfg)) {
    std::map<std::string, ReferenceMeasure> refs{{lo.op.label, spectral_reference(lo, cfg, fam)}};
    const auto seq = finite_section_sequence(lo.op.op.lattice(), ns);
    auto part = szego_pair_test(std::span(&lo.op, 1), seq, refs, fam, cfg.eig);
    auto append = [](auto& dst, const auto& src) { dst.insert(dst.end(), src.begin(), src.end()); };
    append(report.integrals, part.integrals);
    append(report.distances, part.distances);
    append(report.summaries, part.summaries);
    append(report.folner.rows, part.folner.rows);
    append(report.folner.fits, part.folner.fits);
    append(report.trace.rows, part.trace.rows);
  }
  sort_rows(report);
  if (cfg.format == "json") {
    emit_json(cfg, "szego", to_json(report));
  } else {
    Output out(cfg.out);
    out.stream() << version_stamp("szego") << '\n';
    write_csv(out.stream(), report);
  }
  if (!cfg.plot_out.empty()) {
    Output plot(cfg.plot_out);
    plot.stream() << version_stamp("szego plot") << '\n';
    write_plot_csv(plot.stream(), report);
  }
  return 0;
}

DenseMatrix random_dense(std::mt19937_64& rng, long dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  DenseMatrix m(dim, dim);
  for (long j = 0; j < dim; ++j)
    for (long i = 0; i < dim; ++i) m(i, j) = Complex{g(rng), g(rng)};
  return m;
}

ProjectionSpec random_index_set(std::mt19937_64& rng, long dim) {
  std::vector<long> sites;
  std::bernoulli_distribution keep(0.5);
  for (long i = 0; i < dim; ++i)
    if (keep(rng)) sites.push_back(i);
  if (sites.empty()) sites.push_back(std::uniform_int_distribution<long>(0, dim - 1)(rng));
  return ProjectionSpec::index_set(Lattice::n0(), std::move(sites));
}

int cmd_tensor(const RunConfig& cfg) {
  check_format(cfg);
  struct Case {
    std::string name;
    TensorBoundRecord rec;
  };
  std::vector<Case> cases;
  if (cfg.random_cases > 0) {
    if (cfg.max_dim < 4) throw ConfigError("--max-dim must be at least 4");
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t c = 0; c < cfg.random_cases; ++c) {
      const long da = std::uniform_int_distribution<long>(2, static_cast<long>(cfg.max_dim) / 2)(rng);
      const long db = std::uniform_int_distribution<long>(2, static_cast<long>(cfg.max_dim) / da)(rng);
      const auto a = dense_op(random_dense(rng, da));
      const auto b = dense_op(random_dense(rng, db));
      const auto p = random_index_set(rng, da);
      const auto q = random_index_set(rng, db);
      cases.push_back({"random-" + std::to_string(c), tensor_bound_check(a, p, b, q, cfg.kron_cap)});
    }
  } else {
    const auto ops = load_operators(cfg);
    if (ops.size() != 2) throw ConfigError("tensor needs exactly two --op files (or --random N)");
    for (long n : parse_n_list(cfg.n_list.empty() ? "1,3,7,15,31" : cfg.n_list)) {
      const auto p = section_window(ops[0].op.op.lattice(), n);
      const auto q = section_window(ops[1].op.op.lattice(), n);
      cases.push_back({ops[0].op.label + "(x)" + ops[1].op.label + "@n=" + std::to_string(n),
                       tensor_bound_check(ops[0].op.op, p, ops[1].op.op, q, cfg.kron_cap)});
    }
  }
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& c : cases) {
      Json j = to_json(c.rec);
      j["case"] = c.name;
      arr.push_back(std::move(j));
    }
    emit_json(cfg, "tensor", arr);
  } else {
    Output out(cfg.out);
    out.stream() << version_stamp("tensor") << '\n'
                 << "case,d,lhs,intermediate,rhs,slack,intermediate_slack\n";
    for (const auto& c : cases) {
      out.stream() << c.name << ',' << c.rec.dim << ',' << format_double(c.rec.lhs) << ','
                   << format_double(c.rec.intermediate) << ',' << format_double(c.rec.rhs) << ','
                   << format_double(c.rec.slack) << ',' << format_double(c.rec.intermediate_slack) << '\n';
    }
  }
  return 0;
}

int cmd_demo_shift(const RunConfig& cfg) {
  const auto ns = parse_n_list(cfg.n_list.empty() ? "range:1:10" : cfg.n_list);
  const auto s = shift_op();
  Output out(cfg.out);
  auto& os = out.stream();
  os << version_stamp("demo-shift") << '\n';
  os << "n,d_n,hs_commutator_squared,ratio,expected_ratio,off_corner,qd_gap\n";
  for (long n : ns) {
    const auto p = section_window(Lattice::n0(), n);
    const auto padded = PaddedCompression::of(s, p);
    const double hs = schatten_norm(padded.commutator(), Schatten::Two);
    os << n << ',' << p.rank() << ',' << format_double(hs * hs) << ',' << format_double(hs / p.hs_norm()) << ','
       << format_double(1.0 / std::sqrt(static_cast<double>(n + 1))) << ','
       << format_double(off_corner_ratio(s, p, Schatten::Two)) << ',' << format_double(qd_gap(s, p)) << '\n';
  }
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  if (cfg.op_files.empty()) throw ConfigError("validate needs at least one --op file");
  for (const auto& path : cfg.op_files) {
    Json j = read_json_file(path);
    if (is_projection_json(j)) {
      projection_from_json(j);
    } else {
      const auto lo = load_operator(path);
      // exercise one compression so lattice/padding errors surface here too
      compress_sparse(lo.op.op, section_window(lo.op.op.lattice(), 1));
    }
    std::cout << "ok " << path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"folner-lab: Følner ratios, trace approximation and Szegő-pair diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub, bool with_ops = true) {
    if (with_ops) sub->add_option("--op", cfg.op_files, "Operator spec JSON file (repeatable)");
    sub->add_option("--n", cfg.n_list, "n-list: 1,3,7 | dyadic:a:b | range:a:b");
    sub->add_option("--format", cfg.format, "Output format: csv or json");
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
  };
  auto add_eig = [&](CLI::App* sub) {
    sub->add_option("--hermitian-tol", cfg.eig.hermitian_tol, "Relative Hermiticity tolerance");
    sub->add_option("--residual-factor", cfg.eig.residual_factor, "Eigen-residual contract factor");
  };

  auto* folner = app.add_subcommand("folner", "Følner ratios ||[P,A]||_p/||P||_p and quasidiagonality gaps");
  add_common(folner);
  folner->add_option("--p", cfg.norms, "Schatten indices, e.g. 2 or 1,2");

  auto* szego = app.add_subcommand("szego", "Empirical spectral measures vs reference measures");
  add_common(szego);
  add_eig(szego);
  szego->add_option("--f", cfg.family, "Test functions: default | poly:K | hat:M (comma separated)");
  szego->add_option("--nodes", cfg.nodes, "Pushforward quadrature nodes");
  szego->add_option("--plot-out", cfg.plot_out, "Write log-log ready error CSV here");

  auto* trace = app.add_subcommand("trace", "Trace estimates Tr(AP)/Tr(P) against reference traces");
  add_common(trace);

  auto* tensor = app.add_subcommand("tensor", "Tensor-product Følner bound on Kronecker compressions");
  add_common(tensor);
  tensor->add_option("--random", cfg.random_cases, "Check N seeded random dense factor pairs instead");
  tensor->add_option("--seed", cfg.seed, "Random seed");
  tensor->add_option("--max-dim", cfg.max_dim, "Max product dimension for random pairs");
  tensor->add_option("--cap", cfg.kron_cap, "Kronecker dimension cap");

  auto* demo = app.add_subcommand("demo-shift", "Følner table for the unilateral shift");
  add_common(demo, false);

  auto* validate = app.add_subcommand("validate", "Lint spec files");
  validate->add_option("--op", cfg.op_files, "Spec file (repeatable)");
  validate->add_option("files", cfg.op_files, "Spec files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*folner) return cmd_folner(cfg);
    if (*szego) return cmd_szego(cfg);
    if (*trace) return cmd_trace(cfg);
    if (*tensor) return cmd_tensor(cfg);
    if (*demo) return cmd_demo_shift(cfg);
    if (*validate) return cmd_validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
