#include "folner/json_io.hpp"

#include <fstream>
#include <sstream>

#include "folner/traces.hpp"

namespace folner {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw SpecError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw SpecError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw SpecError(std::string(what) + " must be a number");
  return j.get<double>();
}

long integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw SpecError(std::string(what) + " must be an integer");
  return j.get<long>();
}

bool flag(const Json& j, const char* key, bool fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw SpecError(std::string(key) + " must be a boolean");
  return it->get<bool>();
}

std::vector<Complex> complex_list(const Json& j, const char* what) {
  if (!j.is_array()) throw SpecError(std::string(what) + " must be an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(complex_from_json(x));
  return out;
}

std::string kind_of(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) throw SpecError("'kind' must be a string");
  return k.get<std::string>();
}

DiagonalFn diagonal_from_json(const Json& j) {
  const Json& t = field(j, "type");
  if (!t.is_string()) throw SpecError("diagonal profile 'type' must be a string");
  const auto type = t.get<std::string>();
  if (type == "constant") return DiagonalFn::constant(complex_from_json(field(j, "value")));
  if (type == "periodic") {
    auto values = complex_list(field(j, "values"), "periodic values");
    return DiagonalFn::periodic(std::move(values));
  }
  const Complex amp = complex_from_json(field(j, "amplitude"));
  const double freq = number(field(j, "frequency"), "frequency");
  const double phase = j.contains("phase") ? number(j["phase"], "phase") : 0.0;
  if (type == "cosine") return DiagonalFn::cosine(amp, freq, phase);
  if (type == "exponential") return DiagonalFn::exponential(amp, freq, phase);
  throw SpecError("unknown diagonal profile type '" + type + "'");
}

Json diagonal_to_json(const DiagonalFn& d) {
  switch (d.kind) {
    case DiagonalFn::Kind::Constant:
      return {{"type", "constant"}, {"value", complex_to_json(d.amplitude)}};
    case DiagonalFn::Kind::Periodic: {
      Json values = Json::array();
      for (Complex c : d.values) values.push_back(complex_to_json(c));
      return {{"type", "periodic"}, {"values", values}};
    }
    case DiagonalFn::Kind::Cosine:
    case DiagonalFn::Kind::Exponential:
      return {{"type", d.kind == DiagonalFn::Kind::Cosine ? "cosine" : "exponential"},
              {"amplitude", complex_to_json(d.amplitude)},
              {"frequency", d.frequency},
              {"phase", d.phase}};
  }
  return {};
}

OperatorSpec parse_operator(const Json& j) {
  const std::string kind = kind_of(j);
  if (kind == "dense") {
    const Json& rows = field(j, "matrix");
    if (!rows.is_array() || rows.empty()) throw SpecError("dense 'matrix' must be a non-empty array of rows");
    const auto dim = static_cast<Eigen::Index>(rows.size());
    DenseMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
        throw SpecError("dense 'matrix' must be square");
      }
      for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return dense_op(std::move(m));
  }
  if (kind == "toeplitz") {
    ToeplitzData data;
    if (j.contains("coefficients")) {
      const Json& coeffs = j["coefficients"];
      if (!coeffs.is_array()) throw SpecError("toeplitz 'coefficients' must be an array");
      for (const auto& c : coeffs) {
        const long k = integer(field(c, "k"), "coefficient index k");
        if (data.coefficients.count(k)) throw SpecError("duplicate toeplitz coefficient k=" + std::to_string(k));
        data.coefficients[k] = complex_from_json(field(c, "value"));
      }
    } else if (j.contains("samples")) {
      const auto samples = complex_list(j["samples"], "toeplitz samples");
      data = ToeplitzData::from_samples(samples, integer(field(j, "bandwidth"), "bandwidth"));
    } else {
      throw SpecError("toeplitz needs 'coefficients' or 'samples'");
    }
    return toeplitz_op(std::move(data), flag(j, "selfadjoint", false));
  }
  if (kind == "shift") {
    if (!j.contains("weights")) return shift_op();
    return shift_op(complex_list(j["weights"], "shift weights"));
  }
  if (kind == "band") {
    const Json& diags = field(j, "diagonals");
    if (!diags.is_array()) throw SpecError("band 'diagonals' must be an array");
    std::map<long, DiagonalFn> out;
    for (const auto& d : diags) {
      const long offset = integer(field(d, "offset"), "diagonal offset");
      if (out.count(offset)) throw SpecError("duplicate band offset " + std::to_string(offset));
      out.emplace(offset, diagonal_from_json(field(d, "profile")));
    }
    return band_op(std::move(out));
  }
  if (kind == "almost_mathieu") {
    return almost_mathieu_op(number(field(j, "coupling"), "coupling"), number(field(j, "frequency"), "frequency"),
                             j.contains("phase") ? number(j["phase"], "phase") : 0.0);
  }
  if (kind == "kron") return kron_op(parse_operator(field(j, "left")), parse_operator(field(j, "right")));
  if (kind == "poly") {
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw SpecError("poly 'terms' must be an array");
    std::vector<PolyTerm> out;
    std::optional<Lattice> lattice;
    if (j.contains("lattice")) lattice = lattice_from_json(j["lattice"]);
    for (const auto& t : terms) {
      PolyTerm term{t.contains("coeff") ? complex_from_json(t["coeff"]) : Complex{1.0, 0.0}, {}};
      const Json& factors = field(t, "factors");
      if (!factors.is_array()) throw SpecError("poly 'factors' must be an array");
      for (const auto& f : factors) {
        OperatorSpec op = parse_operator(field(f, "op"));
        if (!lattice) lattice = op.lattice();
        term.factors.push_back(PolyFactor{std::move(op), flag(f, "adjoint", false)});
      }
      out.push_back(std::move(term));
    }
    if (!lattice) throw SpecError("poly without operator factors needs an explicit 'lattice'");
    return poly_op(*lattice, std::move(out));
  }
  if (kind == "nc") {
    const double phase = j.contains("phase") ? number(j["phase"], "phase") : 0.0;
    return represent_nc(nc_from_json(j), phase);
  }
  throw SpecError("unknown operator kind '" + kind + "'");
}

ProjectionSpec parse_projection(const Json& j) {
  const std::string kind = kind_of(j);
  if (kind == "window") {
    return ProjectionSpec::window(lattice_from_json(field(j, "lattice")), integer(field(j, "lo"), "lo"),
                                  integer(field(j, "hi"), "hi"));
  }
  if (kind == "index_set") {
    const Json& sites = field(j, "sites");
    if (!sites.is_array()) throw SpecError("index_set 'sites' must be an array");
    std::vector<long> out;
    for (const auto& s : sites) out.push_back(integer(s, "site"));
    return ProjectionSpec::index_set(lattice_from_json(field(j, "lattice")), std::move(out));
  }
  if (kind == "kron") return ProjectionSpec::kron(parse_projection(field(j, "left")), parse_projection(field(j, "right")));
  throw SpecError("unknown projection kind '" + kind + "'");
}

template <class F>
auto translate_errors(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw SpecError(std::string("malformed JSON spec: ") + e.what());
  }
}

}  // namespace

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw SpecError("complex value must be a number or an [re, im] pair");
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Lattice lattice_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "n0") return Lattice::n0();
    if (s == "z") return Lattice::z();
    throw SpecError("unknown lattice '" + s + "' (expected \"n0\", \"z\" or {\"product\": [l, r]})");
  }
  if (j.is_object() && j.contains("product")) {
    const Json& p = j["product"];
    if (!p.is_array() || p.size() != 2) throw SpecError("product lattice needs two factors");
    return Lattice::product(lattice_from_json(p[0]), lattice_from_json(p[1]));
  }
  throw SpecError("malformed lattice");
}

Json lattice_to_json(const Lattice& l) {
  switch (l.kind()) {
    case Lattice::Kind::N0:
      return "n0";
    case Lattice::Kind::Z:
      return "z";
    case Lattice::Kind::Product:
      return {{"product", Json::array({lattice_to_json(l.left()), lattice_to_json(l.right())})}};
  }
  return {};
}

OperatorSpec operator_from_json(const Json& j) {
  return translate_errors([&] { return parse_operator(j); });
}

Json operator_to_json(const OperatorSpec& op) {
  return std::visit(
      [&](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, DenseOp>) {
          Json rows = Json::array();
          for (Eigen::Index r = 0; r < node.matrix.rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < node.matrix.cols(); ++c) row.push_back(complex_to_json(node.matrix(r, c)));
            rows.push_back(std::move(row));
          }
          return {{"kind", "dense"}, {"matrix", rows}};
        } else if constexpr (std::is_same_v<T, ToeplitzOp>) {
          Json coeffs = Json::array();
          for (const auto& [k, a] : node.data.coefficients) coeffs.push_back({{"k", k}, {"value", complex_to_json(a)}});
          return {{"kind", "toeplitz"}, {"coefficients", coeffs}, {"selfadjoint", node.selfadjoint}};
        } else if constexpr (std::is_same_v<T, ShiftOp>) {
          Json w = Json::array();
          for (Complex c : node.weights) w.push_back(complex_to_json(c));
          return {{"kind", "shift"}, {"weights", w}};
        } else if constexpr (std::is_same_v<T, BandOp>) {
          Json diags = Json::array();
          for (const auto& [j, d] : node.diagonals) diags.push_back({{"offset", j}, {"profile", diagonal_to_json(d)}});
          return {{"kind", "band"}, {"diagonals", diags}};
        } else if constexpr (std::is_same_v<T, AlmostMathieuOp>) {
          return {{"kind", "almost_mathieu"},
                  {"coupling", node.coupling},
                  {"frequency", node.frequency},
                  {"phase", node.phase}};
        } else if constexpr (std::is_same_v<T, KronOp>) {
          return {{"kind", "kron"}, {"left", operator_to_json(node.left)}, {"right", operator_to_json(node.right)}};
        } else {
          Json terms = Json::array();
          for (const auto& t : node.terms) {
            Json factors = Json::array();
            for (const auto& f : t.factors) factors.push_back({{"op", operator_to_json(f.op)}, {"adjoint", f.adjoint}});
            terms.push_back({{"coeff", complex_to_json(t.coefficient)}, {"factors", factors}});
          }
          return {{"kind", "poly"}, {"lattice", lattice_to_json(node.lattice)}, {"terms", terms}};
        }
      },
      op.node());
}

ProjectionSpec projection_from_json(const Json& j) {
  return translate_errors([&] { return parse_projection(j); });
}

bool is_projection_json(const Json& j) {
  if (!j.is_object()) return false;
  const auto it = j.find("kind");
  if (it == j.end() || !it->is_string()) return false;
  const auto kind = it->get<std::string>();
  if (kind == "window" || kind == "index_set") return true;
  return kind == "kron" && j.contains("left") && is_projection_json(j["left"]);
}

Json projection_to_json(const ProjectionSpec& p) {
  switch (p.kind()) {
    case ProjectionSpec::Kind::Window:
      return {{"kind", "window"}, {"lattice", lattice_to_json(p.lattice())}, {"lo", p.lo()}, {"hi", p.hi()}};
    case ProjectionSpec::Kind::IndexSet:
      return {{"kind", "index_set"}, {"lattice", lattice_to_json(p.lattice())}, {"sites", p.sites()}};
    case ProjectionSpec::Kind::Kron:
      return {{"kind", "kron"}, {"left", projection_to_json(p.left())}, {"right", projection_to_json(p.right())}};
  }
  return {};
}

NCPolynomial nc_from_json(const Json& j) {
  return translate_errors([&] {
    NCPolynomial out(number(field(j, "alpha"), "alpha"));
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw SpecError("nc 'terms' must be an array");
    for (const auto& t : terms) {
      out.add_term(integer(field(t, "m"), "m"), integer(field(t, "k"), "k"), 0, complex_from_json(field(t, "coeff")));
    }
    return out;
  });
}

Json nc_to_json(const NCPolynomial& a) {
  Json terms = Json::array();
  for (const auto& t : a.terms()) {
    if (t.coeff == Complex{}) continue;
    terms.push_back({{"m", t.m}, {"k", t.k}, {"coeff", complex_to_json(t.coeff)}});
  }
  return {{"alpha", a.alpha()}, {"terms", terms}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw SpecError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace folner
