#include "folner/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "folner/linalg.hpp"

namespace folner {

// -- DiagonalFn ---------------------------------------------------------------

DiagonalFn DiagonalFn::periodic(std::vector<Complex> v) {
  if (v.empty()) throw SpecError("periodic diagonal needs at least one value");
  DiagonalFn f;
  f.kind = Kind::Periodic;
  f.values = std::move(v);
  return f;
}

namespace {

long floor_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

// exp(2 pi i x) with the integer part of x removed first.
Complex unit_phase(double x) {
  const double frac = x - std::floor(x);
  return std::polar(1.0, kTwoPi * frac);
}

}  // namespace

Complex DiagonalFn::operator()(long n) const {
  switch (kind) {
    case Kind::Constant:
      return amplitude;
    case Kind::Periodic:
      return values[static_cast<std::size_t>(floor_mod(n, static_cast<long>(values.size())))];
    case Kind::Cosine: {
      const double x = frequency * static_cast<double>(n) + phase;
      return amplitude * unit_phase(x).real();
    }
    case Kind::Exponential:
      return amplitude * unit_phase(frequency * static_cast<double>(n) + phase);
  }
  return {};
}

DiagonalFn DiagonalFn::conj_shifted(long shift) const {
  switch (kind) {
    case Kind::Constant:
      return constant(std::conj(amplitude));
    case Kind::Periodic: {
      const auto period = static_cast<long>(values.size());
      std::vector<Complex> out(values.size());
      for (long i = 0; i < period; ++i) {
        out[static_cast<std::size_t>(i)] = std::conj(values[static_cast<std::size_t>(floor_mod(i + shift, period))]);
      }
      return periodic(std::move(out));
    }
    case Kind::Cosine:
      return cosine(std::conj(amplitude), frequency, frequency * static_cast<double>(shift) + phase);
    case Kind::Exponential:
      return exponential(std::conj(amplitude), -frequency, -(frequency * static_cast<double>(shift) + phase));
  }
  return {};
}

bool DiagonalFn::is_zero() const {
  if (kind == Kind::Periodic) {
    return std::all_of(values.begin(), values.end(), [](Complex c) { return c == Complex{}; });
  }
  return amplitude == Complex{};
}

// -- ToeplitzData ---------------------------------------------------------------

long ToeplitzData::bandwidth() const {
  long b = 0;
  for (const auto& [k, a] : coefficients) {
    if (a != Complex{}) b = std::max(b, std::abs(k));
  }
  return b;
}

Complex ToeplitzData::coefficient(long k) const {
  const auto it = coefficients.find(k);
  return it == coefficients.end() ? Complex{} : it->second;
}

bool ToeplitzData::is_hermitian(double rel_tol) const {
  double scale = 0.0;
  for (const auto& [k, a] : coefficients) scale = std::max(scale, std::abs(a));
  for (const auto& [k, a] : coefficients) {
    if (std::abs(coefficient(-k) - std::conj(a)) > rel_tol * scale) return false;
  }
  return true;
}

ToeplitzData ToeplitzData::hermitian_part() const {
  ToeplitzData out;
  for (const auto& [k, a] : coefficients) {
    out.coefficients[k] = 0.5 * (a + std::conj(coefficient(-k)));
    out.coefficients[-k] = 0.5 * (coefficient(-k) + std::conj(a));
  }
  return out;
}

Complex ToeplitzData::symbol(double theta) const {
  Complex sum{};
  for (const auto& [k, a] : coefficients) sum += a * std::polar(1.0, static_cast<double>(k) * theta);
  return sum;
}

ToeplitzData ToeplitzData::from_samples(std::span<const Complex> samples, long bandwidth) {
  if (bandwidth < 0) throw SpecError("symbol bandwidth must be non-negative");
  const auto m = static_cast<long>(samples.size());
  if (m < 2 * bandwidth + 1) {
    throw SpecError("symbol sampled at " + std::to_string(m) + " nodes; bandwidth " + std::to_string(bandwidth) +
                    " needs at least " + std::to_string(2 * bandwidth + 1));
  }
  ToeplitzData out;
  for (long k = -bandwidth; k <= bandwidth; ++k) {
    Complex acc{};
    for (long j = 0; j < m; ++j) {
      // e^{-i k theta_j}, theta_j = 2 pi j / M; reduce k j mod M for accuracy
      const long r = floor_mod(-k * j, m);
      acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(m));
    }
    out.coefficients[k] = acc / static_cast<double>(m);
  }
  return out;
}

ToeplitzData ToeplitzData::from_function(const std::function<Complex(double)>& g, long bandwidth,
                                         std::size_t nodes) {
  std::vector<Complex> samples(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    samples[j] = g(kTwoPi * static_cast<double>(j) / static_cast<double>(nodes));
  }
  return from_samples(samples, bandwidth);
}

// -- OperatorSpec -----------------------------------------------------------------

struct OperatorSpec::Node {
  Variant value;
};

namespace {

Lattice lattice_of(const OperatorSpec::Variant& v) {
  return std::visit(
      [](const auto& op) -> Lattice {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, DenseOp> || std::is_same_v<T, ToeplitzOp> || std::is_same_v<T, ShiftOp>) {
          return Lattice::n0();
        } else if constexpr (std::is_same_v<T, BandOp> || std::is_same_v<T, AlmostMathieuOp>) {
          return Lattice::z();
        } else if constexpr (std::is_same_v<T, KronOp>) {
          return Lattice::product(op.left.lattice(), op.right.lattice());
        } else {
          return op.lattice;
        }
      },
      v);
}

void validate(const DenseOp& op) {
  if (op.matrix.rows() == 0 || op.matrix.rows() != op.matrix.cols()) {
    throw SpecError("dense operator must be a non-empty square matrix");
  }
  if (!op.matrix.allFinite()) throw SpecError("dense operator has non-finite entries");
}

void validate(const ToeplitzOp& op) {
  for (const auto& [k, a] : op.data.coefficients) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw SpecError("toeplitz coefficient is not finite");
  }
  // sampled symbols carry DFT roundoff in the imaginary parts
  if (op.selfadjoint && !op.data.is_hermitian(1e-12)) {
    throw SpecError("toeplitz symbol flagged self-adjoint but a_{-k} != conj(a_k)");
  }
}

void validate(const ShiftOp& op) {
  if (op.weights.empty()) throw SpecError("shift needs at least one weight");
}

void validate(const BandOp& op) {
  for (const auto& [j, d] : op.diagonals) {
    if (d.kind == DiagonalFn::Kind::Periodic && d.values.empty()) {
      throw SpecError("band diagonal " + std::to_string(j) + " has an empty periodic profile");
    }
  }
}

void validate(const AlmostMathieuOp& op) {
  if (!std::isfinite(op.coupling) || !std::isfinite(op.frequency) || !std::isfinite(op.phase)) {
    throw SpecError("almost Mathieu parameters must be finite");
  }
}

void validate(const KronOp&) {}

void validate(const PolyOp& op) {
  for (const auto& term : op.terms) {
    for (const auto& f : term.factors) {
      if (!(f.op.lattice() == op.lattice)) {
        throw SpecError("poly mixes lattices: " + f.op.lattice().to_string() + " in a polynomial on " +
                        op.lattice.to_string());
      }
    }
  }
}

}  // namespace

#define FOLNER_OPSPEC_CTOR(T)                                              \
  OperatorSpec::OperatorSpec(T op) {                                       \
    validate(op);                                                          \
    node_ = std::make_shared<const Node>(Node{Variant{std::move(op)}});    \
    lattice_ = std::make_shared<const Lattice>(lattice_of(node_->value));  \
  }

FOLNER_OPSPEC_CTOR(DenseOp)
FOLNER_OPSPEC_CTOR(ToeplitzOp)
FOLNER_OPSPEC_CTOR(ShiftOp)
FOLNER_OPSPEC_CTOR(BandOp)
FOLNER_OPSPEC_CTOR(AlmostMathieuOp)
FOLNER_OPSPEC_CTOR(KronOp)
FOLNER_OPSPEC_CTOR(PolyOp)

#undef FOLNER_OPSPEC_CTOR

const OperatorSpec::Variant& OperatorSpec::node() const { return node_->value; }

std::string OperatorSpec::kind_name() const {
  static constexpr const char* names[] = {"dense", "toeplitz", "shift", "band", "almost_mathieu", "kron", "poly"};
  return names[node().index()];
}

// -- constructors ----------------------------------------------------------------

OperatorSpec dense_op(DenseMatrix m) { return OperatorSpec(DenseOp{std::move(m)}); }

OperatorSpec toeplitz_op(ToeplitzData data, bool selfadjoint) {
  if (selfadjoint) {
    if (!data.is_hermitian(1e-12)) throw SpecError("toeplitz symbol flagged self-adjoint but a_{-k} != conj(a_k)");
    data = data.hermitian_part();
  }
  return OperatorSpec(ToeplitzOp{std::move(data), selfadjoint});
}

OperatorSpec shift_op(std::vector<Complex> weights) { return OperatorSpec(ShiftOp{std::move(weights)}); }

OperatorSpec band_op(std::map<long, DiagonalFn> diagonals) { return OperatorSpec(BandOp{std::move(diagonals)}); }

OperatorSpec almost_mathieu_op(double coupling, double frequency, double phase) {
  return OperatorSpec(AlmostMathieuOp{coupling, frequency, phase});
}

OperatorSpec kron_op(const OperatorSpec& a, const OperatorSpec& b) { return OperatorSpec(KronOp{a, b}); }

OperatorSpec poly_op(const Lattice& lattice, std::vector<PolyTerm> terms) {
  return OperatorSpec(PolyOp{lattice, std::move(terms)});
}

OperatorSpec identity_op(const Lattice& lattice) {
  switch (lattice.kind()) {
    case Lattice::Kind::N0:
      return toeplitz_op(ToeplitzData{{{0, Complex{1.0, 0.0}}}}, true);
    case Lattice::Kind::Z:
      return band_op({{0, DiagonalFn::constant(1.0)}});
    case Lattice::Kind::Product:
      return kron_op(identity_op(lattice.left()), identity_op(lattice.right()));
  }
  throw SpecError("unknown lattice");
}

namespace {

std::vector<PolyTerm> as_terms(const OperatorSpec& op) {
  if (const auto* poly = op.get_if<PolyOp>()) return poly->terms;
  return {PolyTerm{Complex{1.0, 0.0}, {PolyFactor{op, false}}}};
}

void require_same_lattice(const OperatorSpec& a, const OperatorSpec& b) {
  if (!(a.lattice() == b.lattice())) {
    throw SpecError("poly mixes lattices: " + a.lattice().to_string() + " and " + b.lattice().to_string());
  }
}

}  // namespace

OperatorSpec operator+(const OperatorSpec& a, const OperatorSpec& b) {
  require_same_lattice(a, b);
  auto terms = as_terms(a);
  auto rhs = as_terms(b);
  terms.insert(terms.end(), rhs.begin(), rhs.end());
  return poly_op(a.lattice(), std::move(terms));
}

OperatorSpec operator*(const OperatorSpec& a, const OperatorSpec& b) {
  require_same_lattice(a, b);
  std::vector<PolyTerm> terms;
  for (const auto& x : as_terms(a)) {
    for (const auto& y : as_terms(b)) {
      PolyTerm t{x.coefficient * y.coefficient, x.factors};
      t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
      terms.push_back(std::move(t));
    }
  }
  return poly_op(a.lattice(), std::move(terms));
}

OperatorSpec operator*(Complex c, const OperatorSpec& a) {
  auto terms = as_terms(a);
  for (auto& t : terms) t.coefficient *= c;
  return poly_op(a.lattice(), std::move(terms));
}

// -- compression -----------------------------------------------------------------

namespace {

void require_lattice(const OperatorSpec& op, const ProjectionSpec& p) {
  if (!(op.lattice() == p.lattice())) {
    throw SpecError("lattice mismatch: " + op.kind_name() + " operator on " + op.lattice().to_string() +
                    " compressed by a projection on " + p.lattice().to_string());
  }
}

// Calls emit(row, value) for every potentially nonzero entry in column `c`
// of a base-lattice operator.
template <class Emit>
void column_entries(const OperatorSpec::Variant& v, long c, Emit&& emit) {
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, DenseOp>) {
          const long d = op.matrix.rows();
          if (c >= 0 && c < d) {
            for (long r = 0; r < d; ++r) {
              const Complex x = op.matrix(r, c);
              if (x != Complex{}) emit(r, x);
            }
          }
        } else if constexpr (std::is_same_v<T, ToeplitzOp>) {
          for (const auto& [k, a] : op.data.coefficients) {
            if (a != Complex{} && c + k >= 0) emit(c + k, a);
          }
        } else if constexpr (std::is_same_v<T, ShiftOp>) {
          const auto period = static_cast<long>(op.weights.size());
          const Complex w = op.weights[static_cast<std::size_t>(floor_mod(c, period))];
          if (w != Complex{}) emit(c + 1, w);
        } else if constexpr (std::is_same_v<T, BandOp>) {
          for (const auto& [j, d] : op.diagonals) {
            const long r = c - j;
            const Complex x = d(r);
            if (x != Complex{}) emit(r, x);
          }
        } else if constexpr (std::is_same_v<T, AlmostMathieuOp>) {
          emit(c - 1, Complex{1.0, 0.0});
          const double x = op.frequency * static_cast<double>(c) + op.phase;
          const double diag = 2.0 * op.coupling * unit_phase(x).real();
          if (diag != 0.0) emit(c, Complex{diag, 0.0});
          emit(c + 1, Complex{1.0, 0.0});
        }
      },
      v);
}

SparseMatrix compress_base(const OperatorSpec& op, const ProjectionSpec& p) {
  const auto& sites = p.sites();
  const auto dim = static_cast<Eigen::Index>(sites.size());
  std::vector<Eigen::Triplet<Complex>> trips;
  for (Eigen::Index j = 0; j < dim; ++j) {
    column_entries(op.node(), sites[static_cast<std::size_t>(j)], [&](long r, Complex x) {
      const auto it = std::lower_bound(sites.begin(), sites.end(), r);
      if (it != sites.end() && *it == r) trips.emplace_back(static_cast<Eigen::Index>(it - sites.begin()), j, x);
    });
  }
  SparseMatrix out(dim, dim);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix sparse_identity(Eigen::Index dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

SparseMatrix compress_poly(const PolyOp& poly, const OperatorSpec& self, const ProjectionSpec& p) {
  const ProjectionSpec padded = coupling_hull(self, p);
  const auto dim = static_cast<Eigen::Index>(padded.rank());
  SparseMatrix sum(dim, dim);
  for (const auto& term : poly.terms) {
    if (term.coefficient == Complex{}) continue;
    SparseMatrix prod = sparse_identity(dim);
    for (const auto& f : term.factors) {
      SparseMatrix m = compress_sparse(f.op, padded);
      if (f.adjoint) m = SparseMatrix(m.adjoint());
      prod = SparseMatrix(prod * m);
    }
    sum += term.coefficient * prod;
  }
  const auto pos = positions_in(p, padded);
  return submatrix(sum, pos, pos);
}

}  // namespace

SparseMatrix compress_sparse(const OperatorSpec& op, const ProjectionSpec& p) {
  require_lattice(op, p);
  if (const auto* k = op.get_if<KronOp>()) {
    return kron(compress_sparse(k->left, p.left()), compress_sparse(k->right, p.right()));
  }
  if (const auto* poly = op.get_if<PolyOp>()) return compress_poly(*poly, op, p);
  return compress_base(op, p);
}

DenseMatrix compress(const OperatorSpec& op, const ProjectionSpec& p) { return DenseMatrix(compress_sparse(op, p)); }

ProjectionSpec coupling_hull(const OperatorSpec& op, const ProjectionSpec& p) {
  require_lattice(op, p);
  return std::visit(
      [&](const auto& node) -> ProjectionSpec {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, DenseOp>) {
          const long d = node.matrix.rows();
          if (p.sites().front() >= d) return p;
          return union_hull(p, ProjectionSpec::window(p.lattice(), 0, d - 1));
        } else if constexpr (std::is_same_v<T, KronOp>) {
          return ProjectionSpec::kron(coupling_hull(node.left, p.left()), coupling_hull(node.right, p.right()));
        } else if constexpr (std::is_same_v<T, PolyOp>) {
          std::size_t degree = 0;
          for (const auto& t : node.terms) degree = std::max(degree, t.factors.size());
          ProjectionSpec q = p;
          for (std::size_t step = 0; step < degree; ++step) {
            ProjectionSpec next = q;
            for (const auto& t : node.terms) {
              for (const auto& f : t.factors) next = union_hull(next, coupling_hull(f.op, q));
            }
            q = next;
          }
          return q;
        } else {
          return dilate(p, bandwidth(op));
        }
      },
      op.node());
}

long bandwidth(const OperatorSpec& op) {
  return std::visit(
      [](const auto& node) -> long {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, DenseOp>) {
          return static_cast<long>(node.matrix.rows()) - 1;
        } else if constexpr (std::is_same_v<T, ToeplitzOp>) {
          return node.data.bandwidth();
        } else if constexpr (std::is_same_v<T, ShiftOp> || std::is_same_v<T, AlmostMathieuOp>) {
          return 1;
        } else if constexpr (std::is_same_v<T, BandOp>) {
          long b = 0;
          for (const auto& [j, d] : node.diagonals) {
            if (!d.is_zero()) b = std::max(b, std::abs(j));
          }
          return b;
        } else if constexpr (std::is_same_v<T, KronOp>) {
          return std::max(bandwidth(node.left), bandwidth(node.right));
        } else {
          long widest = 0;
          std::size_t degree = 0;
          for (const auto& t : node.terms) {
            degree = std::max(degree, t.factors.size());
            for (const auto& f : t.factors) widest = std::max(widest, bandwidth(f.op));
          }
          return static_cast<long>(degree) * widest;
        }
      },
      op.node());
}

OperatorSpec op_adjoint(const OperatorSpec& op) {
  return std::visit(
      [&](const auto& node) -> OperatorSpec {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, DenseOp>) {
          return dense_op(node.matrix.adjoint());
        } else if constexpr (std::is_same_v<T, ToeplitzOp>) {
          ToeplitzData adj;
          for (const auto& [k, a] : node.data.coefficients) adj.coefficients[-k] = std::conj(a);
          return toeplitz_op(std::move(adj), node.selfadjoint);
        } else if constexpr (std::is_same_v<T, ShiftOp>) {
          return poly_op(op.lattice(), {PolyTerm{Complex{1.0, 0.0}, {PolyFactor{op, true}}}});
        } else if constexpr (std::is_same_v<T, BandOp>) {
          std::map<long, DiagonalFn> adj;
          for (const auto& [j, d] : node.diagonals) adj.emplace(-j, d.conj_shifted(-j));
          return band_op(std::move(adj));
        } else if constexpr (std::is_same_v<T, AlmostMathieuOp>) {
          return op;
        } else if constexpr (std::is_same_v<T, KronOp>) {
          return kron_op(op_adjoint(node.left), op_adjoint(node.right));
        } else {
          std::vector<PolyTerm> terms;
          terms.reserve(node.terms.size());
          for (const auto& t : node.terms) {
            PolyTerm adj{std::conj(t.coefficient), {}};
            for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
              adj.factors.push_back(PolyFactor{it->op, !it->adjoint});
            }
            terms.push_back(std::move(adj));
          }
          return poly_op(node.lattice, std::move(terms));
        }
      },
      op.node());
}

bool is_selfadjoint(const OperatorSpec& op, const ProjectionSpec& p, double tol) {
  return hermitian_defect(compress(op, p)) <= tol;
}

DenseMatrix build_toeplitz_section(const ToeplitzData& symbol, long n) {
  if (n < 0) throw SpecError("toeplitz section order must be non-negative");
  const long dim = n + 1;
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) m(i, j) = symbol.coefficient(i - j);
  return m;
}

}  // namespace folner
