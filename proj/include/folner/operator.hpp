#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "folner/common.hpp"
#include "folner/projection.hpp"

namespace folner {

/// Diagonal profile d(n) of a band operator.
///   Constant:    c
///   Periodic:    values[n mod period]
///   Cosine:      amplitude * cos(2 pi (frequency n + phase))
///   Exponential: amplitude * exp(2 pi i (frequency n + phase))
struct DiagonalFn {
  enum class Kind { Constant, Periodic, Cosine, Exponential };
  Kind kind = Kind::Constant;
  Complex amplitude{0.0, 0.0};
  double frequency = 0.0;
  double phase = 0.0;
  std::vector<Complex> values;

  static DiagonalFn constant(Complex c) { return {Kind::Constant, c, 0.0, 0.0, {}}; }
  static DiagonalFn periodic(std::vector<Complex> v);
  static DiagonalFn cosine(Complex amp, double freq, double phase) { return {Kind::Cosine, amp, freq, phase, {}}; }
  static DiagonalFn exponential(Complex amp, double freq, double phase) {
    return {Kind::Exponential, amp, freq, phase, {}};
  }

  Complex operator()(long n) const;
  /// n -> conj(d(n + shift)).
  DiagonalFn conj_shifted(long shift) const;
  bool is_zero() const;
};

/// Fourier data of a Toeplitz symbol g(theta) = sum_k a_k e^{i k theta}.
struct ToeplitzData {
  std::map<long, Complex> coefficients;

  long bandwidth() const;
  Complex coefficient(long k) const;
  /// a_{-k} = conj(a_k) up to `rel_tol` times the largest |a_k|.
  bool is_hermitian(double rel_tol = 0.0) const;
  /// Coefficients replaced by (a_k + conj(a_{-k})) / 2.
  ToeplitzData hermitian_part() const;
  /// Value of the symbol at angle theta.
  Complex symbol(double theta) const;

  /// Recover a_k, |k| <= bandwidth, from M uniform samples g(2 pi j / M)
  /// by the plain discrete Fourier sum. Requires M >= 2*bandwidth + 1.
  static ToeplitzData from_samples(std::span<const Complex> samples, long bandwidth);
  /// Samples `g` on `nodes` uniform points (default 1024) and recovers
  /// coefficients up to `bandwidth`.
  static ToeplitzData from_function(const std::function<Complex(double)>& g, long bandwidth,
                                    std::size_t nodes = 1024);
};

class OperatorSpec;

struct DenseOp {
  DenseMatrix matrix;
};

struct ToeplitzOp {
  ToeplitzData data;
  bool selfadjoint = false;
};

/// Weighted unilateral shift S e_i = w(i) e_{i+1}; weights repeat periodically.
struct ShiftOp {
  std::vector<Complex> weights{Complex{1.0, 0.0}};
};

/// (A psi)(n) = sum_j d_j(n) psi(n + j) on l2(Z).
struct BandOp {
  std::map<long, DiagonalFn> diagonals;
};

struct AlmostMathieuOp {
  double coupling = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
};

struct KronOp;
struct PolyOp;

/// Immutable handle to an operator description. Copies share the node.
class OperatorSpec {
 public:
  using Variant = std::variant<DenseOp, ToeplitzOp, ShiftOp, BandOp, AlmostMathieuOp, KronOp, PolyOp>;

  OperatorSpec(DenseOp op);
  OperatorSpec(ToeplitzOp op);
  OperatorSpec(ShiftOp op);
  OperatorSpec(BandOp op);
  OperatorSpec(AlmostMathieuOp op);
  OperatorSpec(KronOp op);
  OperatorSpec(PolyOp op);

  const Variant& node() const;
  const Lattice& lattice() const { return *lattice_; }
  /// Variant tag as used in the JSON schema ("dense", "toeplitz", ...).
  std::string kind_name() const;

  template <class T>
  const T* get_if() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
  std::shared_ptr<const Lattice> lattice_;
};

struct KronOp {
  OperatorSpec left;
  OperatorSpec right;
};

struct PolyFactor {
  OperatorSpec op;
  bool adjoint = false;
};

/// coefficient * F_1 F_2 ... F_k; an empty factor list is the identity.
struct PolyTerm {
  Complex coefficient{1.0, 0.0};
  std::vector<PolyFactor> factors;
};

struct PolyOp {
  Lattice lattice = Lattice::z();
  std::vector<PolyTerm> terms;
};

template <class T>
const T* OperatorSpec::get_if() const {
  return std::get_if<T>(&node());
}

// -- constructors -----------------------------------------------------------

OperatorSpec dense_op(DenseMatrix m);
OperatorSpec toeplitz_op(ToeplitzData data, bool selfadjoint = false);
OperatorSpec shift_op(std::vector<Complex> weights = {Complex{1.0, 0.0}});
OperatorSpec band_op(std::map<long, DiagonalFn> diagonals);
OperatorSpec almost_mathieu_op(double coupling, double frequency, double phase);
OperatorSpec kron_op(const OperatorSpec& a, const OperatorSpec& b);
OperatorSpec poly_op(const Lattice& lattice, std::vector<PolyTerm> terms);
OperatorSpec identity_op(const Lattice& lattice);

OperatorSpec operator+(const OperatorSpec& a, const OperatorSpec& b);
OperatorSpec operator*(const OperatorSpec& a, const OperatorSpec& b);
OperatorSpec operator*(Complex c, const OperatorSpec& a);

// -- operations -------------------------------------------------------------

/// Matrix of P T P on the range of P; rows/columns follow the ascending
/// (row-major for products) enumeration of p's sites.
DenseMatrix compress(const OperatorSpec& op, const ProjectionSpec& p);
SparseMatrix compress_sparse(const OperatorSpec& op, const ProjectionSpec& p);

/// Smallest supported projection containing p together with every site
/// coupled to p by op or op*. Compressing on it captures A P and P A.
ProjectionSpec coupling_hull(const OperatorSpec& op, const ProjectionSpec& p);

/// Maximum hopping distance (per tensor factor for products); Dense returns
/// its dimension minus one.
long bandwidth(const OperatorSpec& op);

OperatorSpec op_adjoint(const OperatorSpec& op);
bool is_selfadjoint(const OperatorSpec& op, const ProjectionSpec& p, double tol);

/// (n+1)x(n+1) section with entry (i, j) = a_{i-j}.
DenseMatrix build_toeplitz_section(const ToeplitzData& symbol, long n);

}  // namespace folner
