#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "folner/common.hpp"

namespace folner {

/// Element of the rotation algebra generated by unitaries u, v with
/// v u = q u v, q = exp(2 pi i alpha), kept in normal order
/// sum c * q^s * u^m v^k. Phases q^s are tracked through the integer s and
/// only exponentiated on evaluation.
class NCPolynomial {
 public:
  struct Key {
    long m = 0;      // power of u (negative: powers of u*)
    long k = 0;      // power of v
    long phase = 0;  // exponent s of q
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  /// One evaluated term c * u^m v^k.
  struct Term {
    long m = 0;
    long k = 0;
    Complex coeff;
  };

  explicit NCPolynomial(double alpha) : alpha_(alpha) {}

  static NCPolynomial constant(double alpha, Complex c);
  static NCPolynomial monomial(double alpha, long m, long k, Complex c = 1.0);
  static NCPolynomial u(double alpha) { return monomial(alpha, 1, 0); }
  static NCPolynomial v(double alpha) { return monomial(alpha, 0, 1); }
  /// u + u* + lambda (v + v*), the almost Mathieu element.
  static NCPolynomial almost_mathieu(double alpha, double lambda);

  double alpha() const { return alpha_; }
  const std::map<Key, Complex>& raw_terms() const { return terms_; }

  /// Terms with phases folded into coefficients, one per (m, k), sorted.
  std::vector<Term> terms() const;
  /// Evaluated coefficient of u^m v^k.
  Complex coefficient(long m, long k) const;
  /// Largest |m| + |k| over nonzero terms.
  long degree() const;

  void add_term(long m, long k, long phase, Complex c);

  NCPolynomial& operator+=(const NCPolynomial& other);
  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b);
  friend NCPolynomial operator*(Complex c, NCPolynomial a);

  /// Entrywise comparison of evaluated coefficients.
  double distance(const NCPolynomial& other) const;

 private:
  double alpha_;
  std::map<Key, Complex> terms_;
};

/// q = exp(2 pi i alpha * phase).
Complex rotation_phase(double alpha, long phase);

NCPolynomial nc_multiply(const NCPolynomial& a, const NCPolynomial& b);
NCPolynomial nc_adjoint(const NCPolynomial& a);
NCPolynomial nc_power(const NCPolynomial& a, int k);
/// Coefficient of the identity monomial u^0 v^0.
Complex canonical_trace(const NCPolynomial& a);
bool nc_is_selfadjoint(const NCPolynomial& a, double tol = 1e-12);

}  // namespace folner
