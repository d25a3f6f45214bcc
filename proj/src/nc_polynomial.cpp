#include "folner/nc_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace folner {

Complex rotation_phase(double alpha, long phase) {
  // reduce alpha * phase mod 1 before exponentiating
  const double x = alpha * static_cast<double>(phase);
  return std::polar(1.0, kTwoPi * (x - std::floor(x)));
}

NCPolynomial NCPolynomial::constant(double alpha, Complex c) { return monomial(alpha, 0, 0, c); }

NCPolynomial NCPolynomial::monomial(double alpha, long m, long k, Complex c) {
  NCPolynomial p(alpha);
  p.add_term(m, k, 0, c);
  return p;
}

NCPolynomial NCPolynomial::almost_mathieu(double alpha, double lambda) {
  NCPolynomial h(alpha);
  h.add_term(1, 0, 0, 1.0);
  h.add_term(-1, 0, 0, 1.0);
  h.add_term(0, 1, 0, lambda);
  h.add_term(0, -1, 0, lambda);
  return h;
}

void NCPolynomial::add_term(long m, long k, long phase, Complex c) {
  if (c == Complex{}) return;
  const Key key{m, k, phase};
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

std::vector<NCPolynomial::Term> NCPolynomial::terms() const {
  std::vector<Term> out;
  for (const auto& [key, c] : terms_) {
    const Complex value = c * rotation_phase(alpha_, key.phase);
    if (!out.empty() && out.back().m == key.m && out.back().k == key.k) {
      out.back().coeff += value;
    } else {
      out.push_back(Term{key.m, key.k, value});
    }
  }
  return out;
}

Complex NCPolynomial::coefficient(long m, long k) const {
  Complex sum{};
  for (auto it = terms_.lower_bound(Key{m, k, std::numeric_limits<long>::min()});
       it != terms_.end() && it->first.m == m && it->first.k == k; ++it) {
    sum += it->second * rotation_phase(alpha_, it->first.phase);
  }
  return sum;
}

long NCPolynomial::degree() const {
  long d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, std::abs(key.m) + std::abs(key.k));
  return d;
}

namespace {

void require_same_alpha(const NCPolynomial& a, const NCPolynomial& b) {
  if (a.alpha() != b.alpha()) {
    throw SpecError("rotation algebra frequency mismatch: " + std::to_string(a.alpha()) + " vs " +
                    std::to_string(b.alpha()));
  }
}

}  // namespace

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& other) {
  require_same_alpha(*this, other);
  for (const auto& [key, c] : other.terms_) add_term(key.m, key.k, key.phase, c);
  return *this;
}

NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a += Complex{-1.0, 0.0} * b; }

NCPolynomial operator*(Complex c, NCPolynomial a) {
  NCPolynomial out(a.alpha());
  for (const auto& [key, x] : a.raw_terms()) out.add_term(key.m, key.k, key.phase, c * x);
  return out;
}

double NCPolynomial::distance(const NCPolynomial& other) const {
  require_same_alpha(*this, other);
  const NCPolynomial diff = *this - other;
  double worst = 0.0;
  for (const auto& t : diff.terms()) worst = std::max(worst, std::abs(t.coeff));
  return worst;
}

// (u^a v^b)(u^c v^d) = q^{bc} u^{a+c} v^{b+d}, from v^b u^c = q^{bc} u^c v^b.
NCPolynomial nc_multiply(const NCPolynomial& a, const NCPolynomial& b) {
  require_same_alpha(a, b);
  NCPolynomial out(a.alpha());
  for (const auto& [ka, ca] : a.raw_terms()) {
    for (const auto& [kb, cb] : b.raw_terms()) {
      out.add_term(ka.m + kb.m, ka.k + kb.k, ka.phase + kb.phase + ka.k * kb.m, ca * cb);
    }
  }
  return out;
}

// (c q^s u^m v^k)* = conj(c) q^{-s} v^{-k} u^{-m} = conj(c) q^{mk - s} u^{-m} v^{-k}.
NCPolynomial nc_adjoint(const NCPolynomial& a) {
  NCPolynomial out(a.alpha());
  for (const auto& [key, c] : a.raw_terms()) {
    out.add_term(-key.m, -key.k, key.m * key.k - key.phase, std::conj(c));
  }
  return out;
}

NCPolynomial nc_power(const NCPolynomial& a, int k) {
  if (k < 0) throw SpecError("nc_power: negative exponent");
  NCPolynomial out = NCPolynomial::constant(a.alpha(), 1.0);
  for (int i = 0; i < k; ++i) out = nc_multiply(out, a);
  return out;
}

Complex canonical_trace(const NCPolynomial& a) { return a.coefficient(0, 0); }

bool nc_is_selfadjoint(const NCPolynomial& a, double tol) { return a.distance(nc_adjoint(a)) <= tol; }

}  // namespace folner
