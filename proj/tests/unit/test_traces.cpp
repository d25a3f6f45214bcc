#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "folner/nc_polynomial.hpp"
#include "folner/traces.hpp"
#include "support.hpp"

using namespace folner;
using folner::testing::golden_alpha;
using folner::testing::Rng;

namespace {

ProjectionSpec z_window(long n) { return ProjectionSpec::window(Lattice::z(), -n, n); }

NCPolynomial random_nc(Rng& rng, double alpha) {
  NCPolynomial p(alpha);
  const long terms = rng.integer(1, 5);
  for (long i = 0; i < terms; ++i) p.add_term(rng.integer(-2, 2), rng.integer(-2, 2), 0, rng.complex());
  return p;
}

}  // namespace

TEST_CASE("trace_estimate") {
  SUBCASE("identity") {
    CHECK(trace_estimate(identity_op(Lattice::z()), z_window(7)) == Complex(1.0));
    CHECK(trace_estimate(identity_op(Lattice::n0()), ProjectionSpec::index_set(Lattice::n0(), {2, 9})) == Complex(1.0));
  }
  SUBCASE("Toeplitz gives a_0 for every n") {
    const ToeplitzData g{{{-2, 0.5}, {0, Complex(1.5, -2.0)}, {3, 4.0}}};
    for (long n = 1; n < 30; ++n) CHECK(trace_estimate(toeplitz_op(g), ProjectionSpec::window(Lattice::n0(), 0, n)) == g.coefficient(0));
  }
  SUBCASE("modulation v, alpha = sqrt 2 - 1, N = 1000") {
    const double alpha = std::sqrt(2.0) - 1.0;
    const auto v = band_op({{0, DiagonalFn::exponential(1.0, alpha, 0.0)}});
    const double d = 2001.0;
    const double closed = std::abs(std::sin(kPi * alpha * d) / (d * std::sin(kPi * alpha)));
    const double est = std::abs(trace_estimate(v, z_window(1000)));
    CHECK(est == doctest::Approx(closed).epsilon(1e-9));
    CHECK(est <= 0.01);
  }
  SUBCASE("linear in the operator") {
    Rng rng(41);
    const auto w = z_window(25);
    for (int t = 0; t < 20; ++t) {
      const auto a = represent_nc(random_nc(rng, golden_alpha()));
      const auto b = represent_nc(random_nc(rng, golden_alpha()));
      const Complex c = rng.complex();
      const Complex lhs = trace_estimate(a + c * b, w);
      CHECK(std::abs(lhs - trace_estimate(a, w) - c * trace_estimate(b, w)) <= 1e-12);
    }
  }
}

TEST_CASE("nc_multiply and nc_adjoint") {
  const double alpha = golden_alpha();
  const auto u = NCPolynomial::u(alpha), v = NCPolynomial::v(alpha);
  SUBCASE("v u = q u v") {
    const auto vu = nc_multiply(v, u);
    CHECK(std::abs(vu.coefficient(1, 1) - rotation_phase(alpha, 1)) <= 1e-15);
    CHECK(nc_multiply(u, v).coefficient(1, 1) == Complex(1.0));
  }
  SUBCASE("u u^-1 = 1") {
    const auto one = nc_multiply(u, NCPolynomial::monomial(alpha, -1, 0));
    CHECK(one.terms().size() == 1);
    CHECK(canonical_trace(one) == Complex(1.0));
    CHECK(nc_multiply(u, nc_adjoint(u)).distance(NCPolynomial::constant(alpha, 1.0)) == 0.0);
    CHECK(nc_multiply(v, nc_adjoint(v)).distance(NCPolynomial::constant(alpha, 1.0)) == 0.0);
  }
  SUBCASE("h^2 has trace 2 + 2 lambda^2") {
    for (double lambda : {0.0, 0.5, 1.0, 2.5}) {
      const auto h = NCPolynomial::almost_mathieu(alpha, lambda);
      const auto h2 = nc_multiply(h, h);
      CHECK(std::abs(canonical_trace(h2) - Complex(2.0 + 2.0 * lambda * lambda)) <= 1e-14);
      // 4 x 4 products before cancellation; u^2, u^-2, v^2, v^-2 survive with coefficient 1 or lambda^2
      CHECK(h2.raw_terms().size() <= 16);
      CHECK(std::abs(h2.coefficient(2, 0) - 1.0) <= 1e-15);
      CHECK(std::abs(h2.coefficient(0, -2) - lambda * lambda) <= 1e-15);
    }
    CHECK(std::abs(canonical_trace(nc_power(NCPolynomial::almost_mathieu(alpha, 0.5), 2)) - 2.5) <= 1e-15);
  }
  SUBCASE("alpha mismatch") {
    CHECK_THROWS_AS(nc_multiply(u, NCPolynomial::u(0.3)), SpecError);
    CHECK_THROWS_AS(u + NCPolynomial::u(0.3), SpecError);
  }
}

TEST_CASE("canonical_trace") {
  const double alpha = golden_alpha();
  CHECK(canonical_trace(NCPolynomial::constant(alpha, 1.0)) == Complex(1.0));
  for (long m = -2; m <= 2; ++m)
    for (long k = -2; k <= 2; ++k)
      if (m != 0 || k != 0) CHECK(canonical_trace(NCPolynomial::monomial(alpha, m, k, 3.0)) == Complex(0.0));
}

TEST_CASE("adjoint sign convention") {
  // The +mk phase is the one compatible with (ab)* = b* a*; the -mk variant breaks it.
  const double alpha = golden_alpha();
  auto flipped = [](const NCPolynomial& a) {
    NCPolynomial out(a.alpha());
    for (const auto& [key, c] : a.raw_terms()) out.add_term(-key.m, -key.k, -key.m * key.k - key.phase, std::conj(c));
    return out;
  };
  Rng rng(97);
  int flipped_failures = 0;
  for (int t = 0; t < 500; ++t) {
    const auto a = random_nc(rng, alpha), b = random_nc(rng, alpha);
    const auto ab = nc_multiply(a, b);
    CHECK(nc_adjoint(ab).distance(nc_multiply(nc_adjoint(b), nc_adjoint(a))) <= 1e-12);
    if (flipped(ab).distance(nc_multiply(flipped(b), flipped(a))) > 1e-6) ++flipped_failures;
  }
  CHECK(flipped_failures > 400);
}

TEST_CASE("represent_nc") {
  const double alpha = golden_alpha();
  SUBCASE("u is the bilateral shift with zero diagonal") {
    const auto u = represent_nc(NCPolynomial::u(alpha));
    CHECK(trace_estimate(u, z_window(10)) == Complex(0.0));
    const DenseMatrix m = compress(u, z_window(3));
    for (long i = 0; i < 7; ++i)
      for (long j = 0; j < 7; ++j) CHECK(m(i, j) == Complex(i == j + 1 ? 1.0 : 0.0));
  }
  SUBCASE("v at N = 500") {
    const auto v = represent_nc(NCPolynomial::v(alpha));
    const double est = std::abs(trace_estimate(v, z_window(500)));
    CHECK(est <= 0.002);
    CHECK(est == doctest::Approx(std::abs(std::sin(kPi * alpha * 1001.0) / (1001.0 * std::sin(kPi * alpha)))).epsilon(1e-9));
  }
  SUBCASE("h^2 at N = 2000") {
    const auto h2 = nc_power(NCPolynomial::almost_mathieu(alpha, 0.5), 2);
    const Complex est = trace_estimate(represent_nc(h2), z_window(2000));
    CHECK(std::abs(est - canonical_trace(h2)) <= 0.01);
  }
  SUBCASE("monomials are faithful entrywise") {
    Rng rng(5);
    const long n = 12;
    for (int t = 0; t < 40; ++t) {
      const long m = rng.integer(-3, 3), k = rng.integer(-3, 3);
      const Complex c = rng.complex();
      const double phi = rng.uniform(0, 1);
      const DenseMatrix mat = compress(represent_nc(NCPolynomial::monomial(alpha, m, k, c), phi), z_window(n));
      // u^m v^k e_j = exp(2 pi i k (alpha j + phi)) e_{j+m}
      for (long j = -n; j <= n; ++j) {
        const Complex value = c * std::polar(1.0, kTwoPi * static_cast<double>(k) * (alpha * static_cast<double>(j) + phi));
        for (long i = -n; i <= n; ++i) {
          const Complex expect = (i == j + m) ? value : Complex{};
          CHECK(std::abs(mat(i + n, j + n) - expect) <= 1e-12);
        }
      }
    }
  }
  SUBCASE("relation v u = q u v holds on windows") {
    const auto u = represent_nc(NCPolynomial::u(alpha));
    const auto v = represent_nc(NCPolynomial::v(alpha));
    const DenseMatrix lhs = compress(v * u, z_window(8));
    const DenseMatrix rhs = rotation_phase(alpha, 1) * compress(u * v, z_window(8));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("trace_convergence_report") {
  const double alpha = golden_alpha();
  SUBCASE("identity errors vanish") {
    const std::vector<long> ns{1, 2, 4};
    const std::vector<LabeledOperator> ops{{"id", identity_op(Lattice::z())}};
    const auto rep = trace_convergence_report(ops, finite_section_sequence(Lattice::z(), ns), {{"id", 1.0}});
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) CHECK(*row.error == 0.0);
  }
  SUBCASE("T_{2 cos} has zero diagonal") {
    const std::vector<long> ns{3, 9, 27};
    const std::vector<LabeledOperator> ops{{"t", toeplitz_op(ToeplitzData{{{-1, 1.0}, {1, 1.0}}}, true)}};
    const auto rep = trace_convergence_report(ops, finite_section_sequence(Lattice::n0(), ns), {{"t", 0.0}});
    for (const auto& row : rep.rows) CHECK(*row.error == 0.0);
  }
  SUBCASE("h^2 errors decrease within jitter over dyadic N") {
    const auto h2 = nc_power(NCPolynomial::almost_mathieu(alpha, 0.5), 2);
    const std::vector<long> ns{250, 500, 1000, 2000};
    const std::vector<LabeledOperator> ops{{"h2", represent_nc(h2)}};
    const auto rep = trace_convergence_report(ops, finite_section_sequence(Lattice::z(), ns), {{"h2", canonical_trace(h2)}});
    for (std::size_t i = 1; i < rep.rows.size(); ++i) CHECK(*rep.rows[i].error <= 1.1 * *rep.rows[i - 1].error);
    for (const auto& row : rep.rows) {
      // |estimate| is bounded by the norm of h^2 <= (2 + 2 lambda)^2
      CHECK(std::abs(row.estimate) <= 9.0);
      CHECK_FALSE(row.reference == std::nullopt);
    }
  }
  SUBCASE("rows without a reference carry no error") {
    const std::vector<long> ns{1};
    const std::vector<LabeledOperator> ops{{"s", shift_op()}};
    const auto rep = trace_convergence_report(ops, finite_section_sequence(Lattice::n0(), ns));
    CHECK_FALSE(rep.rows[0].error.has_value());
  }
}
