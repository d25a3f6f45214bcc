#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "folner/linalg.hpp"
#include "folner/spectral.hpp"
#include "support.hpp"

using namespace folner;
using folner::testing::Rng;

namespace {

ProjectionSpec n0_window(long n) { return ProjectionSpec::window(Lattice::n0(), 0, n); }
OperatorSpec tridiagonal() { return toeplitz_op(ToeplitzData{{{-1, 1.0}, {1, 1.0}}}, true); }

}  // namespace

TEST_CASE("eigenvalues_hermitian") {
  SUBCASE("diagonal") {
    DenseMatrix m = DenseMatrix::Zero(3, 3);
    m.diagonal() << 3, 1, 2;
    const auto ev = eigenvalues_hermitian(m);
    CHECK(ev == std::vector<double>{1, 2, 3});
  }
  SUBCASE("swap") {
    DenseMatrix m(2, 2);
    m << 0, 1, 1, 0;
    const auto ev = eigenvalues_hermitian(m);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("tridiagonal matches 2 cos(k pi/(n+2))") {
    for (long n : {0L, 1L, 10L, 99L, 300L}) {
      const auto ev = eigenvalues_hermitian(build_toeplitz_section(ToeplitzData{{{-1, 1.0}, {1, 1.0}}}, n));
      const auto expect = folner::testing::chebyshev_spectrum(n + 1);
      REQUIRE(ev.size() == expect.size());
      for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] - expect[i]) <= 1e-9);
    }
  }
  SUBCASE("complex Hermitian against Eigen's solver") {
    Rng rng(8);
    for (int t = 0; t < 10; ++t) {
      const DenseMatrix m = rng.hermitian(25);
      const auto ev = eigenvalues_hermitian(m);
      const auto expect = folner::testing::oracle_eigenvalues(m);
      for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] - expect[i]) <= 1e-12);
    }
  }
  SUBCASE("rejects non-Hermitian input") {
    DenseMatrix m(2, 2);
    m << 0, 1, 0, 0;
    CHECK_THROWS_AS(eigenvalues_hermitian(m), SpecError);
    DenseMatrix tiny(2, 2);
    tiny << 0, 1, 1.0 + 1e-12, 0;
    CHECK_NOTHROW(eigenvalues_hermitian(tiny));
  }
}

TEST_CASE("empirical_measure") {
  SUBCASE("zero operator") {
    const auto m = empirical_measure(dense_op(DenseMatrix::Zero(4, 4)), n0_window(3));
    CHECK(m.dim() == 4);
    for (double a : m.atoms()) CHECK(a == 0.0);
  }
  SUBCASE("2 cos(theta), n = 2") {
    const auto m = empirical_measure(tridiagonal(), n0_window(2));
    REQUIRE(m.dim() == 3);
    CHECK(m.atoms()[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(m.atoms()[1]) <= 1e-12);
    CHECK(m.atoms()[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(m.weight() == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("identity") {
    const auto m = empirical_measure(identity_op(Lattice::z()), ProjectionSpec::window(Lattice::z(), -4, 4));
    for (double a : m.atoms()) CHECK(a == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("non-Hermitian compression") {
    CHECK_THROWS_AS(empirical_measure(shift_op(), n0_window(3)), SpecError);
  }
  SUBCASE("mass and support") {
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
      const DenseMatrix a = rng.hermitian(rng.integer(1, 30));
      const auto m = empirical_measure(dense_op(a), n0_window(a.rows() - 1));
      const double bound = folner::testing::oracle_op_norm(a) + 1e-10;
      CHECK(m.weight() * static_cast<double>(m.dim()) == doctest::Approx(1.0));
      CHECK(m.cdf(m.max()) == 1.0);
      CHECK(m.cdf(m.min() - 1e-9) == 0.0);
      CHECK(std::abs(m.min()) <= bound);
      CHECK(std::abs(m.max()) <= bound);
    }
  }
}

TEST_CASE("counting") {
  SUBCASE("point mass") {
    const EmpiricalMeasure m({0, 0, 0, 0});
    const auto c = counting(m, -1, 1);
    CHECK(c.count == 4);
    CHECK(c.fraction == 1.0);
  }
  SUBCASE("half-open interval") {
    const EmpiricalMeasure m({-1, 0, 1});
    const auto c = counting(m, 0, 1);
    CHECK(c.count == 1);
    CHECK(c.fraction == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("tridiagonal n = 99 on [0, 2)") {
    const auto m = empirical_measure(tridiagonal(), n0_window(99));
    // 2 cos(k pi/101) >= 0 iff k <= 50; the k = 50 value is well clear of 0
    std::size_t expect = 0;
    for (long k = 1; k <= 100; ++k) {
      const double x = 2.0 * std::cos(kPi * k / 101.0);
      if (x >= 0.0 && x < 2.0) ++expect;
    }
    CHECK(expect == 50);
    CHECK(counting(m, 0.0, 2.0).count == expect);
  }
  SUBCASE("a partition sums to d") {
    const auto m = empirical_measure(tridiagonal(), n0_window(40));
    std::size_t total = 0;
    for (double lo = -2.5; lo < 2.5; lo += 0.25) total += counting(m, lo, lo + 0.25).count;
    CHECK(total == 41);
  }
}

TEST_CASE("integrate") {
  SUBCASE("delta_1, x^2") {
    CHECK(integrate(EmpiricalMeasure({1, 1, 1}), TestFunction::monomial(2)) == 1.0);
  }
  SUBCASE("tridiagonal section, x^2 = 2n/(n+1)") {
    for (long n : {1L, 5L, 63L}) {
      const auto m = empirical_measure(tridiagonal(), n0_window(n));
      CHECK(integrate(m, TestFunction::monomial(2)) == doctest::Approx(2.0 * n / (n + 1.0)).epsilon(1e-13));
    }
  }
  SUBCASE("pushforward of 2 cos(theta), x^2 = 2") {
    const auto ref = reference_pushforward(ToeplitzData{{{-1, 1.0}, {1, 1.0}}});
    CHECK(std::abs(integrate(ref, TestFunction::monomial(2)) - 2.0) <= 1e-9);
    CHECK(std::abs(integrate(ref, TestFunction::monomial(4)) - 6.0) <= 1e-9);
    CHECK(std::abs(integrate(ref, TestFunction::monomial(1))) <= 1e-12);
  }
  SUBCASE("moments-only reference") {
    const auto ref = ReferenceMeasure::from_moments({1.0, 0.0, 2.0});
    CHECK(integrate(ref, TestFunction::polynomial({1.0, 3.0, 0.5})) == doctest::Approx(2.0));
    CHECK_THROWS_AS(integrate(ref, TestFunction::monomial(3)), SpecError);
    CHECK_THROWS_AS(integrate(ref, TestFunction::hat(0, 1)), SpecError);
    CHECK_THROWS_AS(ReferenceMeasure::from_moments({0.5}), SpecError);
  }
  SUBCASE("hat functions") {
    const auto h = TestFunction::hat(1.0, 0.5);
    CHECK(h(1.0) == 1.0);
    CHECK(h(1.25) == doctest::Approx(0.5));
    CHECK(h(0.5) == 0.0);
    CHECK(h(2.0) == 0.0);
    CHECK(h.name() == "hat(1,0.5)");
    CHECK(TestFunction::monomial(3).name() == "x^3");
  }
}

TEST_CASE("reference_pushforward") {
  SUBCASE("constant symbol is a step at the constant") {
    const auto ref = reference_pushforward(ToeplitzData{{{0, 5.0}}}, 256);
    CHECK(ref.cdf(4.999) == 0.0);
    CHECK(ref.cdf(5.0) == 1.0);
  }
  SUBCASE("arcsine law") {
    const auto ref = reference_pushforward(ToeplitzData{{{-1, 1.0}, {1, 1.0}}});
    CHECK(std::abs(ref.cdf(0.0) - 0.5) <= 1e-4);
    CHECK(std::abs(ref.cdf(1.0) - 2.0 / 3.0) <= 1e-4);
    for (double x : {-1.9, -1.2, -0.3, 0.7, 1.5, 1.99})
      CHECK(std::abs(ref.cdf(x) - (1.0 - std::acos(x / 2.0) / kPi)) <= 1e-4);
  }
  SUBCASE("complex symbol rejected") {
    CHECK_THROWS_AS(reference_pushforward(ToeplitzData{{{1, 1.0}}}), SpecError);
  }
  SUBCASE("from_cdf validation") {
    CHECK_THROWS_AS(ReferenceMeasure::from_cdf({0, 1}, {0.5, 0.4}), SpecError);
    CHECK_THROWS_AS(ReferenceMeasure::from_cdf({1, 0}, {0.5, 1.0}), SpecError);
    CHECK_THROWS_AS(ReferenceMeasure::from_cdf({0, 1}, {0.5, 0.9}), SpecError);
    CHECK_NOTHROW(ReferenceMeasure::from_cdf({0, 1}, {0.5, 1.0}));
  }
}

TEST_CASE("kolmogorov_distance") {
  const EmpiricalMeasure zero({0.0}), one({1.0});
  CHECK(kolmogorov_distance(zero, zero) == 0.0);
  CHECK(kolmogorov_distance(zero, one) == 1.0);
  CHECK(kolmogorov_distance(EmpiricalMeasure({0, 1}), EmpiricalMeasure({0, 2})) == 0.5);

  const auto ref = reference_pushforward(ToeplitzData{{{-1, 1.0}, {1, 1.0}}});
  CHECK(kolmogorov_distance(ref, ref) == 0.0);
  const auto m = empirical_measure(tridiagonal(), n0_window(1024));
  const double d = kolmogorov_distance(m, ref);
  CHECK(d <= 0.01);
  CHECK(kolmogorov_distance(ref, m) == d);

  // closed-form oracle: eigenvalues 2 cos(k pi/(d+1)) against the arcsine CDF
  const auto cheb = folner::testing::chebyshev_spectrum(1025);
  double oracle = 0.0;
  for (std::size_t i = 0; i < cheb.size(); ++i) {
    const double f = 1.0 - std::acos(std::clamp(cheb[i] / 2.0, -1.0, 1.0)) / kPi;
    oracle = std::max({oracle, std::abs(f - static_cast<double>(i + 1) / 1025.0), std::abs(f - static_cast<double>(i) / 1025.0)});
  }
  CHECK(std::abs(d - oracle) <= 1e-4);
}

TEST_CASE("weak convergence surrogate for short symbols") {
  Rng rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    ToeplitzData g;
    g.coefficients[0] = rng.uniform();
    const long harmonics = rng.integer(1, 5);
    for (long k = 1; k <= harmonics; ++k) {
      const Complex c = rng.complex() / static_cast<double>(k);
      g.coefficients[k] = c;
      g.coefficients[-k] = std::conj(c);
    }
    const auto ref = reference_pushforward(g);
    const auto t = toeplitz_op(g, true);
    double prev = kolmogorov_distance(empirical_measure(t, n0_window(32)), ref);
    for (long n : {64L, 128L, 256L, 512L}) {
      const double d = kolmogorov_distance(empirical_measure(t, n0_window(n)), ref);
      CHECK(d <= prev + 0.005);
      prev = d;
    }
  }
}
