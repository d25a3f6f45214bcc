#include <doctest.h>

#include <cmath>
#include <vector>

#include "folner/projection.hpp"
#include "support.hpp"

using namespace folner;

TEST_CASE("finite_section_sequence") {
  SUBCASE("N0 ranks") {
    const std::vector<long> ns{1, 2, 3};
    const auto seq = finite_section_sequence(Lattice::n0(), ns);
    REQUIRE(seq.size() == 3);
    CHECK(seq.projections[0].rank() == 2);
    CHECK(seq.projections[1].rank() == 3);
    CHECK(seq.projections[2].rank() == 4);
    CHECK(seq.proper());
  }
  SUBCASE("Z ranks are 2n + 1") {
    const std::vector<long> ns{1, 2};
    const auto seq = finite_section_sequence(Lattice::z(), ns);
    CHECK(seq.projections[0].rank() == 3);
    CHECK(seq.projections[1].rank() == 5);
    CHECK(seq.projections[1].lo() == -2);
  }
  SUBCASE("nested") {
    const std::vector<long> ns{1, 2, 4, 8, 16};
    for (const auto& lattice : {Lattice::n0(), Lattice::z(), Lattice::product(Lattice::n0(), Lattice::z())}) {
      const auto seq = finite_section_sequence(lattice, ns);
      for (std::size_t i = 0; i + 1 < seq.size(); ++i) CHECK(seq.projections[i + 1].contains(seq.projections[i]));
    }
  }
  SUBCASE("errors") {
    const std::vector<long> empty, unsorted{3, 2}, zero{0, 1};
    CHECK_THROWS_AS(finite_section_sequence(Lattice::n0(), empty), SpecError);
    CHECK_THROWS_AS(finite_section_sequence(Lattice::n0(), unsorted), SpecError);
    CHECK_THROWS_AS(finite_section_sequence(Lattice::n0(), zero), SpecError);
  }
}

TEST_CASE("kron_proj") {
  SUBCASE("rank 2 (x) rank 3") {
    const auto p = ProjectionSpec::window(Lattice::n0(), 0, 1);
    const auto q = ProjectionSpec::window(Lattice::z(), -1, 1);
    const auto pq = kron_proj(p, q);
    CHECK(pq.rank() == 6);
    CHECK(pq.hs_norm() == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
    CHECK(pq.hs_norm() == doctest::Approx(p.hs_norm() * q.hs_norm()).epsilon(1e-15));
  }
  SUBCASE("single sites") {
    const auto p = ProjectionSpec::window(Lattice::n0(), 0, 0);
    CHECK(kron_proj(p, p).rank() == 1);
  }
  SUBCASE("random index sets enumerate row-major") {
    folner::testing::Rng rng(19);
    for (int trial = 0; trial < 25; ++trial) {
      const auto a = rng.subset(-10, 10, 4);
      const auto b = rng.subset(0, 12, 5);
      const auto pq = kron_proj(ProjectionSpec::index_set(Lattice::z(), a), ProjectionSpec::index_set(Lattice::n0(), b));
      std::vector<std::vector<long>> expect;
      for (long x : a)
        for (long y : b) expect.push_back({x, y});
      CHECK(pq.enumerate() == expect);
    }
  }
}

TEST_CASE("projection invariants") {
  folner::testing::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const long lo = rng.integer(-20, 20);
    const auto w = ProjectionSpec::window(Lattice::z(), lo, lo + rng.integer(0, 15));
    CHECK(w.hs_norm() * w.hs_norm() == doctest::Approx(static_cast<double>(w.rank())).epsilon(1e-15));
    CHECK(w.trace_norm() == static_cast<double>(w.rank()));
  }
  CHECK_THROWS_AS(ProjectionSpec::index_set(Lattice::n0(), {}), SpecError);
  CHECK_THROWS_AS(ProjectionSpec::index_set(Lattice::n0(), {2, 1}), SpecError);
  CHECK_THROWS_AS(ProjectionSpec::index_set(Lattice::n0(), {1, 1}), SpecError);
  CHECK_THROWS_AS(ProjectionSpec::index_set(Lattice::n0(), {-1, 1}), SpecError);
  CHECK_THROWS_AS(ProjectionSpec::window(Lattice::n0(), -1, 1), SpecError);
}

TEST_CASE("dilate, union_hull, positions_in") {
  const auto w = ProjectionSpec::window(Lattice::n0(), 1, 3);
  CHECK(dilate(w, 2) == ProjectionSpec::window(Lattice::n0(), 0, 5));
  const auto s = ProjectionSpec::index_set(Lattice::z(), {-4, 0, 7});
  const auto grown = dilate(s, 1);
  CHECK(grown.sites() == std::vector<long>{-5, -4, -3, -1, 0, 1, 6, 7, 8});
  const auto u = union_hull(ProjectionSpec::window(Lattice::z(), 0, 2), ProjectionSpec::window(Lattice::z(), 1, 4));
  CHECK(u == ProjectionSpec::window(Lattice::z(), 0, 4));
  CHECK(positions_in(s, grown) == std::vector<long>{1, 4, 7});
  CHECK_THROWS_AS(positions_in(grown, s), SpecError);
}
