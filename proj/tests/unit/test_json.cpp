#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "folner/json_io.hpp"
#include "folner/report.hpp"
#include "folner/traces.hpp"
#include "support.hpp"

using namespace folner;
namespace fs = std::filesystem;

namespace {

const fs::path kData = FOLNER_TEST_DATA;

std::vector<fs::path> files_in(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// Parses a corpus file the way `folner-lab validate` does.
void parse_any(const Json& j) {
  if (is_projection_json(j)) {
    projection_from_json(j);
  } else {
    const auto op = operator_from_json(j);
    compress_sparse(op, section_window(op.lattice(), 1));
  }
}

}  // namespace

TEST_CASE("complex values") {
  CHECK(complex_from_json(Json::parse("[1.5, -2]")) == Complex(1.5, -2));
  CHECK(complex_from_json(Json::parse("3")) == Complex(3, 0));
  CHECK(complex_to_json(Complex(0.25, 1)).dump() == "[0.25,1.0]");
  CHECK_THROWS_AS(complex_from_json(Json::parse("[1]")), SpecError);
  CHECK_THROWS_AS(complex_from_json(Json::parse("\"x\"")), SpecError);
}

TEST_CASE("operator round trip preserves compressions") {
  folner::testing::Rng rng(77);
  const std::vector<OperatorSpec> ops{
      dense_op(rng.dense(3)),
      toeplitz_op(ToeplitzData{{{-1, Complex(0, 1)}, {2, 3.0}}}),
      shift_op({1.0, Complex(0, 2)}),
      band_op({{0, DiagonalFn::cosine(2.0, 0.3, 0.1)}, {1, DiagonalFn::periodic({1.0, -1.0})}}),
      almost_mathieu_op(0.5, folner::testing::golden_alpha(), 0.2),
      kron_op(shift_op(), toeplitz_op(ToeplitzData{{{0, 2.0}}})),
      shift_op() * op_adjoint(shift_op()) + Complex(0.5) * identity_op(Lattice::n0()),
  };
  for (const auto& op : ops) {
    const Json j = operator_to_json(op);
    const auto back = operator_from_json(Json::parse(j.dump()));
    CHECK(back.kind_name() == op.kind_name());
    const auto w = section_window(op.lattice(), 4);
    CHECK((compress(back, w) - compress(op, w)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("projection round trip") {
  const std::vector<ProjectionSpec> ps{
      ProjectionSpec::window(Lattice::z(), -3, 5), ProjectionSpec::index_set(Lattice::n0(), {1, 4, 8}),
      kron_proj(ProjectionSpec::window(Lattice::n0(), 0, 2), ProjectionSpec::index_set(Lattice::z(), {-7, 2}))};
  for (const auto& p : ps) {
    const Json j = projection_to_json(p);
    CHECK(is_projection_json(j));
    CHECK(projection_from_json(j) == p);
  }
  CHECK_FALSE(is_projection_json(operator_to_json(kron_op(shift_op(), shift_op()))));
}

TEST_CASE("nc polynomial round trip") {
  const auto h2 = nc_power(NCPolynomial::almost_mathieu(folner::testing::golden_alpha(), 0.5), 2);
  const auto back = nc_from_json(nc_to_json(h2));
  CHECK(back.distance(h2) <= 1e-15);
}

TEST_CASE("shipped corpus") {
  SUBCASE("every valid spec parses") {
    const auto files = files_in(kData / "specs");
    REQUIRE(files.size() >= 10);
    for (const auto& f : files) {
      INFO(f.string());
      CHECK_NOTHROW(parse_any(read_json_file(f.string())));
    }
  }
  SUBCASE("every invalid spec is rejected with SpecError") {
    const auto files = files_in(kData / "invalid");
    REQUIRE(files.size() >= 10);
    for (const auto& f : files) {
      INFO(f.string());
      CHECK_THROWS_AS(parse_any(read_json_file(f.string())), SpecError);
    }
  }
  SUBCASE("h_squared.json is h^2 in normal order") {
    const auto h2 = nc_power(NCPolynomial::almost_mathieu(folner::testing::golden_alpha(), 0.5), 2);
    CHECK(nc_from_json(read_json_file((kData / "specs" / "h_squared.json").string())).distance(h2) <= 1e-15);
  }
  SUBCASE("sampled symbol recovers 2 cos") {
    const auto op = operator_from_json(read_json_file((kData / "specs" / "toeplitz_sampled.json").string()));
    const auto ref = operator_from_json(read_json_file((kData / "specs" / "toeplitz_2cos.json").string()));
    const auto w = section_window(Lattice::n0(), 10);
    CHECK((compress(op, w) - compress(ref, w)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(read_json_file("/nonexistent/spec.json"), SpecError); }
}

TEST_CASE("report formatting") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
  CHECK(format_double(2.0) == "2");

  FolnerReport rep;
  rep.rows.push_back({"b", 3, 4, Schatten::Two, 0.5, 0.5, 1.0});
  rep.rows.push_back({"a", 7, 8, Schatten::Two, 0.25, 0.25, 1.0});
  rep.rows.push_back({"a", 7, 8, Schatten::One, 0.125, 0.125, 1.0});
  sort_rows(rep);
  std::ostringstream os;
  write_csv(os, rep);
  CHECK(os.str() ==
        "label,n,d_n,p,ratio,off_corner,qd_gap\n"
        "a,7,8,1,0.125,0.125,1\n"
        "a,7,8,2,0.25,0.25,1\n"
        "b,3,4,2,0.5,0.5,1\n");
  const Json j = to_json(rep);
  CHECK(j["rows"][0]["p"] == "1");
  CHECK(version_stamp("folner") == std::string("# folner-lab ") + kVersion + " folner");
}
