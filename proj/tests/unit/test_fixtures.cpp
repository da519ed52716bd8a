#include "json.hpp"
#include "rsvp/fixtures.hpp"
#include "test_support.hpp"

using namespace rsvp;

TEST_CASE("fixtures are reproducible and seed dependent") {
  for (auto kind : {FixtureKind::Edge, FixtureKind::PowderLike, FixtureKind::Synthetic}) {
    const auto a = make_fixture({kind, 120, 7, 8});
    const auto b = make_fixture({kind, 120, 7, 8});
    CHECK(a.csv == b.csv);
    CHECK(a.sidecar == b.sidecar);
    CHECK(make_fixture({kind, 120, 8, 8}).csv != a.csv);
    const auto t = apply_sidecar(load_csv(a.csv), a.sidecar);
    CHECK(t.run_count() == 120);
  }
  CHECK(parse_fixture_kind("powder-like") == FixtureKind::PowderLike);
  CHECK_RSVP_ERROR(parse_fixture_kind("mystery"), ErrorCode::InvalidArgument);
}

TEST_CASE("edge fixture places its last run on the optimum") {
  const auto t = load_csv(make_fixture({FixtureKind::Edge, 50, 3}).csv);
  const auto last = static_cast<Eigen::Index>(t.run_count() - 1);
  CHECK(t.quantitative("low")(last) == edge_optimum().low);
  CHECK(t.quantitative("high")(last) == edge_optimum().high);
  CHECK(t.quantitative("sigma")(last) == edge_optimum().sigma);
  const auto& chi2 = t.quantitative("chi2_co");
  CHECK(chi2(last) == chi2.minCoeff());
  CHECK(t.dimension("dtco").dtype == DType::Series1D);
  CHECK(t.dimension("co").dtype == DType::ImageRef2D);
}

TEST_CASE("synthetic fixture shape") {
  const auto fx = make_fixture({FixtureKind::Synthetic, 500, 1, 20});
  const auto t = apply_sidecar(load_csv(fx.csv), fx.sidecar);
  CHECK(t.dimension_count() == 20);
  CHECK(t.dimensions().front().name == "x00");
  CHECK(t.dimension("x00").role == Role::InputControl);
  CHECK(t.dimension("x19").role != Role::InputControl);
}
