#include <random>
#include <set>

#include "rsvp/design_space.hpp"
#include "test_support.hpp"

using namespace rsvp;
using enum OptionId;

namespace {

// a..h quantitative, f a series, img an image column.
RunTable mixed_table() {
  return load_csv(
      "a,b,c,d,e,g,h,q,f,img\n"
      "1,2,3,4,5,6,7,8,\"[1,2]\",x.png\n"
      "2,3,4,5,6,7,8,9,\"[3,4]\",y.png\n");
}

std::set<OptionId> ids(const std::vector<ApplicableOption>& v) {
  std::set<OptionId> out;
  for (const auto& o : v) out.insert(o.id);
  return out;
}

// Oracle: each option's capability predicate written out from the design-space table.
bool oracle_applicable(OptionId id, std::size_t spatial, bool has1d, bool has2d) {
  switch (id) {
    case SP:
    case wDCP:
    case Hist:
    case PSc:
    case PC: return spatial >= 1;
    case SPLOM:
    case rSPLOM: return spatial >= 3;
    case Line1D:
    case Box1D:
    case CHist1D: return has1d;
    case Grid2D:
    case Jux2D:
    case Sup2D: return has2d;
  }
  return false;
}

}  // namespace

TEST_CASE("the design space is closed and shaped as published") {
  int mdmv = 0, c1 = 0, c2 = 0;
  for (const auto& o : all_options()) {
    switch (o.category) {
      case Category::MDMV: ++mdmv; break;
      case Category::Complex1D: ++c1; break;
      case Category::Complex2D: ++c2; break;
    }
    CHECK(o.has_smd == (o.category == Category::MDMV && o.id != Hist));
    CHECK(parse_option(to_string(o.id)) == o.id);
  }
  CHECK(mdmv == 7);
  CHECK(c1 == 3);
  CHECK(c2 == 3);

  for (auto id : {SP, SPLOM, rSPLOM, PSc}) CHECK(option_info(id).mark_class == MarkClass::Point0D);
  for (auto id : {PC, wDCP}) CHECK(option_info(id).mark_class == MarkClass::Line1D);
  CHECK(option_info(Hist).mark_class == MarkClass::Area2D);
  for (auto id : {Line1D, Box1D, CHist1D, Grid2D, Jux2D, Sup2D}) CHECK(option_info(id).mark_class == MarkClass::ObjectMark);

  CHECK(option_info(SP).spatial_min == 2);
  CHECK(option_info(SP).spatial_max == 2);
  CHECK(option_info(wDCP).spatial_max == 2);
  CHECK(option_info(SPLOM).spatial_min == 3);
  CHECK(option_info(rSPLOM).spatial_min == 3);
  CHECK(option_info(PC).spatial_min == 1);
  CHECK(option_info(PSc).spatial_min == 1);
  CHECK(option_info(Hist).spatial_min == 1);
  CHECK(option_info(Hist).spatial_max == 1);
  CHECK_RSVP_ERROR(parse_option("Pie"), ErrorCode::InvalidArgument);
}

TEST_CASE("applicable_options examples") {
  const auto t = mixed_table();

  EncodingState one;
  one.s1 = {"a"};
  const auto got = applicable_options(one, t);
  CHECK(ids(got) == std::set<OptionId>{SP, wDCP, PSc, PC, Hist});
  for (const auto& o : got) CHECK(o.duplicated_axes == (o.id == SP || o.id == wDCP));

  EncodingState objects_only;
  objects_only.object = {"f"};
  CHECK(ids(applicable_options(objects_only, t)) == std::set<OptionId>{Line1D, Box1D, CHist1D});

  EncodingState three;
  three.s1 = {"a", "b", "c"};
  three.object = {"img"};
  std::set<OptionId> expected;
  for (const auto& o : all_options())
    if (oracle_applicable(o.id, 3, false, true)) expected.insert(o.id);
  CHECK(ids(applicable_options(three, t)) == expected);
  CHECK(expected.size() == 10);

  CHECK(applicable_options(EncodingState{}, t).empty());
}

TEST_CASE("applicable_options matches the predicate oracle on random encodings") {
  const auto t = mixed_table();
  const std::vector<std::string> quant = {"a", "b", "c", "d", "e", "g", "h", "q"};
  std::mt19937 rng(5);
  std::set<OptionId> seen;
  for (int trial = 0; trial < 300; ++trial) {
    auto pool = quant;
    std::shuffle(pool.begin(), pool.end(), rng);
    EncodingState enc;
    const auto n1 = rng() % 4, n2 = rng() % 3;
    enc.s1.assign(pool.begin(), pool.begin() + n1);
    enc.s2.assign(pool.begin() + n1, pool.begin() + n1 + n2);
    if (rng() % 2) enc.color = {pool[7]};
    if (rng() % 2) enc.object.push_back("f");
    if (rng() % 2) enc.object.push_back("img");

    const auto got = ids(applicable_options(enc, t));
    std::set<OptionId> expected;
    for (const auto& o : all_options())
      if (oracle_applicable(o.id, n1 + n2, object_1d(enc, t).has_value(), object_2d(enc, t).has_value()))
        expected.insert(o.id);
    CHECK(got == expected);
    seen.insert(got.begin(), got.end());

    // Monotone in the object field.
    auto more = enc;
    if (std::find(more.object.begin(), more.object.end(), "f") == more.object.end()) more.object.push_back("f");
    const auto grown = ids(applicable_options(more, t));
    for (auto id : got)
      if (is_mdmv(id)) CHECK(grown.count(id) == 1);
  }
  CHECK(seen.size() == kOptionCount);  // closed world: the union is the whole space
}

TEST_CASE("encoding validation") {
  const auto t = mixed_table();
  EncodingState e;
  e.s1 = {"f"};
  CHECK_RSVP_ERROR(validate(e, t), ErrorCode::InvalidEncoding);
  e = {};
  e.s1 = {"a"};
  e.s2 = {"a"};
  CHECK_RSVP_ERROR(validate(e, t), ErrorCode::InvalidEncoding);
  e = {};
  e.s1 = {"a", "a"};
  CHECK_RSVP_ERROR(validate(e, t), ErrorCode::InvalidEncoding);
  e = {};
  e.color = {"a", "b", "c", "d", "e"};
  CHECK_RSVP_ERROR(validate(e, t), ErrorCode::InvalidEncoding);
  e = {};
  e.object = {"a"};
  CHECK_RSVP_ERROR(validate(e, t), ErrorCode::InvalidEncoding);
  e = {};
  e.s1 = {"zzz"};
  CHECK_RSVP_ERROR(validate(e, t), ErrorCode::UnknownDimension);

  // A dimension may sit in a spatial field and a channel field at once.
  e = {};
  e.s1 = {"a", "b"};
  e.color = {"a"};
  CHECK_NOTHROW(validate(e, t));
  CHECK(e.field_of("a") == Field::S1);
  CHECK_FALSE(e.field_of("q").has_value());

  std::vector<std::string> sixteen;
  for (int i = 0; i < 16; ++i) sixteen.push_back("x" + std::to_string(i));
  const auto wide = testing::numeric_table(sixteen, 2);
  e = {};
  e.s1 = sixteen;
  CHECK_RSVP_ERROR(validate(e, wide), ErrorCode::InvalidEncoding);
  e.s1.pop_back();
  CHECK_NOTHROW(validate(e, wide));
}
