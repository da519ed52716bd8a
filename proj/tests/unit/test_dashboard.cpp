#include <random>
#include <set>

#include "rsvp/dashboard.hpp"
#include "rsvp/json_io.hpp"
#include "test_support.hpp"

using namespace rsvp;
using enum OptionId;

namespace {

const RunTable& table() {
  static const RunTable t = load_csv(
      "a,b,c,d,f,img\n"
      "0,1,2,3,\"[1,2,3]\",r0.png\n"
      "1,2,0,5,\"[2,2,1]\",r1.png\n"
      "2,0,1,4,\"[0,1,5]\",r2.png\n"
      "3,3,3,1,\"[4,4,4]\",r3.png\n");
  return t;
}

EncodingState enc() {
  EncodingState e;
  e.s1 = {"a", "b", "c"};
  e.s2 = {"d"};
  e.object = {"f", "img"};
  return e;
}

CellSpec cell(OptionId o, std::vector<std::string> axes, std::optional<std::string> object = std::nullopt) {
  CellSpec c;
  c.option = o;
  c.axes = std::move(axes);
  c.object = std::move(object);
  return c;
}

std::set<std::string> slider_dims(const DashboardDoc& doc) {
  std::set<std::string> out;
  for (const auto& s : doc.sliders) out.insert(s.dimension);
  return out;
}

std::set<std::string> referenced(const DashboardDoc& doc) {
  std::set<std::string> out;
  for (const auto& v : doc.views)
    for (const auto& d : referenced_dimensions(v, table())) out.insert(d);
  return out;
}

}  // namespace

TEST_CASE("adding views creates one slider per dimension") {
  auto doc = add_view({}, cell(PC, {"a", "b", "c"}), table(), enc());
  CHECK(doc.views.size() == 1);
  CHECK(doc.sliders.size() == 3);
  CHECK(doc.sliders[0].extent == Range{0, 3});
  CHECK(doc.sliders[0].field_color == "S1");

  doc = add_view({}, cell(SP, {"a", "b"}), table(), enc());
  doc = add_view(doc, cell(Hist, {"a"}), table(), enc());
  CHECK(doc.views.size() == 2);
  CHECK(doc.sliders.size() == 2);
  CHECK(doc.views[0].view_id != doc.views[1].view_id);
  CHECK(doc.views[1].rect.y >= doc.views[0].rect.y + doc.views[0].rect.h);

  // Parallel histograms: point scales next to histograms of the same dims.
  DashboardDoc par;
  par = add_view(par, cell(PSc, {"a", "b"}), table(), enc());
  par = add_view(par, cell(Hist, {"a"}), table(), enc());
  par = add_view(par, cell(Hist, {"b"}), table(), enc());
  CHECK(slider_dims(par) == std::set<std::string>{"a", "b"});
}

TEST_CASE("incompatible cells are rejected") {
  CHECK_RSVP_ERROR(add_view({}, cell(PC, {"f"}), table(), enc()), ErrorCode::IncompatibleCell);
  CHECK_RSVP_ERROR(add_view({}, cell(SP, {"a"}), table(), enc()), ErrorCode::IncompatibleCell);
  CHECK_RSVP_ERROR(add_view({}, cell(Grid2D, {}, "f"), table(), enc()), ErrorCode::IncompatibleCell);
  CHECK_RSVP_ERROR(add_view({}, cell(PC, {"zz"}), table(), enc()), ErrorCode::IncompatibleCell);
  auto hist = cell(Hist, {"a"});
  hist.color = "b";
  CHECK_RSVP_ERROR(add_view({}, hist, table(), enc()), ErrorCode::IncompatibleCell);
  CHECK_NOTHROW(add_view({}, cell(Line1D, {}, "f"), table(), enc()));
}

TEST_CASE("move and resize") {
  auto doc = add_view({}, cell(PC, {"a", "b"}), table(), enc());
  const auto id = doc.views[0].view_id;
  CHECK(move_resize(doc, id, doc.views[0].rect) == doc);
  CHECK(move_resize(doc, id, {5, 6, 2, 2}).views[0].rect == Rect{5, 6, 2, 2});
  CHECK_RSVP_ERROR(move_resize(doc, id, {0, 0, 0, 3}), ErrorCode::InvalidRect);
  CHECK_RSVP_ERROR(move_resize(doc, 77, {0, 0, 1, 1}), ErrorCode::UnknownView);
  CHECK_RSVP_ERROR(move_resize(set_mode(doc, Mode::Analyze), id, {0, 0, 1, 1}), ErrorCode::NotEditMode);
}

TEST_CASE("attribute edits") {
  auto doc = add_view({}, cell(wDCP, {"a", "b"}), table(), enc());
  doc = add_view(doc, cell(Hist, {"d"}), table(), enc());
  const auto w = doc.views[0].view_id, h = doc.views[1].view_id;

  doc = edit_attributes(doc, w, {{"color_scheme", "grayscale"}}, table());
  const auto specs = emit_specs(doc, table(), doc.filter_state);
  CHECK(specs[0].spec.style.color_scheme == "grayscale");
  CHECK_RSVP_ERROR(edit_attributes(doc, w, {{"color_scheme", "rainbow"}}, table()), ErrorCode::InvalidPatch);
  CHECK_RSVP_ERROR(edit_attributes(doc, w, {{"bin_count", 0}}, table()), ErrorCode::InvalidPatch);
  CHECK_RSVP_ERROR(edit_attributes(doc, w, {{"shape", "x"}}, table()), ErrorCode::InvalidPatch);
  CHECK_RSVP_ERROR(edit_attributes(doc, 99, {{"bin_count", 5}}, table()), ErrorCode::UnknownView);

  FilterState f;
  f.ranges["d"] = {1, 4};
  doc = set_filters(doc, f, table());
  CHECK(slider_dims(doc).count("d") == 1);
  doc = edit_attributes(doc, h, {{"remove", true}}, table());
  CHECK(doc.views.size() == 1);
  CHECK(slider_dims(doc).count("d") == 0);
  CHECK(doc.filter_state.ranges.count("d") == 0);
}

TEST_CASE("mode machine") {
  auto doc = add_view({}, cell(PC, {"a", "b"}), table(), enc());
  FilterState f;
  f.ranges["a"] = {1, 2};
  doc = set_filters(doc, f, table());
  const auto analyze = set_mode(doc, Mode::Analyze);
  CHECK(set_mode(analyze, Mode::Edit) == doc);

  CHECK_RSVP_ERROR(add_view(analyze, cell(Hist, {"a"}), table(), enc()), ErrorCode::NotEditMode);
  CHECK_RSVP_ERROR(edit_attributes(analyze, 1, {{"bin_count", 4}}, table()), ErrorCode::NotEditMode);
  CHECK_RSVP_ERROR(add_external_view(analyze, {{"field", "a"}}, table(), enc()), ErrorCode::NotEditMode);

  f.ranges["a"] = {0, 1};
  f.selected_run = 2;
  const auto filtered = set_filters(analyze, f, table());
  CHECK(filtered.filter_state == f);
  CHECK(filtered.sliders[0].current == Range{0, 1});
  CHECK(filtered.mode == Mode::Analyze);
}

TEST_CASE("slider set tracks referenced dims through random edits") {
  std::mt19937 rng(6);
  const std::vector<CellSpec> cells = {cell(PC, {"a", "b"}), cell(SP, {"c", "d"}), cell(Hist, {"b"}),
                                       cell(PSc, {"a", "b", "c", "d"}), cell(Line1D, {}, "f"),
                                       cell(Grid2D, {}, "img")};
  DashboardDoc doc;
  for (int step = 0; step < 300; ++step) {
    if (doc.views.empty() || rng() % 3 != 0) {
      auto c = cells[rng() % cells.size()];
      if (c.option == PC && rng() % 2) c.color = "d";
      doc = add_view(doc, c, table(), enc());
    } else {
      const auto id = doc.views[rng() % doc.views.size()].view_id;
      doc = edit_attributes(doc, id, {{"remove", true}}, table());
    }
    CHECK(slider_dims(doc) == referenced(doc));
    CHECK(doc.sliders.size() == slider_dims(doc).size());
    std::set<ViewId> ids;
    for (const auto& v : doc.views) ids.insert(v.view_id);
    CHECK(ids.size() == doc.views.size());
  }
}

TEST_CASE("documents round-trip through JSON") {
  auto doc = add_view({}, cell(PC, {"a", "b", "c"}), table(), enc());
  doc = add_view(doc, cell(Sup2D, {}, "img"), table(), enc());
  doc = add_external_view(doc, {{"mark", "bar"}, {"encoding", {{"x", {{"field", "d"}}}}}}, table(), enc());
  doc = move_resize(doc, doc.views[0].view_id, {3, 1, 6, 2});
  doc = edit_attributes(doc, doc.views[1].view_id, {{"blend_mode", "screen"}, {"preselect_count", 2}}, table());
  FilterState f;
  f.ranges["b"] = {0.5, 2.5};
  f.selected_run = 1;
  doc = set_mode(set_filters(doc, f, table()), Mode::Analyze);

  const json j = doc;
  const auto back = j.get<DashboardDoc>();
  CHECK(back == doc);
  CHECK(json(back).dump() == j.dump());
  CHECK(slider_dims(doc) == std::set<std::string>{"a", "b", "c", "d"});
  CHECK_RSVP_ERROR(add_external_view({}, {{"field", "nope"}}, table(), enc()), ErrorCode::IncompatibleCell);
}

TEST_CASE("emitted specs") {
  CHECK(emit_specs({}, table(), {}).empty());

  auto doc = add_view({}, cell(Grid2D, {}, "img"), table(), enc());
  doc = add_view(doc, cell(Hist, {"a"}), table(), enc());
  doc = add_view(doc, cell(Box1D, {}, "f"), table(), enc());
  doc = add_view(doc, cell(CHist1D, {}, "f"), table(), enc());
  doc = add_view(doc, cell(wDCP, {"a", "b"}), table(), enc());
  doc = add_view(doc, cell(rSPLOM, {"a", "b", "c"}), table(), enc());
  doc = edit_attributes(doc, doc.views[0].view_id, {{"hide_filtered", true}}, table());
  FilterState f;
  f.ranges["a"] = {1, 2};
  doc = set_filters(doc, f, table());

  const auto specs = emit_specs(doc, table(), doc.filter_state);
  REQUIRE(specs.size() == 6);
  for (std::size_t i = 1; i < specs.size(); ++i) CHECK(specs[i - 1].view_id < specs[i].view_id);

  const auto& images = specs[0].payload.at("images");
  REQUIRE(images.size() == 2);
  CHECK(images[0].at("ref") == "r1.png");
  CHECK(images[1].at("ref") == "r2.png");
  CHECK(specs[0].spec.style.hide_filtered);

  CHECK(specs[1].payload.at("pass_count") == 2);
  CHECK(specs[1].payload.at("histogram").size() == 10);
  CHECK(specs[2].payload.at("boxplot").size() == 3);
  CHECK(specs[3].payload.at("curves").size() == 2);
  CHECK(specs[4].payload.contains("contours"));
  CHECK(specs[5].payload.at("panels").size() == 3);  // lower triangle without the diagonal
  CHECK(specs[4].spec.encodings.x == "a");

  // Same document and filters, same bytes.
  CHECK(json(emit_specs(doc, table(), doc.filter_state)).dump() == json(specs).dump());

  // Selection shows up in every view's payload.
  f.selected_run = 3;
  for (const auto& v : emit_specs(doc, table(), f)) CHECK(v.payload.at("selected") == 3);
}
