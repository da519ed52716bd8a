#include <random>
#include <set>

#include "rsvp/layout.hpp"
#include "test_support.hpp"

using namespace rsvp;
using enum OptionId;

namespace {

const RunTable& table() {
  static const RunTable t = testing::numeric_table({"a", "b", "c", "d", "e", "f", "g", "h", "q", "r", "o", "p"});
  return t;
}

EncodingState enc_of(std::vector<std::string> s1, std::vector<std::string> s2, std::vector<std::string> color = {},
                     std::vector<std::string> opacity = {}) {
  EncodingState e;
  e.s1 = std::move(s1);
  e.s2 = std::move(s2);
  e.color = std::move(color);
  e.opacity = std::move(opacity);
  return e;
}

std::vector<std::vector<std::string>> column_axes(const SmdLayout& l, std::size_t row) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : l.cells[row]) out.push_back(c.axes);
  return out;
}

}  // namespace

TEST_CASE("PC with two spatial fields has an S1+S2 column") {
  const auto l = layout_smd(PC, enc_of({"a", "b", "c"}, {"d", "e"}), table());
  CHECK(l.row_count() == 1);
  REQUIRE(l.column_count() == 3);
  CHECK(l.columns[2].source == ColumnSource::S1plusS2);
  CHECK(column_axes(l, 0) == std::vector<std::vector<std::string>>{{"a", "b", "c"}, {"d", "e"}, {"a", "b", "c", "d", "e"}});
  CHECK(l.cells[0][0].tint == ColumnSource::S1);
  CHECK(l.cells[0][1].tint == ColumnSource::S2);
  CHECK(l.cells[0][2].tint == ColumnSource::S1plusS2);
  CHECK(l.switches.empty());
  CHECK(l.selected_cell == CellIndex{0, 0});
}

TEST_CASE("SPLOM never gets a third column") {
  for (auto option : {SPLOM, rSPLOM}) {
    const auto l = layout_smd(option, enc_of({"a", "b", "c"}, {"d", "e", "f"}), table());
    CHECK(l.row_count() == 1);
    CHECK(l.column_count() == 2);
  }
}

TEST_CASE("one extra row per color and opacity dimension") {
  const auto l = layout_smd(PC, enc_of({"a", "b", "c"}, {"d"}, {"q", "r"}), table());
  REQUIRE(l.row_count() == 3);
  REQUIRE(l.column_count() == 3);
  CHECK(l.rows[0].kind == RowKind::SpatialOnly);
  CHECK(l.rows[1].kind == RowKind::ColorEncoded);
  CHECK(l.rows[1].dim == "q");
  CHECK(l.rows[2].dim == "r");
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK_FALSE(l.cells[0][c].color.has_value());
    CHECK(l.cells[1][c].color == "q");
    CHECK(l.cells[2][c].color == "r");
    CHECK(l.cells[1][c].axes == l.cells[0][c].axes);
  }
  // Two color dims: each encoded row offers a color switch.
  std::size_t color_switches = 0;
  for (const auto& s : l.switches)
    if (s.channel == SwitchChannel::Color) {
      ++color_switches;
      CHECK(s.candidates == std::vector<std::string>{"q", "r"});
      CHECK(s.active == *l.rows[s.row].dim);
    }
  CHECK(color_switches == 6);
}

TEST_CASE("grid size law and reachability on random encodings") {
  const std::vector<std::string> pool0 = {"a", "b", "c", "d", "e", "f", "g", "h"};
  std::mt19937 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto pool = pool0;
    std::shuffle(pool.begin(), pool.end(), rng);
    const auto n1 = rng() % 5, n2 = rng() % 4;
    auto e = enc_of({pool.begin(), pool.begin() + n1}, {pool.begin() + n1, pool.begin() + n1 + n2});
    const std::vector<std::string> channels = {"q", "r", "o", "p"};
    const auto nc = rng() % 3, no = rng() % 3;
    e.color.assign(channels.begin(), channels.begin() + nc);
    e.opacity.assign(channels.begin() + 2, channels.begin() + 2 + no);

    for (auto option : {SP, wDCP, SPLOM, rSPLOM, PSc, PC}) {
      if (!is_applicable(option, e, table())) {
        CHECK_RSVP_ERROR(layout_smd(option, e, table()), ErrorCode::NotApplicable);
        continue;
      }
      const auto l = layout_smd(option, e, table());
      const std::size_t fields = (n1 > 0) + (n2 > 0);
      const std::size_t cols = fields + ((n1 > 0 && n2 > 0 && option != SPLOM && option != rSPLOM) ? 1 : 0);
      CHECK(l.row_count() == 1 + nc + no);
      CHECK(l.column_count() == cols);
      CHECK(l == layout_smd(option, e, table()));

      // Every spatial dim is drawn or reachable through a switch.
      std::set<std::string> reachable;
      for (const auto& row : l.cells)
        for (const auto& cell : row) reachable.insert(cell.axes.begin(), cell.axes.end());
      for (const auto& s : l.switches) {
        CHECK(std::find(s.candidates.begin(), s.candidates.end(), s.active) != s.candidates.end());
        reachable.insert(s.candidates.begin(), s.candidates.end());
      }
      for (const auto& d : e.s1) CHECK(reachable.count(d) == 1);
      for (const auto& d : e.s2) CHECK(reachable.count(d) == 1);
    }
  }
}

TEST_CASE("SP over three dims shows two and switches the rest") {
  auto l = layout_smd(SP, enc_of({"a", "b", "c"}, {}), table());
  REQUIRE(l.cells[0][0].axes == std::vector<std::string>{"a", "b"});
  REQUIRE(l.switches.size() == 2);
  CHECK(l.switches[0].channel == SwitchChannel::X);
  CHECK(l.switches[0].candidates == std::vector<std::string>{"a", "b", "c"});
  set_switch(l, 0, "c");
  CHECK(l.cells[0][0].axes == std::vector<std::string>{"c", "b"});
  CHECK_RSVP_ERROR(set_switch(l, 0, "z"), ErrorCode::InvalidArgument);
  CHECK_RSVP_ERROR(set_switch(l, 9, "a"), ErrorCode::OutOfRange);

  const auto single = layout_smd(wDCP, enc_of({"a"}, {}), table());
  CHECK(single.cells[0][0].axes == std::vector<std::string>{"a", "a"});
  CHECK(single.cells[0][0].duplicated_axes);
}

TEST_CASE("detail_for") {
  auto l = layout_smd(PC, enc_of({"a", "b", "c"}, {"d", "e"}, {"q", "r"}), table());
  const auto initial = l.cells[l.selected_cell.row][l.selected_cell.col];
  CHECK(detail_for(l, {0, 0}) == initial);

  const auto combined = detail_for(l, {0, 2});
  CHECK(combined.option == PC);
  CHECK(combined.axes == std::vector<std::string>{"a", "b", "c", "d", "e"});
  CHECK(l.selected_cell == CellIndex{0, 2});

  CHECK(detail_for(l, {2, 1}).color == "r");
  CHECK_RSVP_ERROR(detail_for(l, {3, 0}), ErrorCode::OutOfRange);
  CHECK_RSVP_ERROR(detail_for(l, {0, 3}), ErrorCode::OutOfRange);
}

TEST_CASE("histograms and complex objects have no small multiples") {
  CHECK_RSVP_ERROR(layout_smd(Hist, enc_of({"a"}, {}), table()), ErrorCode::NoSmd);
  CHECK_RSVP_ERROR(layout_smd(Grid2D, enc_of({"a"}, {}), table()), ErrorCode::NoSmd);
  const auto hists = histogram_cells(enc_of({"a", "b"}, {"c"}));
  REQUIRE(hists.size() == 3);
  CHECK(hists[2].axes == std::vector<std::string>{"c"});
  CHECK(hists[2].tint == ColumnSource::S2);
}
