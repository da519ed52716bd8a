#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsvp/analytics.hpp"
#include "rsvp/layout.hpp"

namespace rsvp {

enum class Mode { Edit, Analyze };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

using ViewId = std::size_t;

/// Position and size in abstract grid units.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 4;
  int h = 3;

  bool operator==(const Rect&) const = default;
};

inline constexpr std::array<std::string_view, 3> kColorSchemes = {"viridis", "diverging", "grayscale"};
inline constexpr std::array<std::string_view, 4> kBlendModes = {"normal", "multiply", "screen", "difference"};

struct ViewStyle {
  std::string color_scheme = "viridis";
  int bin_count = kDefaultBins;
  double point_size = 3.0;
  std::string blend_mode = "difference";
  bool hide_filtered = false;
  int preselect_count = 3;

  bool operator==(const ViewStyle&) const = default;
};

struct PlacedView {
  ViewId view_id = 0;
  CellSpec cell;
  Rect rect;
  ViewStyle style;
  std::optional<nlohmann::json> external_spec;  // third-party chart spec

  bool operator==(const PlacedView&) const = default;
};

struct SliderSpec {
  std::string dimension;
  Range extent;   // unfiltered min/max
  Range current;
  std::string field_color;  // selection-panel field: S1, S2, Color, Opacity or None

  bool operator==(const SliderSpec&) const = default;
};

struct DashboardDoc {
  std::string data_ref = "table";
  std::vector<PlacedView> views;
  std::vector<SliderSpec> sliders;
  Mode mode = Mode::Edit;
  FilterState filter_state;
  ViewId next_view_id = 1;

  const PlacedView* find(ViewId id) const;
  bool operator==(const DashboardDoc&) const = default;
};

/// Throws IncompatibleCell when the cell cannot be rendered from table.
void check_renderable(const CellSpec& cell, const RunTable& table);

/// Quantitative dimensions a view encodes, in encoding order.
std::vector<std::string> referenced_dimensions(const PlacedView& view, const RunTable& table);

DashboardDoc add_view(DashboardDoc doc, const CellSpec& cell, const RunTable& table, const EncodingState& enc);

/// Adds a view backed by an opaque chart spec. Only the string values of
/// "field" keys are checked against the table.
DashboardDoc add_external_view(DashboardDoc doc, const nlohmann::json& spec, const RunTable& table,
                               const EncodingState& enc);

DashboardDoc move_resize(DashboardDoc doc, ViewId id, Rect rect);

/// Patch keys: color_scheme, bin_count, point_size, blend_mode,
/// hide_filtered, preselect_count, or {"remove": true}.
DashboardDoc edit_attributes(DashboardDoc doc, ViewId id, const nlohmann::json& patch, const RunTable& table);

DashboardDoc set_mode(DashboardDoc doc, Mode mode);

/// Replaces the filter state; allowed in both modes.
DashboardDoc set_filters(DashboardDoc doc, FilterState f, const RunTable& table);

struct VisEncodings {
  std::optional<std::string> x;
  std::optional<std::string> y;
  std::vector<std::string> axes;
  std::optional<std::string> color;
  std::optional<std::string> opacity;
  std::optional<std::string> object;

  bool operator==(const VisEncodings&) const = default;
};

/// Declarative, renderer-neutral chart description.
struct VisSpec {
  std::string vis_type;  // option name, or "External"
  std::string data_ref;
  VisEncodings encodings;
  ViewStyle style;
  bool filterable = true;
  bool selectable = true;
  std::optional<nlohmann::json> external_spec;

  bool operator==(const VisSpec&) const = default;
};

VisSpec make_vis_spec(const CellSpec& cell, const std::string& data_ref, const ViewStyle& style = {});

struct EmittedView {
  ViewId view_id = 0;
  VisSpec spec;
  nlohmann::json payload;
};

/// One spec plus analytics payload per placed view, ordered by view id.
std::vector<EmittedView> emit_specs(const DashboardDoc& doc, const RunTable& table, const FilterState& f);

/// Runs shown in comparison views: the selected run first, then the lowest passing ids.
std::vector<RunId> preselected_runs(const FilterResult& pass, const FilterState& f, int count);

}  // namespace rsvp
