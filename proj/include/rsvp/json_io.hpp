#pragma once

// JSON mapping for the engine types. Field names are part of the wire
// contract of the HTTP API and the CLI.

#include "json.hpp"
#include "rsvp/analytics.hpp"
#include "rsvp/dashboard.hpp"
#include "rsvp/data_model.hpp"
#include "rsvp/design_space.hpp"
#include "rsvp/layout.hpp"
#include "rsvp/visrec.hpp"

namespace rsvp {

using nlohmann::json;

void to_json(json& j, const Dimension& d);
void to_json(json& j, const ApplicableOption& o);

void to_json(json& j, const EncodingState& e);
void from_json(const json& j, EncodingState& e);

void to_json(json& j, const CellSpec& c);
void from_json(const json& j, CellSpec& c);
void to_json(json& j, const ColumnSpec& c);
void to_json(json& j, const RowSpec& r);
void to_json(json& j, const SwitchSpec& s);
void to_json(json& j, const SmdLayout& l);

void to_json(json& j, const ExpressivityEntry& e);
void to_json(json& j, const Frame& f);
void to_json(json& j, const GuidanceBlock& g);
void to_json(json& j, const RecommendationSet& r);

void to_json(json& j, const Range& r);
void from_json(const json& j, Range& r);
void to_json(json& j, const FilterState& f);
void from_json(const json& j, FilterState& f);
void to_json(json& j, const FilterResult& r);
void to_json(json& j, const HistogramBin& b);
void to_json(json& j, const ContourPolyline& c);
void to_json(json& j, const BoxStats& b);

void to_json(json& j, const Rect& r);
void from_json(const json& j, Rect& r);
void to_json(json& j, const ViewStyle& s);
void from_json(const json& j, ViewStyle& s);
void to_json(json& j, const PlacedView& v);
void from_json(const json& j, PlacedView& v);
void to_json(json& j, const SliderSpec& s);
void from_json(const json& j, SliderSpec& s);
void to_json(json& j, const DashboardDoc& d);
void from_json(const json& j, DashboardDoc& d);
void to_json(json& j, const VisSpec& v);
void to_json(json& j, const EmittedView& v);

/// Dimension list plus per-dtype counts.
json table_summary(const RunTable& table);

/// Canonical text form used for every payload: two-space indent, sorted keys.
std::string dump(const json& j);

}  // namespace rsvp
