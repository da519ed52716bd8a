#include "rsvp/json_io.hpp"

#include "rsvp/error.hpp"

namespace rsvp {

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<std::string> opt_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  return j.at(key).get<std::vector<std::string>>();
}

json points_json(const std::vector<Eigen::Vector2d>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back({p.x(), p.y()});
  return out;
}

}  // namespace

void to_json(json& j, const Dimension& d) {
  j = {{"name", d.name},
       {"dtype", to_string(d.dtype)},
       {"role", to_string(d.role)},
       {"sampling", to_string(d.sampling)},
       {"series_length", opt(d.series_length)}};
}

void to_json(json& j, const ApplicableOption& o) {
  j = {{"option", to_string(o.id)}, {"duplicated_axes", o.duplicated_axes}};
}

void to_json(json& j, const EncodingState& e) {
  j = {{"s1", e.s1}, {"s2", e.s2}, {"color", e.color}, {"opacity", e.opacity}, {"object", e.object}};
}

void from_json(const json& j, EncodingState& e) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "encoding must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "s1" && key != "s2" && key != "color" && key != "opacity" && key != "object")
      throw Error(ErrorCode::InvalidArgument, "unknown encoding field '" + key + "'");
  e.s1 = string_list(j, "s1");
  e.s2 = string_list(j, "s2");
  e.color = string_list(j, "color");
  e.opacity = string_list(j, "opacity");
  e.object = string_list(j, "object");
}

void to_json(json& j, const CellSpec& c) {
  j = {{"option", to_string(c.option)},
       {"axes", c.axes},
       {"color", opt(c.color)},
       {"opacity", opt(c.opacity)},
       {"object", opt(c.object)},
       {"tint", c.tint ? json(to_string(*c.tint)) : json(nullptr)},
       {"duplicated_axes", c.duplicated_axes}};
}

void from_json(const json& j, CellSpec& c) {
  if (!j.is_object() || !j.contains("option")) throw Error(ErrorCode::InvalidArgument, "cell needs an option");
  c.option = parse_option(j.at("option").get<std::string>());
  c.axes = string_list(j, "axes");
  c.color = opt_string(j, "color");
  c.opacity = opt_string(j, "opacity");
  c.object = opt_string(j, "object");
  c.tint.reset();
  if (auto t = opt_string(j, "tint")) {
    if (*t == "S1") c.tint = ColumnSource::S1;
    else if (*t == "S2") c.tint = ColumnSource::S2;
    else if (*t == "S1+S2") c.tint = ColumnSource::S1plusS2;
    else throw Error(ErrorCode::InvalidArgument, "unknown tint '" + *t + "'");
  }
  c.duplicated_axes = j.value("duplicated_axes", false);
  if (is_two_axis(c.option) && c.axes.size() == 2) c.duplicated_axes = c.axes[0] == c.axes[1];
}

void to_json(json& j, const ColumnSpec& c) { j = {{"source", to_string(c.source)}, {"dims", c.dims}}; }

void to_json(json& j, const RowSpec& r) { j = {{"kind", to_string(r.kind)}, {"dim", opt(r.dim)}}; }

void to_json(json& j, const SwitchSpec& s) {
  j = {{"row", s.row},
       {"col", s.col},
       {"channel", to_string(s.channel)},
       {"candidates", s.candidates},
       {"active", s.active}};
}

void to_json(json& j, const SmdLayout& l) {
  j = {{"option", to_string(l.option)},
       {"columns", l.columns},
       {"rows", l.rows},
       {"cells", l.cells},
       {"switches", l.switches},
       {"selected_cell", {l.selected_cell.row, l.selected_cell.col}}};
}

void to_json(json& j, const ExpressivityEntry& e) {
  j = {{"option", to_string(e.option)}, {"marginal", e.marginal}};
}

void to_json(json& j, const Frame& f) {
  j = {{"target_kind", f.kind == FrameKind::VisOption ? "VisOption" : "ChannelField"},
       {"target", f.kind == FrameKind::VisOption ? to_string(f.option) : to_string(f.field)},
       {"task", to_string(f.task)},
       {"source", f.source ? json(to_string(*f.source)) : json(nullptr)},
       {"marginal", f.marginal},
       {"hide_filtered", f.hide_filtered}};
  json hints = json::array();
  for (auto r : f.hint_roles) hints.push_back(to_string(r));
  j["hint_roles"] = hints;
}

void to_json(json& j, const GuidanceBlock& g) {
  json options = json::array();
  for (auto o : g.recommended_options) options.push_back(to_string(o));
  const auto& info = task_info(g.task);
  j = {{"task", to_string(g.task)},
       {"strategy", info.strategy_label},
       {"description", info.description},
       {"options", options},
       {"explanation", g.explanation},
       {"hints", g.interaction_hints}};
}

void to_json(json& j, const RecommendationSet& r) {
  json tasks = json::array();
  for (auto t : r.tasks) tasks.push_back(to_string(t));
  j = {{"tasks", tasks}, {"frames", r.frames}, {"guidance", r.guidance}};
}

void to_json(json& j, const Range& r) { j = json::array({r.lo, r.hi}); }

void from_json(const json& j, Range& r) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorCode::InvalidFilter, "a range is a [lo, hi] pair of numbers");
  r.lo = j[0].get<double>();
  r.hi = j[1].get<double>();
}

void to_json(json& j, const FilterState& f) {
  json ranges = json::object();
  for (const auto& [k, v] : f.ranges) ranges[k] = v;
  j = {{"ranges", ranges}, {"selected_run", opt(f.selected_run)}};
}

void from_json(const json& j, FilterState& f) {
  f = {};
  if (!j.is_object()) throw Error(ErrorCode::InvalidFilter, "filter state must be an object");
  if (j.contains("ranges"))
    for (const auto& [k, v] : j.at("ranges").items()) f.ranges[k] = v.get<Range>();
  if (j.contains("selected_run") && !j.at("selected_run").is_null())
    f.selected_run = j.at("selected_run").get<RunId>();
}

void to_json(json& j, const FilterResult& r) {
  j = {{"pass_count", r.pass_count}, {"run_count", r.pass.size()}, {"pass", r.pass.ids()}};
}

void to_json(json& j, const HistogramBin& b) {
  j = {{"bin_lo", b.lo}, {"bin_hi", b.hi}, {"count_pass", b.count_pass}, {"count_all", b.count_all}};
}

void to_json(json& j, const ContourPolyline& c) {
  j = {{"level", c.level}, {"percentile", c.percentile}, {"closed", c.closed}, {"points", points_json(c.points)}};
}

void to_json(json& j, const BoxStats& b) {
  j = {{"min", b.min},       {"q1", b.q1},
       {"median", b.median}, {"q3", b.q3},
       {"max", b.max},       {"whisker_lo", b.whisker_lo},
       {"whisker_hi", b.whisker_hi}, {"outliers", b.outliers}};
}

void to_json(json& j, const Rect& r) { j = {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}; }

void from_json(const json& j, Rect& r) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidRect, "rect must be an object");
  r.x = j.at("x").get<int>();
  r.y = j.at("y").get<int>();
  r.w = j.at("w").get<int>();
  r.h = j.at("h").get<int>();
}

void to_json(json& j, const ViewStyle& s) {
  j = {{"color_scheme", s.color_scheme}, {"bin_count", s.bin_count},       {"point_size", s.point_size},
       {"blend_mode", s.blend_mode},     {"hide_filtered", s.hide_filtered}, {"preselect_count", s.preselect_count}};
}

void from_json(const json& j, ViewStyle& s) {
  s = {};
  s.color_scheme = j.value("color_scheme", s.color_scheme);
  s.bin_count = j.value("bin_count", s.bin_count);
  s.point_size = j.value("point_size", s.point_size);
  s.blend_mode = j.value("blend_mode", s.blend_mode);
  s.hide_filtered = j.value("hide_filtered", s.hide_filtered);
  s.preselect_count = j.value("preselect_count", s.preselect_count);
}

void to_json(json& j, const PlacedView& v) {
  j = {{"view_id", v.view_id},
       {"cell", v.cell},
       {"rect", v.rect},
       {"style", v.style},
       {"external_spec", v.external_spec ? *v.external_spec : json(nullptr)}};
}

void from_json(const json& j, PlacedView& v) {
  v.view_id = j.at("view_id").get<ViewId>();
  v.cell = j.at("cell").get<CellSpec>();
  v.rect = j.at("rect").get<Rect>();
  v.style = j.at("style").get<ViewStyle>();
  v.external_spec.reset();
  if (j.contains("external_spec") && !j.at("external_spec").is_null()) v.external_spec = j.at("external_spec");
}

void to_json(json& j, const SliderSpec& s) {
  j = {{"dimension", s.dimension}, {"extent", s.extent}, {"current", s.current}, {"field_color", s.field_color}};
}

void from_json(const json& j, SliderSpec& s) {
  s.dimension = j.at("dimension").get<std::string>();
  s.extent = j.at("extent").get<Range>();
  s.current = j.at("current").get<Range>();
  s.field_color = j.at("field_color").get<std::string>();
}

void to_json(json& j, const DashboardDoc& d) {
  j = {{"data_ref", d.data_ref},
       {"views", d.views},
       {"sliders", d.sliders},
       {"mode", to_string(d.mode)},
       {"filter_state", d.filter_state},
       {"next_view_id", d.next_view_id}};
}

void from_json(const json& j, DashboardDoc& d) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "dashboard must be a JSON object");
  d = {};
  d.data_ref = j.value("data_ref", d.data_ref);
  d.views = j.at("views").get<std::vector<PlacedView>>();
  d.sliders = j.at("sliders").get<std::vector<SliderSpec>>();
  d.mode = parse_mode(j.at("mode").get<std::string>());
  d.filter_state = j.at("filter_state").get<FilterState>();
  d.next_view_id = j.at("next_view_id").get<ViewId>();
}

void to_json(json& j, const VisSpec& v) {
  const auto& e = v.encodings;
  j = {{"vis_type", v.vis_type},
       {"data_ref", v.data_ref},
       {"encodings",
        {{"x", opt(e.x)},
         {"y", opt(e.y)},
         {"axes", e.axes},
         {"color", opt(e.color)},
         {"opacity", opt(e.opacity)},
         {"object", opt(e.object)}}},
       {"style", v.style},
       {"interaction", {{"filterable", v.filterable}, {"selectable", v.selectable}}}};
  if (v.external_spec) j["external_spec"] = *v.external_spec;
}

void to_json(json& j, const EmittedView& v) {
  j = {{"view_id", v.view_id}, {"spec", v.spec}, {"payload", v.payload}};
}

json table_summary(const RunTable& table) {
  std::size_t q = 0, s = 0, i = 0;
  for (const auto& d : table.dimensions()) {
    switch (d.dtype) {
      case DType::Quantitative: ++q; break;
      case DType::Series1D: ++s; break;
      case DType::ImageRef2D: ++i; break;
    }
  }
  return {{"run_count", table.run_count()},
          {"dimension_count", table.dimension_count()},
          {"default_sampling", to_string(table.default_sampling())},
          {"counts", {{"Quantitative", q}, {"Series1D", s}, {"ImageRef2D", i}}},
          {"dimensions", table.dimensions()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace rsvp
