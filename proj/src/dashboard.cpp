#include "rsvp/dashboard.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "rsvp/error.hpp"
#include "rsvp/json_io.hpp"

namespace rsvp {

namespace {

using enum OptionId;

void require_edit(const DashboardDoc& doc, std::string_view op) {
  if (doc.mode != Mode::Edit)
    throw Error(ErrorCode::NotEditMode, std::string(op) + " is only allowed in edit mode");
}

PlacedView& view_ref(DashboardDoc& doc, ViewId id) {
  for (auto& v : doc.views)
    if (v.view_id == id) return v;
  throw Error(ErrorCode::UnknownView, std::to_string(id));
}

void require_quantitative(const RunTable& table, const std::string& name) {
  const auto i = table.find(name);
  if (!i) throw Error(ErrorCode::IncompatibleCell, "unknown dimension " + name);
  if (table.dimensions()[*i].dtype != DType::Quantitative)
    throw Error(ErrorCode::IncompatibleCell, name + " is not Quantitative");
}

void collect_fields(const json& node, std::vector<std::string>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      if (key == "field" && value.is_string()) out.push_back(value.get<std::string>());
      else collect_fields(value, out);
    }
  } else if (node.is_array()) {
    for (const auto& v : node) collect_fields(v, out);
  }
}

Range extent_of(const RunTable& table, const std::string& dim) {
  const auto& col = table.quantitative(dim);
  if (col.size() == 0) return {0.0, 0.0};
  return {col.minCoeff(), col.maxCoeff()};
}

// Keeps the slider set equal to the referenced quantitative dimensions.
void sync_sliders(DashboardDoc& doc, const RunTable& table, const EncodingState* enc) {
  std::vector<std::string> wanted;
  for (const auto& v : doc.views)
    for (auto& d : referenced_dimensions(v, table))
      if (std::find(wanted.begin(), wanted.end(), d) == wanted.end()) wanted.push_back(std::move(d));

  std::vector<SliderSpec> sliders;
  for (const auto& d : wanted) {
    auto it = std::find_if(doc.sliders.begin(), doc.sliders.end(), [&](const auto& s) { return s.dimension == d; });
    if (it != doc.sliders.end()) {
      sliders.push_back(*it);
      continue;
    }
    SliderSpec s;
    s.dimension = d;
    s.extent = extent_of(table, d);
    auto f = doc.filter_state.ranges.find(d);
    s.current = f != doc.filter_state.ranges.end() ? f->second : s.extent;
    const auto field = enc ? enc->field_of(d) : std::nullopt;
    s.field_color = field ? std::string(to_string(*field)) : "None";
    sliders.push_back(std::move(s));
  }
  for (const auto& old : doc.sliders) {
    if (std::find(wanted.begin(), wanted.end(), old.dimension) == wanted.end())
      doc.filter_state.ranges.erase(old.dimension);
  }
  doc.sliders = std::move(sliders);
}

Rect default_rect(const DashboardDoc& doc) {
  int bottom = 0;
  for (const auto& v : doc.views) bottom = std::max(bottom, v.rect.y + v.rect.h);
  return Rect{0, bottom, 4, 3};
}

json values_of(const RunTable& table, const std::vector<std::string>& dims) {
  json out = json::object();
  for (const auto& d : dims) {
    const auto& col = table.quantitative(d);
    out[d] = std::vector<double>(col.data(), col.data() + col.size());
  }
  return out;
}

// Deterministic per-run jitter in [-0.5, 0.5) for point scales.
double jitter(RunId id) {
  std::uint64_t z = static_cast<std::uint64_t>(id) + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
}

json error_payload(const Error& e) {
  return {{"code", to_string(e.code())}, {"message", e.what()}};
}

json image_entries(const std::vector<std::string>& refs, const std::vector<RunId>& ids, const FilterResult& pass) {
  json out = json::array();
  for (auto id : ids) out.push_back({{"run", id}, {"ref", refs[id]}, {"pass", pass.pass.test(id)}});
  return out;
}

json payload_for(const PlacedView& view, const RunTable& table, const FilterState& f, const FilterResult& pass) {
  json p = {{"pass", pass.pass.ids()},
            {"pass_count", pass.pass_count},
            {"selected", f.selected_run ? json(*f.selected_run) : json(nullptr)}};
  const auto& cell = view.cell;
  const auto dims = referenced_dimensions(view, table);
  try {
    if (view.external_spec) {
      p["values"] = values_of(table, dims);
      return p;
    }
    switch (cell.option) {
      case Hist:
        p["histogram"] = histogram(table, cell.axes.at(0), pass, view.style.bin_count);
        break;
      case wDCP: {
        std::optional<std::string_view> weight;
        if (cell.color) weight = *cell.color;
        p["contours"] = density_contours(table, cell.axes.at(0), cell.axes.at(1), weight, f);
        p["values"] = values_of(table, dims);
        break;
      }
      case SP:
      case PC:
        p["values"] = values_of(table, dims);
        break;
      case PSc: {
        p["values"] = values_of(table, dims);
        std::vector<double> j(table.run_count());
        for (RunId r = 0; r < table.run_count(); ++r) j[r] = jitter(r);
        p["jitter"] = j;
        break;
      }
      case SPLOM:
      case rSPLOM: {
        p["values"] = values_of(table, dims);
        json panels = json::array();
        const auto n = cell.axes.size();
        for (std::size_t row = 0; row < n; ++row)
          for (std::size_t col = 0; col < n; ++col)
            if (cell.option == SPLOM || row > col) panels.push_back({row, col});
        p["panels"] = panels;
        break;
      }
      case Line1D: {
        const auto& m = table.series(*cell.object);
        json series = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          Eigen::VectorXd row = m.row(r).transpose();
          series.push_back(std::vector<double>(row.data(), row.data() + row.size()));
        }
        p["series"] = series;
        if (!dims.empty()) p["values"] = values_of(table, dims);
        break;
      }
      case Box1D:
        p["boxplot"] = boxplot_series(table, *cell.object, f);
        break;
      case CHist1D: {
        json curves = json::array();
        for (auto id : pass.pass.ids())
          curves.push_back({{"run", id}, {"values", cumulative_curve(table, *cell.object, id)}});
        p["curves"] = curves;
        if (!dims.empty()) p["values"] = values_of(table, dims);
        break;
      }
      case Grid2D: {
        const auto& refs = table.images(*cell.object);
        std::vector<RunId> ids;
        for (RunId r = 0; r < table.run_count(); ++r)
          if (!view.style.hide_filtered || pass.pass.test(r)) ids.push_back(r);
        p["images"] = image_entries(refs, ids, pass);
        break;
      }
      case Jux2D:
      case Sup2D: {
        const auto& refs = table.images(*cell.object);
        p["images"] = image_entries(refs, preselected_runs(pass, f, view.style.preselect_count), pass);
        if (cell.option == Sup2D) p["blend_mode"] = view.style.blend_mode;
        break;
      }
    }
  } catch (const Error& e) {
    p["error"] = error_payload(e);
  }
  return p;
}

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::Edit ? "Edit" : "Analyze"; }

Mode parse_mode(std::string_view s) {
  std::string l(s);
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "edit") return Mode::Edit;
  if (l == "analyze") return Mode::Analyze;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(s) + "'");
}

const PlacedView* DashboardDoc::find(ViewId id) const {
  for (const auto& v : views)
    if (v.view_id == id) return &v;
  return nullptr;
}

void check_renderable(const CellSpec& cell, const RunTable& table) {
  const auto& info = option_info(cell.option);
  if (info.category == Category::MDMV) {
    const auto n = cell.axes.size();
    if (cell.object) throw Error(ErrorCode::IncompatibleCell, std::string(info.name) + " takes no object dimension");
    bool ok = n >= 1;
    if (is_two_axis(cell.option)) ok = n == 2;
    else if (cell.option == Hist) ok = n == 1;
    else if (is_splom(cell.option)) ok = n >= 2;  // a field column may hold two dims
    if (!ok)
      throw Error(ErrorCode::IncompatibleCell,
                  std::string(info.name) + " cannot show " + std::to_string(n) + " spatial dimensions");
    std::set<std::string> seen;
    for (const auto& d : cell.axes) {
      require_quantitative(table, d);
      if (!is_two_axis(cell.option) && !seen.insert(d).second)
        throw Error(ErrorCode::IncompatibleCell, d + " repeated on the axes");
    }
  } else {
    if (!cell.axes.empty())
      throw Error(ErrorCode::IncompatibleCell, std::string(info.name) + " takes no spatial dimensions");
    if (!cell.object) throw Error(ErrorCode::IncompatibleCell, std::string(info.name) + " needs an object dimension");
    const auto i = table.find(*cell.object);
    if (!i) throw Error(ErrorCode::IncompatibleCell, "unknown dimension " + *cell.object);
    const auto want = info.category == Category::Complex1D ? DType::Series1D : DType::ImageRef2D;
    if (table.dimensions()[*i].dtype != want)
      throw Error(ErrorCode::IncompatibleCell, *cell.object + " does not match " + std::string(info.name));
  }
  if (cell.color) {
    if (!info.supports_color) throw Error(ErrorCode::IncompatibleCell, std::string(info.name) + " has no color channel");
    require_quantitative(table, *cell.color);
  }
  if (cell.opacity) {
    if (!info.supports_opacity)
      throw Error(ErrorCode::IncompatibleCell, std::string(info.name) + " has no opacity channel");
    require_quantitative(table, *cell.opacity);
  }
}

std::vector<std::string> referenced_dimensions(const PlacedView& view, const RunTable& table) {
  std::vector<std::string> out;
  auto add = [&](const std::string& d) {
    const auto i = table.find(d);
    if (i && table.dimensions()[*i].dtype == DType::Quantitative &&
        std::find(out.begin(), out.end(), d) == out.end())
      out.push_back(d);
  };
  if (view.external_spec) {
    std::vector<std::string> fields;
    collect_fields(*view.external_spec, fields);
    for (const auto& f : fields) add(f);
    return out;
  }
  for (const auto& d : view.cell.axes) add(d);
  if (view.cell.color) add(*view.cell.color);
  if (view.cell.opacity) add(*view.cell.opacity);
  return out;
}

DashboardDoc add_view(DashboardDoc doc, const CellSpec& cell, const RunTable& table, const EncodingState& enc) {
  require_edit(doc, "add_view");
  check_renderable(cell, table);
  PlacedView view;
  view.view_id = doc.next_view_id++;
  view.cell = cell;
  view.rect = default_rect(doc);
  doc.views.push_back(std::move(view));
  sync_sliders(doc, table, &enc);
  return doc;
}

DashboardDoc add_external_view(DashboardDoc doc, const json& spec, const RunTable& table, const EncodingState& enc) {
  require_edit(doc, "add_view");
  if (!spec.is_object()) throw Error(ErrorCode::IncompatibleCell, "external spec must be a JSON object");
  std::vector<std::string> fields;
  collect_fields(spec, fields);
  for (const auto& f : fields)
    if (!table.find(f)) throw Error(ErrorCode::IncompatibleCell, "external spec references unknown field " + f);
  PlacedView view;
  view.view_id = doc.next_view_id++;
  view.cell.option = PC;
  view.rect = default_rect(doc);
  view.external_spec = spec;
  doc.views.push_back(std::move(view));
  sync_sliders(doc, table, &enc);
  return doc;
}

DashboardDoc move_resize(DashboardDoc doc, ViewId id, Rect rect) {
  require_edit(doc, "move_resize");
  auto& view = view_ref(doc, id);
  if (rect.w <= 0 || rect.h <= 0 || rect.x < 0 || rect.y < 0)
    throw Error(ErrorCode::InvalidRect, "rect needs a non-negative origin and positive size");
  view.rect = rect;
  return doc;
}

DashboardDoc edit_attributes(DashboardDoc doc, ViewId id, const json& patch, const RunTable& table) {
  require_edit(doc, "edit_attributes");
  auto& view = view_ref(doc, id);
  if (!patch.is_object() || patch.empty()) throw Error(ErrorCode::InvalidPatch, "patch must be a non-empty object");

  if (patch.contains("remove")) {
    if (patch.size() != 1 || !patch.at("remove").is_boolean())
      throw Error(ErrorCode::InvalidPatch, "remove must be a lone boolean");
    if (patch.at("remove").get<bool>()) {
      std::erase_if(doc.views, [&](const PlacedView& v) { return v.view_id == id; });
      sync_sliders(doc, table, nullptr);
    }
    return doc;
  }

  ViewStyle style = view.style;
  auto one_of = [](const json& v, auto names, const char* key) {
    if (!v.is_string()) throw Error(ErrorCode::InvalidPatch, std::string(key) + " must be a string");
    const auto s = v.get<std::string>();
    if (std::find(names.begin(), names.end(), s) == names.end())
      throw Error(ErrorCode::InvalidPatch, "unknown " + std::string(key) + " '" + s + "'");
    return s;
  };
  auto positive_int = [](const json& v, const char* key, int lo, int hi) {
    if (!v.is_number_integer()) throw Error(ErrorCode::InvalidPatch, std::string(key) + " must be an integer");
    const auto n = v.get<long long>();
    if (n < lo || n > hi)
      throw Error(ErrorCode::InvalidPatch,
                  std::string(key) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(n);
  };
  for (const auto& [key, value] : patch.items()) {
    if (key == "color_scheme") style.color_scheme = one_of(value, kColorSchemes, "color_scheme");
    else if (key == "blend_mode") style.blend_mode = one_of(value, kBlendModes, "blend_mode");
    else if (key == "bin_count") style.bin_count = positive_int(value, "bin_count", 1, 200);
    else if (key == "preselect_count") style.preselect_count = positive_int(value, "preselect_count", 0, 50);
    else if (key == "point_size") {
      if (!value.is_number() || !(value.get<double>() > 0))
        throw Error(ErrorCode::InvalidPatch, "point_size must be a positive number");
      style.point_size = value.get<double>();
    } else if (key == "hide_filtered") {
      if (!value.is_boolean()) throw Error(ErrorCode::InvalidPatch, "hide_filtered must be a boolean");
      style.hide_filtered = value.get<bool>();
    } else {
      throw Error(ErrorCode::InvalidPatch, "unknown attribute '" + key + "'");
    }
  }
  view.style = std::move(style);
  return doc;
}

DashboardDoc set_mode(DashboardDoc doc, Mode mode) {
  doc.mode = mode;
  return doc;
}

DashboardDoc set_filters(DashboardDoc doc, FilterState f, const RunTable& table) {
  validate(f, table);
  doc.filter_state = std::move(f);
  for (auto& s : doc.sliders) {
    auto it = doc.filter_state.ranges.find(s.dimension);
    s.current = it != doc.filter_state.ranges.end() ? it->second : s.extent;
  }
  return doc;
}

VisSpec make_vis_spec(const CellSpec& cell, const std::string& data_ref, const ViewStyle& style) {
  VisSpec spec;
  spec.vis_type = std::string(to_string(cell.option));
  spec.data_ref = data_ref;
  spec.style = style;
  auto& e = spec.encodings;
  if (is_two_axis(cell.option) && cell.axes.size() == 2) {
    e.x = cell.axes[0];
    e.y = cell.axes[1];
  } else {
    e.axes = cell.axes;
  }
  e.color = cell.color;
  e.opacity = cell.opacity;
  e.object = cell.object;
  return spec;
}

std::vector<RunId> preselected_runs(const FilterResult& pass, const FilterState& f, int count) {
  std::vector<RunId> out;
  if (count <= 0) return out;
  if (f.selected_run) out.push_back(*f.selected_run);
  for (std::size_t r = 0; r < pass.pass.size() && out.size() < static_cast<std::size_t>(count); ++r)
    if (pass.pass.test(r) && (!f.selected_run || *f.selected_run != r)) out.push_back(r);
  return out;
}

std::vector<EmittedView> emit_specs(const DashboardDoc& doc, const RunTable& table, const FilterState& f) {
  std::vector<const PlacedView*> order;
  for (const auto& v : doc.views) order.push_back(&v);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->view_id < b->view_id; });

  std::vector<EmittedView> out;
  if (order.empty()) return out;
  const auto pass = apply_filters(table, f);
  for (const auto* v : order) {
    EmittedView e;
    e.view_id = v->view_id;
    if (v->external_spec) {
      e.spec.vis_type = "External";
      e.spec.data_ref = doc.data_ref;
      e.spec.style = v->style;
      e.spec.encodings.axes = referenced_dimensions(*v, table);
      e.spec.external_spec = v->external_spec;
    } else {
      e.spec = make_vis_spec(v->cell, doc.data_ref, v->style);
    }
    e.payload = payload_for(*v, table, f, pass);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace rsvp
