#include "rsvp/design_space.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include "rsvp/error.hpp"

namespace rsvp {

namespace {

using enum OptionId;

constexpr std::array<VisOption, kOptionCount> kOptions = {{
    {SP, "SP", "Scatterplot", Category::MDMV, 2, 2, true, true, MarkClass::Point0D, true},
    {wDCP, "wDCP", "(weighted) Density Contourplot", Category::MDMV, 2, 2, true, true, MarkClass::Line1D, true},
    {SPLOM, "SPLOM", "Scatterplot Matrix", Category::MDMV, 3, kUnbounded, true, true, MarkClass::Point0D, true},
    {rSPLOM, "rSPLOM", "reduced SPLOM", Category::MDMV, 3, kUnbounded, true, true, MarkClass::Point0D, true},
    {PSc, "PSc", "Point Scales", Category::MDMV, 1, kUnbounded, true, true, MarkClass::Point0D, true},
    {PC, "PC", "Parallel Coordinates", Category::MDMV, 1, kUnbounded, true, true, MarkClass::Line1D, true},
    {Hist, "Hist", "Histogram", Category::MDMV, 1, 1, false, false, MarkClass::Area2D, false},
    {Line1D, "Line1D", "1D - Linegraph", Category::Complex1D, 0, 0, true, true, MarkClass::ObjectMark, false},
    {Box1D, "Box1D", "1D - Boxplot", Category::Complex1D, 0, 0, false, false, MarkClass::ObjectMark, false},
    {CHist1D, "CHist1D", "1D - Cumulative Histogram", Category::Complex1D, 0, 0, true, true, MarkClass::ObjectMark,
     false},
    {Grid2D, "Grid2D", "2D - Grid Layout", Category::Complex2D, 0, 0, false, false, MarkClass::ObjectMark, false},
    {Jux2D, "Jux2D", "2D - Juxtaposed views", Category::Complex2D, 0, 0, false, false, MarkClass::ObjectMark, false},
    {Sup2D, "Sup2D", "2D - Superpositioned views", Category::Complex2D, 0, 0, false, false, MarkClass::ObjectMark,
     false},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

void check_unique(const std::vector<std::string>& dims, Field f) {
  std::set<std::string> seen;
  for (const auto& d : dims)
    if (!seen.insert(d).second)
      throw Error(ErrorCode::InvalidEncoding, d + " appears twice in " + std::string(to_string(f)));
}

}  // namespace

const std::array<VisOption, kOptionCount>& all_options() { return kOptions; }

const VisOption& option_info(OptionId id) { return kOptions[static_cast<std::size_t>(id)]; }

std::string_view to_string(OptionId id) { return option_info(id).name; }

std::string_view to_string(Category c) {
  switch (c) {
    case Category::MDMV: return "MDMV";
    case Category::Complex1D: return "Complex1D";
    case Category::Complex2D: return "Complex2D";
  }
  return "?";
}

std::string_view to_string(MarkClass m) {
  switch (m) {
    case MarkClass::Point0D: return "Point0D";
    case MarkClass::Line1D: return "Line1D";
    case MarkClass::Area2D: return "Area2D";
    case MarkClass::ObjectMark: return "ObjectMark";
  }
  return "?";
}

OptionId parse_option(std::string_view s) {
  const auto l = lower(s);
  for (const auto& o : kOptions)
    if (lower(o.name) == l) return o.id;
  throw Error(ErrorCode::InvalidArgument, "unknown visualization option '" + std::string(s) + "'");
}

std::string_view to_string(Field f) {
  switch (f) {
    case Field::S1: return "S1";
    case Field::S2: return "S2";
    case Field::Color: return "Color";
    case Field::Opacity: return "Opacity";
    case Field::Object: return "Object";
  }
  return "?";
}

Field parse_field(std::string_view s) {
  const auto l = lower(s);
  for (auto f : {Field::S1, Field::S2, Field::Color, Field::Opacity, Field::Object})
    if (lower(to_string(f)) == l) return f;
  throw Error(ErrorCode::InvalidArgument, "unknown field '" + std::string(s) + "'");
}

const std::vector<std::string>& EncodingState::field(Field f) const {
  switch (f) {
    case Field::S1: return s1;
    case Field::S2: return s2;
    case Field::Color: return color;
    case Field::Opacity: return opacity;
    case Field::Object: return object;
  }
  return object;
}

std::vector<std::string>& EncodingState::field(Field f) {
  return const_cast<std::vector<std::string>&>(std::as_const(*this).field(f));
}

std::optional<Field> EncodingState::field_of(std::string_view dim) const {
  for (auto f : {Field::S1, Field::S2, Field::Color, Field::Opacity, Field::Object}) {
    const auto& v = field(f);
    if (std::find(v.begin(), v.end(), dim) != v.end()) return f;
  }
  return std::nullopt;
}

void validate(const EncodingState& enc, const RunTable& table) {
  for (auto f : {Field::S1, Field::S2, Field::Color, Field::Opacity}) {
    const auto& dims = enc.field(f);
    check_unique(dims, f);
    const auto cap = (f == Field::S1 || f == Field::S2) ? FieldCapacity::spatial : FieldCapacity::channel;
    if (dims.size() > cap)
      throw Error(ErrorCode::InvalidEncoding,
                  std::string(to_string(f)) + " holds at most " + std::to_string(cap) + " dimensions");
    for (const auto& d : dims)
      if (table.dimension(d).dtype != DType::Quantitative)
        throw Error(ErrorCode::InvalidEncoding, d + " is not Quantitative and cannot go into " +
                                                    std::string(to_string(f)));
  }
  for (const auto& d : enc.s1)
    if (std::find(enc.s2.begin(), enc.s2.end(), d) != enc.s2.end())
      throw Error(ErrorCode::InvalidEncoding, d + " is in both S1 and S2");

  check_unique(enc.object, Field::Object);
  if (enc.object.size() > FieldCapacity::object)
    throw Error(ErrorCode::InvalidEncoding, "Object holds at most one 1D and one 2D dimension");
  int n1d = 0, n2d = 0;
  for (const auto& d : enc.object) {
    const auto dt = table.dimension(d).dtype;
    if (dt == DType::Quantitative)
      throw Error(ErrorCode::InvalidEncoding, d + " is Quantitative and cannot go into Object");
    (dt == DType::Series1D ? n1d : n2d)++;
  }
  if (n1d > 1 || n2d > 1) throw Error(ErrorCode::InvalidEncoding, "Object holds at most one 1D and one 2D dimension");
}

std::optional<std::string> object_1d(const EncodingState& enc, const RunTable& table) {
  for (const auto& d : enc.object)
    if (table.dimension(d).dtype == DType::Series1D) return d;
  return std::nullopt;
}

std::optional<std::string> object_2d(const EncodingState& enc, const RunTable& table) {
  for (const auto& d : enc.object)
    if (table.dimension(d).dtype == DType::ImageRef2D) return d;
  return std::nullopt;
}

bool is_applicable(OptionId id, const EncodingState& enc, const RunTable& table) {
  const auto& info = option_info(id);
  const auto spatial = static_cast<int>(enc.spatial_count());
  switch (info.category) {
    case Category::MDMV:
      // Two-axis charts duplicate a lone dimension; Hist draws one per dimension.
      if (is_two_axis(id) || id == Hist) return spatial >= 1;
      return spatial >= info.spatial_min;
    case Category::Complex1D: return object_1d(enc, table).has_value();
    case Category::Complex2D: return object_2d(enc, table).has_value();
  }
  return false;
}

std::vector<ApplicableOption> applicable_options(const EncodingState& enc, const RunTable& table) {
  validate(enc, table);
  std::vector<ApplicableOption> out;
  for (const auto& o : kOptions) {
    if (!is_applicable(o.id, enc, table)) continue;
    out.push_back({o.id, is_two_axis(o.id) && enc.spatial_count() == 1});
  }
  return out;
}

}  // namespace rsvp
