#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsvp/data_model.hpp"

namespace rsvp {

enum class OptionId { SP, wDCP, SPLOM, rSPLOM, PSc, PC, Hist, Line1D, Box1D, CHist1D, Grid2D, Jux2D, Sup2D };

enum class Category { MDMV, Complex1D, Complex2D };

enum class MarkClass { Point0D, Line1D, Area2D, ObjectMark };

inline constexpr int kUnbounded = -1;

struct VisOption {
  OptionId id;
  std::string_view name;   // short id, e.g. "rSPLOM"
  std::string_view title;  // display title
  Category category;
  int spatial_min;
  int spatial_max;  // kUnbounded for no upper bound
  bool supports_color;
  bool supports_opacity;
  MarkClass mark_class;
  bool has_smd;
};

inline constexpr std::size_t kOptionCount = 13;

/// The closed design space, in canonical order.
const std::array<VisOption, kOptionCount>& all_options();
const VisOption& option_info(OptionId id);

std::string_view to_string(OptionId id);
std::string_view to_string(Category c);
std::string_view to_string(MarkClass m);
OptionId parse_option(std::string_view s);  // throws InvalidArgument

inline bool is_mdmv(OptionId id) { return option_info(id).category == Category::MDMV; }
inline bool is_splom(OptionId id) { return id == OptionId::SPLOM || id == OptionId::rSPLOM; }
inline bool is_two_axis(OptionId id) { return id == OptionId::SP || id == OptionId::wDCP; }

enum class Field { S1, S2, Color, Opacity, Object };

std::string_view to_string(Field f);
Field parse_field(std::string_view s);

struct FieldCapacity {
  static constexpr std::size_t spatial = 15;
  static constexpr std::size_t channel = 4;
  static constexpr std::size_t object = 2;
};

/// Contents of the selection panel.
struct EncodingState {
  std::vector<std::string> s1;
  std::vector<std::string> s2;
  std::vector<std::string> color;
  std::vector<std::string> opacity;
  std::vector<std::string> object;

  const std::vector<std::string>& field(Field f) const;
  std::vector<std::string>& field(Field f);
  std::size_t spatial_count() const { return s1.size() + s2.size(); }
  std::optional<Field> field_of(std::string_view dim) const;  // first field holding dim

  bool operator==(const EncodingState&) const = default;
};

/// Throws InvalidEncoding / UnknownDimension when enc breaks a field rule.
void validate(const EncodingState& enc, const RunTable& table);

/// Object-field dimensions split by dtype (at most one of each).
std::optional<std::string> object_1d(const EncodingState& enc, const RunTable& table);
std::optional<std::string> object_2d(const EncodingState& enc, const RunTable& table);

struct ApplicableOption {
  OptionId id;
  bool duplicated_axes = false;  // single spatial dim shown on both axes

  bool operator==(const ApplicableOption&) const = default;
};

/// Options renderable for enc, in canonical order.
std::vector<ApplicableOption> applicable_options(const EncodingState& enc, const RunTable& table);

bool is_applicable(OptionId id, const EncodingState& enc, const RunTable& table);

}  // namespace rsvp
