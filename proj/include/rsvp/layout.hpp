#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rsvp/design_space.hpp"

namespace rsvp {

enum class ColumnSource { S1, S2, S1plusS2 };
enum class RowKind { SpatialOnly, ColorEncoded, OpacityEncoded };
enum class SwitchChannel { X, Y, Color, Opacity };

std::string_view to_string(ColumnSource s);
std::string_view to_string(RowKind k);
std::string_view to_string(SwitchChannel c);

struct ColumnSpec {
  ColumnSource source;
  std::vector<std::string> dims;

  bool operator==(const ColumnSpec&) const = default;
};

struct RowSpec {
  RowKind kind = RowKind::SpatialOnly;
  std::optional<std::string> dim;  // bound channel dimension for encoded rows

  bool operator==(const RowSpec&) const = default;
};

/// Concrete encodings of a single chart instance. For SP/wDCP the first two
/// axes are x and y.
struct CellSpec {
  OptionId option = OptionId::PC;
  std::vector<std::string> axes;
  std::optional<std::string> color;
  std::optional<std::string> opacity;
  std::optional<std::string> object;
  std::optional<ColumnSource> tint;  // categorical field tint, spatial-only row
  bool duplicated_axes = false;

  bool operator==(const CellSpec&) const = default;
};

struct SwitchSpec {
  std::size_t row = 0;
  std::size_t col = 0;
  SwitchChannel channel = SwitchChannel::X;
  std::vector<std::string> candidates;
  std::string active;

  bool operator==(const SwitchSpec&) const = default;
};

struct CellIndex {
  std::size_t row = 0;
  std::size_t col = 0;

  bool operator==(const CellIndex&) const = default;
};

struct SmdLayout {
  OptionId option = OptionId::PC;
  std::vector<ColumnSpec> columns;
  std::vector<RowSpec> rows;
  std::vector<std::vector<CellSpec>> cells;  // [row][col]
  std::vector<SwitchSpec> switches;
  CellIndex selected_cell;

  std::size_t row_count() const { return rows.size(); }
  std::size_t column_count() const { return columns.size(); }

  bool operator==(const SmdLayout&) const = default;
};

/// Builds the small-multiples grid for an MDMV option.
/// Throws NoSmd for options without a small-multiples display and
/// NotApplicable when the option cannot render enc.
SmdLayout layout_smd(OptionId option, const EncodingState& enc, const RunTable& table);

/// Returns the detail-view encoding of a cell and marks it selected.
CellSpec detail_for(SmdLayout& layout, CellIndex cell);

/// Points switch `index` at `dim` and updates the affected cell.
void set_switch(SmdLayout& layout, std::size_t index, const std::string& dim);

/// One single-dimension histogram per spatial dimension, S1 first.
std::vector<CellSpec> histogram_cells(const EncodingState& enc);

/// The overview instance of a complex-object option.
CellSpec complex_cell(OptionId option, const EncodingState& enc, const RunTable& table);

}  // namespace rsvp
