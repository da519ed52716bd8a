#include "rsvp/layout.hpp"

#include <algorithm>

#include "rsvp/error.hpp"

namespace rsvp {

std::string_view to_string(ColumnSource s) {
  switch (s) {
    case ColumnSource::S1: return "S1";
    case ColumnSource::S2: return "S2";
    case ColumnSource::S1plusS2: return "S1+S2";
  }
  return "?";
}

std::string_view to_string(RowKind k) {
  switch (k) {
    case RowKind::SpatialOnly: return "SpatialOnly";
    case RowKind::ColorEncoded: return "ColorEncoded";
    case RowKind::OpacityEncoded: return "OpacityEncoded";
  }
  return "?";
}

std::string_view to_string(SwitchChannel c) {
  switch (c) {
    case SwitchChannel::X: return "X";
    case SwitchChannel::Y: return "Y";
    case SwitchChannel::Color: return "Color";
    case SwitchChannel::Opacity: return "Opacity";
  }
  return "?";
}

SmdLayout layout_smd(OptionId option, const EncodingState& enc, const RunTable& table) {
  const auto& info = option_info(option);
  if (info.category != Category::MDMV || !info.has_smd)
    throw Error(ErrorCode::NoSmd, std::string(info.name) + " has no small-multiples display");
  if (!is_applicable(option, enc, table)) {
    validate(enc, table);
    throw Error(ErrorCode::NotApplicable, std::string(info.name) + " cannot render the current encoding");
  }
  validate(enc, table);

  SmdLayout layout;
  layout.option = option;

  if (!enc.s1.empty()) layout.columns.push_back({ColumnSource::S1, enc.s1});
  if (!enc.s2.empty()) layout.columns.push_back({ColumnSource::S2, enc.s2});
  if (!enc.s1.empty() && !enc.s2.empty() && !is_splom(option)) {
    auto both = enc.s1;
    both.insert(both.end(), enc.s2.begin(), enc.s2.end());
    layout.columns.push_back({ColumnSource::S1plusS2, std::move(both)});
  }

  layout.rows.push_back({RowKind::SpatialOnly, std::nullopt});
  for (const auto& d : enc.color) layout.rows.push_back({RowKind::ColorEncoded, d});
  for (const auto& d : enc.opacity) layout.rows.push_back({RowKind::OpacityEncoded, d});

  layout.cells.resize(layout.rows.size());
  for (std::size_t r = 0; r < layout.rows.size(); ++r) {
    const auto& row = layout.rows[r];
    for (std::size_t c = 0; c < layout.columns.size(); ++c) {
      const auto& column = layout.columns[c];
      CellSpec cell;
      cell.option = option;
      if (is_two_axis(option)) {
        if (column.dims.size() == 1) {
          cell.axes = {column.dims[0], column.dims[0]};
          cell.duplicated_axes = true;
        } else {
          cell.axes = {column.dims[0], column.dims[1]};
        }
        if (column.dims.size() > 2) {
          layout.switches.push_back({r, c, SwitchChannel::X, column.dims, cell.axes[0]});
          layout.switches.push_back({r, c, SwitchChannel::Y, column.dims, cell.axes[1]});
        }
      } else {
        cell.axes = column.dims;
      }
      switch (row.kind) {
        case RowKind::SpatialOnly:
          cell.tint = column.source;
          break;
        case RowKind::ColorEncoded:
          cell.color = row.dim;
          if (enc.color.size() > 1) layout.switches.push_back({r, c, SwitchChannel::Color, enc.color, *row.dim});
          break;
        case RowKind::OpacityEncoded:
          cell.opacity = row.dim;
          if (enc.opacity.size() > 1)
            layout.switches.push_back({r, c, SwitchChannel::Opacity, enc.opacity, *row.dim});
          break;
      }
      layout.cells[r].push_back(std::move(cell));
    }
  }
  layout.selected_cell = {0, 0};
  return layout;
}

CellSpec detail_for(SmdLayout& layout, CellIndex cell) {
  if (cell.row >= layout.row_count() || cell.col >= layout.column_count())
    throw Error(ErrorCode::OutOfRange, "cell (" + std::to_string(cell.row) + ", " + std::to_string(cell.col) +
                                           ") outside a " + std::to_string(layout.row_count()) + "x" +
                                           std::to_string(layout.column_count()) + " grid");
  layout.selected_cell = cell;
  return layout.cells[cell.row][cell.col];
}

void set_switch(SmdLayout& layout, std::size_t index, const std::string& dim) {
  if (index >= layout.switches.size()) throw Error(ErrorCode::OutOfRange, "switch " + std::to_string(index));
  auto& sw = layout.switches[index];
  if (std::find(sw.candidates.begin(), sw.candidates.end(), dim) == sw.candidates.end())
    throw Error(ErrorCode::InvalidArgument, dim + " is not a candidate of this switch");
  sw.active = dim;
  auto& cell = layout.cells[sw.row][sw.col];
  switch (sw.channel) {
    case SwitchChannel::X: cell.axes[0] = dim; break;
    case SwitchChannel::Y: cell.axes[1] = dim; break;
    case SwitchChannel::Color: cell.color = dim; break;
    case SwitchChannel::Opacity: cell.opacity = dim; break;
  }
  if (is_two_axis(cell.option)) cell.duplicated_axes = cell.axes[0] == cell.axes[1];
}

std::vector<CellSpec> histogram_cells(const EncodingState& enc) {
  std::vector<CellSpec> out;
  auto add = [&](const std::vector<std::string>& dims, ColumnSource source) {
    for (const auto& d : dims) {
      CellSpec cell;
      cell.option = OptionId::Hist;
      cell.axes = {d};
      cell.tint = source;
      out.push_back(std::move(cell));
    }
  };
  add(enc.s1, ColumnSource::S1);
  add(enc.s2, ColumnSource::S2);
  return out;
}

CellSpec complex_cell(OptionId option, const EncodingState& enc, const RunTable& table) {
  const auto& info = option_info(option);
  std::optional<std::string> object;
  if (info.category == Category::Complex1D) object = object_1d(enc, table);
  else if (info.category == Category::Complex2D) object = object_2d(enc, table);
  else throw Error(ErrorCode::InvalidArgument, std::string(info.name) + " is not a complex-object option");
  if (!object) throw Error(ErrorCode::NotApplicable, std::string(info.name) + " needs a matching object dimension");
  CellSpec cell;
  cell.option = option;
  cell.object = object;
  if (info.supports_color && !enc.color.empty()) cell.color = enc.color.front();
  return cell;
}

}  // namespace rsvp
