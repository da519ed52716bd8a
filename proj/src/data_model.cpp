#include "rsvp/data_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include "json.hpp"

#include "rsvp/error.hpp"

namespace rsvp {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// U+2212 MINUS SIGN, which spreadsheets sometimes export.
constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

using Record = std::vector<std::string>;

// RFC-4180 reader. Returns records with their 1-based line number of origin.
std::vector<Record> read_records(std::string_view text) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  bool record_has_content = false;

  auto end_field = [&] {
    current.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    if (record_has_content) records.push_back(std::move(current));
    current.clear();
    record_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        record_has_content = true;
        break;
      case ',':
        end_field();
        record_has_content = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
        record_has_content = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::TypeConflict, "unterminated quoted cell");
  if (record_has_content || field_started) end_record();
  return records;
}

bool needs_quotes(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos ||
         (!s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) ||
                         std::isspace(static_cast<unsigned char>(s.back()))));
}

std::string quote_cell(std::string_view s) {
  if (!needs_quotes(s)) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

enum class CellKind { Empty, Series, Image, Number, Other };

CellKind classify(std::string_view cell) {
  if (trim(cell).empty()) return CellKind::Empty;
  if (parse_series(cell)) return CellKind::Series;
  if (looks_like_image_ref(cell)) return CellKind::Image;
  if (parse_float(cell)) return CellKind::Number;
  return CellKind::Other;
}

}  // namespace

std::string_view to_string(DType v) {
  switch (v) {
    case DType::Quantitative: return "Quantitative";
    case DType::Series1D: return "Series1D";
    case DType::ImageRef2D: return "ImageRef2D";
  }
  return "?";
}

std::string_view to_string(Role v) {
  switch (v) {
    case Role::InputControl: return "InputControl";
    case Role::InputEnvironmental: return "InputEnvironmental";
    case Role::OutputDirect: return "OutputDirect";
    case Role::OutputDerived: return "OutputDerived";
    case Role::Uncertainty: return "Uncertainty";
    case Role::Unassigned: return "Unassigned";
  }
  return "?";
}

std::string_view to_string(Sampling v) {
  switch (v) {
    case Sampling::Regular: return "Regular";
    case Sampling::Stochastic: return "Stochastic";
    case Sampling::Unknown: return "Unknown";
  }
  return "?";
}

DType parse_dtype(std::string_view s) {
  const auto l = lower(s);
  for (auto v : {DType::Quantitative, DType::Series1D, DType::ImageRef2D})
    if (lower(to_string(v)) == l) return v;
  throw Error(ErrorCode::InvalidArgument, "unknown dtype '" + std::string(s) + "'");
}

Role parse_role(std::string_view s) {
  const auto l = lower(s);
  for (auto v : {Role::InputControl, Role::InputEnvironmental, Role::OutputDirect, Role::OutputDerived,
                 Role::Uncertainty, Role::Unassigned})
    if (lower(to_string(v)) == l) return v;
  throw Error(ErrorCode::InvalidArgument, "unknown role '" + std::string(s) + "'");
}

Sampling parse_sampling(std::string_view s) {
  const auto l = lower(s);
  for (auto v : {Sampling::Regular, Sampling::Stochastic, Sampling::Unknown})
    if (lower(to_string(v)) == l) return v;
  throw Error(ErrorCode::InvalidArgument, "unknown sampling '" + std::string(s) + "'");
}

std::optional<double> parse_float(std::string_view s) {
  s = trim(s);
  std::string buf;
  if (s.starts_with(kUnicodeMinus)) {
    buf = "-";
    buf += s.substr(kUnicodeMinus.size());
    s = buf;
  }
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::vector<double>> parse_series(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
  s = s.substr(1, s.size() - 2);
  std::vector<double> out;
  if (trim(s).empty()) return std::nullopt;
  while (true) {
    const auto comma = s.find(',');
    const auto token = s.substr(0, comma);
    const auto v = parse_float(token);
    if (!v) return std::nullopt;
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

bool looks_like_image_ref(std::string_view s) {
  s = trim(s);
  std::string l = lower(s);
  // Strip query string / fragment from URLs before checking the extension.
  if (l.starts_with("http://") || l.starts_with("https://")) {
    const auto cut = l.find_first_of("?#");
    if (cut != std::string::npos) l.resize(cut);
  }
  static constexpr std::array<std::string_view, 6> kExt = {".png", ".jpg", ".jpeg", ".gif", ".webp", ".svg"};
  return std::any_of(kExt.begin(), kExt.end(), [&](std::string_view e) {
    return l.size() > e.size() && l.ends_with(e);
  });
}

std::string format_double(double v) {
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

InferredType infer_dtype(std::span<const std::string> cells, std::string_view column) {
  bool any = false, all_series = true, all_image = true, all_number = true;
  std::optional<std::size_t> length;
  for (const auto& cell : cells) {
    const auto kind = classify(cell);
    if (kind == CellKind::Empty) continue;
    if (!any) {
      any = true;
      if (kind == CellKind::Series) length = parse_series(cell)->size();
    }
    all_series = all_series && kind == CellKind::Series;
    all_image = all_image && kind == CellKind::Image;
    all_number = all_number && kind == CellKind::Number;
  }
  if (!any) throw Error(ErrorCode::AllEmpty, "column '" + std::string(column) + "' has no values");
  if (all_series) return {DType::Series1D, length};
  if (all_image) return {DType::ImageRef2D, std::nullopt};
  if (all_number) return {DType::Quantitative, std::nullopt};
  throw Error(ErrorCode::MixedTypes, "column '" + std::string(column) + "' mixes cell types");
}

RunTable::RunTable(std::vector<Dimension> dims, std::vector<ColumnValues> columns, Sampling default_sampling)
    : dims_(std::move(dims)), default_sampling_(default_sampling) {
  if (dims_.size() != columns.size())
    throw Error(ErrorCode::InvalidArgument, "dimension/column count mismatch");
  std::unordered_set<std::string> seen;
  std::optional<std::size_t> rows;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const auto& d = dims_[i];
    if (d.name.empty()) throw Error(ErrorCode::InvalidArgument, "empty dimension name");
    if (!seen.insert(d.name).second) throw Error(ErrorCode::DuplicateHeader, d.name);
    std::size_t n = 0;
    switch (d.dtype) {
      case DType::Quantitative: {
        const auto* v = std::get_if<Eigen::VectorXd>(&columns[i]);
        if (!v) throw Error(ErrorCode::TypeConflict, d.name);
        n = static_cast<std::size_t>(v->size());
        break;
      }
      case DType::Series1D: {
        const auto* m = std::get_if<Eigen::MatrixXd>(&columns[i]);
        if (!m || !d.series_length || *d.series_length == 0 ||
            static_cast<std::size_t>(m->cols()) != *d.series_length)
          throw Error(ErrorCode::SeriesLengthMismatch, d.name);
        n = static_cast<std::size_t>(m->rows());
        break;
      }
      case DType::ImageRef2D: {
        const auto* s = std::get_if<std::vector<std::string>>(&columns[i]);
        if (!s) throw Error(ErrorCode::TypeConflict, d.name);
        n = s->size();
        break;
      }
    }
    if (d.dtype != DType::Series1D && d.series_length)
      throw Error(ErrorCode::InvalidArgument, "series_length on non-series dimension " + d.name);
    if (rows && *rows != n) throw Error(ErrorCode::RowArityMismatch, d.name);
    rows = n;
  }
  run_count_ = rows.value_or(0);
  columns_ = std::make_shared<const std::vector<ColumnValues>>(std::move(columns));
}

std::optional<std::size_t> RunTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < dims_.size(); ++i)
    if (dims_[i].name == name) return i;
  return std::nullopt;
}

std::size_t RunTable::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::UnknownDimension, std::string(name));
}

const Eigen::VectorXd& RunTable::quantitative(std::string_view name) const {
  const auto i = index_of(name);
  if (const auto* v = std::get_if<Eigen::VectorXd>(&(*columns_)[i])) return *v;
  throw Error(ErrorCode::TypeConflict, std::string(name) + " is not Quantitative");
}

const Eigen::MatrixXd& RunTable::series(std::string_view name) const {
  const auto i = index_of(name);
  if (const auto* v = std::get_if<Eigen::MatrixXd>(&(*columns_)[i])) return *v;
  throw Error(ErrorCode::TypeConflict, std::string(name) + " is not Series1D");
}

const std::vector<std::string>& RunTable::images(std::string_view name) const {
  const auto i = index_of(name);
  if (const auto* v = std::get_if<std::vector<std::string>>(&(*columns_)[i])) return *v;
  throw Error(ErrorCode::TypeConflict, std::string(name) + " is not ImageRef2D");
}

CellValue RunTable::value(RunId run, std::size_t dim) const {
  if (run >= run_count_) throw Error(ErrorCode::UnknownRun, std::to_string(run));
  if (dim >= dims_.size()) throw Error(ErrorCode::UnknownDimension, std::to_string(dim));
  const auto& col = (*columns_)[dim];
  const auto r = static_cast<Eigen::Index>(run);
  if (const auto* v = std::get_if<Eigen::VectorXd>(&col)) return (*v)(r);
  if (const auto* m = std::get_if<Eigen::MatrixXd>(&col)) return Eigen::VectorXd(m->row(r).transpose());
  return std::get<std::vector<std::string>>(col)[run];
}

Run RunTable::run(RunId id) const {
  Run out{id, {}};
  out.values.reserve(dims_.size());
  for (std::size_t d = 0; d < dims_.size(); ++d) out.values.push_back(value(id, d));
  return out;
}

Sampling RunTable::effective_sampling(const Dimension& d) const {
  return d.sampling == Sampling::Unknown ? default_sampling_ : d.sampling;
}

RunTable RunTable::with_dimension(std::size_t index, Dimension updated) const {
  if (index >= dims_.size()) throw Error(ErrorCode::UnknownDimension, std::to_string(index));
  const auto& old = dims_[index];
  if (updated.name != old.name || updated.dtype != old.dtype || updated.series_length != old.series_length)
    throw Error(ErrorCode::InvalidArgument, "metadata updates cannot change name or dtype");
  RunTable copy = *this;
  copy.dims_[index] = std::move(updated);
  return copy;
}

RunTable RunTable::with_default_sampling(Sampling s) const {
  RunTable copy = *this;
  copy.default_sampling_ = s;
  return copy;
}

RunTable load_csv(std::string_view text, const IngestOptions& options) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  if (trim(text).empty()) throw Error(ErrorCode::EmptyInput, "no CSV content");

  auto records = read_records(text);
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no CSV content");

  const Record header = records.front();
  const std::size_t width = header.size();
  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  for (const auto& raw : header) {
    std::string name(trim(raw));
    if (name.empty()) throw Error(ErrorCode::InvalidArgument, "empty header name");
    if (!seen.insert(name).second) throw Error(ErrorCode::DuplicateHeader, name);
    names.push_back(std::move(name));
  }

  const std::size_t n = records.size() - 1;
  if (n > options.max_runs)
    throw Error(ErrorCode::RunLimitExceeded,
                std::to_string(n) + " runs exceed the limit of " + std::to_string(options.max_runs));
  for (std::size_t r = 0; r < n; ++r) {
    if (records[r + 1].size() != width)
      throw Error(ErrorCode::RowArityMismatch, "row " + std::to_string(r) + " has " +
                                                   std::to_string(records[r + 1].size()) + " cells, expected " +
                                                   std::to_string(width));
  }

  std::vector<Dimension> dims;
  std::vector<ColumnValues> columns;
  std::vector<std::string> cells(n);
  for (std::size_t c = 0; c < width; ++c) {
    for (std::size_t r = 0; r < n; ++r) cells[r] = records[r + 1][c];
    if (n == 0) throw Error(ErrorCode::AllEmpty, "column '" + names[c] + "' has no values");
    const auto inferred = infer_dtype(cells, names[c]);
    Dimension dim{names[c], inferred.dtype, Role::Unassigned, Sampling::Unknown, inferred.series_length};

    switch (inferred.dtype) {
      case DType::Quantitative: {
        Eigen::VectorXd v(static_cast<Eigen::Index>(n));
        for (std::size_t r = 0; r < n; ++r) {
          const auto x = parse_float(cells[r]);
          if (!x)
            throw Error(ErrorCode::TypeConflict, "column '" + names[c] + "', row " + std::to_string(r) +
                                                     (trim(cells[r]).empty() ? ": empty cell" : ": not a number"));
          v(static_cast<Eigen::Index>(r)) = *x;
        }
        columns.emplace_back(std::move(v));
        break;
      }
      case DType::Series1D: {
        const auto len = *inferred.series_length;
        Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(len));
        for (std::size_t r = 0; r < n; ++r) {
          const auto s = parse_series(cells[r]);
          if (!s)
            throw Error(ErrorCode::TypeConflict, "column '" + names[c] + "', row " + std::to_string(r) +
                                                     (trim(cells[r]).empty() ? ": empty cell" : ": not a series"));
          if (s->size() != len)
            throw Error(ErrorCode::SeriesLengthMismatch, "column '" + names[c] + "', row " + std::to_string(r) +
                                                             ": length " + std::to_string(s->size()) +
                                                             ", expected " + std::to_string(len));
          for (std::size_t k = 0; k < len; ++k)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = (*s)[k];
        }
        columns.emplace_back(std::move(m));
        break;
      }
      case DType::ImageRef2D: {
        std::vector<std::string> refs;
        refs.reserve(n);
        for (std::size_t r = 0; r < n; ++r) {
          const auto cell = trim(cells[r]);
          if (!cell.empty() && !looks_like_image_ref(cell))
            throw Error(ErrorCode::TypeConflict, "column '" + names[c] + "', row " + std::to_string(r));
          refs.emplace_back(cell);  // empty renders as a placeholder
        }
        columns.emplace_back(std::move(refs));
        break;
      }
    }
    dims.push_back(std::move(dim));
  }
  return RunTable(std::move(dims), std::move(columns));
}

std::string serialize_csv(const RunTable& table) {
  std::string out;
  const auto& dims = table.dimensions();
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (d) out += ',';
    out += quote_cell(dims[d].name);
  }
  out += '\n';
  for (RunId r = 0; r < table.run_count(); ++r) {
    for (std::size_t d = 0; d < dims.size(); ++d) {
      if (d) out += ',';
      const auto cell = table.value(r, d);
      if (const auto* x = std::get_if<double>(&cell)) {
        out += format_double(*x);
      } else if (const auto* s = std::get_if<Eigen::VectorXd>(&cell)) {
        std::string series = "[";
        for (Eigen::Index k = 0; k < s->size(); ++k) {
          if (k) series += ',';
          series += format_double((*s)(k));
        }
        series += ']';
        out += quote_cell(series);
      } else {
        out += quote_cell(std::get<std::string>(cell));
      }
    }
    out += '\n';
  }
  return out;
}

RunTable set_metadata(const RunTable& table, std::string_view name, Role role, Sampling sampling) {
  const auto i = table.index_of(name);
  Dimension d = table.dimensions()[i];
  d.role = role;
  d.sampling = sampling;
  return table.with_dimension(i, std::move(d));
}

RunTable apply_sidecar(const RunTable& table, std::string_view sidecar_json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(sidecar_json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("sidecar is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "sidecar must be a JSON object");

  RunTable out = table;
  if (auto it = doc.find("default_sampling"); it != doc.end()) {
    if (!it->is_string()) throw Error(ErrorCode::InvalidArgument, "default_sampling must be a string");
    out = out.with_default_sampling(parse_sampling(it->get<std::string>()));
  }
  if (auto it = doc.find("dimensions"); it != doc.end()) {
    if (!it->is_object()) throw Error(ErrorCode::InvalidArgument, "dimensions must be an object");
    for (const auto& [name, meta] : it->items()) {
      const auto& current = out.dimension(name);
      Role role = current.role;
      Sampling sampling = current.sampling;
      if (!meta.is_object()) throw Error(ErrorCode::InvalidArgument, "metadata for " + name + " must be an object");
      if (meta.contains("role")) role = parse_role(meta.at("role").get<std::string>());
      if (meta.contains("sampling")) sampling = parse_sampling(meta.at("sampling").get<std::string>());
      out = set_metadata(out, name, role, sampling);
    }
  }
  return out;
}

}  // namespace rsvp
