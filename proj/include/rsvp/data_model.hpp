#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace rsvp {

enum class DType { Quantitative, Series1D, ImageRef2D };

enum class Role { InputControl, InputEnvironmental, OutputDirect, OutputDerived, Uncertainty, Unassigned };

enum class Sampling { Regular, Stochastic, Unknown };

std::string_view to_string(DType v);
std::string_view to_string(Role v);
std::string_view to_string(Sampling v);

// Case-insensitive; throws InvalidArgument on unknown names.
DType parse_dtype(std::string_view s);
Role parse_role(std::string_view s);
Sampling parse_sampling(std::string_view s);

using RunId = std::size_t;

struct Dimension {
  std::string name;
  DType dtype = DType::Quantitative;
  Role role = Role::Unassigned;
  Sampling sampling = Sampling::Unknown;
  std::optional<std::size_t> series_length;  // Series1D only

  bool operator==(const Dimension&) const = default;
};

/// Column storage. Series are stored run-major: one row per run.
using ColumnValues = std::variant<Eigen::VectorXd, Eigen::MatrixXd, std::vector<std::string>>;

/// One cell, materialized.
using CellValue = std::variant<double, Eigen::VectorXd, std::string>;

struct Run {
  RunId id = 0;
  std::vector<CellValue> values;
};

struct IngestOptions {
  std::size_t max_runs = 1000;
};

/// Immutable columnar run table. Copies share the value storage; metadata
/// updates produce a new table with the same columns.
class RunTable {
 public:
  RunTable() = default;
  RunTable(std::vector<Dimension> dims, std::vector<ColumnValues> columns,
           Sampling default_sampling = Sampling::Stochastic);

  const std::vector<Dimension>& dimensions() const { return dims_; }
  std::size_t dimension_count() const { return dims_.size(); }
  std::size_t run_count() const { return run_count_; }
  Sampling default_sampling() const { return default_sampling_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws UnknownDimension
  const Dimension& dimension(std::string_view name) const { return dims_[index_of(name)]; }

  // Typed column access. Throw UnknownDimension / TypeConflict.
  const Eigen::VectorXd& quantitative(std::string_view name) const;
  const Eigen::MatrixXd& series(std::string_view name) const;
  const std::vector<std::string>& images(std::string_view name) const;

  CellValue value(RunId run, std::size_t dim) const;
  Run run(RunId id) const;

  /// Sampling used for recommendation: the dimension's own, or the table
  /// default when the dimension says Unknown.
  Sampling effective_sampling(const Dimension& d) const;

  RunTable with_dimension(std::size_t index, Dimension updated) const;
  RunTable with_default_sampling(Sampling s) const;

 private:
  std::vector<Dimension> dims_;
  std::shared_ptr<const std::vector<ColumnValues>> columns_;
  std::size_t run_count_ = 0;
  Sampling default_sampling_ = Sampling::Stochastic;
};

struct InferredType {
  DType dtype = DType::Quantitative;
  std::optional<std::size_t> series_length;
};

/// Classifies a column from its raw cells. Precedence Series1D > ImageRef2D > Quantitative.
InferredType infer_dtype(std::span<const std::string> cells, std::string_view column = {});

RunTable load_csv(std::string_view text, const IngestOptions& options = {});

/// Writes a table back to CSV such that load_csv reproduces it exactly.
std::string serialize_csv(const RunTable& table);

RunTable set_metadata(const RunTable& table, std::string_view name, Role role, Sampling sampling);

/// Applies a JSON sidecar:
/// {"dimensions": {"<name>": {"role": "...", "sampling": "..."}}, "default_sampling": "..."}
RunTable apply_sidecar(const RunTable& table, std::string_view sidecar_json);

// Cell-level helpers shared with the CLI and tests.
std::optional<double> parse_float(std::string_view s);
std::optional<std::vector<double>> parse_series(std::string_view s);
bool looks_like_image_ref(std::string_view s);
std::string format_double(double v);

}  // namespace rsvp
