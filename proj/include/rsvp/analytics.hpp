#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rsvp/data_model.hpp"

namespace rsvp {

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return lo <= v && v <= hi; }
  bool operator==(const Range&) const = default;
};

/// Crossfilter state shared by every view of a dashboard.
struct FilterState {
  std::map<std::string, Range> ranges;  // absent dimension => unfiltered
  std::optional<RunId> selected_run;

  bool operator==(const FilterState&) const = default;
};

/// Fixed-size bitset over run ids.
class RunBitset {
 public:
  RunBitset() = default;
  explicit RunBitset(std::size_t size, bool value = false);

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v = true);
  std::size_t count() const;
  std::vector<RunId> ids() const;

  RunBitset& operator&=(const RunBitset& other);
  bool operator==(const RunBitset&) const = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

struct FilterResult {
  RunBitset pass;
  std::size_t pass_count = 0;
};

/// Throws UnknownDimension, NonQuantitativeFilter, InvalidFilter or UnknownRun.
void validate(const FilterState& f, const RunTable& table);

FilterResult apply_filters(const RunTable& table, const FilterState& f);

FilterState select_run(FilterState f, const RunTable& table, RunId id);
FilterState clear_selection(FilterState f);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count_pass = 0;
  std::size_t count_all = 0;
};

inline constexpr int kDefaultBins = 10;

/// Equal-width bins over the unfiltered extent; right-open except the last.
std::vector<HistogramBin> histogram(const RunTable& table, std::string_view dim, const FilterState& f,
                                    int bins = kDefaultBins);
std::vector<HistogramBin> histogram(const RunTable& table, std::string_view dim, const FilterResult& pass,
                                    int bins = kDefaultBins);

inline constexpr int kDensityGridSize = 64;

/// Kernel density on a regular node grid. density(iy, ix) is the value at
/// (x_min + ix * dx, y_min + iy * dy); the node Riemann sum times dx * dy is 1.
struct DensityGrid {
  Eigen::MatrixXd density;
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  double dx = 0, dy = 0;
  double bandwidth_x = 0, bandwidth_y = 0;
  std::size_t sample_count = 0;

  double riemann_sum() const { return density.sum() * dx * dy; }
};

/// Gaussian KDE of the filtered-in runs. Throws DegenerateExtent for a
/// zero-width axis and EmptySelection when no run passes.
DensityGrid density_grid(const RunTable& table, std::string_view xdim, std::string_view ydim,
                         std::optional<std::string_view> weight, const FilterState& f,
                         int grid_size = kDensityGridSize);

struct ContourPolyline {
  double level = 0.0;
  int percentile = 0;
  std::vector<Eigen::Vector2d> points;
  bool closed = false;
};

inline constexpr std::array<int, 4> kContourPercentiles = {25, 50, 75, 90};

/// Iso-lines at the 25/50/75/90th percentile of the supported density values.
/// Returns an empty list when no run passes the filters.
std::vector<ContourPolyline> density_contours(const RunTable& table, std::string_view xdim, std::string_view ydim,
                                              std::optional<std::string_view> weight, const FilterState& f);

/// Marching squares over a density grid, joined into polylines in data coordinates.
std::vector<ContourPolyline> marching_squares(const DensityGrid& grid, double level);

/// Percentile levels used for contouring.
std::vector<double> contour_levels(const DensityGrid& grid);

struct BoxStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  double whisker_lo = 0, whisker_hi = 0;
  std::vector<RunId> outliers;
};

/// Tukey summary per series position over filtered-in runs.
std::vector<BoxStats> boxplot_series(const RunTable& table, std::string_view dim1d, const FilterState& f);

/// Normalized prefix sum of one run's series (shifted to be non-negative).
std::vector<double> cumulative_curve(const RunTable& table, std::string_view dim1d, RunId run);

/// Linear-interpolated quantile of an ascending range, p in [0, 1].
template <typename Scalar>
Scalar quantile_sorted(std::span<const Scalar> sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const Scalar frac = static_cast<Scalar>(h - static_cast<double>(lo));
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace rsvp
