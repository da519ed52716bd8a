#include "rsvp/analytics.hpp"

#include <bit>
#include <numeric>
#include <unordered_map>

#include "rsvp/error.hpp"

namespace rsvp {

RunBitset::RunBitset(std::size_t size, bool value) : words_((size + 63) / 64, value ? ~0ULL : 0ULL), size_(size) {
  if (value && (size & 63)) words_.back() = (1ULL << (size & 63)) - 1;
}

void RunBitset::set(std::size_t i, bool v) {
  const auto mask = 1ULL << (i & 63);
  if (v) words_[i >> 6] |= mask;
  else words_[i >> 6] &= ~mask;
}

std::size_t RunBitset::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<RunId> RunBitset::ids() const {
  std::vector<RunId> out;
  out.reserve(count());
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

RunBitset& RunBitset::operator&=(const RunBitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

void validate(const FilterState& f, const RunTable& table) {
  for (const auto& [name, range] : f.ranges) {
    if (table.dimension(name).dtype != DType::Quantitative)
      throw Error(ErrorCode::NonQuantitativeFilter, name);
    if (!(range.lo <= range.hi))
      throw Error(ErrorCode::InvalidFilter, name + ": lo must not exceed hi");
  }
  if (f.selected_run && *f.selected_run >= table.run_count())
    throw Error(ErrorCode::UnknownRun, std::to_string(*f.selected_run));
}

FilterResult apply_filters(const RunTable& table, const FilterState& f) {
  validate(f, table);
  const auto n = table.run_count();
  FilterResult result{RunBitset(n, true), 0};
  for (const auto& [name, range] : f.ranges) {
    const auto& col = table.quantitative(name);
    RunBitset pass(n);
    for (std::size_t r = 0; r < n; ++r) pass.set(r, range.contains(col(static_cast<Eigen::Index>(r))));
    result.pass &= pass;
  }
  result.pass_count = result.pass.count();
  return result;
}

FilterState select_run(FilterState f, const RunTable& table, RunId id) {
  if (id >= table.run_count()) throw Error(ErrorCode::UnknownRun, std::to_string(id));
  f.selected_run = id;
  return f;
}

FilterState clear_selection(FilterState f) {
  f.selected_run.reset();
  return f;
}

std::vector<HistogramBin> histogram(const RunTable& table, std::string_view dim, const FilterState& f, int bins) {
  return histogram(table, dim, apply_filters(table, f), bins);
}

std::vector<HistogramBin> histogram(const RunTable& table, std::string_view dim, const FilterResult& pass,
                                    int bins) {
  if (bins < 1) throw Error(ErrorCode::InvalidArgument, "bin count must be at least 1");
  const auto& col = table.quantitative(dim);
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  if (col.size() == 0) return out;

  const double lo = col.minCoeff();
  const double hi = col.maxCoeff();
  const double width = (hi - lo) / bins;
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) edges[static_cast<std::size_t>(i)] = lo + i * width;
  edges.back() = hi;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].lo = edges[i];
    out[i].hi = edges[i + 1];
  }

  const auto last = static_cast<std::ptrdiff_t>(bins) - 1;
  for (Eigen::Index r = 0; r < col.size(); ++r) {
    const double v = col(r);
    std::ptrdiff_t b = width > 0 ? static_cast<std::ptrdiff_t>(std::floor((v - lo) / width)) : 0;
    b = std::clamp<std::ptrdiff_t>(b, 0, last);
    // Settle against the stored edges so the result matches edge comparisons exactly.
    while (b > 0 && v < edges[static_cast<std::size_t>(b)]) --b;
    while (b < last && v >= edges[static_cast<std::size_t>(b + 1)]) ++b;
    auto& bin = out[static_cast<std::size_t>(b)];
    ++bin.count_all;
    if (pass.pass.test(static_cast<std::size_t>(r))) ++bin.count_pass;
  }
  return out;
}

namespace {

struct Sample {
  Eigen::VectorXd x, y, w;
};

double weighted_std(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  const double wsum = w.sum();
  const double mean = v.dot(w) / wsum;
  const double var = (v.array() - mean).square().matrix().dot(w) / wsum;
  // Bessel-style correction with the effective sample size.
  const double neff = wsum * wsum / w.squaredNorm();
  return neff > 1.0 ? std::sqrt(var * neff / (neff - 1.0)) : 0.0;
}

// Gaussian kernel matrix: rows = samples, cols = grid nodes.
Eigen::MatrixXd kernel_matrix(const Eigen::VectorXd& samples, double origin, double step, int nodes, double h) {
  Eigen::MatrixXd k(samples.size(), nodes);
  const double norm = 1.0 / (std::sqrt(2.0 * M_PI) * h);
  for (Eigen::Index i = 0; i < samples.size(); ++i)
    for (int j = 0; j < nodes; ++j) {
      const double u = (origin + j * step - samples(i)) / h;
      k(i, j) = norm * std::exp(-0.5 * u * u);
    }
  return k;
}

}  // namespace

DensityGrid density_grid(const RunTable& table, std::string_view xdim, std::string_view ydim,
                         std::optional<std::string_view> weight, const FilterState& f, int grid_size) {
  if (grid_size < 2) throw Error(ErrorCode::InvalidArgument, "grid size must be at least 2");
  const auto& xs = table.quantitative(xdim);
  const auto& ys = table.quantitative(ydim);
  const Eigen::VectorXd* ws = weight ? &table.quantitative(*weight) : nullptr;
  const auto pass = apply_filters(table, f);

  DensityGrid grid;
  grid.x_min = xs.minCoeff();
  grid.x_max = xs.maxCoeff();
  grid.y_min = ys.minCoeff();
  grid.y_max = ys.maxCoeff();
  if (grid.x_max == grid.x_min) throw Error(ErrorCode::DegenerateExtent, std::string(xdim));
  if (grid.y_max == grid.y_min) throw Error(ErrorCode::DegenerateExtent, std::string(ydim));
  if (pass.pass_count == 0) throw Error(ErrorCode::EmptySelection, "no run passes the filters");

  grid.dx = (grid.x_max - grid.x_min) / (grid_size - 1);
  grid.dy = (grid.y_max - grid.y_min) / (grid_size - 1);

  const auto ids = pass.pass.ids();
  const auto n = static_cast<Eigen::Index>(ids.size());
  Sample s{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd::Ones(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(ids[static_cast<std::size_t>(i)]);
    s.x(i) = xs(r);
    s.y(i) = ys(r);
  }
  if (ws) {
    const double shift = ws->minCoeff();
    for (Eigen::Index i = 0; i < n; ++i) s.w(i) = (*ws)(static_cast<Eigen::Index>(ids[static_cast<std::size_t>(i)])) - shift;
    const double mean = s.w.mean();
    if (mean > 0) s.w /= mean;
    else s.w.setOnes();
  }
  grid.sample_count = ids.size();

  // Scott's rule; a lone or constant sample falls back to a sixteenth of the extent.
  const double neff = s.w.sum() * s.w.sum() / s.w.squaredNorm();
  const double scott = std::pow(neff, -1.0 / 6.0);
  const double sx = weighted_std(s.x, s.w);
  const double sy = weighted_std(s.y, s.w);
  grid.bandwidth_x = sx > 0 ? sx * scott : (grid.x_max - grid.x_min) / 16.0;
  grid.bandwidth_y = sy > 0 ? sy * scott : (grid.y_max - grid.y_min) / 16.0;

  const Eigen::MatrixXd kx = kernel_matrix(s.x, grid.x_min, grid.dx, grid_size, grid.bandwidth_x);
  const Eigen::MatrixXd ky = kernel_matrix(s.y, grid.y_min, grid.dy, grid_size, grid.bandwidth_y);
  grid.density = ky.transpose() * s.w.asDiagonal() * kx;

  const double mass = grid.density.sum() * grid.dx * grid.dy;
  if (mass > 0) grid.density /= mass;
  return grid;
}

std::vector<double> contour_levels(const DensityGrid& grid) {
  const double peak = grid.density.maxCoeff();
  std::vector<double> support;
  support.reserve(static_cast<std::size_t>(grid.density.size()));
  for (Eigen::Index i = 0; i < grid.density.size(); ++i)
    if (grid.density.data()[i] > 1e-3 * peak) support.push_back(grid.density.data()[i]);
  std::sort(support.begin(), support.end());
  std::vector<double> levels;
  for (int p : kContourPercentiles)
    levels.push_back(quantile_sorted<double>(support, p / 100.0));
  return levels;
}

namespace {

// Edge keys: horizontal edge (iy, ix)-(iy, ix+1) -> 2*(iy*nx+ix); vertical (iy, ix)-(iy+1, ix) -> +1.
struct EdgePoint {
  std::size_t key;
  Eigen::Vector2d pos;
};

}  // namespace

std::vector<ContourPolyline> marching_squares(const DensityGrid& grid, double level) {
  const auto& d = grid.density;
  const Eigen::Index ny = d.rows(), nx = d.cols();
  auto hkey = [&](Eigen::Index iy, Eigen::Index ix) { return static_cast<std::size_t>(2 * (iy * nx + ix)); };
  auto vkey = [&](Eigen::Index iy, Eigen::Index ix) { return static_cast<std::size_t>(2 * (iy * nx + ix) + 1); };
  auto px = [&](double ix) { return grid.x_min + ix * grid.dx; };
  auto py = [&](double iy) { return grid.y_min + iy * grid.dy; };
  auto t = [&](double a, double b) { return (level - a) / (b - a); };

  std::unordered_map<std::size_t, Eigen::Vector2d> position;
  std::unordered_map<std::size_t, std::vector<std::size_t>> adj;
  auto segment = [&](const EdgePoint& a, const EdgePoint& b) {
    position[a.key] = a.pos;
    position[b.key] = b.pos;
    adj[a.key].push_back(b.key);
    adj[b.key].push_back(a.key);
  };

  for (Eigen::Index iy = 0; iy + 1 < ny; ++iy) {
    for (Eigen::Index ix = 0; ix + 1 < nx; ++ix) {
      const double v00 = d(iy, ix), v01 = d(iy, ix + 1), v10 = d(iy + 1, ix), v11 = d(iy + 1, ix + 1);
      const int code = (v00 >= level ? 1 : 0) | (v01 >= level ? 2 : 0) | (v11 >= level ? 4 : 0) |
                       (v10 >= level ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const EdgePoint bottom{hkey(iy, ix), {px(ix + t(v00, v01)), py(static_cast<double>(iy))}};
      const EdgePoint top{hkey(iy + 1, ix), {px(ix + t(v10, v11)), py(static_cast<double>(iy + 1))}};
      const EdgePoint left{vkey(iy, ix), {px(static_cast<double>(ix)), py(iy + t(v00, v10))}};
      const EdgePoint right{vkey(iy, ix + 1), {px(static_cast<double>(ix + 1)), py(iy + t(v01, v11))}};
      const bool center_high = (v00 + v01 + v10 + v11) / 4.0 >= level;
      switch (code) {
        case 1: case 14: segment(left, bottom); break;
        case 2: case 13: segment(bottom, right); break;
        case 3: case 12: segment(left, right); break;
        case 4: case 11: segment(right, top); break;
        case 6: case 9: segment(bottom, top); break;
        case 7: case 8: segment(left, top); break;
        case 5:
          if (center_high) { segment(left, top); segment(bottom, right); }
          else { segment(left, bottom); segment(right, top); }
          break;
        case 10:
          if (center_high) { segment(left, bottom); segment(right, top); }
          else { segment(left, top); segment(bottom, right); }
          break;
        default: break;
      }
    }
  }

  // Walk chains: open ones start at degree-1 nodes, the rest are loops.
  std::vector<std::size_t> keys;
  keys.reserve(adj.size());
  for (const auto& [k, _] : adj) keys.push_back(k);
  std::sort(keys.begin(), keys.end());

  std::unordered_map<std::size_t, bool> visited;
  std::vector<ContourPolyline> out;
  auto walk = [&](std::size_t start) {
    ContourPolyline line;
    line.level = level;
    std::size_t cur = start;
    visited[start] = true;
    line.points.push_back(position[start]);
    while (true) {
      std::optional<std::size_t> next;
      for (auto n : adj[cur])
        if (!visited[n]) { next = n; break; }
      if (!next) {
        const auto& nb = adj[cur];
        line.closed = cur != start && std::find(nb.begin(), nb.end(), start) != nb.end() && nb.size() == 2 &&
                      line.points.size() > 2;
        break;
      }
      cur = *next;
      visited[cur] = true;
      line.points.push_back(position[cur]);
    }
    if (line.closed) line.points.push_back(line.points.front());
    out.push_back(std::move(line));
  };
  for (auto k : keys)
    if (!visited[k] && adj[k].size() == 1) walk(k);
  for (auto k : keys)
    if (!visited[k]) walk(k);
  return out;
}

std::vector<ContourPolyline> density_contours(const RunTable& table, std::string_view xdim, std::string_view ydim,
                                              std::optional<std::string_view> weight, const FilterState& f) {
  if (apply_filters(table, f).pass_count == 0) {
    // Still reject degenerate axes before reporting an empty selection.
    const auto& xs = table.quantitative(xdim);
    const auto& ys = table.quantitative(ydim);
    if (xs.size() && xs.maxCoeff() == xs.minCoeff()) throw Error(ErrorCode::DegenerateExtent, std::string(xdim));
    if (ys.size() && ys.maxCoeff() == ys.minCoeff()) throw Error(ErrorCode::DegenerateExtent, std::string(ydim));
    return {};
  }
  const auto grid = density_grid(table, xdim, ydim, weight, f);
  std::vector<ContourPolyline> out;
  const auto levels = contour_levels(grid);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (auto& line : marching_squares(grid, levels[i])) {
      line.percentile = kContourPercentiles[i];
      out.push_back(std::move(line));
    }
  }
  return out;
}

std::vector<BoxStats> boxplot_series(const RunTable& table, std::string_view dim1d, const FilterState& f) {
  const auto& m = table.series(dim1d);
  const auto pass = apply_filters(table, f);
  if (pass.pass_count == 0) throw Error(ErrorCode::EmptySelection, "no run passes the filters");
  const auto ids = pass.pass.ids();

  std::vector<BoxStats> out(static_cast<std::size_t>(m.cols()));
  std::vector<std::pair<double, RunId>> column(ids.size());
  std::vector<double> sorted(ids.size());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < ids.size(); ++i) column[i] = {m(static_cast<Eigen::Index>(ids[i]), j), ids[i]};
    std::sort(column.begin(), column.end());
    for (std::size_t i = 0; i < column.size(); ++i) sorted[i] = column[i].first;

    auto& b = out[static_cast<std::size_t>(j)];
    b.min = sorted.front();
    b.max = sorted.back();
    b.q1 = quantile_sorted<double>(sorted, 0.25);
    b.median = quantile_sorted<double>(sorted, 0.5);
    b.q3 = quantile_sorted<double>(sorted, 0.75);
    const double iqr = b.q3 - b.q1;
    b.whisker_lo = std::max(b.min, b.q1 - 1.5 * iqr);
    b.whisker_hi = std::min(b.max, b.q3 + 1.5 * iqr);
    for (const auto& [v, id] : column)
      if (v < b.whisker_lo || v > b.whisker_hi) b.outliers.push_back(id);
    std::sort(b.outliers.begin(), b.outliers.end());
  }
  return out;
}

std::vector<double> cumulative_curve(const RunTable& table, std::string_view dim1d, RunId run) {
  const auto& m = table.series(dim1d);
  if (run >= table.run_count()) throw Error(ErrorCode::UnknownRun, std::to_string(run));
  Eigen::VectorXd s = m.row(static_cast<Eigen::Index>(run)).transpose();
  const double lo = s.minCoeff();
  if (lo < 0) s.array() -= lo;
  const double total = s.sum();
  std::vector<double> out(static_cast<std::size_t>(s.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    acc += s(i);
    out[static_cast<std::size_t>(i)] =
        total > 0 ? acc / total : static_cast<double>(i + 1) / static_cast<double>(s.size());
  }
  if (total > 0) out.back() = 1.0;
  return out;
}

}  // namespace rsvp
