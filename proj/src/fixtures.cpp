#include "rsvp/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "json.hpp"
#include "rsvp/data_model.hpp"
#include "rsvp/error.hpp"

namespace rsvp {

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

std::string num(double v) { return format_double(round6(v)); }

std::string series_cell(const std::vector<double>& s) {
  std::string out = "\"[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += num(s[i]);
  }
  out += "]\"";
  return out;
}

std::string image_path(std::string_view stem, std::size_t run) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "img/%.*s_run%04zu.png", static_cast<int>(stem.size()), stem.data(), run);
  return buf;
}

struct Meta {
  std::string name;
  Role role;
  Sampling sampling;
};

std::string sidecar(const std::vector<Meta>& meta, Sampling default_sampling) {
  nlohmann::ordered_json dims = nlohmann::ordered_json::object();
  for (const auto& m : meta)
    dims[m.name] = {{"role", to_string(m.role)}, {"sampling", to_string(m.sampling)}};
  nlohmann::ordered_json doc = {{"dimensions", dims}, {"default_sampling", to_string(default_sampling)}};
  return doc.dump(2) + "\n";
}

Fixture edge(const FixtureOptions& o) {
  SplitMix64 rng(o.seed);
  const auto opt = edge_optimum();
  std::string csv = "low,high,sigma,sep,wep,chi2_co,chi2_dtco,dtco,co\n";
  for (std::size_t r = 0; r < o.runs; ++r) {
    double low = opt.low, high = opt.high, sigma = opt.sigma;
    if (r + 1 < o.runs) {
      low = round6(rng.uniform(0.01, 0.3));
      high = round6(low + rng.uniform(0.05, 0.5));
      sigma = round6(rng.uniform(0.5, 4.0));
    }
    const double sep = 1.0 / (1.0 + sigma) * (1.0 - low);
    const double wep = high * std::exp(-sigma / 4.0);
    const double chi2_co = std::pow((low - opt.low) / 0.1, 2) + std::pow((high - opt.high) / 0.2, 2) +
                           std::pow(sigma - opt.sigma, 2);
    const double chi2_dtco = 0.6 * chi2_co + 0.4 * std::pow((high - low - (opt.high - opt.low)) / 0.2, 2);
    std::vector<double> dtco(32);
    for (std::size_t i = 0; i < dtco.size(); ++i)
      dtco[i] = (sigma - opt.sigma) * std::sin(i / 5.0) + 10.0 * (low - opt.low) * std::cos(i / 7.0);
    csv += num(low) + ',' + num(high) + ',' + num(sigma) + ',' + num(sep) + ',' + num(wep) + ',' + num(chi2_co) +
           ',' + num(chi2_dtco) + ',' + series_cell(dtco) + ',' + image_path("co", r) + '\n';
  }
  const std::vector<Meta> meta = {
      {"low", Role::InputControl, Sampling::Stochastic},     {"high", Role::InputControl, Sampling::Stochastic},
      {"sigma", Role::InputControl, Sampling::Stochastic},   {"sep", Role::OutputDirect, Sampling::Unknown},
      {"wep", Role::OutputDirect, Sampling::Unknown},        {"chi2_co", Role::OutputDerived, Sampling::Unknown},
      {"chi2_dtco", Role::OutputDerived, Sampling::Unknown},
  };
  return {csv, sidecar(meta, Sampling::Stochastic)};
}

// Truncated Gaussian peak so distant positions stay exactly untouched.
double peak(double pos, double center, double width, double amp) {
  const double u = (pos - center) / width;
  return std::abs(u) <= 6.0 ? amp * std::exp(-0.5 * u * u) : 0.0;
}

std::vector<double> powder_pattern(double zoff1, double zoff2) {
  std::vector<double> s(kPowderPatternLength);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto x = static_cast<double>(i);
    s[i] = 1.0 + peak(x, 120.0 + 40.0 * zoff1, 4.0, 10.0) +
           peak(x, static_cast<double>(kPowderInvariantPeak), 3.0, 20.0) +
           peak(x, 340.0 + 20.0 * zoff2, 4.0, 10.0 + 4.0 * zoff2);
  }
  return s;
}

Fixture powder(const FixtureOptions& o) {
  SplitMix64 rng(o.seed);
  constexpr double kOpt1 = 0.3, kOpt2 = -0.2;
  constexpr std::size_t kLevels = 5;
  const std::size_t settings = std::max<std::size_t>(1, (o.runs + kLevels - 1) / kLevels);

  // Two settings next to the optimum, the rest clearly away from it.
  std::vector<std::pair<double, double>> zoff;
  for (std::size_t k = 0; k < settings; ++k) {
    if (k < 2) {
      zoff.emplace_back(round6(kOpt1 + rng.uniform(-0.04, 0.04)), round6(kOpt2 + rng.uniform(-0.04, 0.04)));
      continue;
    }
    while (true) {
      const double a = rng.uniform(-1.0, 1.0), b = rng.uniform(-1.0, 1.0);
      if (std::max(std::abs(a - kOpt1), std::abs(b - kOpt2)) >= 0.3) {
        zoff.emplace_back(round6(a), round6(b));
        break;
      }
    }
  }

  const auto reference = powder_pattern(kOpt1, kOpt2);
  std::string csv = "zoff1,zoff2,angl1,angl2,chi2,pattern\n";
  std::size_t written = 0;
  for (std::size_t k = 0; k < settings && written < o.runs; ++k) {
    std::vector<std::size_t> perm(kLevels);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = kLevels - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);

    const auto pattern = powder_pattern(zoff[k].first, zoff[k].second);
    double chi2 = 0.0;
    for (std::size_t i = 0; i < pattern.size(); ++i) chi2 += std::pow(pattern[i] - reference[i], 2) / reference[i];
    chi2 /= static_cast<double>(pattern.size());

    for (std::size_t q = 0; q < kLevels && written < o.runs; ++q, ++written) {
      auto level = [&](std::size_t l) {
        const double v = -1.0 + 2.0 * static_cast<double>(l) / (kLevels - 1) + rng.uniform(-0.02, 0.02);
        return std::clamp(v, -1.0, 1.0);
      };
      csv += num(zoff[k].first) + ',' + num(zoff[k].second) + ',' + num(level(q)) + ',' + num(level(perm[q])) + ',' +
             num(chi2) + ',' + series_cell(pattern) + '\n';
    }
  }
  const std::vector<Meta> meta = {
      {"zoff1", Role::InputControl, Sampling::Stochastic}, {"zoff2", Role::InputControl, Sampling::Stochastic},
      {"angl1", Role::InputControl, Sampling::Regular},    {"angl2", Role::InputControl, Sampling::Regular},
      {"chi2", Role::OutputDerived, Sampling::Unknown},    {"pattern", Role::OutputDirect, Sampling::Unknown},
  };
  return {csv, sidecar(meta, Sampling::Stochastic)};
}

Fixture synthetic(const FixtureOptions& o) {
  if (o.dims == 0) throw Error(ErrorCode::InvalidArgument, "synthetic fixtures need at least one dimension");
  SplitMix64 rng(o.seed);
  const std::size_t inputs = std::max<std::size_t>(1, o.dims / 2);
  std::vector<std::string> names;
  for (std::size_t d = 0; d < o.dims; ++d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "x%02zu", d);
    names.emplace_back(buf);
  }
  std::string csv;
  for (std::size_t d = 0; d < names.size(); ++d) csv += (d ? "," : "") + names[d];
  csv += '\n';
  std::vector<double> row(o.dims);
  for (std::size_t r = 0; r < o.runs; ++r) {
    for (std::size_t d = 0; d < inputs; ++d) row[d] = round6(rng.uniform(0.0, 1.0 + static_cast<double>(d)));
    for (std::size_t d = inputs; d < o.dims; ++d) {
      const auto a = row[(d - inputs) % inputs];
      const auto b = row[(d - inputs + 1) % inputs];
      row[d] = std::sin(a * (1.0 + 0.1 * d)) + 0.5 * b * b + rng.uniform(-0.1, 0.1);
    }
    for (std::size_t d = 0; d < o.dims; ++d) csv += (d ? "," : "") + num(row[d]);
    csv += '\n';
  }
  std::vector<Meta> meta;
  for (std::size_t d = 0; d < o.dims; ++d) {
    if (d < inputs) meta.push_back({names[d], Role::InputControl, Sampling::Stochastic});
    else meta.push_back({names[d], (d - inputs) % 2 ? Role::OutputDerived : Role::OutputDirect, Sampling::Unknown});
  }
  return {csv, sidecar(meta, Sampling::Stochastic)};
}

}  // namespace

std::string_view to_string(FixtureKind k) {
  switch (k) {
    case FixtureKind::Edge: return "edge";
    case FixtureKind::PowderLike: return "powder-like";
    case FixtureKind::Synthetic: return "synthetic";
  }
  return "?";
}

FixtureKind parse_fixture_kind(std::string_view s) {
  for (auto k : {FixtureKind::Edge, FixtureKind::PowderLike, FixtureKind::Synthetic})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::InvalidArgument, "unknown fixture kind '" + std::string(s) + "'");
}

Fixture make_fixture(const FixtureOptions& options) {
  if (options.runs == 0) throw Error(ErrorCode::InvalidArgument, "a fixture needs at least one run");
  switch (options.kind) {
    case FixtureKind::Edge: return edge(options);
    case FixtureKind::PowderLike: return powder(options);
    case FixtureKind::Synthetic: return synthetic(options);
  }
  return {};
}

}  // namespace rsvp
