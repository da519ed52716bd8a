#pragma once

#include <cstdint>
#include <string>

namespace rsvp {

enum class FixtureKind { Edge, PowderLike, Synthetic };

std::string_view to_string(FixtureKind k);
FixtureKind parse_fixture_kind(std::string_view s);  // "edge", "powder-like", "synthetic"

struct FixtureOptions {
  FixtureKind kind = FixtureKind::Synthetic;
  std::size_t runs = 200;
  std::uint64_t seed = 1;
  std::size_t dims = 20;  // synthetic only
};

/// A reproducible run table and its metadata sidecar.
struct Fixture {
  std::string csv;
  std::string sidecar;
};

/// Byte-identical output for identical options on every platform.
///
/// edge: edge-detector runs with inputs low/high/sigma, direct outputs
///   sep/wep, derived chi2_co/chi2_dtco, a projection series dtco and
///   image paths co. The last run sits exactly on the analytic optimum
///   (low, high, sigma) = edge_optimum().
/// powder-like: crossed design of zoff1/zoff2 settings times five
///   angl1/angl2 levels. chi2 and the 400-point pattern depend on the
///   zoff inputs only; the pattern has an invariant peak at position 291.
/// synthetic: `dims` quantitative columns x00.., the first half inputs.
Fixture make_fixture(const FixtureOptions& options);

struct EdgeOptimum {
  double low = 0.1;
  double high = 0.3;
  double sigma = 2.0;
};
inline constexpr EdgeOptimum edge_optimum() { return {}; }

inline constexpr std::size_t kPowderPatternLength = 400;
inline constexpr std::size_t kPowderInvariantPeak = 291;

/// Small deterministic generator (splitmix64); independent of the standard
/// library's distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

}  // namespace rsvp
