#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace glogit {

class RngStream;

namespace detail {

inline constexpr int kZigLayers = 128;

struct ZigguratTables {
  std::array<double, kZigLayers + 1> x;
  std::array<double, kZigLayers> ratio;  // x[i+1] / x[i]
};

// Built during static initialization of the library.
extern const ZigguratTables zig_tables;

double normal_tail(double r, bool negative, RngStream& rng);

}  // namespace detail

/// Seeded xoshiro256++ generator.
///
/// The 256-bit state is derived from (seed, stream_id) through splitmix64,
/// so identical pairs replay identical sequences and distinct stream ids give
/// unrelated sequences. Not shareable between threads: every chain owns one.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  // Number of 64-bit words drawn so far.
  std::uint64_t counter() const noexcept { return counter_; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    ++counter_;
    return result;
  }

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept { return to_open_unit(next()); }

  /// Exponential(1).
  double exponential() noexcept { return -std::log(uniform()); }

  /// Standard normal via the 128-layer ziggurat.
  double normal() noexcept {
    const auto& tab = detail::zig_tables;
    for (;;) {
      const std::uint64_t bits = next();
      const int layer = static_cast<int>(bits & 0x7f);
      // Top 53 bits -> u in (-1, 1); independent of the layer bits.
      const double u = 2.0 * to_open_unit(bits) - 1.0;
      if (std::fabs(u) < tab.ratio[layer]) return u * tab.x[layer];
      if (layer == 0) return detail::normal_tail(tab.x[1], u < 0.0, *this);
      const double x = u * tab.x[layer];
      const double f0 = std::exp(-0.5 * (tab.x[layer] * tab.x[layer] - x * x));
      const double f1 =
          std::exp(-0.5 * (tab.x[layer + 1] * tab.x[layer + 1] - x * x));
      if (f1 + uniform() * (f0 - f1) < 1.0) return x;
    }
  }

 private:
  // Top 53 bits mapped to (0, 1). The signed conversion is a single
  // instruction on x86-64; the value always fits.
  static double to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(static_cast<std::int64_t>(bits >> 11)) + 0.5) *
           0x1.0p-53;
  }

  static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace glogit
