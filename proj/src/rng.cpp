#include "glogit/rng.hpp"

#include <cmath>

namespace glogit {

namespace {

constexpr double kZigR = 3.442619855899;
constexpr double kZigV = 9.91256303526217e-3;

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

detail::ZigguratTables build_tables() {
  detail::ZigguratTables t{};
  double f = std::exp(-0.5 * kZigR * kZigR);
  t.x[0] = kZigV / f;
  t.x[1] = kZigR;
  t.x[detail::kZigLayers] = 0.0;
  for (int i = 2; i < detail::kZigLayers; ++i) {
    t.x[i] = std::sqrt(-2.0 * std::log(kZigV / t.x[i - 1] + f));
    f = std::exp(-0.5 * t.x[i] * t.x[i]);
  }
  for (int i = 0; i < detail::kZigLayers; ++i) t.ratio[i] = t.x[i + 1] / t.x[i];
  return t;
}

}  // namespace

namespace detail {

const ZigguratTables zig_tables = build_tables();

double normal_tail(double r, bool negative, RngStream& rng) {
  double x;
  double y;
  do {
    x = std::log(rng.uniform()) / r;
    y = std::log(rng.uniform());
  } while (-2.0 * y < x * x);
  return negative ? x - r : r - x;
}

}  // namespace detail

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t a = seed;
  std::uint64_t b = stream_id ^ 0xD1B54A32D192ED03ULL;
  std::uint64_t state = splitmix64(a) ^ (splitmix64(b) * 0xFF51AFD7ED558CCDULL);
  for (auto& word : s_) word = splitmix64(state);
  // xoshiro must not start from the all-zero state.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

}  // namespace glogit
