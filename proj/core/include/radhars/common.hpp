#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace radhars {

inline constexpr const char* kVersion = "0.1.0";

// Physical constants (exact SI where defined exactly).
inline constexpr double kSpeedOfLight = 299792458.0;          // m/s
inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;     // H/m
inline constexpr double kEps0 = 1.0 / (kMu0 * kSpeedOfLight * kSpeedOfLight);
inline constexpr double kPi = std::numbers::pi;

// Impedance of free space, sqrt(mu0/eps0) ~= 376.73 ohm.
inline const double kEta0 = kMu0 * kSpeedOfLight;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// 64-bit FNV-1a, used for artifact/config fingerprints in manifests.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

std::string hex64(std::uint64_t v);

// Deterministic counter-based RNG: splitmix64 streams keyed by (seed, stream).
// Output is independent of call interleaving, which keeps multithreaded
// synthesis bit-identical to the serial path.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in (0, 1]
  double next_unit_open() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }
};

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0x517cc1b727220a95ull * (stream + 1)));
  return g.next();
}

}  // namespace radhars
