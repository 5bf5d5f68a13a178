#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace pentagon {

// Deterministic 64-bit stream generator (splitmix64). Chosen over <random>
// engines because the byte stream must be reproducible from the algorithm
// name alone, across compilers and languages; std distributions are not.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::string_view name() { return "splitmix64"; }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 mantissa bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double next_signed() { return 2.0 * next_double() - 1.0; }

  // Uniform on the complex unit disc (rejection from the square).
  std::complex<double> next_disc() {
    for (;;) {
      double re = next_signed();
      double im = next_signed();
      if (re * re + im * im <= 1.0) return {re, im};
    }
  }

 private:
  std::uint64_t state_;
};

// FNV-1a over raw bytes; used for parameter digests in reports.
inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace pentagon
