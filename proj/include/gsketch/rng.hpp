#pragma once

// Deterministic random primitives. Code derivation must yield bit-identical
// output for the same (seed, dimension, scheme_id, label) on every run, so
// everything here is counter-based arithmetic on fixed-width integers; none
// of it depends on std:: distribution internals.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace gsketch {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer; full avalanche on 64 bits.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// 128-bit key identifying one derivation stream.
struct Key128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
};

// Stable hash of (seed, scheme_id, label bytes). Two independent lanes absorb
// the label in 8-byte little-endian chunks; the length is folded in last so
// distinct labels sharing a prefix cannot collide by padding.
inline Key128 derive_key(std::uint64_t seed, std::uint32_t scheme_id,
                         std::string_view label) {
  std::uint64_t h0 = mix64(seed ^ kGolden);
  std::uint64_t h1 = mix64(seed + (std::uint64_t(scheme_id) << 32) + 0xD1B54A32D192ED03ull);
  std::size_t i = 0;
  while (i + 8 <= label.size()) {
    std::uint64_t chunk = 0;
    for (int b = 0; b < 8; ++b) {
      chunk |= std::uint64_t(std::uint8_t(label[i + b])) << (8 * b);
    }
    h0 = mix64(h0 ^ chunk);
    h1 = mix64(h1 + chunk + kGolden);
    i += 8;
  }
  std::uint64_t tail = 0;
  for (int b = 0; i < label.size(); ++i, ++b) {
    tail |= std::uint64_t(std::uint8_t(label[i])) << (8 * b);
  }
  h0 = mix64(h0 ^ tail ^ (std::uint64_t(label.size()) << 1));
  h1 = mix64(h1 + tail + std::uint64_t(label.size()));
  return Key128{h0, h1};
}

// Word c of the stream keyed by k; a pure function of (k, c).
inline std::uint64_t stream_word(const Key128& k, std::uint64_t counter) {
  return mix64(k.hi + mix64(k.lo + counter * kGolden));
}

inline double to_unit(std::uint64_t word) {
  return double(word >> 11) * 0x1.0p-53;  // [0, 1)
}

// Counter-based stream over a fixed key. Copyable value type; the consumed
// counter is the only state.
class CounterStream {
 public:
  explicit CounterStream(Key128 key) : key_(key) {}

  std::uint64_t next_u64() { return stream_word(key_, counter_++); }
  double next_unit() { return to_unit(next_u64()); }

  // Two independent standard normals by the polar method. Rejection keeps
  // consuming counters, so the result is still a pure function of the key
  // and starting counter.
  void next_normal_pair(double& n0, double& n1) {
    for (;;) {
      const double u = 2.0 * next_unit() - 1.0;
      const double v = 2.0 * next_unit() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        n0 = u * f;
        n1 = v * f;
        return;
      }
    }
  }

 private:
  Key128 key_;
  std::uint64_t counter_ = 0;
};

// Sequential PRNG for simulation plumbing (graph sampling, shuffles).
// SplitMix64: deterministic, seedable, and not tied to libstdc++ internals.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }

  double next_unit() { return to_unit(next()); }

  // Uniform in [0, n) without modulo bias.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

// Stable per-stream seed derivation, e.g. (config seed, trial index).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix64(base ^ mix64(stream + kGolden));
}

}  // namespace gsketch
