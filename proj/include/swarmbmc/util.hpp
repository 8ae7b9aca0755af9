#pragma once

#include <cstdint>
#include <string>

namespace swarmbmc {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// All machine integers are fixed-width two's complement; values are kept as
// zero-padded bit patterns in a u64 and reinterpreted as signed on demand.
constexpr u64 width_mask(unsigned width) {
  return width >= 64 ? ~0ull : ((1ull << width) - 1);
}

constexpr u64 wrap(u64 v, unsigned width) { return v & width_mask(width); }

constexpr i64 as_signed(u64 v, unsigned width) {
  if (width >= 64) return static_cast<i64>(v);
  const u64 sign = 1ull << (width - 1);
  v &= width_mask(width);
  return (v & sign) ? static_cast<i64>(v | ~width_mask(width)) : static_cast<i64>(v);
}

constexpr u64 from_signed(i64 v, unsigned width) {
  return wrap(static_cast<u64>(v), width);
}

// Deterministic PRNG used for swarm sampling and solver seeding.
struct SplitMix64 {
  u64 state;
  explicit SplitMix64(u64 seed) : state(seed) {}
  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  bool next_bool() { return (next() >> 63) != 0; }
};

inline u64 fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  u64 h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline u64 fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

std::string to_hex(u64 v);

}  // namespace swarmbmc
