#pragma once

#include <cstdint>

namespace xyz2 {

// Counter-based splittable random stream. Every draw is a pure function of
// (key, counter); child streams derive a fresh key from (key, index). This
// makes the q-th draw of the t-th trial a pure function of the master seed,
// independent of scheduling or worker count.
class SplitStream {
 public:
  explicit SplitStream(uint64_t seed) : key_(mix(seed ^ 0x853c49e6748fea9bull)) {}

  SplitStream child(uint64_t index) const {
    return SplitStream(from_key_tag{}, mix(key_ ^ mix(index + 0xda3e39cb94b95bdbull)));
  }

  // Pure indexed access; does not advance the stream.
  uint64_t bits_at(uint64_t index) const {
    return mix(key_ + (index + 1) * 0x9e3779b97f4a7c15ull);
  }
  double uniform_at(uint64_t index) const { return to_unit(bits_at(index)); }

  // Sequential draws.
  uint64_t next_bits() { return bits_at(ctr_++); }
  double next_uniform() { return to_unit(next_bits()); }
  uint32_t next_below(uint32_t bound) {
    // Multiply-shift range reduction; bias is < bound / 2^64.
    return uint32_t((static_cast<unsigned __int128>(next_bits()) * bound) >> 64);
  }

  uint64_t key() const { return key_; }

 private:
  struct from_key_tag {};
  SplitStream(from_key_tag, uint64_t key) : key_(key) {}

  static uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }
  static double to_unit(uint64_t bits) {
    return double(bits >> 11) * 0x1.0p-53;  // [0, 1), 53 random bits
  }

  uint64_t key_;
  uint64_t ctr_ = 0;
};

}  // namespace xyz2
