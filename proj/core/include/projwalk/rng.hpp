// Counter-based random streams (Philox4x32-10, Salmon et al. SC'11).
//
// A stream is keyed by (master seed, stream id); the draw index is the
// counter. Streams never share state, so trials can run on any number of
// workers and replay bit-exactly.

#pragma once

#include <cstdint>

namespace projwalk {

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

struct PhiloxBlock {
  std::uint32_t x[4];
};

inline PhiloxBlock philox4x32_10(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                                 std::uint32_t c3, std::uint32_t k0, std::uint32_t k1) {
  PhiloxBlock b{{c0, c1, c2, c3}};
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * b.x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * b.x[2];
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    b.x[0] = hi1 ^ b.x[1] ^ k0;
    b.x[1] = lo1;
    b.x[2] = hi0 ^ b.x[3] ^ k1;
    b.x[3] = lo0;
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  return b;
}

}  // namespace detail

class CounterRng {
 public:
  CounterRng(std::uint64_t master_seed, std::uint64_t stream) noexcept
      : key0_(static_cast<std::uint32_t>(master_seed)),
        key1_(static_cast<std::uint32_t>(master_seed >> 32)),
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  // Random access: one block yields two 64-bit draws.
  std::uint64_t u64_at(std::uint64_t index) const noexcept {
    const std::uint64_t block = index >> 1;
    if (!cache_valid_ || block != cached_block_) {
      cached_ = detail::philox4x32_10(static_cast<std::uint32_t>(block),
                                      static_cast<std::uint32_t>(block >> 32), stream_lo_,
                                      stream_hi_, key0_, key1_);
      cached_block_ = block;
      cache_valid_ = true;
    }
    const int w = static_cast<int>(index & 1u) * 2;
    return (static_cast<std::uint64_t>(cached_.x[w + 1]) << 32) | cached_.x[w];
  }

  double u01_at(std::uint64_t index) const noexcept {
    return static_cast<double>(u64_at(index) >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_u64() noexcept { return u64_at(pos_++); }
  double next_u01() noexcept { return u01_at(pos_++); }

  std::uint64_t position() const noexcept { return pos_; }
  void seek(std::uint64_t pos) noexcept { pos_ = pos; }

 private:
  std::uint32_t key0_, key1_;
  std::uint32_t stream_lo_, stream_hi_;
  std::uint64_t pos_ = 0;
  mutable detail::PhiloxBlock cached_{};
  mutable std::uint64_t cached_block_ = 0;
  mutable bool cache_valid_ = false;
};

}  // namespace projwalk
