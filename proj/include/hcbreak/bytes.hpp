#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hcbreak {

using Byte = std::uint8_t;

// Plain-images, cipher-images, keystreams and intermediate sequences are all
// flat raster-order byte sequences. Positions are 0-based in code; the
// recurrences are written with 1-based indices in comments where it helps.
using ByteSeq = std::vector<Byte>;
using ByteView = std::span<const Byte>;

constexpr Byte modadd(Byte a, Byte b) noexcept { return static_cast<Byte>(a + b); }
constexpr Byte modsub(Byte a, Byte b) noexcept { return static_cast<Byte>(a - b); }

}  // namespace hcbreak
