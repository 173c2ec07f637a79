#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hcbreak/bytes.hpp"

namespace hcbreak::chaos {

/// One point of the 4-D hyperchaotic trajectory.
struct HyperState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 0.0;

  bool operator==(const HyperState&) const = default;
};

/// Coefficients of the hyperchaotic system
///   x' = a(y - x) + yz,  y' = cx - y - xz + w,  z' = xy - bz,  w' = dw - xz.
struct SystemParams {
  double a = 35.0;
  double b = 8.0 / 3.0;
  double c = 55.0;
  double d = 1.3;
};

inline constexpr SystemParams kDefaultParams{};
inline constexpr double kStepLength = 0.001;
inline constexpr double kDivergenceBound = 1e6;
inline constexpr std::uint32_t kMinDiscard = 501;

/// Secret key of the cipher: initial state, number of discarded RK4 steps
/// (n0 > 500) and the seed byte c0 in [1, 255].
struct SecretKey {
  HyperState initial;
  std::uint32_t n0 = 1000;
  Byte c0 = 3;

  bool operator==(const SecretKey&) const = default;
};

/// Throws PreconditionError if n0 <= 500 or c0 == 0.
void validate(const SecretKey& key);

/// Parses "x0 y0 z0 w0 n0 c0"; commas are accepted as separators too.
/// The key is validated before it is returned; FormatError on bad syntax.
SecretKey parse_key(std::string_view text);

/// Single-line record with 17 significant digits, round-trips exactly.
std::string format_key(const SecretKey& key);

bool is_bounded(const HyperState& s) noexcept;

HyperState derivative(const HyperState& s, const SystemParams& params = kDefaultParams) noexcept;

/// One classical RK4 step. Throws DivergenceError(1) if the result is
/// non-finite or any |component| >= 1e6.
HyperState rk4_step(const HyperState& s, double h, const SystemParams& params = kDefaultParams);

/// Discards key.n0 steps, then returns the next `count` states.
std::vector<HyperState> generate_states(const SecretKey& key, std::size_t count,
                                        const SystemParams& params = kDefaultParams);

/// (|v*100 - [v*100]| * 1e14) mod 256 with [.] rounding half away from zero.
Byte quantize(double v) noexcept;

/// ceil(L/4) states, four bytes per state in x, y, z, w order, truncated to L.
ByteSeq keystream(const SecretKey& key, std::size_t length,
                  const SystemParams& params = kDefaultParams);

}  // namespace hcbreak::chaos
