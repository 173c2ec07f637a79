#include "hcbreak/chaos.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "hcbreak/errors.hpp"

namespace hcbreak::chaos {

void validate(const SecretKey& key) {
  if (key.n0 < kMinDiscard) {
    throw PreconditionError("n0 must be greater than 500, got " + std::to_string(key.n0));
  }
  if (key.c0 == 0) throw PreconditionError("c0 must lie in [1, 255]");
  const HyperState& s = key.initial;
  if (!is_bounded(s)) throw PreconditionError("initial state must be finite and below 1e6");
}

namespace {

std::string_view next_token(std::string_view& text) {
  auto is_sep = [](char ch) {
    return ch == ' ' || ch == '\t' || ch == ',' || ch == '\n' || ch == '\r';
  };
  std::size_t pos = 0;
  while (pos < text.size() && is_sep(text[pos])) ++pos;
  std::size_t end = pos;
  while (end < text.size() && !is_sep(text[end])) ++end;
  std::string_view tok = text.substr(pos, end - pos);
  text.remove_prefix(end);
  return tok;
}

template <typename T>
T parse_number(std::string_view tok, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError(std::string("key: cannot parse ") + what + " from '" + std::string(tok) +
                      "'");
  }
  return value;
}

}  // namespace

SecretKey parse_key(std::string_view text) {
  SecretKey key;
  key.initial.x = parse_number<double>(next_token(text), "x0");
  key.initial.y = parse_number<double>(next_token(text), "y0");
  key.initial.z = parse_number<double>(next_token(text), "z0");
  key.initial.w = parse_number<double>(next_token(text), "w0");
  const auto n0 = parse_number<long long>(next_token(text), "n0");
  const auto c0 = parse_number<int>(next_token(text), "c0");
  if (!next_token(text).empty()) throw FormatError("key: trailing fields after c0");
  if (n0 <= 500 || n0 > 0xFFFFFFFFLL) {
    throw PreconditionError("n0 must be greater than 500, got " + std::to_string(n0));
  }
  if (c0 < 1 || c0 > 255) throw PreconditionError("c0 must lie in [1, 255], got " + std::to_string(c0));
  key.n0 = static_cast<std::uint32_t>(n0);
  key.c0 = static_cast<Byte>(c0);
  validate(key);
  return key;
}

std::string format_key(const SecretKey& key) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %u %u", key.initial.x, key.initial.y,
                key.initial.z, key.initial.w, static_cast<unsigned>(key.n0),
                static_cast<unsigned>(key.c0));
  return buf;
}

bool is_bounded(const HyperState& s) noexcept {
  for (double v : {s.x, s.y, s.z, s.w}) {
    if (!std::isfinite(v) || std::fabs(v) >= kDivergenceBound) return false;
  }
  return true;
}

// The build disables floating-point contraction; each line below is evaluated
// strictly left to right so the keystream is reproducible bit for bit.
HyperState derivative(const HyperState& s, const SystemParams& p) noexcept {
  HyperState d;
  d.x = p.a * (s.y - s.x) + s.y * s.z;
  d.y = p.c * s.x - s.y - s.x * s.z + s.w;
  d.z = s.x * s.y - p.b * s.z;
  d.w = p.d * s.w - s.x * s.z;
  return d;
}

namespace {

HyperState advance(const HyperState& s, double scale, const HyperState& slope) noexcept {
  return {s.x + scale * slope.x, s.y + scale * slope.y, s.z + scale * slope.z,
          s.w + scale * slope.w};
}

double combine(double base, double sixth, double k1, double k2, double k3, double k4) noexcept {
  return base + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

HyperState rk4_unchecked(const HyperState& s, double h, const SystemParams& p) noexcept {
  const double half = h / 2.0;
  const double sixth = h / 6.0;
  const HyperState k1 = derivative(s, p);
  const HyperState k2 = derivative(advance(s, half, k1), p);
  const HyperState k3 = derivative(advance(s, half, k2), p);
  const HyperState k4 = derivative(advance(s, h, k3), p);
  return {combine(s.x, sixth, k1.x, k2.x, k3.x, k4.x), combine(s.y, sixth, k1.y, k2.y, k3.y, k4.y),
          combine(s.z, sixth, k1.z, k2.z, k3.z, k4.z), combine(s.w, sixth, k1.w, k2.w, k3.w, k4.w)};
}

}  // namespace

HyperState rk4_step(const HyperState& s, double h, const SystemParams& params) {
  if (!(h > 0.0)) throw PreconditionError("RK4 step length must be positive");
  HyperState next = rk4_unchecked(s, h, params);
  if (!is_bounded(next)) throw DivergenceError(1);
  return next;
}

std::vector<HyperState> generate_states(const SecretKey& key, std::size_t count,
                                        const SystemParams& params) {
  if (count == 0) throw PreconditionError("generate_states: count must be at least 1");
  HyperState s = key.initial;
  std::size_t step = 0;
  auto step_once = [&] {
    ++step;
    s = rk4_unchecked(s, kStepLength, params);
    if (!is_bounded(s)) throw DivergenceError(step);
  };
  for (std::uint32_t i = 0; i < key.n0; ++i) step_once();
  std::vector<HyperState> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    step_once();
    out.push_back(s);
  }
  return out;
}

Byte quantize(double v) noexcept {
  const double scaled = v * 100.0;
  const double frac = scaled - std::round(scaled);  // std::round: ties away from zero
  const double big = std::fabs(frac) * 1e14;
  return static_cast<Byte>(static_cast<std::uint64_t>(std::floor(big)) % 256u);
}

ByteSeq keystream(const SecretKey& key, std::size_t length, const SystemParams& params) {
  if (length == 0) throw PreconditionError("keystream: length must be at least 1");
  const auto states = generate_states(key, (length + 3) / 4, params);
  ByteSeq k;
  k.reserve(states.size() * 4);
  for (const HyperState& s : states) {
    k.push_back(quantize(s.x));
    k.push_back(quantize(s.y));
    k.push_back(quantize(s.z));
    k.push_back(quantize(s.w));
  }
  k.resize(length);
  return k;
}

}  // namespace hcbreak::chaos
