#pragma once

// Straightforward reference for the keystream, written independently of
// src/chaos.cpp: array state, index loops, and a trunc-based nearest-integer
// rule. Used only by tests.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

using State = std::array<double, 4>;

inline State rhs(const State& s) {
  const double a = 35.0, b = 8.0 / 3.0, c = 55.0, d = 1.3;
  return {a * (s[1] - s[0]) + s[1] * s[2], c * s[0] - s[1] - s[0] * s[2] + s[3],
          s[0] * s[1] - b * s[2], d * s[3] - s[0] * s[2]};
}

inline State rk4(const State& s, double h) {
  State k1 = rhs(s), tmp{}, k2{}, k3{}, k4{}, out{};
  for (int j = 0; j < 4; ++j) tmp[j] = s[j] + (h / 2) * k1[j];
  k2 = rhs(tmp);
  for (int j = 0; j < 4; ++j) tmp[j] = s[j] + (h / 2) * k2[j];
  k3 = rhs(tmp);
  for (int j = 0; j < 4; ++j) tmp[j] = s[j] + h * k3[j];
  k4 = rhs(tmp);
  for (int j = 0; j < 4; ++j) {
    double acc = k1[j];
    acc = acc + 2 * k2[j];
    acc = acc + 2 * k3[j];
    acc = acc + k4[j];
    out[j] = s[j] + (h / 6) * acc;
    if (!(std::fabs(out[j]) < 1e6)) throw std::runtime_error("oracle: divergent");
  }
  return out;
}

inline double nearest_half_away(double v) {
  double r = std::trunc(v);
  const double frac = v - r;  // exact
  if (frac >= 0.5) r += 1.0;
  if (frac <= -0.5) r -= 1.0;
  return r;
}

inline std::uint8_t quantize(double v) {
  const double scaled = v * 100.0;
  const double g = scaled - nearest_half_away(scaled);
  const double big = std::floor(std::fabs(g) * 1e14);
  return static_cast<std::uint8_t>(std::fmod(big, 256.0));
}

inline std::vector<std::uint8_t> keystream(State s, unsigned n0, std::size_t length) {
  for (unsigned i = 0; i < n0; ++i) s = rk4(s, 0.001);
  std::vector<std::uint8_t> out;
  while (out.size() < length) {
    s = rk4(s, 0.001);
    for (int j = 0; j < 4 && out.size() < length; ++j) out.push_back(quantize(s[j]));
  }
  return out;
}

}  // namespace oracle
