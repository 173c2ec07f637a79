#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "hcbreak/chaos.hpp"
#include "hcbreak/errors.hpp"
#include "oracle/keystream_oracle.hpp"

using namespace hcbreak;
using namespace hcbreak::chaos;

namespace {

SecretKey example_key() { return SecretKey{{5.0, 10.0, 5.0, 10.0}, 1000, 3}; }

void check_exact(const HyperState& s, double x, double y, double z, double w) {
  CHECK(s.x == x);
  CHECK(s.y == y);
  CHECK(s.z == z);
  CHECK(s.w == w);
}

}  // namespace

TEST_CASE("system parameters") {
  CHECK(kDefaultParams.a == 35.0);
  CHECK(kDefaultParams.b == 8.0 / 3.0);
  CHECK(kDefaultParams.c == 55.0);
  CHECK(kDefaultParams.d == 1.3);
}

TEST_CASE("derivative") {
  check_exact(derivative({0, 0, 0, 0}), 0, 0, 0, 0);
  check_exact(derivative({1, 1, 0, 0}), 0, 54, 1, 0);
  // Frozen from tests/oracles/chaos_oracle.py derivative 5 10 5 10
  check_exact(derivative({5, 10, 5, 10}), 225.0, 250.0, 36.66666666666667, -12.0);
  const auto o = oracle::rhs({5, 10, 5, 10});
  check_exact(derivative({5, 10, 5, 10}), o[0], o[1], o[2], o[3]);
}

TEST_CASE("rk4_step") {
  check_exact(rk4_step({0, 0, 0, 0}, 0.001), 0, 0, 0, 0);
  check_exact(rk4_step({0, 0, 0, 0}, 0.37), 0, 0, 0, 0);
  // Frozen from chaos_oracle.py rk4 5 10 5 10
  check_exact(rk4_step({5, 10, 5, 10}, 0.001), 5.226311842869607, 10.255416166291404,
              5.038398722489276, 9.987329851352738);
  const auto o = oracle::rk4({5, 10, 5, 10}, 0.001);
  check_exact(rk4_step({5, 10, 5, 10}, 0.001), o[0], o[1], o[2], o[3]);

  CHECK_THROWS_AS(rk4_step({1e7, 0, 0, 0}, 0.001), DivergenceError);
  CHECK_THROWS_AS(rk4_step({std::numeric_limits<double>::quiet_NaN(), 0, 0, 0}, 0.001),
                  DivergenceError);
  CHECK_THROWS_AS(rk4_step({1, 1, 1, 1}, 0.0), PreconditionError);
}

TEST_CASE("generate_states") {
  const auto zeros = generate_states(SecretKey{{0, 0, 0, 0}, 501, 1}, 3);
  REQUIRE(zeros.size() == 3);
  for (const auto& s : zeros) check_exact(s, 0, 0, 0, 0);

  // Frozen from chaos_oracle.py states 5 10 5 10 1000 2
  const auto states = generate_states(example_key(), 2);
  REQUIRE(states.size() == 2);
  check_exact(states[0], -0x1.9974aa83a1466p+2, -0x1.5251c26b307ccp+1, 0x1.55f20f39559e6p+5,
              0x1.37b1ca860494bp+6);
  check_exact(states[1], -0x1.984867300427bp+2, -0x1.520ba49a87119p+1, 0x1.552b75200f9f5p+5,
              0x1.3931138d7cc23p+6);

  CHECK_THROWS_AS(generate_states(example_key(), 0), PreconditionError);

  SecretKey wild{{1e5, 1e5, 1e5, 1e5}, 501, 1};
  try {
    generate_states(wild, 1);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.step() >= 1);
    CHECK(e.step() <= 502);
  }
}

TEST_CASE("quantize") {
  CHECK(quantize(0.0) == 0);
  CHECK(quantize(1.25) == 0);
  CHECK(quantize(-1.25) == 0);
  // Frozen from chaos_oracle.py quantize 5.4321 (exact-rational mirror)
  CHECK(quantize(5.4321) == 3);
  CHECK(quantize(5.4321) == oracle::quantize(5.4321));
}

TEST_CASE("quantize agrees with the oracle and only sees the fractional part of v*100") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-400.0, 400.0);
  for (int i = 0; i < 20000; ++i) {
    const double v = dist(rng);
    REQUIRE(quantize(v) == oracle::quantize(v));
  }
  // Dyadic fractional parts: v*100 = I + f exactly for both v and v + m/100.
  const double fracs[] = {0.125, 0.375, 0.3125, 0.0078125, 0.4375, 0.2109375};
  int checked = 0;
  for (double f : fracs) {
    for (int base = -300; base <= 300; base += 7) {
      const double v1 = (base + f) / 100.0;
      if (v1 * 100.0 != base + f) continue;
      for (int m = 1; m < 50; m += 3) {
        const double v2 = (base + m + f) / 100.0;
        if (v2 * 100.0 != base + m + f) continue;
        CHECK(quantize(v1) == quantize(v2));
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("keystream") {
  CHECK(keystream(SecretKey{{0, 0, 0, 0}, 501, 1}, 8) == ByteSeq(8, 0));
  CHECK(keystream(SecretKey{{0, 0, 0, 0}, 777, 1}, 13) == ByteSeq(13, 0));
  // Frozen from chaos_oracle.py keystream 5 10 5 10 1000 8
  CHECK(keystream(example_key(), 8) == ByteSeq{140, 100, 101, 239, 187, 169, 27, 212});
  const auto five = keystream(example_key(), 5);
  CHECK(five == ByteSeq{140, 100, 101, 239, 187});
  CHECK_THROWS_AS(keystream(example_key(), 0), PreconditionError);
}

TEST_CASE("keystream matches the oracle on random keys") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> state(0.0, 10.0);
  for (int i = 0; i < 25; ++i) {
    const SecretKey key{{state(rng), state(rng), state(rng), state(rng)},
                        static_cast<std::uint32_t>(501 + rng() % 1000), static_cast<Byte>(1 + rng() % 255)};
    const auto expected = oracle::keystream({key.initial.x, key.initial.y, key.initial.z, key.initial.w},
                                            key.n0, 67);
    CHECK(keystream(key, 67) == ByteSeq(expected.begin(), expected.end()));
    CHECK(keystream(key, 67) == keystream(key, 67));
  }
}

TEST_CASE("key parsing and formatting") {
  const SecretKey k = parse_key("5 10 5 10 1000 3");
  CHECK(k == example_key());
  CHECK(parse_key("5,10,5,10,1000,3") == k);
  CHECK(parse_key(format_key(k)) == k);

  const SecretKey odd{{0.1, -2.0 / 3.0, 1e-300, 9.999999999999998}, 1234, 255};
  CHECK(parse_key(format_key(odd)) == odd);

  CHECK_THROWS_AS(parse_key("5 10 5 10 100 3"), PreconditionError);
  CHECK_THROWS_AS(parse_key("5 10 5 10 500 3"), PreconditionError);
  CHECK_NOTHROW(parse_key("5 10 5 10 501 3"));
  CHECK_THROWS_AS(parse_key("5 10 5 10 1000 0"), PreconditionError);
  CHECK_THROWS_AS(parse_key("5 10 5 10 1000 256"), PreconditionError);
  CHECK_THROWS_AS(parse_key("5 10 5 10 1000"), FormatError);
  CHECK_THROWS_AS(parse_key("5 ten 5 10 1000 3"), FormatError);
  CHECK_THROWS_AS(parse_key("5 10 5 10 1000 3 9"), FormatError);
}
