#include "doctest.h"

#include <random>

#include "hcbreak/analysis.hpp"
#include "hcbreak/cipher.hpp"
#include "hcbreak/errors.hpp"

using namespace hcbreak;
using namespace hcbreak::analysis;

namespace {

ByteSeq random_seq(std::mt19937_64& rng, std::size_t n) {
  ByteSeq out(n);
  for (auto& v : out) v = static_cast<Byte>(rng());
  return out;
}

}  // namespace

TEST_CASE("MSB identity") {
  CHECK(modadd(5 ^ 128, 10) == 143);
  CHECK((modadd(5, 10) ^ 128) == 143);
  const IdentityCheck eight = msb_carry_identity(8);
  CHECK(eight.passed());
  CHECK(eight.cases == 65536);
  CHECK_FALSE(eight.counterexample);
  const IdentityCheck one = msb_carry_identity(1);
  CHECK(one.cases == 4);
  CHECK(one.passed());
  CHECK(msb_carry_identity(12).passed());
  CHECK_THROWS_AS(msb_carry_identity(0), PreconditionError);
  CHECK_THROWS_AS(msb_carry_identity(17), PreconditionError);
}

TEST_CASE("global MSB flip is an equivalent keystream") {
  CHECK(keystream_flip_equivalence(ByteSeq{1, 2, 3, 4}, ByteSeq{10, 20, 30, 40}, 3));
  CHECK(flip_msb(ByteSeq{10, 20, 30, 40}) == ByteSeq{138, 148, 158, 168});
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    REQUIRE(keystream_flip_equivalence(random_seq(rng, n), random_seq(rng, n),
                                       static_cast<Byte>(1 + rng() % 255)));
  }
}

TEST_CASE("single interior flips change the ciphertext") {
  // Flipping k(j) alone flips t(j) and then c(j+1) onwards.
  const ByteSeq p{1, 2, 3, 4}, k{10, 20, 30, 40};
  ByteSeq k2 = k;
  k2[1] ^= 0x80;
  CHECK(cipher::encrypt(p, k, 3) != cipher::encrypt(p, k2, 3));

  const FlipProbe probe = per_element_flip_probe(p, k, 3);
  CHECK(probe.subsets_tested == 16);
  CHECK(std::find(probe.equivalent_masks.begin(), probe.equivalent_masks.end(), 0u) !=
        probe.equivalent_masks.end());
  CHECK(std::find(probe.equivalent_masks.begin(), probe.equivalent_masks.end(), 15u) !=
        probe.equivalent_masks.end());
  CHECK(probe.equivalent_masks.size() < 16);
  for (std::size_t j = 0; j < 4; ++j) CHECK(probe.single_flip_changed_bytes[j] > 0);
  CHECK_THROWS_AS(per_element_flip_probe(ByteSeq(21, 0), ByteSeq(21, 0), 1), PreconditionError);
}

TEST_CASE("diffusion masks stay at or above the flipped plane") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng() % 50;
    const ByteSeq p = random_seq(rng, n), k = random_seq(rng, n);
    const auto c0 = static_cast<Byte>(1 + rng() % 255);
    const std::size_t i = rng() % n;
    for (unsigned b = 0; b < 8; ++b) {
      const DiffusionMask m = diffusion_mask(p, k, c0, i, b);
      REQUIRE(m.size() == n);
      REQUIRE(bits_below_plane(m, b) == 0);
      if (b == 7) {
        for (Byte v : m) REQUIRE((v & 0x7F) == 0);
      }
    }
  }
  const DiffusionMask last = diffusion_mask(ByteSeq{1, 2, 3, 4}, ByteSeq{10, 20, 30, 40}, 3, 3, 0);
  CHECK(std::any_of(last.begin(), last.end(), [](Byte v) { return v != 0; }));
  CHECK(last[0] != 0);  // reaches c(1) through t(L)
  CHECK_THROWS_AS(diffusion_mask(ByteSeq{1}, ByteSeq{1}, 1, 1, 0), PreconditionError);
  CHECK_THROWS_AS(diffusion_mask(ByteSeq{1}, ByteSeq{1}, 1, 0, 8), PreconditionError);
}

TEST_CASE("key sensitivity report") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 64;
    const ByteSeq p = random_seq(rng, n), k = random_seq(rng, n);
    const std::size_t j = 1 + rng() % (n - 1);
    const KeySensitivity r = key_sensitivity_report(p, k, 5, j);
    CHECK(r.msb_flip_differing_bits == 0);
    CHECK(r.intermediate_prefix_unchanged);
    CHECK(r.bump_differing_bits > 0);
    CHECK(r.bump_fraction_from_position > 0.2);
    CHECK(r.bump_fraction_from_position < 0.8);
  }
  CHECK(hamming_bits(ByteSeq{1, 2, 3}, ByteSeq{1, 2, 3}) == 0);
  CHECK(hamming_bits(ByteSeq{0xFF}, ByteSeq{0x00}) == 8);
}

TEST_CASE("key sampling") {
  std::mt19937_64 a(123), b(123);
  for (int i = 0; i < 200; ++i) {
    const auto ka = sample_key(a), kb = sample_key(b);
    CHECK(ka == kb);
    for (double v : {ka.initial.x, ka.initial.y, ka.initial.z, ka.initial.w}) {
      CHECK(v > 0.0);
      CHECK(v <= 10.0);
    }
    CHECK(ka.n0 >= 501);
    CHECK(ka.n0 <= 1500);
    CHECK(ka.c0 >= 1);
  }
  KeyRanges bad;
  bad.n0_min = 500;
  CHECK_THROWS_AS(sample_key(a, bad), PreconditionError);
}

TEST_CASE("candidate-count experiment is sound and deterministic") {
  std::mt19937_64 rng(2);
  ByteSeq image(32 * 32);
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = static_cast<Byte>((i % 32) * 4 + (i / 32));
  const ByteSeq probe = random_seq(rng, image.size());
  ExperimentConfig cfg;
  cfg.n_keys = 6;
  cfg.seed = 99;
  const auto first = candidate_count_experiment(cfg, image, probe);
  const auto second = candidate_count_experiment(cfg, image, probe);
  CHECK(first.minimum >= 1);
  CHECK(first.soundness_failures == 0);
  CHECK(first.histogram == second.histogram);
  for (std::size_t i = 0; i < first.keys.size(); ++i) {
    CHECK(first.keys[i].key == second.keys[i].key);
    CHECK(first.keys[i].candidates == second.keys[i].candidates);
  }
  cfg.n_keys = 0;
  CHECK_THROWS_AS(candidate_count_experiment(cfg, image), PreconditionError);
}

TEST_CASE("termination profile") {
  std::mt19937_64 rng(10);
  const std::size_t n = 256;
  const ByteSeq k = random_seq(rng, n);
  const ByteSeq p1 = random_seq(rng, n), p2 = random_seq(rng, n);
  const auto prof = termination_profile(p1, cipher::encrypt(p1, k, 7), p2, cipher::encrypt(p2, k, 7));
  CHECK(prof.chain_length == n - 2);
  REQUIRE(prof.accepted.size() == 1);
  CHECK(prof.accepted_depths[0] == n - 2);
  CHECK(prof.wrong_guesses == 32767);
  for (std::size_t d = 1; d < prof.surviving.size(); ++d) CHECK(prof.surviving[d] <= prof.surviving[d - 1]);
  CHECK(prof.surviving[0] == prof.wrong_guesses);
  // Survival is structured rather than uniform: wrong guesses fail in
  // families of 2^m, so only a loose bound holds per instance.
  CHECK(prof.survival_fraction(1) < 0.1);
  CHECK(prof.surviving[2] < prof.surviving[1]);
  CHECK(prof.exact[0] > prof.wrong_guesses / 2);
}
