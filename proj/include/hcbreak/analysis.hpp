#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hcbreak/bytes.hpp"
#include "hcbreak/chaos.hpp"

namespace hcbreak::analysis {

// ---------------------------------------------------------------------------
// MSB identity: (a ^ 2^(n-1)) + b == (a + b) ^ 2^(n-1)  (mod 2^n)

struct IdentityCheck {
  unsigned bits = 0;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> counterexample;
  bool passed() const noexcept { return failures == 0; }
};

/// Exhaustive over all a, b < 2^n, 1 <= n <= 16.
IdentityCheck msb_carry_identity(unsigned n);

// ---------------------------------------------------------------------------
// Equivalent keystreams

ByteSeq flip_msb(ByteView k);

/// encrypt(p, k, c0) == encrypt(p, k ^ 0x80..., c0)
bool keystream_flip_equivalence(ByteView p, ByteView k, Byte c0);

/// Tries every subset of keystream positions whose MSBs are flipped and
/// records which subsets leave the ciphertext unchanged. L <= 20.
struct FlipProbe {
  std::size_t length = 0;
  std::uint64_t subsets_tested = 0;
  std::vector<std::uint32_t> equivalent_masks;  // bit j set: position j+1 flipped
  // Bytes of ciphertext that change when only position j+1 is flipped.
  std::vector<std::size_t> single_flip_changed_bytes;
};

FlipProbe per_element_flip_probe(ByteView p, ByteView k, Byte c0);

// ---------------------------------------------------------------------------
// Diffusion

/// XOR difference of the two ciphertexts obtained with and without bit
/// `bit` of p(position) flipped. position is 0-based.
using DiffusionMask = ByteSeq;

DiffusionMask diffusion_mask(ByteView p, ByteView k, Byte c0, std::size_t position, unsigned bit);

/// Number of set bits strictly below plane `bit` across the mask.
std::size_t bits_below_plane(const DiffusionMask& mask, unsigned bit);

// ---------------------------------------------------------------------------
// Key sensitivity

struct KeySensitivity {
  std::uint64_t msb_flip_differing_bits = 0;
  std::size_t changed_position = 0;  // 0-based
  std::uint64_t bump_differing_bits = 0;
  double bump_fraction_from_position = 0.0;  // over bits of c(j..L)
  std::size_t bump_prefix_differing_bytes = 0;  // c(2..j-1), carried in via c(1)
  bool intermediate_prefix_unchanged = false;  // t(1..j-1)
};

/// Compares the ciphertext under k with (a) the fully MSB-flipped k and
/// (b) k with k(position) incremented by one.
KeySensitivity key_sensitivity_report(ByteView p, ByteView k, Byte c0, std::size_t position);

std::uint64_t hamming_bits(ByteView a, ByteView b);

// ---------------------------------------------------------------------------
// Candidate-count experiment

struct KeyRanges {
  double state_max = 10.0;  // x0..w0 uniform in (0, state_max]
  std::uint32_t n0_min = 501;
  std::uint32_t n0_max = 1500;
  Byte c0_min = 1;
  Byte c0_max = 255;
};

/// Deterministic for a given generator state; uses raw engine output only,
/// so results do not depend on the standard library's distributions.
chaos::SecretKey sample_key(std::mt19937_64& rng, const KeyRanges& ranges = {});

ByteSeq random_bytes(std::mt19937_64& rng, std::size_t length);

struct ExperimentConfig {
  std::size_t n_keys = 100;
  std::uint64_t seed = 20130101;
  KeyRanges ranges;
  bool require_both = true;  // c0 treated as known
  unsigned threads = 0;
};

struct KeyOutcome {
  chaos::SecretKey key;
  std::size_t candidates = 0;
  bool true_key_found = false;
  // Share of correct pixels when a wrong surviving candidate decrypts the
  // ciphertext of the probe image; absent if the true class was unique.
  std::optional<double> wrong_candidate_score;
};

struct CandidateCountResult {
  std::vector<KeyOutcome> keys;
  std::map<std::size_t, std::size_t> histogram;  // candidate count -> keys
  double fraction_unique = 0.0;
  double fraction_below_six = 0.0;
  double median = 0.0;
  std::size_t minimum = 0;
  std::size_t maximum = 0;
  std::size_t soundness_failures = 0;
  std::optional<double> mean_wrong_candidate_score;
};

/// For each sampled key: keystream, encrypt `image`, run the one-pair
/// search and count survivors. `probe`, if non-empty, must match the image
/// length and is used for the partial-recovery score.
CandidateCountResult candidate_count_experiment(const ExperimentConfig& cfg, ByteView image,
                                                ByteView probe = {});

// ---------------------------------------------------------------------------
// Early termination of the two-pair search

struct TerminationProfile {
  std::size_t chain_length = 0;  // L - 2 conditions
  std::uint64_t wrong_guesses = 0;
  std::vector<std::uint64_t> exact;      // exact[d]: wrong guesses abandoned after d passes
  std::vector<std::uint64_t> surviving;  // surviving[d]: wrong guesses passing >= d conditions
  std::vector<std::uint32_t> accepted;   // accepted guesses, kL1 * 128 + kL
  std::vector<std::uint32_t> accepted_depths;

  double survival_fraction(std::size_t depth) const;
};

TerminationProfile termination_profile(ByteView p1, ByteView c1, ByteView p2, ByteView c2,
                                       unsigned threads = 0);

}  // namespace hcbreak::analysis
