#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcbreak/bytes.hpp"

namespace hcbreak::attacks {

// The search space is (k(L-1), k(L)) with k(L) < 128: flipping the MSB of
// every keystream byte gives an equivalent key, so only one representative
// per class is enumerated.
inline constexpr std::uint32_t kGuessSpace = 256u * 128u;

/// Keystream and intermediate sequence implied by one (k(L-1), k(L)) guess.
struct Recovery {
  ByteSeq k;
  ByteSeq t;
};

/// Runs the cipher equations backwards from the last two keystream bytes.
/// Requires len(p) == len(c) >= 3.
Recovery backward_recover(ByteView plain, ByteView cipher, Byte k_second_last, Byte k_last);

struct Verification {
  bool c0_check = false;  // t(1) == p(1) ^ k(1) ^ (c0 + k(1))
  bool wrap_check = false;  // c(1) == t(1) ^ k(1) ^ (t(L) + k(1))
};

Verification verify_candidate(ByteView plain, ByteView cipher, ByteView k, ByteView t, Byte c0);

/// Second known pair of a two-pair candidate.
struct SecondPair {
  ByteSeq t;
  bool passed_c0_check = false;
  bool passed_wrap_check = false;
};

struct CandidateKeystream {
  Byte k_second_last = 0;  // guess for k(L-1)
  Byte k_last = 0;         // guess for k(L), always < 128
  ByteSeq k;
  ByteSeq t;
  bool passed_c0_check = false;
  bool passed_wrap_check = false;
  std::vector<Byte> consistent_c0;  // filled by the c0 sweep only
  std::optional<SecondPair> second;
  std::optional<double> score;
};

struct AttackReport {
  std::string attack;
  std::vector<CandidateKeystream> candidates;  // sorted by (k(L-1), k(L))
  std::uint64_t guesses_tested = 0;
  std::uint64_t steps_evaluated = 0;  // backward recurrence steps, summed over guesses
  std::chrono::nanoseconds elapsed{0};
  bool degenerate_pairs = false;  // kpa_two given identical pairs
  // kpa_two with record_depths: chain conditions passed by guess
  // kL1 * 128 + kL before it was abandoned (L - 2 when none failed).
  std::vector<std::uint32_t> depths;
};

struct KpaOneOptions {
  std::optional<Byte> c0;
  // Keep only candidates passing the c0 check as well as the wrap-around check. Needs c0 or
  // search_c0; otherwise only the c0-free the wrap-around check filter applies.
  bool require_both = false;
  // Sweep c0 over [1, 255] for every the wrap-around check survivor.
  bool search_c0 = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// One known plain/cipher pair. Every guess is recovered and verified; the
/// scan runs 128 k(L) guesses side by side.
AttackReport kpa_one(ByteView plain, ByteView cipher, const KpaOneOptions& options = {});

enum class FinalCheck {
  kRequireBoth,  // both first-element conditions must hold
  kEither,       // literal reading: either one suffices
};

struct KpaTwoOptions {
  FinalCheck final_check = FinalCheck::kRequireBoth;
  std::optional<Byte> c0;  // adds the the c0 check check on both pairs
  bool record_depths = false;
  unsigned threads = 0;
};

/// Two known pairs under one keystream. Each guess walks the chain of
/// k(i-1) coincidence conditions and is dropped at the first mismatch.
AttackReport kpa_two(ByteView plain1, ByteView cipher1, ByteView plain2, ByteView cipher2,
                     const KpaTwoOptions& options = {});

/// Chosen-plaintext baseline on the ciphertext of an all-zero image.
struct CpaResult {
  // sets[0]: (t(L), k(1)) pairs; sets[i]: (t(i), k(i+1)) pairs, packed as
  // (t << 8) | k.
  std::vector<std::vector<std::uint16_t>> sets;
  std::uint64_t pair_evaluations = 0;
  bool first_position_uses_c0 = false;
};

/// Without c0 the first position keeps every pair consistent with some
/// c0 in [1, 255].
CpaResult cpa_zero_plain(ByteView cipher, std::optional<Byte> c0);

constexpr std::uint16_t pack_pair(Byte t, Byte k) noexcept {
  return static_cast<std::uint16_t>((t << 8) | k);
}

/// c0 implied by the c0 check for a candidate and the plaintext it came from.
/// Zero means the candidate is inconsistent with every legal c0.
Byte implied_c0(const CandidateKeystream& candidate, ByteView plain);

/// Fraction of positions where the two sequences agree.
double score_recovery(ByteView reference, ByteView recovered);

}  // namespace hcbreak::attacks
