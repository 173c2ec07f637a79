#include "hcbreak/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hcbreak/attacks.hpp"
#include "hcbreak/cipher.hpp"
#include "hcbreak/errors.hpp"
#include "parallel.hpp"

namespace hcbreak::analysis {

IdentityCheck msb_carry_identity(unsigned n) {
  if (n < 1 || n > 16) throw PreconditionError("msb_carry_identity: n must lie in [1, 16]");
  const std::uint32_t modulus = 1u << n;
  const std::uint32_t mask = modulus - 1;
  const std::uint32_t top = 1u << (n - 1);
  IdentityCheck result;
  result.bits = n;
  for (std::uint32_t a = 0; a < modulus; ++a) {
    for (std::uint32_t b = 0; b < modulus; ++b) {
      ++result.cases;
      const std::uint32_t lhs = ((a ^ top) + b) & mask;
      const std::uint32_t rhs = ((a + b) & mask) ^ top;
      if (lhs != rhs) {
        ++result.failures;
        if (!result.counterexample) result.counterexample = {a, b};
      }
    }
  }
  return result;
}

ByteSeq flip_msb(ByteView k) {
  ByteSeq out(k.begin(), k.end());
  for (Byte& v : out) v ^= 0x80;
  return out;
}

bool keystream_flip_equivalence(ByteView p, ByteView k, Byte c0) {
  return cipher::encrypt(p, k, c0) == cipher::encrypt(p, flip_msb(k), c0);
}

FlipProbe per_element_flip_probe(ByteView p, ByteView k, Byte c0) {
  const std::size_t n = k.size();
  if (n == 0 || n > 20) throw PreconditionError("per_element_flip_probe: length must lie in [1, 20]");
  const ByteSeq reference = cipher::encrypt(p, k, c0);
  FlipProbe probe;
  probe.length = n;
  probe.single_flip_changed_bytes.assign(n, 0);
  ByteSeq flipped(k.begin(), k.end());
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    for (std::size_t j = 0; j < n; ++j) flipped[j] = k[j] ^ ((subset >> j) & 1u ? 0x80 : 0x00);
    const ByteSeq c = cipher::encrypt(p, flipped, c0);
    ++probe.subsets_tested;
    if (c == reference) probe.equivalent_masks.push_back(subset);
    if (std::has_single_bit(subset)) {
      std::size_t changed = 0;
      for (std::size_t i = 0; i < n; ++i) changed += c[i] != reference[i];
      probe.single_flip_changed_bytes[std::countr_zero(subset)] = changed;
    }
  }
  return probe;
}

DiffusionMask diffusion_mask(ByteView p, ByteView k, Byte c0, std::size_t position, unsigned bit) {
  if (position >= p.size()) throw PreconditionError("diffusion_mask: position out of range");
  if (bit > 7) throw PreconditionError("diffusion_mask: bit index must lie in [0, 7]");
  ByteSeq altered(p.begin(), p.end());
  altered[position] ^= static_cast<Byte>(1u << bit);
  const ByteSeq a = cipher::encrypt(p, k, c0);
  const ByteSeq b = cipher::encrypt(altered, k, c0);
  DiffusionMask mask(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mask[i] = a[i] ^ b[i];
  return mask;
}

std::size_t bits_below_plane(const DiffusionMask& mask, unsigned bit) {
  const auto low = static_cast<Byte>((1u << bit) - 1u);
  std::size_t count = 0;
  for (Byte m : mask) count += static_cast<std::size_t>(std::popcount(static_cast<Byte>(m & low)));
  return count;
}

std::uint64_t hamming_bits(ByteView a, ByteView b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < a.size(); ++i) bits += std::popcount(static_cast<Byte>(a[i] ^ b[i]));
  return bits;
}

KeySensitivity key_sensitivity_report(ByteView p, ByteView k, Byte c0, std::size_t position) {
  if (position >= k.size()) throw PreconditionError("key_sensitivity_report: position out of range");
  KeySensitivity r;
  r.changed_position = position;
  const ByteSeq base = cipher::encrypt(p, k, c0);
  r.msb_flip_differing_bits = hamming_bits(base, cipher::encrypt(p, flip_msb(k), c0));

  ByteSeq bumped(k.begin(), k.end());
  bumped[position] = modadd(bumped[position], 1);
  const ByteSeq other = cipher::encrypt(p, bumped, c0);
  r.bump_differing_bits = hamming_bits(base, other);

  const auto tail_bits = 8 * (base.size() - position);
  const auto tail = hamming_bits(ByteView(base).subspan(position), ByteView(other).subspan(position));
  r.bump_fraction_from_position = static_cast<double>(tail) / static_cast<double>(tail_bits);
  for (std::size_t i = 1; i < position; ++i) r.bump_prefix_differing_bytes += base[i] != other[i];

  const ByteSeq t_base = cipher::confusion1(p, k, c0);
  const ByteSeq t_other = cipher::confusion1(p, bumped, c0);
  r.intermediate_prefix_unchanged =
      std::equal(t_base.begin(), t_base.begin() + static_cast<std::ptrdiff_t>(position), t_other.begin());
  return r;
}

chaos::SecretKey sample_key(std::mt19937_64& rng, const KeyRanges& ranges) {
  if (ranges.n0_min <= 500 || ranges.n0_max < ranges.n0_min || ranges.c0_min == 0 ||
      ranges.c0_max < ranges.c0_min || !(ranges.state_max > 0.0)) {
    throw PreconditionError("sample_key: invalid key ranges");
  }
  auto unit = [&] {  // [0, 1) with 53 random bits
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  auto state = [&] { return ranges.state_max * (1.0 - unit()); };
  chaos::SecretKey key;
  key.initial.x = state();
  key.initial.y = state();
  key.initial.z = state();
  key.initial.w = state();
  key.n0 = ranges.n0_min + static_cast<std::uint32_t>(rng() % (ranges.n0_max - ranges.n0_min + 1u));
  key.c0 = static_cast<Byte>(ranges.c0_min + rng() % (ranges.c0_max - ranges.c0_min + 1u));
  return key;
}

ByteSeq random_bytes(std::mt19937_64& rng, std::size_t length) {
  ByteSeq out(length);
  for (std::size_t i = 0; i < length; i += 8) {
    std::uint64_t word = rng();
    for (std::size_t j = i; j < std::min(length, i + 8); ++j, word >>= 8) out[j] = static_cast<Byte>(word);
  }
  return out;
}

namespace {

ByteSeq canonical(ByteView k) {
  if (k.back() < 128) return ByteSeq(k.begin(), k.end());
  return flip_msb(k);
}

}  // namespace

CandidateCountResult candidate_count_experiment(const ExperimentConfig& cfg, ByteView image,
                                                ByteView probe) {
  if (cfg.n_keys == 0) throw PreconditionError("experiment: n_keys must be at least 1");
  if (image.size() < 3) throw LengthTooShort(3, image.size());
  if (!probe.empty() && probe.size() != image.size()) throw LengthMismatch(image.size(), probe.size());

  std::mt19937_64 rng(cfg.seed);
  CandidateCountResult result;
  result.keys.resize(cfg.n_keys);
  for (auto& outcome : result.keys) outcome.key = sample_key(rng, cfg.ranges);

  detail::parallel_for(cfg.n_keys, cfg.threads, [&](std::size_t idx) {
    KeyOutcome& outcome = result.keys[idx];
    const ByteSeq k = chaos::keystream(outcome.key, image.size());
    const ByteSeq c = cipher::encrypt(image, k, outcome.key.c0);
    attacks::KpaOneOptions opts;
    opts.require_both = cfg.require_both;
    if (cfg.require_both) opts.c0 = outcome.key.c0;
    opts.threads = 1;
    const attacks::AttackReport report = attacks::kpa_one(image, c, opts);
    outcome.candidates = report.candidates.size();
    const ByteSeq truth = canonical(k);
    const attacks::CandidateKeystream* wrong = nullptr;
    for (const auto& cand : report.candidates) {
      if (cand.k == truth) {
        outcome.true_key_found = true;
      } else if (!wrong) {
        wrong = &cand;
      }
    }
    if (wrong && !probe.empty()) {
      const ByteSeq probe_cipher = cipher::encrypt(probe, k, outcome.key.c0);
      const ByteSeq guess = cipher::decrypt(probe_cipher, wrong->k, outcome.key.c0);
      outcome.wrong_candidate_score = attacks::score_recovery(probe, guess);
    }
  });

  std::vector<std::size_t> counts;
  double score_sum = 0.0;
  std::size_t scored = 0;
  for (const auto& outcome : result.keys) {
    counts.push_back(outcome.candidates);
    ++result.histogram[outcome.candidates];
    if (!outcome.true_key_found) ++result.soundness_failures;
    if (outcome.wrong_candidate_score) {
      score_sum += *outcome.wrong_candidate_score;
      ++scored;
    }
  }
  std::sort(counts.begin(), counts.end());
  const auto n = static_cast<double>(counts.size());
  result.minimum = counts.front();
  result.maximum = counts.back();
  const std::size_t mid = counts.size() / 2;
  result.median = counts.size() % 2 ? static_cast<double>(counts[mid])
                                    : (static_cast<double>(counts[mid - 1]) + static_cast<double>(counts[mid])) / 2.0;
  result.fraction_unique = static_cast<double>(std::count(counts.begin(), counts.end(), 1u)) / n;
  result.fraction_below_six =
      static_cast<double>(std::count_if(counts.begin(), counts.end(), [](std::size_t v) { return v < 6; })) / n;
  if (scored) result.mean_wrong_candidate_score = score_sum / static_cast<double>(scored);
  return result;
}

double TerminationProfile::survival_fraction(std::size_t depth) const {
  if (wrong_guesses == 0 || depth >= surviving.size()) return 0.0;
  return static_cast<double>(surviving[depth]) / static_cast<double>(wrong_guesses);
}

TerminationProfile termination_profile(ByteView p1, ByteView c1, ByteView p2, ByteView c2,
                                       unsigned threads) {
  attacks::KpaTwoOptions opts;
  opts.record_depths = true;
  opts.threads = threads;
  const attacks::AttackReport report = attacks::kpa_two(p1, c1, p2, c2, opts);

  TerminationProfile profile;
  profile.chain_length = p1.size() - 2;
  profile.exact.assign(profile.chain_length + 1, 0);
  std::vector<bool> accepted(attacks::kGuessSpace, false);
  for (const auto& cand : report.candidates) {
    const std::uint32_t g = cand.k_second_last * 128u + cand.k_last;
    accepted[g] = true;
    profile.accepted.push_back(g);
    profile.accepted_depths.push_back(report.depths[g]);
  }
  for (std::uint32_t g = 0; g < attacks::kGuessSpace; ++g) {
    if (accepted[g]) continue;
    ++profile.wrong_guesses;
    ++profile.exact[report.depths[g]];
  }
  profile.surviving.assign(profile.exact.size(), 0);
  std::uint64_t running = 0;
  for (std::size_t d = profile.exact.size(); d-- > 0;) {
    running += profile.exact[d];
    profile.surviving[d] = running;
  }
  return profile;
}

}  // namespace hcbreak::analysis
