#include "hcbreak/attacks.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "hcbreak/errors.hpp"
#include "parallel.hpp"

namespace hcbreak::attacks {

namespace {

using Clock = std::chrono::steady_clock;

void require_pair(ByteView p, ByteView c, std::size_t minimum) {
  if (p.size() != c.size()) throw LengthMismatch(p.size(), c.size());
  if (p.size() < minimum) throw LengthTooShort(minimum, p.size());
}

bool c0_check_holds(Byte p0, Byte t0, Byte k0, Byte c0) { return t0 == (p0 ^ k0 ^ modadd(c0, k0)); }

bool wrap_check_holds(Byte c_first, Byte t0, Byte k0, Byte t_last) {
  return c_first == (t0 ^ k0 ^ modadd(t_last, k0));
}

}  // namespace

Recovery backward_recover(ByteView p, ByteView c, Byte k_second_last, Byte k_last) {
  require_pair(p, c, 3);
  const std::size_t n = p.size();
  Recovery r{ByteSeq(n), ByteSeq(n)};
  ByteSeq& k = r.k;
  ByteSeq& t = r.t;
  k[n - 2] = k_second_last;
  k[n - 1] = k_last;
  t[n - 1] = c[n - 1] ^ k[n - 2] ^ modadd(c[n - 2], k[n - 1]);
  // 1-based i = L-1 .. 2, i.e. 0-based i = n-2 .. 1.
  for (std::size_t i = n - 2; i >= 1; --i) {
    t[i] = modsub(t[i + 1] ^ p[i + 1] ^ k[i], k[i + 1]);
    k[i - 1] = c[i] ^ t[i] ^ modadd(c[i - 1], k[i]);
  }
  t[0] = modsub(t[1] ^ p[1] ^ k[0], k[1]);
  return r;
}

Verification verify_candidate(ByteView p, ByteView c, ByteView k, ByteView t, Byte c0) {
  const std::size_t n = p.size();
  if (c.size() != n) throw LengthMismatch(n, c.size());
  if (k.size() != n) throw LengthMismatch(n, k.size());
  if (t.size() != n) throw LengthMismatch(n, t.size());
  if (n == 0) throw PreconditionError("verify_candidate: empty sequences");
  return {c0_check_holds(p[0], t[0], k[0], c0), wrap_check_holds(c[0], t[0], k[0], t[n - 1])};
}

namespace {

constexpr std::size_t kLanes = 128;

struct LaneFlags {
  std::array<Byte, kLanes> t_first;
  std::array<Byte, kLanes> k_first;
  std::array<Byte, kLanes> t_last;
};

// Backward recurrence for the 128 guesses (k_second_last, 0..127) at once.
// Every lane performs the same byte operations, so the inner loops
// vectorize.
void scan_lanes(ByteView p, ByteView c, Byte k_second_last, LaneFlags& out) {
  const std::size_t n = p.size();
  alignas(64) std::array<Byte, kLanes> t_next;   // t(i+1)
  alignas(64) std::array<Byte, kLanes> k_cur;    // k(i)
  alignas(64) std::array<Byte, kLanes> k_next;   // k(i+1)
  const Byte c_last = c[n - 1];
  const Byte c_prev = c[n - 2];
  for (std::size_t l = 0; l < kLanes; ++l) {
    const auto b = static_cast<Byte>(l);
    t_next[l] = c_last ^ k_second_last ^ modadd(c_prev, b);
    k_cur[l] = k_second_last;
    k_next[l] = b;
  }
  out.t_last = t_next;
  for (std::size_t i = n - 2; i >= 1; --i) {
    const Byte pi = p[i + 1];
    const Byte ci = c[i];
    const Byte cm = c[i - 1];
    for (std::size_t l = 0; l < kLanes; ++l) {
      const Byte t = modsub(t_next[l] ^ pi ^ k_cur[l], k_next[l]);
      const Byte kp = ci ^ t ^ modadd(cm, k_cur[l]);
      t_next[l] = t;
      k_next[l] = k_cur[l];
      k_cur[l] = kp;
    }
  }
  const Byte p1 = p[1];
  for (std::size_t l = 0; l < kLanes; ++l) {
    out.t_first[l] = modsub(t_next[l] ^ p1 ^ k_cur[l], k_next[l]);
    out.k_first[l] = k_cur[l];
  }
}

CandidateKeystream materialize(ByteView p, ByteView c, Byte kl1, Byte kl, std::optional<Byte> c0) {
  Recovery r = backward_recover(p, c, kl1, kl);
  CandidateKeystream cand;
  cand.k_second_last = kl1;
  cand.k_last = kl;
  const Verification v = verify_candidate(p, c, r.k, r.t, c0.value_or(0));
  cand.passed_c0_check = c0.has_value() && v.c0_check;
  cand.passed_wrap_check = v.wrap_check;
  cand.k = std::move(r.k);
  cand.t = std::move(r.t);
  return cand;
}

}  // namespace

AttackReport kpa_one(ByteView p, ByteView c, const KpaOneOptions& options) {
  require_pair(p, c, 3);
  if (options.c0 && *options.c0 == 0) throw PreconditionError("kpa_one: c0 must lie in [1, 255]");
  if (options.require_both && !options.c0 && !options.search_c0) {
    throw PreconditionError("kpa_one: require_both needs a known c0 or the c0 sweep");
  }
  const auto start = Clock::now();
  const std::size_t n = p.size();

  std::vector<std::vector<CandidateKeystream>> per_guess(256);
  detail::parallel_for(256, options.threads, [&](std::size_t a) {
    LaneFlags flags;
    const auto kl1 = static_cast<Byte>(a);
    scan_lanes(p, c, kl1, flags);
    for (std::size_t l = 0; l < kLanes; ++l) {
      const Byte t0 = flags.t_first[l];
      const Byte k0 = flags.k_first[l];
      if (!wrap_check_holds(c[0], t0, k0, flags.t_last[l])) continue;
      std::vector<Byte> consistent;
      bool c0_check = false;
      if (options.search_c0) {
        for (unsigned v = 1; v < 256; ++v) {
          if (c0_check_holds(p[0], t0, k0, static_cast<Byte>(v))) consistent.push_back(static_cast<Byte>(v));
        }
        c0_check = !consistent.empty();
        if (options.c0) c0_check = c0_check_holds(p[0], t0, k0, *options.c0);
      } else if (options.c0) {
        c0_check = c0_check_holds(p[0], t0, k0, *options.c0);
      }
      if (options.require_both && !c0_check) continue;

      CandidateKeystream cand = materialize(p, c, kl1, static_cast<Byte>(l), options.c0);
      if (!cand.passed_wrap_check || (options.c0 && cand.passed_c0_check != c0_check)) {
        throw std::logic_error("kpa_one: batched scan disagrees with backward_recover");
      }
      cand.passed_c0_check = c0_check;
      cand.consistent_c0 = std::move(consistent);
      per_guess[a].push_back(std::move(cand));
    }
  });

  AttackReport report;
  report.attack = "kpa1";
  for (auto& bucket : per_guess) {
    for (auto& cand : bucket) report.candidates.push_back(std::move(cand));
  }
  report.guesses_tested = kGuessSpace;
  report.steps_evaluated = static_cast<std::uint64_t>(kGuessSpace) * n;
  report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return report;
}

AttackReport kpa_two(ByteView p1, ByteView c1, ByteView p2, ByteView c2,
                     const KpaTwoOptions& options) {
  require_pair(p1, c1, 5);
  require_pair(p2, c2, 5);
  if (p1.size() != p2.size()) throw LengthMismatch(p1.size(), p2.size());
  if (options.c0 && *options.c0 == 0) throw PreconditionError("kpa_two: c0 must lie in [1, 255]");
  const auto start = Clock::now();
  const std::size_t n = p1.size();

  struct Outcome {
    std::vector<CandidateKeystream> survivors;
    std::uint64_t steps = 0;
  };
  std::vector<Outcome> per_guess(256);
  std::vector<std::uint32_t> depths(options.record_depths ? kGuessSpace : 0);

  detail::parallel_for(256, options.threads, [&](std::size_t a) {
    Outcome& out = per_guess[a];
    const auto kl1 = static_cast<Byte>(a);
    for (unsigned b = 0; b < 128; ++b) {
      const auto kl = static_cast<Byte>(b);
      const Byte t1_last = c1[n - 1] ^ kl1 ^ modadd(c1[n - 2], kl);
      const Byte t2_last = c2[n - 1] ^ kl1 ^ modadd(c2[n - 2], kl);
      Byte t1 = t1_last, t2 = t2_last, k_cur = kl1, k_next = kl;
      std::uint32_t depth = 0;
      bool alive = true;
      for (std::size_t i = n - 2; i >= 1; --i) {
        const Byte t1c = modsub(t1 ^ p1[i + 1] ^ k_cur, k_next);
        const Byte t2c = modsub(t2 ^ p2[i + 1] ^ k_cur, k_next);
        const Byte k1 = c1[i] ^ t1c ^ modadd(c1[i - 1], k_cur);
        const Byte k2 = c2[i] ^ t2c ^ modadd(c2[i - 1], k_cur);
        ++out.steps;
        if (k1 != k2) {
          alive = false;
          break;
        }
        ++depth;
        t1 = t1c;
        t2 = t2c;
        k_next = k_cur;
        k_cur = k1;
      }
      if (options.record_depths) depths[a * 128 + b] = depth;
      if (!alive) continue;

      const Byte t1_first = modsub(t1 ^ p1[1] ^ k_cur, k_next);
      const Byte t2_first = modsub(t2 ^ p2[1] ^ k_cur, k_next);
      const bool f1 = wrap_check_holds(c1[0], t1_first, k_cur, t1_last);
      const bool f2 = wrap_check_holds(c2[0], t2_first, k_cur, t2_last);
      bool pass = options.final_check == FinalCheck::kRequireBoth ? (f1 && f2) : (f1 || f2);
      if (options.c0) {
        pass = pass && c0_check_holds(p1[0], t1_first, k_cur, *options.c0) &&
               c0_check_holds(p2[0], t2_first, k_cur, *options.c0);
      }
      if (!pass) continue;

      CandidateKeystream cand = materialize(p1, c1, kl1, kl, options.c0);
      Recovery second = backward_recover(p2, c2, kl1, kl);
      if (!std::equal(cand.k.begin(), cand.k.end() - 2, second.k.begin())) {
        throw std::logic_error("kpa_two: surviving guess implies two different keystreams");
      }
      const Verification v2 = verify_candidate(p2, c2, second.k, second.t, options.c0.value_or(0));
      cand.second = SecondPair{std::move(second.t), options.c0.has_value() && v2.c0_check, v2.wrap_check};
      out.survivors.push_back(std::move(cand));
    }
  });

  AttackReport report;
  report.attack = "kpa2";
  report.degenerate_pairs = std::equal(p1.begin(), p1.end(), p2.begin()) &&
                            std::equal(c1.begin(), c1.end(), c2.begin());
  for (auto& o : per_guess) {
    report.steps_evaluated += o.steps;
    for (auto& cand : o.survivors) report.candidates.push_back(std::move(cand));
  }
  report.guesses_tested = kGuessSpace;
  report.depths = std::move(depths);
  report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return report;
}

CpaResult cpa_zero_plain(ByteView c, std::optional<Byte> c0) {
  if (c.size() < 2) throw LengthTooShort(2, c.size());
  if (c0 && *c0 == 0) throw PreconditionError("cpa_zero_plain: c0 must lie in [1, 255]");
  const std::size_t n = c.size();
  CpaResult result;
  result.sets.resize(n);
  result.first_position_uses_c0 = c0.has_value();

  // Position 1: c(1) = (c0 + k(1)) ^ (t(L) + k(1)).
  for (unsigned t = 0; t < 256; ++t) {
    for (unsigned k = 0; k < 256; ++k) {
      const Byte sum = modadd(static_cast<Byte>(t), static_cast<Byte>(k));
      bool ok;
      if (c0) {
        ok = c[0] == (modadd(*c0, static_cast<Byte>(k)) ^ sum);
      } else {
        ok = modsub(c[0] ^ sum, static_cast<Byte>(k)) != 0;
      }
      if (ok) result.sets[0].push_back(pack_pair(static_cast<Byte>(t), static_cast<Byte>(k)));
    }
  }
  result.pair_evaluations += 65536;

  // Positions 2..L: c(i) = (t(i-1) + k(i)) ^ (c(i-1) + k(i)).
  for (std::size_t i = 1; i < n; ++i) {
    auto& set = result.sets[i];
    for (unsigned t = 0; t < 256; ++t) {
      for (unsigned k = 0; k < 256; ++k) {
        const auto kb = static_cast<Byte>(k);
        if (c[i] == (modadd(static_cast<Byte>(t), kb) ^ modadd(c[i - 1], kb))) {
          set.push_back(pack_pair(static_cast<Byte>(t), kb));
        }
      }
    }
    result.pair_evaluations += 65536;
  }
  return result;
}

Byte implied_c0(const CandidateKeystream& cand, ByteView p) {
  if (cand.t.empty() || p.empty()) throw PreconditionError("implied_c0: empty candidate");
  // t(1) ^ p(1) ^ k(1) == c0 + k(1)
  return modsub(cand.t[0] ^ p[0] ^ cand.k[0], cand.k[0]);
}

double score_recovery(ByteView reference, ByteView recovered) {
  if (reference.size() != recovered.size()) throw LengthMismatch(reference.size(), recovered.size());
  if (reference.empty()) throw PreconditionError("score_recovery: empty sequences");
  std::size_t same = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) same += reference[i] == recovered[i];
  return static_cast<double>(same) / static_cast<double>(reference.size());
}

}  // namespace hcbreak::attacks
